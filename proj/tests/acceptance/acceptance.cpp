// Acceptance checks. Prints one PASS/FAIL line per criterion.
// Exit status: 0 all pass, 1 a failure, 77 a criterion could not be
// evaluated completely because input data is missing.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "../support/oracle.hpp"
#include "tcomm/bounds.hpp"
#include "tcomm/centrality.hpp"
#include "tcomm/experiment.hpp"
#include "tcomm/generators.hpp"
#include "tcomm/heuristics.hpp"
#include "tcomm/robustness.hpp"

using namespace tcomm;
namespace fs = std::filesystem;

namespace {

enum class Status { pass, fail, incomplete };

struct Outcome {
    Status status = Status::pass;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

struct Network {
    std::string name;
    double lambda1, lambda2;
};

const std::vector<Network> small_networks = {
    {"zachary", 6.726, 4.977}, {"sawmill", 4.972, 3.271}, {"social3", 5.971, 3.810}, {"dolphins", 7.193, 5.936}};

std::vector<std::pair<std::string, Graph>> available(std::vector<std::string>& missing) {
    std::vector<std::pair<std::string, Graph>> out;
    for (const auto& net : small_networks) {
        if (auto g = fixtures::dataset(net.name)) {
            out.emplace_back(net.name, std::move(*g));
        } else {
            missing.push_back(net.name);
        }
    }
    return out;
}

std::string join(const std::vector<std::string>& xs) {
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
    return s;
}

// Folds missing inputs into the outcome: a failure on the available data
// stays a failure, otherwise the criterion is reported as incomplete.
Outcome with_missing(Outcome o, const std::vector<std::string>& missing) {
    if (missing.empty() || o.status == Status::fail) return o;
    return {Status::incomplete, "incomplete: missing data for " + join(missing) + "; evaluated part passes: " + o.detail};
}

const std::vector<Graph>& family() {
    static std::vector<Graph> f = fixtures::mixed_family(200, 200, 2024);
    return f;
}

double tcn(const Graph& g) { return total_communicability(g, 1e-12).normalized; }

std::vector<double> tc_series(const Graph& g, const ModificationPlan& plan) {
    std::vector<double> out{tcn(g)};
    Graph cur = g;
    for (const auto& r : plan.records) {
        cur = apply(cur, r);
        out.push_back(tcn(cur));
    }
    return out;
}

StrategyConfig method(const std::string& name, std::uint64_t seed = 1) {
    auto s = parse_method(name);
    s.rng_seed = seed;
    return s;
}

// ---------------------------------------------------------------------------

Outcome spectral_fidelity() {
    std::vector<Network> nets = small_networks;
    nets.push_back({"usair97", 41.233, 17.308});
    std::vector<std::string> missing;
    double worst = 0;
    std::string parts;
    for (const auto& net : nets) {
        auto g = fixtures::dataset(net.name);
        if (!g) {
            missing.push_back(net.name);
            continue;
        }
        auto eig = top_eigenpairs(*g, 2, 1e-12);
        double err = std::max(std::abs(eig.values[0] - net.lambda1), std::abs(eig.values[1] - net.lambda2));
        worst = std::max(worst, err);
        parts += net.name + " (" + fmt("%.6f", eig.values[0]) + ", " + fmt("%.6f", eig.values[1]) + ") ";
    }
    Outcome o{worst <= 1e-3 ? Status::pass : Status::fail,
              parts + "max abs error " + fmt("%.2e", worst) + " (tol 1e-3)"};
    return with_missing(o, missing);
}

Outcome oracle_equivalence() {
    double worst_krylov = 0, worst_identity = 0;
    for (const auto& g : family()) {
        double oracle_tc = oracle::tc(g);
        worst_krylov = std::max(worst_krylov, rel(total_communicability(g).raw, oracle_tc));
        auto spec = dense_spectrum(g);
        double s = 0;
        for (Eigen::Index k = 0; k < spec.values.size(); ++k) {
            double c = spec.vectors.col(k).sum();
            s += std::exp(spec.values[k]) * c * c;
        }
        worst_identity = std::max(worst_identity, rel(s, oracle_tc));
    }
    bool ok = worst_krylov <= 1e-6 && worst_identity <= 1e-8;
    return {ok ? Status::pass : Status::fail,
            std::to_string(family().size()) + " graphs, Krylov rel err " + fmt("%.2e", worst_krylov) +
                " (tol 1e-6), spectral identity rel err " + fmt("%.2e", worst_identity) + " (tol 1e-8)"};
}

double radau_2x2(double mean, double var, double tau) {
    // Two-node Jacobi matrix of A started at 1/sqrt(n) with one node fixed at tau.
    Eigen::Matrix2d J;
    double x = tau + var / (mean - tau);
    J << mean, std::sqrt(var), std::sqrt(var), x;
    return oracle::expm_taylor(J)(0, 0);
}

Outcome bound_bracketing() {
    std::size_t brackets = 0, bracket_fail = 0, moment_checks = 0;
    double worst_moment = 0;
    for (const auto& g : family()) {
        auto b = tc_bounds(g);
        double t = oracle::tc_normalized(g);
        ++brackets;
        if (!(b.lower <= t * (1 + 1e-12) && t <= b.upper * (1 + 1e-12))) ++bracket_fail;
        if (g.n() > 50) continue;
        auto m = degree_moments(g);
        auto cmp = [&](const DegreeMoments& formula, const Graph& after) {
            auto direct = degree_moments(after);
            worst_moment = std::max({worst_moment, std::abs(formula.omega - direct.omega),
                                     std::abs(formula.gamma * formula.gamma - direct.gamma * direct.gamma)});
            ++moment_checks;
        };
        for (const auto& e : g.edges()) cmp(downdated_moments(m, g.row_sum(e.i), g.row_sum(e.j)), downdate_edge(g, e));
        for (const auto& e : all_virtual_edges(g).virtual_edges)
            cmp(updated_moments(m, g.row_sum(e.i), g.row_sum(e.j)), update_edge(g, e));
    }

    auto p3 = fixtures::path(3);
    auto lib = tc_bounds(degree_moments(p3), {-1.5, 1.5});
    double mean = 4.0 / 3.0, var = 2.0 / 9.0;
    double r1 = radau_2x2(mean, var, -1.5), r2 = radau_2x2(mean, var, 1.5);
    double lo = std::min(r1, r2), hi = std::max(r1, r2), exact = oracle::tc_normalized(p3);
    bool p3_ok = std::abs(lib.lower - lo) <= 1e-3 && std::abs(lib.upper - hi) <= 1e-3 &&
                 std::abs(3.9987 - lo) <= 1e-3 && std::abs(4.0948 - hi) <= 1e-3 &&
                 std::abs(4.0028 - exact) <= 1e-3 && lo <= exact && exact <= hi;

    bool ok = bracket_fail == 0 && worst_moment <= 1e-12 && p3_ok;
    return {ok ? Status::pass : Status::fail,
            std::to_string(brackets - bracket_fail) + "/" + std::to_string(brackets) + " bracketed; " +
                std::to_string(moment_checks) + " moment updates, max abs diff " + fmt("%.1e", worst_moment) +
                " (tol 1e-12); P3 " + fmt("%.4f", lib.lower) + " <= " + fmt("%.4f", exact) + " <= " +
                fmt("%.4f", lib.upper) + " vs recomputed [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "]"};
}

Outcome coarse_equality() {
    double empty = tcn(fixtures::empty(7));
    double worst = std::abs(empty - 1.0);
    for (std::size_t n = 3; n <= 10; ++n)
        worst = std::max(worst, rel(tcn(fixtures::complete(n)), std::exp(double(n) - 1)));
    return {worst <= 1e-8 ? Status::pass : Status::fail,
            "empty TC/n = " + fmt("%.12g", empty) + ", K3..K10 max rel err " + fmt("%.2e", worst) + " (tol 1e-8)"};
}

Outcome near_optimality() {
    std::vector<std::string> missing;
    auto nets = available(missing);
    const std::size_t K = 25;
    bool ok = true;
    std::string detail;
    for (const auto& [name, g] : nets) {
        auto cand = all_virtual_edges(g);
        double opt_down = tc_series(g, optimal_modifications(g, ModKind::downdate, K)).back();
        double opt_up = tc_series(g, optimal_modifications(g, ModKind::update, K, &cand)).back();
        auto random_up = tc_series(g, select_updates(g, method("random"), K, cand));
        double worst_down = 0, worst_up = 0;
        std::size_t dominated = 0, steps = 0;
        for (auto m : {"eigenvector", "subgraph", "nodeTC"}) {
            double down = tc_series(g, select_downdates(g, method(m), K)).back();
            auto up = tc_series(g, select_updates(g, method(m), K, cand));
            worst_down = std::max(worst_down, rel(down, opt_down));
            worst_up = std::max(worst_up, rel(up.back(), opt_up));
            for (std::size_t s = 1; s < up.size() && s < random_up.size(); ++s, ++steps)
                dominated += up[s] >= random_up[s] ? 1 : 0;
        }
        ok = ok && worst_down <= 0.10 && worst_up <= 0.10 && dominated == steps;
        detail += name + ": downdate gap " + fmt("%.4f", worst_down) + ", update gap " + fmt("%.4f", worst_up) +
                  " (tol 0.10), beats random at " + std::to_string(dominated) + "/" + std::to_string(steps) +
                  " steps; ";
    }
    if (nets.empty()) detail = "no network available";
    return with_missing({ok && !nets.empty() ? Status::pass : Status::fail, detail}, missing);
}

Outcome greedy_vs_once() {
    std::vector<std::string> missing;
    auto nets = available(missing);
    const std::size_t K = 25;
    double worst = 0;
    std::string detail;
    for (const auto& [name, g] : nets) {
        auto cand = all_virtual_edges(g);
        detail += name + ":";
        for (std::string m : {"eigenvector", "subgraph", "nodeTC"}) {
            double gd = tc_series(g, select_downdates(g, method(m), K)).back();
            double nd = tc_series(g, select_downdates(g, method(m + ".no"), K)).back();
            double gu = tc_series(g, select_updates(g, method(m), K, cand)).back();
            double nu = tc_series(g, select_updates(g, method(m + ".no"), K, cand)).back();
            worst = std::max({worst, rel(nd, gd), rel(nu, gu)});
            detail += " " + m + " down " + fmt("%.3f", rel(nd, gd)) + " up " + fmt("%.3f", rel(nu, gu)) + ";";
        }
        detail += " ";
    }
    detail += "tol 0.05";
    return with_missing({worst <= 0.05 && !nets.empty() ? Status::pass : Status::fail, detail}, missing);
}

Outcome eigenvalue_shift() {
    checks::ShiftReport total;
    auto add = [&](const Graph& g, const ModificationPlan& plan) {
        auto r = checks::eigenvalue_shift(g, plan);
        total.checked += r.checked;
        total.violations += r.violations;
        total.worst = std::max(total.worst, r.worst);
    };
    const auto& fam = family();
    std::size_t used = 0;
    for (std::size_t gi = 0; gi < fam.size() && used < 40; ++gi) {
        const auto& g = fam[gi];
        if (g.n() > 60) continue;
        ++used;
        auto cand = build_candidate_set(g, 0.3);
        for (std::string m : {"eigenvector", "subgraph.no", "nodeTC", "degree.no", "random", "optimal"}) {
            auto s = method(m, gi + 1);
            add(g, select_downdates(g, s, 5));
            add(g, select_updates(g, s, 5, cand));
            if (m != "optimal") add(g, rewire(g, s, 3, cand));
        }
        add(g, chan_select(g, 5, std::min<std::size_t>(5, g.n() - 1)));
    }
    auto z = fixtures::zachary();
    auto zc = all_virtual_edges(z);
    for (std::string m : {"eigenvector", "subgraph", "nodeTC", "eigenvector.no", "nodeTC.no", "random"}) {
        add(z, select_downdates(z, method(m), 25));
        add(z, select_updates(z, method(m), 25, zc));
    }
    add(z, chan_select(z, 25, 5));
    auto pref = generate(parse_gen_spec("pref(1000,2)", 1)).graph;
    add(pref, select_updates(pref, method("eigenvector"), 50, build_candidate_set(pref, 0.1)));
    return {total.violations == 0 ? Status::pass : Status::fail,
            std::to_string(total.checked) + " modifications, " + std::to_string(total.violations) +
                " violations, worst excess " + fmt("%.2e", total.worst) + " (slack 1e-8)"};
}

std::vector<double> ranks(const std::vector<double>& x) {
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> r(x.size());
    for (std::size_t k = 0; k < idx.size();) {
        std::size_t e = k;
        while (e + 1 < idx.size() && x[idx[e + 1]] == x[idx[k]]) ++e;
        for (std::size_t t = k; t <= e; ++t) r[idx[t]] = 0.5 * double(k + e) + 1;
        k = e + 1;
    }
    return r;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    auto ra = ranks(a), rb = ranks(b);
    double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / double(ra.size());
    double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / double(rb.size());
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t k = 0; k < ra.size(); ++k) {
        sab += (ra[k] - ma) * (rb[k] - mb);
        saa += (ra[k] - ma) * (ra[k] - ma);
        sbb += (rb[k] - mb) * (rb[k] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

Outcome natural_mirroring() {
    auto g = generate(parse_gen_spec("pref(1000,2)", 1)).graph;
    auto plan = select_updates(g, method("eigenvector"), 50, build_candidate_set(g, 0.1));
    std::vector<double> tc, nat, free;
    Graph cur = g;
    auto record = [&](const Graph& h) {
        tc.push_back(tcn(h));
        Vector ev = dense_eigenvalues(h);
        auto th = thermo_profile(std::span<const double>(ev.data(), std::size_t(ev.size())), 1.0);
        nat.push_back(-th.free_energy - std::log(double(h.n())));
        free.push_back(th.free_energy);
    };
    record(cur);
    for (const auto& r : plan.records) {
        cur = apply(cur, r);
        record(cur);
    }
    bool inc = true, dec = true;
    for (std::size_t k = 1; k < tc.size(); ++k) {
        inc = inc && tc[k] > tc[k - 1] && nat[k] > nat[k - 1];
        dec = dec && free[k] < free[k - 1];
    }
    double rho = spearman(tc, nat);
    bool ok = plan.records.size() == 50 && inc && dec && rho >= 0.99;
    return {ok ? Status::pass : Status::fail,
            std::to_string(plan.records.size()) + " updates, TC/n " + fmt("%.4f", tc.front()) + " -> " +
                fmt("%.4f", tc.back()) + ", natural connectivity " + fmt("%.4f", nat.front()) + " -> " +
                fmt("%.4f", nat.back()) + (inc ? ", both strictly increasing" : ", NOT strictly increasing") +
                ", Spearman " + fmt("%.4f", rho) + " (min 0.99)" +
                (dec ? ", free energy strictly decreasing" : ", free energy NOT strictly decreasing")};
}

// Chan with one tracked pair never changes its vector, so its choices are the
// best eEC pairs among the top max-degree nodes of the initial ranking.
std::vector<EdgeRef> fixed_vector_choices(const Graph& g, std::size_t K) {
    auto q = eigenvector_centrality(g).values;
    auto order = rank_nodes(q);
    Graph cur = g;
    std::vector<EdgeRef> out;
    for (std::size_t s = 0; s < K; ++s) {
        std::size_t c = std::min(cur.max_degree(), cur.n());
        std::vector<EdgeScore> items;
        for (std::size_t a = 0; a < c; ++a)
            for (std::size_t b = a + 1; b < c; ++b) {
                if (cur.has_edge(order[a], order[b])) continue;
                auto e = EdgeRef::make(order[a], order[b]);
                items.push_back({e, EdgeMeasure::eec, std::exp(2 * q[e.i] * q[e.j])});
            }
        auto best = best_index(items, RankOrder::descending);
        if (!best) break;
        out.push_back(items[*best].edge);
        cur = update_edge(cur, out.back());
    }
    return out;
}

Outcome chan_comparison() {
    struct Case {
        std::string name;
        Graph g;
        double pct;
    };
    std::vector<Case> cases{{"pref(1000,2)", generate(parse_gen_spec("pref(1000,2)", 1)).graph, 0.1},
                            {"zachary", fixtures::zachary(), 1.0}};
    const std::size_t K = 50;
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
        auto cand = build_candidate_set(c.g, c.pct);
        double chan = tcn(replay(c.g, chan_select(c.g, K, 5)));
        double etc = tcn(replay(c.g, select_updates(c.g, method("nodeTC.no"), K, cand)));
        double eec = tcn(replay(c.g, select_updates(c.g, method("eigenvector.no"), K, cand)));
        auto t1 = chan_select(c.g, K, 1);
        auto expect = fixed_vector_choices(c.g, K);
        bool same = t1.records.size() == expect.size();
        for (std::size_t k = 0; same && k < expect.size(); ++k) same = t1.records[k].edge == expect[k];
        bool local = etc >= 0.95 * chan && eec >= 0.95 * chan && same;
        ok = ok && local;
        detail += c.name + ": chan " + fmt("%.4f", chan) + ", eTC.no " + fmt("%.4f", etc) + ", eEC.no " +
                  fmt("%.4f", eec) + " (min ratio " + fmt("%.3f", std::min(etc, eec) / chan) + ", need 0.95), t=1 " +
                  (same ? "coincides" : "DIFFERS") + "; ";
    }
    return {ok ? Status::pass : Status::fail, detail};
}

double seconds(const std::function<void()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome scaling() {
    const std::size_t K = 500;
    std::map<std::size_t, Graph> graphs;
    for (std::size_t n = 1000; n <= 7000; n += 1000)
        graphs[n] = generate(parse_gen_spec("pref(" + std::to_string(n) + ",2)", 1)).graph;
    bool ok = true;
    std::string detail;
    for (std::string m : {"nodeTC", "eigenvector"}) {
        std::map<std::size_t, double> t;
        for (auto& [n, g] : graphs) {
            double best = 1e300;
            for (int rep = 0; rep < 3; ++rep)
                best = std::min(best, seconds([&, &g = g] { select_downdates(g, method(m + ".no"), K); }));
            t[n] = best;
        }
        double growth = t[7000] / t[1000];
        double greedy = seconds([&] { select_downdates(graphs[7000], method(m), K); });
        double speedup = greedy / t[7000];
        ok = ok && growth <= 10 && speedup >= 10;
        detail += m + ".no " + fmt("%.3f", t[1000]) + "s -> " + fmt("%.3f", t[7000]) + "s (ratio " +
                  fmt("%.2f", growth) + ", max 10), greedy at 7000 " + fmt("%.2f", greedy) + "s (" +
                  fmt("%.0f", speedup) + "x, min 10); ";
    }
    return {ok ? Status::pass : Status::fail, detail};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    auto dir = fs::temp_directory_path() / "tcomm_acceptance_replay";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::string zach = std::string(TCOMM_DATA_DIR) + "/zachary.mtx";

    std::vector<ExperimentConfig> cfgs;
    auto add = [&](Mode mode, const std::string& input, const std::string& gen, std::vector<std::string> methods) {
        ExperimentConfig c;
        c.mode = mode;
        c.input = input;
        c.generate = gen;
        c.methods = std::move(methods);
        c.budget = 8;
        c.pct = 0.2;
        c.seed = 7;
        cfgs.push_back(c);
    };
    add(Mode::analyze, zach, "", {"eigenvector"});
    add(Mode::downdate, zach, "", {"subgraph"});
    add(Mode::update, "", "pref(400,2)", {"random"});
    add(Mode::update, "", "smallw(300,2,0.1)", {"chan"});
    add(Mode::rewire, zach, "", {"nodeTC.no"});
    add(Mode::bounds, "", "pref(300,3)", {"eigenvector"});
    cfgs.back().bounds_track = true;
    add(Mode::generate, "", "smallw(200,3,0.2)", {"eigenvector"});
    add(Mode::compare, zach, "", {"eigenvector", "degree.no", "random"});

    std::size_t files = 0, mismatched = 0;
    std::ostringstream log;
    for (std::size_t k = 0; k < cfgs.size(); ++k) {
        auto cfg = cfgs[k];
        cfg.out_prefix = (dir / ("run" + std::to_string(k))).string();
        auto first = run(cfg, log);
        if (first.exit_code != 0) {
            ++mismatched;
            continue;
        }
        auto again = load_manifest(cfg.out_prefix + ".manifest.json");
        again.out_prefix = (dir / ("replay" + std::to_string(k))).string();
        auto second = run(again, log);
        for (const auto& path : first.artifacts) {
            auto ext = fs::path(path).filename().string().substr(fs::path(cfg.out_prefix).filename().string().size());
            if (ext == ".manifest.json") continue;
            ++files;
            if (second.exit_code != 0 || slurp(path) != slurp(again.out_prefix + ext)) ++mismatched;
        }
    }
    fs::remove_all(dir);
    return {mismatched == 0 && files > 0 ? Status::pass : Status::fail,
            std::to_string(cfgs.size()) + " manifests replayed, " + std::to_string(files - std::min(files, mismatched)) +
                "/" + std::to_string(files) + " artifacts byte-identical"};
}

const std::map<int, std::pair<const char*, Outcome (*)()>> criteria = {
    {1, {"spectral fidelity", spectral_fidelity}},
    {2, {"oracle equivalence", oracle_equivalence}},
    {3, {"bound bracketing", bound_bracketing}},
    {4, {"coarse-bound equality cases", coarse_equality}},
    {5, {"heuristic near-optimality", near_optimality}},
    {6, {"greedy vs ranked-once", greedy_vs_once}},
    {7, {"eigenvalue-shift inequalities", eigenvalue_shift}},
    {8, {"natural-connectivity mirroring", natural_mirroring}},
    {9, {"comparison with eigenpair-update method", chan_comparison}},
    {10, {"scaling", scaling}},
    {11, {"determinism", determinism}},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    std::vector<int> which;
    app.add_option("--criterion,-c", which, "criteria to run (default: all)")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);
    if (which.empty())
        for (const auto& [k, _] : criteria) which.push_back(k);

    bool failed = false, incomplete = false;
    for (int k : which) {
        const auto& [name, fn] = criteria.at(k);
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {Status::fail, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %d (%s): %s [%.1fs]\n", o.status == Status::pass ? "PASS" : "FAIL", k, name,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failed |= o.status == Status::fail;
        incomplete |= o.status == Status::incomplete;
    }
    if (failed) return 1;
    return incomplete ? 77 : 0;
}
