#include "tcomm/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tcomm/bounds.hpp"
#include "tcomm/centrality.hpp"
#include "tcomm/generators.hpp"
#include "tcomm/io.hpp"
#include "tcomm/robustness.hpp"

namespace tcomm {

using json = nlohmann::ordered_json;

namespace {

constexpr std::pair<const char*, Mode> mode_names[] = {
    {"analyze", Mode::analyze}, {"downdate", Mode::downdate}, {"update", Mode::update},
    {"rewire", Mode::rewire},   {"bounds", Mode::bounds},     {"generate", Mode::generate},
    {"bench", Mode::bench},     {"compare", Mode::compare},
};

enum ExitCode { ok = 0, usage_error = 1, io_error = 2, infeasible = 3, cap_error = 4, numeric_error = 5 };

std::string num(double x) {
    if (std::isnan(x)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

ModKind parse_kind(const std::string& s) {
    if (s == "downdate") return ModKind::downdate;
    if (s == "update") return ModKind::update;
    throw std::invalid_argument("unknown modification kind '" + s + "'");
}

const char* candidate_mode_name(CandidateMode m) { return m == CandidateMode::within ? "within" : "incident"; }

struct Loaded {
    Graph graph;
    std::vector<NodeId> label;
    std::size_t base = 0;
    std::string source;
    std::vector<std::string> metadata;
    std::vector<std::string> warnings;
};

Loaded load(const ExperimentConfig& cfg) {
    Loaded out;
    Graph raw;
    if (!cfg.generate.empty()) {
        auto gen = generate(parse_gen_spec(cfg.generate, cfg.seed));
        raw = std::move(gen.graph);
        out.metadata = gen.metadata;
        out.source = cfg.generate;
        if (gen.regenerations > 0) {
            out.warnings.push_back("generator redrew " + std::to_string(gen.regenerations) +
                                   " disconnected samples");
        }
    } else {
        if (cfg.input.empty()) throw std::invalid_argument("either --input or --generate is required");
        ReadOptions opts;
        opts.allow_self_loops = cfg.allow_self_loops;
        opts.mode = cfg.strict_io ? IngestMode::strict : IngestMode::lenient;
        try {
            raw = read_graph(cfg.input, opts);
        } catch (const std::exception& e) {
            throw std::runtime_error(cfg.input + ": " + e.what());
        }
        out.source = cfg.input;
        if (std::filesystem::path(cfg.input).extension() == ".mtx") out.base = 1;
    }
    if (raw.n() == 0) throw std::invalid_argument("input graph has no nodes");
    if (is_connected(raw)) {
        out.label.resize(raw.n());
        for (NodeId v = 0; v < raw.n(); ++v) out.label[v] = v;
        out.graph = std::move(raw);
    } else {
        auto sub = largest_component(raw);
        out.warnings.push_back("input has several components; using the largest (" + std::to_string(sub.graph.n()) +
                               " of " + std::to_string(raw.n()) + " nodes)");
        out.graph = std::move(sub.graph);
        out.label = std::move(sub.original_label);
    }
    return out;
}

StrategyConfig strategy(const ExperimentConfig& cfg, const std::string& method) {
    StrategyConfig s = parse_method(method);
    if (cfg.greedy && edge_measure_of(s.method)) s.greedy = *cfg.greedy;
    s.rng_seed = cfg.seed;
    s.chan_t = cfg.chan_t;
    s.oracle_cap = cfg.oracle_cap;
    return s;
}

ModificationPlan make_plan(const ExperimentConfig& cfg, const Graph& g, const StrategyConfig& s, Mode mode,
                           ModKind kind) {
    if (mode == Mode::downdate || (mode != Mode::rewire && kind == ModKind::downdate)) {
        return select_downdates(g, s, cfg.budget);
    }
    CandidateSet cand = s.method == Method::chan ? CandidateSet{} : build_candidate_set(g, cfg.pct, cfg.candidate_mode);
    if (mode == Mode::rewire) return rewire(g, s, cfg.budget, cand);
    return select_updates(g, s, cfg.budget, cand);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

struct Context {
    const ExperimentConfig& cfg;
    std::ostream& log;
    RunResult result;
    json manifest;
};

std::string label_of(const Loaded& L, NodeId v) { return std::to_string(L.label[v] + L.base); }

void write_trajectory(const std::string& path, const Loaded& L, const std::vector<MetricSnapshot>& traj,
                      const ModificationPlan* plan, bool timings) {
    auto out = open_out(path);
    out << trajectory_header << '\n';
    for (const auto& s : traj) {
        out << s.step << ',';
        if (s.record) {
            out << to_string(s.record->kind) << ',' << label_of(L, s.record->edge.i) << ','
                << label_of(L, s.record->edge.j);
        } else {
            out << "initial,,";
        }
        double ms = 0.0;
        if (timings && plan && s.step > 0 && s.step <= plan->selection_ms.size()) ms = plan->selection_ms[s.step - 1];
        out << ',' << num(s.tc_normalized) << ',' << num(s.natural_connectivity) << ',' << num(s.lambda1) << ','
            << num(s.lambda2) << ',' << num(s.gap) << ',' << num(ms) << '\n';
    }
}

json plan_json(const Loaded& L, const std::string& method, const ModificationPlan& plan) {
    json records = json::array();
    for (const auto& r : plan.records) {
        records.push_back({to_string(r.kind), L.label[r.edge.i] + L.base, L.label[r.edge.j] + L.base});
    }
    return {{"method", method},
            {"records", records},
            {"shortfall", plan.shortfall},
            {"warnings", plan.warnings}};
}

void add_warnings(Context& ctx, const std::vector<std::string>& w) {
    for (const auto& s : w) {
        ctx.result.warnings.push_back(s);
        ctx.log << "warning: " << s << '\n';
    }
}

void graph_summary(Context& ctx, const Loaded& L) {
    ctx.manifest["graph"] = {{"source", L.source},
                             {"n", L.graph.n()},
                             {"m", L.graph.m()},
                             {"self_loops", L.graph.self_loops().size()}};
    if (!L.metadata.empty()) ctx.manifest["generator"] = L.metadata;
    add_warnings(ctx, L.warnings);
}

int do_analyze(Context& ctx) {
    const auto& cfg = ctx.cfg;
    Loaded L = load(cfg);
    graph_summary(ctx, L);
    const Graph& g = L.graph;
    auto snap = snapshot(g, cfg.metrics, cfg.oracle_cap);
    std::string path = cfg.out_prefix + ".trajectory.csv";
    write_trajectory(path, L, std::vector<MetricSnapshot>{snap}, nullptr, false);
    ctx.result.artifacts.push_back(path);

    auto b = tc_bounds(g);
    auto ee = estrada_index(g, true, cfg.oracle_cap);
    auto th = thermo_profile(g, cfg.beta, cfg.oracle_cap, 50);
    ctx.log << "graph        " << L.source << "  n=" << g.n() << " m=" << g.m() << '\n'
            << "TC/n         " << num(snap.tc_normalized) << "  bounds [" << num(b.lower) << ", " << num(b.upper)
            << "]\n"
            << "lambda1      " << num(snap.lambda1) << "  lambda2 " << num(snap.lambda2) << "  gap " << num(snap.gap)
            << '\n'
            << "estrada      " << num(ee.value) << (ee.exact ? "" : " (estimate)") << "  natural connectivity "
            << num(snap.natural_connectivity) << '\n'
            << "beta=" << num(cfg.beta) << "       log Z " << num(th.log_z) << "  S " << num(th.entropy) << "  H "
            << num(th.energy) << "  F " << num(th.free_energy) << (th.truncated ? " (top eigenvalues only)" : "")
            << '\n';
    ctx.manifest["summary"] = {{"tc_normalized", snap.tc_normalized},
                               {"lambda1", snap.lambda1},
                               {"lambda2", snap.lambda2},
                               {"bounds", json::array({b.lower, b.upper})},
                               {"estrada_index", ee.value},
                               {"free_energy", th.free_energy}};
    return ok;
}

int do_modify(Context& ctx) {
    const auto& cfg = ctx.cfg;
    Loaded L = load(cfg);
    graph_summary(ctx, L);
    const std::string& method = cfg.methods.at(0);
    auto s = strategy(cfg, method);
    auto plan = make_plan(cfg, L.graph, s, cfg.mode, cfg.kind);
    add_warnings(ctx, plan.warnings);
    ctx.manifest["plans"] = json::array({plan_json(L, method_name(s), plan)});

    auto traj = track_trajectory(L.graph, plan.records, cfg.metrics, cfg.oracle_cap);
    std::string path = cfg.out_prefix + ".trajectory.csv";
    write_trajectory(path, L, traj, &plan, cfg.timings);
    ctx.result.artifacts.push_back(path);
    if (cfg.write_graph) {
        std::string gpath = cfg.out_prefix + ".graph.mtx";
        write_matrix_market(gpath, replay(L.graph, plan),
                            {"modified by " + method_name(s) + " " + to_string(cfg.mode) + " K=" +
                             std::to_string(cfg.budget) + " seed=" + std::to_string(cfg.seed)});
        ctx.result.artifacts.push_back(gpath);
    }
    ctx.log << method_name(s) << ' ' << to_string(cfg.mode) << ": " << plan.records.size() << " records, TC/n "
            << num(traj.front().tc_normalized) << " -> " << num(traj.back().tc_normalized) << '\n';
    if (plan.records.empty()) {
        ctx.log << "error: no feasible modification (every candidate is infeasible)\n";
        return infeasible;
    }
    return ok;
}

int do_bounds(Context& ctx) {
    const auto& cfg = ctx.cfg;
    Loaded L = load(cfg);
    graph_summary(ctx, L);
    const Graph& g = L.graph;
    std::string path = cfg.out_prefix + ".bounds.csv";
    auto out = open_out(path);
    out << "step,kind,i,j,lower,tc_normalized,upper,alpha,beta,omega,gamma\n";
    auto row = [&](std::size_t step, const ModificationRecord* r, const BoundsPair& b, double tc) {
        out << step << ',';
        if (r) {
            out << to_string(r->kind) << ',' << label_of(L, r->edge.i) << ',' << label_of(L, r->edge.j);
        } else {
            out << "initial,,";
        }
        out << ',' << num(b.lower) << ',' << num(tc) << ',' << num(b.upper) << ',' << num(b.interval.alpha) << ','
            << num(b.interval.beta) << ',' << num(b.moments.omega) << ',' << num(b.moments.gamma) << '\n';
    };
    BoundsPair b = tc_bounds(g);
    row(0, nullptr, b, total_communicability(g).normalized);
    ctx.log << "TC/n bounds [" << num(b.lower) << ", " << num(b.upper) << "]\n";
    if (cfg.bounds_track) {
        auto s = strategy(cfg, cfg.methods.at(0));
        auto plan = make_plan(cfg, g, s, cfg.kind == ModKind::downdate ? Mode::downdate : Mode::update, cfg.kind);
        add_warnings(ctx, plan.warnings);
        ctx.manifest["plans"] = json::array({plan_json(L, method_name(s), plan)});
        Graph cur = g;
        DegreeMoments mom = b.moments;
        SpectrumInterval iv = b.interval;
        for (const auto& r : plan.records) {
            double di = cur.row_sum(r.edge.i), dj = cur.row_sum(r.edge.j);
            mom = r.kind == ModKind::downdate ? downdated_moments(mom, di, dj) : updated_moments(mom, di, dj);
            iv = interval_after(r.kind, iv);
            cur = apply(cur, r);
            row(r.step, &r, tc_bounds(mom, iv), total_communicability(cur).normalized);
        }
    }
    ctx.result.artifacts.push_back(path);
    return ok;
}

int do_generate(Context& ctx) {
    const auto& cfg = ctx.cfg;
    if (cfg.generate.empty()) throw std::invalid_argument("generate mode needs --generate <spec>");
    auto gen = generate(parse_gen_spec(cfg.generate, cfg.seed));
    ctx.manifest["graph"] = {{"source", cfg.generate}, {"n", gen.graph.n()}, {"m", gen.graph.m()}};
    ctx.manifest["generator"] = gen.metadata;
    std::string path = cfg.out_prefix + ".mtx";
    write_matrix_market(path, gen.graph, gen.metadata);
    ctx.result.artifacts.push_back(path);
    ctx.log << "wrote " << path << "  n=" << gen.graph.n() << " m=" << gen.graph.m() << '\n';
    return ok;
}

int do_bench(Context& ctx) {
    const auto& cfg = ctx.cfg;
    std::string path = cfg.out_prefix + ".bench.csv";
    auto out = open_out(path);
    out << "n,m,method,K,selection_ms\n";
    json rows = json::array();
    for (std::size_t n : cfg.bench_sizes) {
        GenSpec spec;
        spec.model = GenModel::pref;
        spec.n = n;
        spec.d = cfg.bench_d;
        spec.seed = cfg.seed;
        Graph g = generate(spec).graph;
        for (const auto& method : cfg.methods) {
            auto s = strategy(cfg, method);
            auto plan = make_plan(cfg, g, s, cfg.kind == ModKind::downdate ? Mode::downdate : Mode::update, cfg.kind);
            out << n << ',' << g.m() << ',' << method_name(s) << ',' << cfg.budget << ',' << num(plan.total_ms)
                << '\n';
            ctx.log << "n=" << n << ' ' << method_name(s) << ' ' << num(plan.total_ms) << " ms\n";
            out.flush();
        }
    }
    ctx.result.artifacts.push_back(path);
    return ok;
}

int do_compare(Context& ctx) {
    const auto& cfg = ctx.cfg;
    Loaded L = load(cfg);
    graph_summary(ctx, L);
    std::vector<std::string> names;
    std::vector<std::vector<MetricSnapshot>> trajs;
    json plans = json::array();
    const Mode mode = cfg.kind == ModKind::downdate ? Mode::downdate : Mode::update;
    for (const auto& method : cfg.methods) {
        auto s = strategy(cfg, method);
        auto plan = make_plan(cfg, L.graph, s, mode, cfg.kind);
        add_warnings(ctx, plan.warnings);
        plans.push_back(plan_json(L, method_name(s), plan));
        names.push_back(method_name(s));
        trajs.push_back(track_trajectory(L.graph, plan.records, cfg.metrics, cfg.oracle_cap));
        ctx.log << names.back() << ": TC/n " << num(trajs.back().front().tc_normalized) << " -> "
                << num(trajs.back().back().tc_normalized) << '\n';
    }
    ctx.manifest["plans"] = plans;

    std::string path = cfg.out_prefix + ".compare.csv";
    auto out = open_out(path);
    std::vector<std::pair<std::string, double MetricSnapshot::*>> cols;
    if (cfg.metrics.tc) cols.emplace_back("tc_normalized", &MetricSnapshot::tc_normalized);
    if (cfg.metrics.natural) cols.emplace_back("natural_connectivity", &MetricSnapshot::natural_connectivity);
    if (cfg.metrics.spectrum) {
        cols.emplace_back("lambda1", &MetricSnapshot::lambda1);
        cols.emplace_back("gap", &MetricSnapshot::gap);
    }
    out << "step";
    for (const auto& name : names) {
        for (const auto& c : cols) out << ',' << name << ':' << c.first;
    }
    out << '\n';
    std::size_t rows = 0;
    for (const auto& t : trajs) rows = std::max(rows, t.size());
    for (std::size_t r = 0; r < rows; ++r) {
        out << r;
        for (const auto& t : trajs) {
            for (const auto& c : cols) out << ',' << (r < t.size() ? num(t[r].*(c.second)) : "");
        }
        out << '\n';
    }
    ctx.result.artifacts.push_back(path);
    return ok;
}

}  // namespace

const char* to_string(Mode m) {
    for (const auto& [name, mode] : mode_names) {
        if (mode == m) return name;
    }
    return "?";
}

Mode parse_mode(const std::string& s) {
    for (const auto& [name, mode] : mode_names) {
        if (s == name) return mode;
    }
    throw std::invalid_argument("unknown mode '" + s + "'");
}

std::string config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["mode"] = to_string(cfg.mode);
    j["input"] = cfg.input;
    j["generate"] = cfg.generate;
    j["methods"] = cfg.methods;
    j["greedy"] = cfg.greedy ? json(*cfg.greedy) : json(nullptr);
    j["budget"] = cfg.budget;
    j["pct"] = cfg.pct;
    j["candidate_mode"] = candidate_mode_name(cfg.candidate_mode);
    j["kind"] = to_string(cfg.kind);
    j["bounds_track"] = cfg.bounds_track;
    j["seed"] = cfg.seed;
    j["chan_t"] = cfg.chan_t;
    j["beta"] = cfg.beta;
    j["out_prefix"] = cfg.out_prefix;
    j["oracle_cap"] = cfg.oracle_cap;
    j["strict_io"] = cfg.strict_io;
    j["allow_self_loops"] = cfg.allow_self_loops;
    j["timings"] = cfg.timings;
    j["write_graph"] = cfg.write_graph;
    j["metrics"] = {{"tc", cfg.metrics.tc}, {"natural", cfg.metrics.natural}, {"spectrum", cfg.metrics.spectrum}};
    j["bench_sizes"] = cfg.bench_sizes;
    j["bench_d"] = cfg.bench_d;
    return j.dump(2);
}

ExperimentConfig config_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.contains("config")) j = j["config"];
    ExperimentConfig cfg;
    cfg.mode = parse_mode(j.value("mode", "analyze"));
    cfg.input = j.value("input", "");
    cfg.generate = j.value("generate", "");
    if (j.contains("methods")) cfg.methods = j["methods"].get<std::vector<std::string>>();
    if (j.contains("greedy") && !j["greedy"].is_null()) cfg.greedy = j["greedy"].get<bool>();
    cfg.budget = j.value("budget", cfg.budget);
    cfg.pct = j.value("pct", cfg.pct);
    cfg.candidate_mode =
        j.value("candidate_mode", std::string("within")) == "incident" ? CandidateMode::incident : CandidateMode::within;
    cfg.kind = parse_kind(j.value("kind", std::string("update")));
    cfg.bounds_track = j.value("bounds_track", false);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.chan_t = j.value("chan_t", cfg.chan_t);
    cfg.beta = j.value("beta", cfg.beta);
    cfg.out_prefix = j.value("out_prefix", cfg.out_prefix);
    cfg.oracle_cap = j.value("oracle_cap", cfg.oracle_cap);
    cfg.strict_io = j.value("strict_io", false);
    cfg.allow_self_loops = j.value("allow_self_loops", false);
    cfg.timings = j.value("timings", false);
    cfg.write_graph = j.value("write_graph", false);
    if (j.contains("metrics")) {
        cfg.metrics.tc = j["metrics"].value("tc", true);
        cfg.metrics.natural = j["metrics"].value("natural", true);
        cfg.metrics.spectrum = j["metrics"].value("spectrum", true);
    }
    if (j.contains("bench_sizes")) cfg.bench_sizes = j["bench_sizes"].get<std::vector<std::size_t>>();
    cfg.bench_d = j.value("bench_d", cfg.bench_d);
    return cfg;
}

ExperimentConfig load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_json(buf.str());
}

RunResult run(const ExperimentConfig& cfg, std::ostream& log) {
    Context ctx{cfg, log, {}, json::object()};
    ctx.manifest["tool"] = "tcomm";
    ctx.manifest["version"] = library_version;
    ctx.manifest["seed"] = cfg.seed;
    ctx.manifest["config"] = json::parse(config_to_json(cfg));
    std::string error;
    try {
        if (cfg.methods.empty()) throw std::invalid_argument("at least one --method is required");
        switch (cfg.mode) {
            case Mode::analyze: ctx.result.exit_code = do_analyze(ctx); break;
            case Mode::downdate:
            case Mode::update:
            case Mode::rewire: ctx.result.exit_code = do_modify(ctx); break;
            case Mode::bounds: ctx.result.exit_code = do_bounds(ctx); break;
            case Mode::generate: ctx.result.exit_code = do_generate(ctx); break;
            case Mode::bench: ctx.result.exit_code = do_bench(ctx); break;
            case Mode::compare: ctx.result.exit_code = do_compare(ctx); break;
        }
    } catch (const CapExceeded& e) {
        error = e.what();
        ctx.result.exit_code = cap_error;
    } catch (const NonConvergence& e) {
        error = e.what();
        ctx.result.exit_code = numeric_error;
    } catch (const std::invalid_argument& e) {
        error = e.what();
        ctx.result.exit_code = usage_error;
    } catch (const std::out_of_range& e) {
        error = e.what();
        ctx.result.exit_code = usage_error;
    } catch (const std::exception& e) {
        error = e.what();
        ctx.result.exit_code = io_error;
    }
    if (!error.empty()) {
        static const std::map<int, const char*> kinds = {
            {usage_error, "invalid"}, {io_error, "io"}, {cap_error, "cap"}, {numeric_error, "numeric"}};
        log << "error[" << kinds.at(ctx.result.exit_code) << "]: " << error << '\n';
        ctx.manifest["error"] = {{"kind", kinds.at(ctx.result.exit_code)}, {"message", error}};
    }
    ctx.manifest["exit_code"] = ctx.result.exit_code;
    ctx.manifest["warnings"] = ctx.result.warnings;
    ctx.manifest["artifacts"] = ctx.result.artifacts;
    try {
        std::string mpath = cfg.out_prefix + ".manifest.json";
        auto out = open_out(mpath);
        out << ctx.manifest.dump(2) << '\n';
        ctx.result.artifacts.push_back(mpath);
    } catch (const std::exception& e) {
        log << "error[io]: " << e.what() << '\n';
        if (ctx.result.exit_code == ok) ctx.result.exit_code = io_error;
    }
    return ctx.result;
}

}  // namespace tcomm
