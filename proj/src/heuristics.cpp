#include "tcomm/heuristics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "tcomm/rng.hpp"

namespace tcomm {

namespace {

using Clock = std::chrono::steady_clock;

// Edge removals tracked as a mask over the original graph, with a bridge test
// by bidirectional search between the endpoints.
class MaskedGraph {
public:
    explicit MaskedGraph(const Graph& g) : g_(g), removed_(g.m(), 0), seen_(g.n(), 0), side_(g.n(), 0) {
        eid_.reserve(2 * g.m());
        for (NodeId v = 0; v < g.n(); ++v)
            for (NodeId w : g.neighbors(v)) eid_.push_back(g.edge_index(EdgeRef::make(v, w)));
        offset_.assign(g.n() + 1, 0);
        for (NodeId v = 0; v < g.n(); ++v) offset_[v + 1] = offset_[v] + g.degree(v);
    }

    void remove(const EdgeRef& e) { removed_[g_.edge_index(e)] = 1; }

    // True if e is still present and its endpoints stay joined without it.
    bool removable(const EdgeRef& e) {
        std::size_t skip = g_.edge_index(e);
        if (skip == g_.m() || removed_[skip]) return false;
        ++epoch_;
        std::vector<NodeId> fa{e.i}, fb{e.j};
        seen_[e.i] = seen_[e.j] = epoch_;
        side_[e.i] = 0;
        side_[e.j] = 1;
        std::vector<NodeId> next;
        while (!fa.empty() && !fb.empty()) {
            bool a_turn = fa.size() <= fb.size();
            auto& front = a_turn ? fa : fb;
            char mine = a_turn ? 0 : 1;
            next.clear();
            for (NodeId v : front) {
                auto nb = g_.neighbors(v);
                for (std::size_t k = 0; k < nb.size(); ++k) {
                    std::size_t id = eid_[offset_[v] + k];
                    if (id == skip || removed_[id]) continue;
                    NodeId w = nb[k];
                    if (seen_[w] == epoch_) {
                        if (side_[w] != mine) return true;
                        continue;
                    }
                    seen_[w] = epoch_;
                    side_[w] = mine;
                    next.push_back(w);
                }
            }
            front.swap(next);
        }
        return false;
    }

private:
    const Graph& g_;
    std::vector<char> removed_;
    std::vector<std::size_t> eid_, offset_;
    std::vector<std::uint32_t> seen_;
    std::vector<char> side_;
    std::uint32_t epoch_ = 0;
};

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct MethodName {
    const char* name;
    Method method;
};

constexpr MethodName method_names[] = {
    {"optimal", Method::optimal}, {"subgraph", Method::subgraph}, {"eigenvector", Method::eigenvector},
    {"nodeTC", Method::node_tc},  {"degree", Method::degree},     {"node", Method::node},
    {"random", Method::random},   {"chan", Method::chan},
};

// Sub-seed streams, one per selection routine.
enum Stream : std::uint64_t { downdate_stream = 1, update_stream = 2, rewire_stream = 3 };

Rng stream_rng(std::uint64_t seed, Stream s) { return Rng(splitmix64(seed ^ splitmix64(s))); }

void require_budget(std::size_t K) {
    if (K == 0) throw std::invalid_argument("budget K must be at least 1");
}

void require_connected(const Graph& g, const char* who) {
    if (g.n() == 0 || !is_connected(g)) {
        throw std::invalid_argument(std::string(who) + ": input graph must be connected (use largest_component)");
    }
}

void finish(ModificationPlan& plan, std::size_t K, const char* what, std::size_t records_per_step = 1) {
    plan.total_ms = 0.0;
    for (double t : plan.selection_ms) plan.total_ms += t;
    std::size_t done = plan.records.size() / records_per_step;
    if (done < K) {
        plan.shortfall = true;
        plan.warnings.push_back(std::string(what) + ": only " + std::to_string(done) + " of " + std::to_string(K) +
                                " feasible modifications found");
    }
}

void push(ModificationPlan& plan, ModKind kind, const EdgeRef& e) {
    plan.records.push_back({kind, e, plan.records.size() + 1});
}

std::set<EdgeRef> bridge_set(const Graph& g) {
    auto b = find_bridges(g);
    return {b.begin(), b.end()};
}

std::vector<EdgeRef> downdate_candidates(const Graph& g, const StrategyConfig& cfg) {
    if (cfg.downdate_node_fraction <= 0.0) return g.edges();
    if (cfg.downdate_node_fraction > 1.0) throw std::invalid_argument("downdate_node_fraction must lie in (0, 1]");
    auto q = eigenvector_centrality(g).values;
    for (double& x : q) x = -x;
    auto order = rank_nodes(q);
    auto keep = static_cast<std::size_t>(std::ceil(cfg.downdate_node_fraction * static_cast<double>(g.n()) - 1e-9));
    std::vector<char> low(g.n(), 0);
    for (std::size_t k = 0; k < keep; ++k) low[order[k]] = 1;
    std::vector<EdgeRef> out;
    for (const auto& e : g.edges()) {
        if (low[e.i] || low[e.j]) out.push_back(e);
    }
    return out;
}

EdgeMeasure measure_or_throw(const StrategyConfig& cfg, const char* who) {
    auto m = edge_measure_of(cfg.method);
    if (!m) throw std::invalid_argument(std::string(who) + ": method " + method_name(cfg) + " is not supported here");
    return *m;
}

NodeScores scores(const Graph& g, EdgeMeasure m, const StrategyConfig& cfg) {
    return node_scores_for(g, m, cfg.oracle_cap);
}

}  // namespace

StrategyConfig parse_method(const std::string& name) {
    StrategyConfig cfg;
    std::string base = name;
    if (base.size() > 3 && base.ends_with(".no")) {
        base.resize(base.size() - 3);
        cfg.greedy = false;
    }
    for (const auto& mn : method_names) {
        if (base == mn.name) {
            cfg.method = mn.method;
            if (!cfg.greedy && !edge_measure_of(mn.method)) {
                throw std::invalid_argument("method '" + base + "' has no .no variant");
            }
            return cfg;
        }
    }
    throw std::invalid_argument("unknown method '" + name + "'");
}

std::string method_name(const StrategyConfig& cfg) {
    for (const auto& mn : method_names) {
        if (mn.method == cfg.method) return std::string(mn.name) + (cfg.greedy ? "" : ".no");
    }
    return "?";
}

std::optional<EdgeMeasure> edge_measure_of(Method m) {
    switch (m) {
        case Method::subgraph: return EdgeMeasure::esc;
        case Method::eigenvector: return EdgeMeasure::eec;
        case Method::node_tc: return EdgeMeasure::etc;
        case Method::degree: return EdgeMeasure::degree;
        default: return std::nullopt;
    }
}

CandidateSet build_candidate_set(const Graph& g, double pct, CandidateMode mode) {
    if (!(pct > 0.0 && pct <= 1.0)) throw std::invalid_argument("build_candidate_set: pct must lie in (0, 1]");
    CandidateSet cs;
    auto order = rank_nodes(eigenvector_centrality(g).values);
    auto ell = static_cast<std::size_t>(std::ceil(pct * static_cast<double>(g.n()) - 1e-9));
    ell = std::clamp<std::size_t>(ell, 1, g.n());
    cs.nodes.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(ell));

    std::vector<char> in_s(g.n(), 0);
    for (NodeId v : cs.nodes) in_s[v] = 1;
    for (NodeId a : cs.nodes) {
        if (mode == CandidateMode::within) {
            for (NodeId b : cs.nodes) {
                if (a < b && !g.has_edge(a, b)) cs.virtual_edges.push_back({a, b});
            }
        } else {
            for (NodeId b = 0; b < g.n(); ++b) {
                if (b == a || g.has_edge(a, b) || (in_s[b] && b < a)) continue;
                cs.virtual_edges.push_back(EdgeRef::make(a, b));
            }
        }
    }
    std::sort(cs.virtual_edges.begin(), cs.virtual_edges.end());
    if (cs.virtual_edges.empty()) {
        cs.warnings.push_back("candidate set of " + std::to_string(ell) +
                              " nodes induces no virtual edges; increase pct");
    }
    return cs;
}

CandidateSet all_virtual_edges(const Graph& g) {
    CandidateSet cs;
    cs.nodes.resize(g.n());
    for (NodeId v = 0; v < g.n(); ++v) cs.nodes[v] = v;
    for (NodeId a = 0; a < g.n(); ++a) {
        for (NodeId b = a + 1; b < g.n(); ++b) {
            if (!g.has_edge(a, b)) cs.virtual_edges.push_back({a, b});
        }
    }
    if (cs.virtual_edges.empty()) cs.warnings.emplace_back("graph is complete; no virtual edges");
    return cs;
}

Graph replay(const Graph& g, const ModificationPlan& plan) {
    Graph cur = g;
    for (const auto& r : plan.records) cur = apply(cur, r);
    return cur;
}

ModificationPlan select_downdates(const Graph& g, const StrategyConfig& cfg, std::size_t K) {
    require_budget(K);
    require_connected(g, "select_downdates");
    if (cfg.method == Method::chan || cfg.method == Method::node) {
        throw std::invalid_argument("select_downdates: method " + method_name(cfg) + " only adds edges");
    }
    if (cfg.method == Method::optimal) return optimal_modifications(g, ModKind::downdate, K);

    ModificationPlan plan;
    if (!cfg.connectivity_check) {
        plan.warnings.emplace_back("connectivity check is always on for connected inputs");
    }
    Graph cur = g;

    if (cfg.method == Method::random) {
        Rng rng = stream_rng(cfg.rng_seed, downdate_stream);
        for (std::size_t step = 0; step < K; ++step) {
            auto t0 = Clock::now();
            auto bridges = bridge_set(cur);
            std::vector<EdgeRef> feasible;
            for (const auto& e : cur.edges()) {
                if (!bridges.count(e)) feasible.push_back(e);
            }
            if (feasible.empty()) break;
            EdgeRef e = feasible[rng.below(feasible.size())];
            plan.selection_ms.push_back(ms_since(t0));
            push(plan, ModKind::downdate, e);
            cur = downdate_edge(cur, e);
        }
        finish(plan, K, "select_downdates");
        return plan;
    }

    const EdgeMeasure measure = measure_or_throw(cfg, "select_downdates");
    std::vector<EdgeRef> remaining = downdate_candidates(g, cfg);

    if (!cfg.greedy) {
        auto t0 = Clock::now();
        auto ranking = rank_edges(measure, remaining, scores(g, measure, cfg), RankOrder::ascending);
        MaskedGraph masked(g);
        std::size_t pos = 0;
        for (std::size_t step = 0; step < K; ++step) {
            std::optional<EdgeRef> pick;
            while (pos < ranking.items.size() && !pick) {
                const EdgeRef& e = ranking.items[pos++].edge;
                if (masked.removable(e)) pick = e;
            }
            if (!pick) break;
            plan.selection_ms.push_back(ms_since(t0));
            push(plan, ModKind::downdate, *pick);
            masked.remove(*pick);
            t0 = Clock::now();
        }
        finish(plan, K, "select_downdates");
        return plan;
    }

    for (std::size_t step = 0; step < K && !remaining.empty(); ++step) {
        auto t0 = Clock::now();
        auto ranking = rank_edges(measure, remaining, scores(cur, measure, cfg), RankOrder::ascending);
        auto bridges = bridge_set(cur);
        std::optional<EdgeRef> pick;
        std::set<EdgeRef> consumed;
        for (const auto& item : ranking.items) {
            consumed.insert(item.edge);
            if (!bridges.count(item.edge)) {
                pick = item.edge;
                break;
            }
        }
        std::erase_if(remaining, [&](const EdgeRef& e) { return consumed.count(e) > 0; });
        if (!pick) break;
        plan.selection_ms.push_back(ms_since(t0));
        push(plan, ModKind::downdate, *pick);
        cur = downdate_edge(cur, *pick);
    }
    finish(plan, K, "select_downdates");
    return plan;
}

ModificationPlan select_updates(const Graph& g, const StrategyConfig& cfg, std::size_t K, const CandidateSet& cand) {
    require_budget(K);
    if (cfg.method == Method::chan) return chan_select(g, K, cfg.chan_t);
    if (cfg.method == Method::node) throw std::invalid_argument("select_updates: node is a rewiring method");

    std::vector<EdgeRef> remaining;
    for (const auto& e : cand.virtual_edges) {
        if (!g.has_edge(e.i, e.j)) remaining.push_back(e);
    }
    if (cfg.method == Method::optimal) {
        CandidateSet filtered = cand;
        filtered.virtual_edges = remaining;
        return optimal_modifications(g, ModKind::update, K, &filtered);
    }

    ModificationPlan plan;
    plan.warnings = cand.warnings;
    Graph cur = g;

    if (cfg.method == Method::random) {
        Rng rng = stream_rng(cfg.rng_seed, update_stream);
        for (std::size_t step = 0; step < K && !remaining.empty(); ++step) {
            auto t0 = Clock::now();
            std::size_t k = rng.below(remaining.size());
            EdgeRef e = remaining[k];
            remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(k));
            plan.selection_ms.push_back(ms_since(t0));
            push(plan, ModKind::update, e);
            cur = update_edge(cur, e);
        }
        finish(plan, K, "select_updates");
        return plan;
    }

    const EdgeMeasure measure = measure_or_throw(cfg, "select_updates");
    if (!cfg.greedy) {
        auto t0 = Clock::now();
        auto ranking = rank_edges(measure, remaining, scores(g, measure, cfg), RankOrder::descending);
        double ms = ms_since(t0);
        for (std::size_t k = 0; k < K && k < ranking.items.size(); ++k) {
            plan.selection_ms.push_back(k == 0 ? ms : 0.0);
            push(plan, ModKind::update, ranking.items[k].edge);
        }
        finish(plan, K, "select_updates");
        return plan;
    }

    for (std::size_t step = 0; step < K && !remaining.empty(); ++step) {
        auto t0 = Clock::now();
        auto cache = scores(cur, measure, cfg);
        std::vector<EdgeScore> items;
        items.reserve(remaining.size());
        for (const auto& e : remaining) items.push_back(edge_score(measure, e, cache));
        std::size_t k = *best_index(items, RankOrder::descending);
        EdgeRef e = remaining[k];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(k));
        plan.selection_ms.push_back(ms_since(t0));
        push(plan, ModKind::update, e);
        cur = update_edge(cur, e);
    }
    finish(plan, K, "select_updates");
    return plan;
}

namespace {

struct RewirePair {
    EdgeRef removed;
    EdgeRef added;
};

std::optional<RewirePair> node_rewire_step(const Graph& cur, const NodeScores& sc, const std::set<EdgeRef>& removed) {
    const auto& s = sc.values;
    auto order = rank_nodes(s);
    auto bridges = bridge_set(cur);
    // Walk down from the most central node until one admits both halves.
    for (NodeId v : order) {
        std::optional<NodeId> weakest;
        for (NodeId u : cur.neighbors(v)) {
            if (bridges.count(EdgeRef::make(u, v))) continue;
            if (!weakest || s[u] < s[*weakest]) weakest = u;
        }
        if (!weakest) continue;
        EdgeRef out = EdgeRef::make(v, *weakest);
        std::optional<NodeId> strongest;
        for (NodeId w : order) {
            if (w == v || cur.has_edge(v, w)) continue;
            EdgeRef in = EdgeRef::make(v, w);
            if (in == out || removed.count(in)) continue;
            strongest = w;
            break;
        }
        if (!strongest) continue;
        return RewirePair{out, EdgeRef::make(v, *strongest)};
    }
    return std::nullopt;
}

}  // namespace

ModificationPlan rewire(const Graph& g, const StrategyConfig& cfg, std::size_t K, const CandidateSet& cand) {
    require_budget(K);
    require_connected(g, "rewire");
    if (cfg.method == Method::optimal || cfg.method == Method::chan) {
        throw std::invalid_argument("rewire: method " + method_name(cfg) + " is not a rewiring strategy");
    }
    ModificationPlan plan;
    plan.warnings = cand.warnings;
    Graph cur = g;
    std::set<EdgeRef> removed;

    auto emit = [&](const RewirePair& p, Clock::time_point t0) {
        plan.selection_ms.push_back(ms_since(t0));
        plan.selection_ms.push_back(0.0);
        push(plan, ModKind::downdate, p.removed);
        push(plan, ModKind::update, p.added);
        cur = update_edge(downdate_edge(cur, p.removed), p.added);
        removed.insert(p.removed);
    };

    if (cfg.method == Method::node) {
        std::optional<NodeScores> sc;
        for (std::size_t step = 0; step < K; ++step) {
            auto t0 = Clock::now();
            if (!sc || cfg.greedy) sc = node_subgraph_centrality(cur, {}, cfg.oracle_cap);
            auto pair = node_rewire_step(cur, *sc, removed);
            if (!pair) break;
            emit(*pair, t0);
        }
        finish(plan, K, "rewire", 2);
        return plan;
    }

    auto open_updates = [&](const Graph& h) {
        std::vector<EdgeRef> out;
        for (const auto& e : cand.virtual_edges) {
            if (!h.has_edge(e.i, e.j) && !removed.count(e)) out.push_back(e);
        }
        return out;
    };

    if (cfg.method == Method::random) {
        Rng rng = stream_rng(cfg.rng_seed, rewire_stream);
        for (std::size_t step = 0; step < K; ++step) {
            auto t0 = Clock::now();
            auto bridges = bridge_set(cur);
            std::vector<EdgeRef> feasible;
            for (const auto& e : cur.edges()) {
                if (!bridges.count(e)) feasible.push_back(e);
            }
            if (feasible.empty()) break;
            EdgeRef out = feasible[rng.below(feasible.size())];
            removed.insert(out);
            auto adds = open_updates(cur);
            if (adds.empty()) break;
            EdgeRef in = adds[rng.below(adds.size())];
            removed.erase(out);
            emit({out, in}, t0);
        }
        finish(plan, K, "rewire", 2);
        return plan;
    }

    const EdgeMeasure measure = measure_or_throw(cfg, "rewire");
    auto t0 = Clock::now();
    auto down = rank_edges(measure, downdate_candidates(g, cfg), scores(g, measure, cfg), RankOrder::ascending);
    std::size_t down_pos = 0;
    std::optional<EdgeRanking> up;
    std::size_t up_pos = 0;
    if (!cfg.greedy) up = rank_edges(measure, open_updates(g), scores(g, measure, cfg), RankOrder::descending);

    for (std::size_t step = 0; step < K; ++step) {
        if (step > 0) t0 = Clock::now();
        std::optional<EdgeRef> out;
        while (down_pos < down.items.size() && !out) {
            const EdgeRef& e = down.items[down_pos++].edge;
            if (cur.has_edge(e.i, e.j) && remains_connected_without(cur, e)) out = e;
        }
        if (!out) break;
        removed.insert(*out);
        Graph mid = downdate_edge(cur, *out);
        std::optional<EdgeRef> in;
        if (cfg.greedy) {
            auto adds = open_updates(mid);
            if (!adds.empty()) {
                auto cache = scores(mid, measure, cfg);
                std::vector<EdgeScore> items;
                items.reserve(adds.size());
                for (const auto& e : adds) items.push_back(edge_score(measure, e, cache));
                in = adds[*best_index(items, RankOrder::descending)];
            }
        } else {
            while (up_pos < up->items.size() && !in) {
                const EdgeRef& e = up->items[up_pos++].edge;
                if (!mid.has_edge(e.i, e.j) && !removed.count(e)) in = e;
            }
        }
        removed.erase(*out);
        if (!in) break;
        emit({*out, *in}, t0);
    }
    finish(plan, K, "rewire", 2);
    return plan;
}

ModificationPlan optimal_modifications(const Graph& g, ModKind kind, std::size_t K, const CandidateSet* cand,
                                       std::size_t cap) {
    require_budget(K);
    if (g.n() > cap) {
        throw CapExceeded("optimal_modifications: n=" + std::to_string(g.n()) + " exceeds brute-force cap " +
                                    std::to_string(cap));
    }
    if (kind == ModKind::downdate) require_connected(g, "optimal_modifications");

    ModificationPlan plan;
    Graph cur = g;
    std::vector<EdgeRef> open;
    if (kind == ModKind::update) {
        CandidateSet all;
        if (!cand) all = all_virtual_edges(g);
        for (const auto& e : (cand ? cand->virtual_edges : all.virtual_edges)) {
            if (!g.has_edge(e.i, e.j)) open.push_back(e);
        }
    }
    const Vector ones = Vector::Ones(static_cast<Eigen::Index>(g.n()));
    auto tc = [&](const Graph& h) { return expm_action(h, ones, 1e-13).sum(); };

    for (std::size_t step = 0; step < K; ++step) {
        auto t0 = Clock::now();
        std::vector<EdgeScore> trials;
        if (kind == ModKind::downdate) {
            auto bridges = bridge_set(cur);
            for (const auto& e : cur.edges()) {
                if (!bridges.count(e)) trials.push_back({e, EdgeMeasure::degree, tc(downdate_edge(cur, e))});
            }
        } else {
            for (const auto& e : open) trials.push_back({e, EdgeMeasure::degree, tc(update_edge(cur, e))});
        }
        // Both problems keep the largest resulting TC.
        auto best = best_index(trials, RankOrder::descending, 1e-11);
        if (!best) break;
        EdgeRef e = trials[*best].edge;
        plan.selection_ms.push_back(ms_since(t0));
        push(plan, kind, e);
        if (kind == ModKind::downdate) {
            cur = downdate_edge(cur, e);
        } else {
            cur = update_edge(cur, e);
            std::erase(open, e);
        }
    }
    finish(plan, K, "optimal_modifications");
    return plan;
}

ModificationPlan chan_select(const Graph& g, std::size_t K, std::size_t t) {
    require_budget(K);
    require_connected(g, "chan_select");
    if (t == 0 || t >= g.n()) throw std::invalid_argument("chan_select: need 1 <= t < n");

    ModificationPlan plan;
    auto t0 = Clock::now();
    auto pairs = top_eigenpairs(g, t);
    Vector lam = pairs.values;
    Matrix q = pairs.vectors;
    const auto T = static_cast<Eigen::Index>(t);
    Graph cur = g;
    std::size_t skipped = 0;

    for (std::size_t step = 0; step < K; ++step) {
        if (step > 0) t0 = Clock::now();
        std::size_t dmax = std::min(cur.max_degree(), cur.n());
        std::vector<double> lead(q.col(0).data(), q.col(0).data() + q.rows());
        auto order = rank_nodes(lead);
        order.resize(dmax);

        std::vector<EdgeScore> items;
        for (std::size_t x = 0; x < order.size(); ++x) {
            for (std::size_t y = x + 1; y < order.size(); ++y) {
                if (cur.has_edge(order[x], order[y])) continue;
                EdgeRef e = EdgeRef::make(order[x], order[y]);
                const auto i = static_cast<Eigen::Index>(e.i), j = static_cast<Eigen::Index>(e.j);
                // The common factor e^{lambda_1} does not change the argmax.
                double s = std::exp(2.0 * q(i, 0) * q(j, 0));
                for (Eigen::Index h = 1; h < T; ++h) s += std::exp(lam[h] - lam[0] + 2.0 * q(i, h) * q(j, h));
                items.push_back({e, EdgeMeasure::eec, s});
            }
        }
        auto best = best_index(items, RankOrder::descending);
        if (!best) break;
        EdgeRef e = items[*best].edge;
        const auto i = static_cast<Eigen::Index>(e.i), j = static_cast<Eigen::Index>(e.j);

        Vector lam_new = lam;
        Matrix q_new = q;
        for (Eigen::Index k = 0; k < T; ++k) {
            lam_new[k] += 2.0 * q(i, k) * q(j, k);
            for (Eigen::Index h = 0; h < T; ++h) {
                if (h == k) continue;
                double gap = lam[k] - lam[h];
                if (std::abs(gap) <= 1e-8 * std::max(1.0, std::abs(lam[k]))) {
                    ++skipped;
                    continue;
                }
                q_new.col(k) += ((q(i, h) * q(j, k) - q(i, k) * q(j, h)) / gap) * q.col(h);
            }
        }
        lam = lam_new;
        q = q_new;
        plan.selection_ms.push_back(ms_since(t0));
        push(plan, ModKind::update, e);
        plan.approx_lambda1.push_back(lam[0]);
        cur = update_edge(cur, e);
    }
    if (skipped > 0) {
        plan.warnings.push_back("chan_select: skipped " + std::to_string(skipped) +
                                " eigenvector update terms with near-equal eigenvalues");
    }
    finish(plan, K, "chan_select");
    return plan;
}

}  // namespace tcomm
