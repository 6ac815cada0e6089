#include "tcomm/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tcomm {

const char* to_string(NodeMeasure m) {
    switch (m) {
        case NodeMeasure::tc: return "tc";
        case NodeMeasure::subgraph: return "subgraph";
        case NodeMeasure::eigenvector: return "eigenvector";
        case NodeMeasure::degree: return "degree";
    }
    return "?";
}

const char* to_string(EdgeMeasure m) {
    switch (m) {
        case EdgeMeasure::esc: return "eSC";
        case EdgeMeasure::etc: return "eTC";
        case EdgeMeasure::eec: return "eEC";
        case EdgeMeasure::degree: return "degree";
    }
    return "?";
}

NodeMeasure node_measure_for(EdgeMeasure m) {
    switch (m) {
        case EdgeMeasure::esc: return NodeMeasure::subgraph;
        case EdgeMeasure::etc: return NodeMeasure::tc;
        case EdgeMeasure::eec: return NodeMeasure::eigenvector;
        case EdgeMeasure::degree: return NodeMeasure::degree;
    }
    return NodeMeasure::degree;
}

NodeScores node_total_communicability(const Graph& g, double tol) {
    NodeScores s{NodeMeasure::tc, {}};
    if (g.n() == 0) return s;
    Vector w = expm_action(g, Vector::Ones(static_cast<Eigen::Index>(g.n())), tol);
    s.values.assign(w.data(), w.data() + w.size());
    return s;
}

TotalCommunicability total_communicability(const Graph& g, double tol) {
    if (g.n() == 0) throw std::invalid_argument("total_communicability: empty graph");
    auto s = node_total_communicability(g, tol);
    TotalCommunicability tc;
    for (double v : s.values) tc.raw += v;
    tc.normalized = tc.raw / static_cast<double>(g.n());
    return tc;
}

NodeScores node_subgraph_centrality(const Graph& g, std::span<const NodeId> nodes, std::size_t oracle_cap,
                                    std::size_t quad_steps) {
    std::vector<NodeId> all;
    if (nodes.empty()) {
        all.resize(g.n());
        for (NodeId v = 0; v < g.n(); ++v) all[v] = v;
        nodes = all;
    }
    NodeScores s{NodeMeasure::subgraph, std::vector<double>(nodes.size())};
    if (g.n() <= oracle_cap) {
        auto spec = dense_spectrum(g, oracle_cap);
        Vector w = spec.values.array().exp();
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            auto row = spec.vectors.row(static_cast<Eigen::Index>(nodes[k]));
            s.values[k] = row.array().square().matrix().dot(w);
        }
        return s;
    }
    auto est = diag_expm_estimate(g, nodes, quad_steps);
    for (std::size_t k = 0; k < nodes.size(); ++k) s.values[k] = est[k].estimate;
    return s;
}

NodeScores eigenvector_centrality(const EigenpairSet& pairs) {
    NodeScores s{NodeMeasure::eigenvector, {}};
    auto q = pairs.vectors.col(0);
    s.values.resize(static_cast<std::size_t>(q.size()));
    // Entries that underflow to round-off may carry either sign.
    for (Eigen::Index i = 0; i < q.size(); ++i) s.values[static_cast<std::size_t>(i)] = std::abs(q[i]);
    return s;
}

NodeScores eigenvector_centrality(const Graph& g) {
    if (g.n() == 0) throw std::invalid_argument("eigenvector_centrality: empty graph");
    if (!is_connected(g)) {
        auto [labels, count] = connected_components(g);
        throw std::invalid_argument("eigenvector_centrality: graph has " + std::to_string(count) +
                                    " components; use largest_component first");
    }
    if (g.n() == 1) return {NodeMeasure::eigenvector, {1.0}};
    return eigenvector_centrality(top_eigenpairs(g, 1));
}

NodeScores degree_scores(const Graph& g) {
    NodeScores s{NodeMeasure::degree, std::vector<double>(g.n())};
    for (NodeId v = 0; v < g.n(); ++v) s.values[v] = static_cast<double>(g.degree(v));
    return s;
}

NodeScores node_scores_for(const Graph& g, EdgeMeasure measure, std::size_t oracle_cap) {
    switch (measure) {
        case EdgeMeasure::esc: return node_subgraph_centrality(g, {}, oracle_cap);
        case EdgeMeasure::etc: return node_total_communicability(g);
        case EdgeMeasure::eec: return eigenvector_centrality(g);
        case EdgeMeasure::degree: return degree_scores(g);
    }
    throw std::invalid_argument("unknown edge measure");
}

EdgeScore edge_score(EdgeMeasure measure, const EdgeRef& e, const NodeScores& cache) {
    if (cache.measure != node_measure_for(measure)) {
        throw std::invalid_argument(std::string("edge_score: ") + to_string(measure) + " needs " +
                                    to_string(node_measure_for(measure)) + " scores, got " +
                                    to_string(cache.measure));
    }
    if (e.i >= cache.values.size() || e.j >= cache.values.size()) throw std::out_of_range("edge_score: node index");
    double a = cache.values[e.i], b = cache.values[e.j];
    return {e, measure, measure == EdgeMeasure::degree ? a + b : a * b};
}

namespace {

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

}  // namespace

void sort_scores(std::vector<EdgeScore>& items, RankOrder order, double tie_tolerance) {
    const bool asc = order == RankOrder::ascending;
    std::sort(items.begin(), items.end(), [asc](const EdgeScore& a, const EdgeScore& b) {
        if (a.value != b.value) return asc ? a.value < b.value : a.value > b.value;
        return a.edge < b.edge;
    });
    // Runs of values within the tolerance of their neighbor form one tie group.
    std::size_t start = 0;
    for (std::size_t k = 1; k <= items.size(); ++k) {
        if (k == items.size() || !close(items[k - 1].value, items[k].value, tie_tolerance)) {
            if (k - start > 1) {
                std::sort(items.begin() + static_cast<std::ptrdiff_t>(start),
                          items.begin() + static_cast<std::ptrdiff_t>(k),
                          [](const EdgeScore& a, const EdgeScore& b) { return a.edge < b.edge; });
            }
            start = k;
        }
    }
}

std::optional<std::size_t> best_index(std::span<const EdgeScore> items, RankOrder order, double tie_tolerance) {
    if (items.empty()) return std::nullopt;
    const bool asc = order == RankOrder::ascending;
    double extreme = items[0].value;
    for (const auto& s : items) extreme = asc ? std::min(extreme, s.value) : std::max(extreme, s.value);
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < items.size(); ++k) {
        if (!close(items[k].value, extreme, tie_tolerance)) continue;
        if (!best || items[k].edge < items[*best].edge) best = k;
    }
    return best;
}

EdgeRanking rank_edges(EdgeMeasure measure, std::span<const EdgeRef> edge_set, const NodeScores& cache,
                       RankOrder order) {
    EdgeRanking r;
    r.order = order;
    r.items.reserve(edge_set.size());
    for (const auto& e : edge_set) r.items.push_back(edge_score(measure, e, cache));
    sort_scores(r.items, order, r.tie_tolerance);
    return r;
}

EdgeRanking rank_edges(const Graph& g, EdgeMeasure measure, std::span<const EdgeRef> edge_set, RankOrder order) {
    if (edge_set.empty()) return EdgeRanking{{}, order, 1e-12};
    return rank_edges(measure, edge_set, node_scores_for(g, measure), order);
}

std::vector<NodeId> rank_nodes(std::span<const double> scores, double tie_tolerance) {
    std::vector<NodeId> order(scores.size());
    for (NodeId v = 0; v < order.size(); ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return scores[a] > scores[b]; });
    std::size_t start = 0;
    for (std::size_t k = 1; k <= order.size(); ++k) {
        if (k < order.size()) {
            double lead = scores[order[start]], x = scores[order[k]];
            if (lead - x <= tie_tolerance * std::max(std::abs(lead), std::abs(x))) continue;
        }
        std::sort(order.begin() + static_cast<std::ptrdiff_t>(start), order.begin() + static_cast<std::ptrdiff_t>(k));
        start = k;
    }
    return order;
}

}  // namespace tcomm
