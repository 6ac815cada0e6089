#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcomm/graph.hpp"
#include "tcomm/spectral.hpp"

namespace tcomm {

enum class NodeMeasure { tc, subgraph, eigenvector, degree };
enum class EdgeMeasure { esc, etc, eec, degree };
enum class RankOrder { ascending, descending };

const char* to_string(NodeMeasure m);
const char* to_string(EdgeMeasure m);

/// Node measure that an edge measure multiplies (or, for degree, adds).
NodeMeasure node_measure_for(EdgeMeasure m);

struct NodeScores {
    NodeMeasure measure = NodeMeasure::tc;
    std::vector<double> values;
};

struct EdgeScore {
    EdgeRef edge;
    EdgeMeasure measure = EdgeMeasure::eec;
    double value = 0.0;
};

struct EdgeRanking {
    std::vector<EdgeScore> items;
    RankOrder order = RankOrder::ascending;
    /// Values within this relative distance count as tied; ties are ordered
    /// lexicographically by (i, j).
    double tie_tolerance = 1e-12;
};

struct TotalCommunicability {
    double raw = 0.0;
    double normalized = 0.0;
};

/// TC(i) = [e^A 1]_i.
NodeScores node_total_communicability(const Graph& g, double tol = 1e-10);

TotalCommunicability total_communicability(const Graph& g, double tol = 1e-10);

/// (e^A)_ii. Exact by eigendecomposition when n <= oracle_cap, otherwise the
/// midpoint of the Gauss-Radau bracket. An empty `nodes` means all nodes.
NodeScores node_subgraph_centrality(const Graph& g, std::span<const NodeId> nodes = {},
                                    std::size_t oracle_cap = default_oracle_cap, std::size_t quad_steps = 5);

/// Perron vector q_1. Throws on a disconnected graph.
NodeScores eigenvector_centrality(const Graph& g);

/// Same, reusing already computed eigenpairs.
NodeScores eigenvector_centrality(const EigenpairSet& pairs);

NodeScores degree_scores(const Graph& g);

/// Computes the node scores that `measure` needs.
NodeScores node_scores_for(const Graph& g, EdgeMeasure measure, std::size_t oracle_cap = default_oracle_cap);

EdgeScore edge_score(EdgeMeasure measure, const EdgeRef& e, const NodeScores& cache);

/// Scores every edge of edge_set from one cache and sorts.
EdgeRanking rank_edges(EdgeMeasure measure, std::span<const EdgeRef> edge_set, const NodeScores& cache,
                       RankOrder order);
EdgeRanking rank_edges(const Graph& g, EdgeMeasure measure, std::span<const EdgeRef> edge_set, RankOrder order);

/// Sorts scores in place with the tolerance-grouped lexicographic tie rule.
void sort_scores(std::vector<EdgeScore>& items, RankOrder order, double tie_tolerance = 1e-12);

/// Index of the best item (smallest for ascending, largest for descending)
/// under the same tie rule, or nullopt for an empty list.
std::optional<std::size_t> best_index(std::span<const EdgeScore> items, RankOrder order,
                                      double tie_tolerance = 1e-12);

/// Node indices by descending score. Scores within the relative tolerance
/// count as tied and keep index order.
std::vector<NodeId> rank_nodes(std::span<const double> scores, double tie_tolerance = 1e-12);

}  // namespace tcomm
