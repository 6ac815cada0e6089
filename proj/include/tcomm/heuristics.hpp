#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcomm/centrality.hpp"
#include "tcomm/graph.hpp"
#include "tcomm/spectral.hpp"

namespace tcomm {

enum class Method { optimal, subgraph, eigenvector, node_tc, degree, node, random, chan };

struct StrategyConfig {
    Method method = Method::eigenvector;
    /// Recompute node scores after every modification. The ".no" variants
    /// rank once and consume the ranking.
    bool greedy = true;
    bool connectivity_check = true;
    std::uint64_t rng_seed = 1;
    /// Leading eigenpairs tracked by the chan method.
    std::size_t chan_t = 50;
    /// Above this size subgraph centralities come from quadrature estimates.
    std::size_t oracle_cap = default_oracle_cap;
    /// If positive, downdate candidates are limited to edges touching the
    /// given fraction of nodes with the smallest eigenvector centrality.
    double downdate_node_fraction = 0.0;
};

/// "eigenvector", "nodeTC.no", "subgraph", "degree", "optimal", "node",
/// "random", "chan". A ".no" suffix clears the greedy flag.
StrategyConfig parse_method(const std::string& name);
std::string method_name(const StrategyConfig& cfg);

/// Edge measure used by a centrality-guided method.
std::optional<EdgeMeasure> edge_measure_of(Method m);

enum class CandidateMode {
    /// Both endpoints in S.
    within,
    /// At least one endpoint in S.
    incident,
};

struct CandidateSet {
    /// Top nodes by eigenvector centrality, most central first.
    std::vector<NodeId> nodes;
    /// Virtual edges, sorted lexicographically.
    std::vector<EdgeRef> virtual_edges;
    std::vector<std::string> warnings;

    std::size_t size() const { return nodes.size(); }
};

/// S = the ceil(pct * n) nodes with the largest q_1 entries (ties by index).
CandidateSet build_candidate_set(const Graph& g, double pct, CandidateMode mode = CandidateMode::within);

/// Every virtual edge of g.
CandidateSet all_virtual_edges(const Graph& g);

struct ModificationPlan {
    std::vector<ModificationRecord> records;
    /// Wall time of each step's selection, milliseconds.
    std::vector<double> selection_ms;
    double total_ms = 0.0;
    /// Fewer modifications than requested.
    bool shortfall = false;
    std::vector<std::string> warnings;
    /// chan only: its running lambda_1 estimate after each step.
    std::vector<double> approx_lambda1;
};

/// Graph after applying every record of the plan.
Graph replay(const Graph& g, const ModificationPlan& plan);

/// Problem (P1): K edge removals, lowest edge score first.
ModificationPlan select_downdates(const Graph& g, const StrategyConfig& cfg, std::size_t K);

/// Problem (P2): K edge additions from cand, highest edge score first.
ModificationPlan select_updates(const Graph& g, const StrategyConfig& cfg, std::size_t K, const CandidateSet& cand);

/// Problem (P3): K (downdate, update) pairs. Edge counts are unchanged after
/// every pair and the graph stays connected.
ModificationPlan rewire(const Graph& g, const StrategyConfig& cfg, std::size_t K, const CandidateSet& cand);

inline constexpr std::size_t default_bruteforce_cap = 100;

/// Exhaustive greedy baseline: each step tries every feasible modification
/// and keeps the one with the smallest TC loss (downdate) or largest gain.
ModificationPlan optimal_modifications(const Graph& g, ModKind kind, std::size_t K,
                                       const CandidateSet* cand = nullptr,
                                       std::size_t cap = default_bruteforce_cap);

/// Edge additions with incrementally updated top-t eigenpairs. Candidates
/// are virtual pairs among the d_max most eigenvector-central nodes.
ModificationPlan chan_select(const Graph& g, std::size_t K, std::size_t t);

}  // namespace tcomm
