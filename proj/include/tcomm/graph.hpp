#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace tcomm {

using NodeId = std::size_t;

/// Unordered node pair stored with i < j.
struct EdgeRef {
    NodeId i = 0;
    NodeId j = 0;

    /// Builds the canonical (min, max) form; throws on a self pair.
    static EdgeRef make(NodeId a, NodeId b);

    friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
    friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

enum class IngestMode { lenient, strict };

/// Immutable undirected graph without multi-edges. Self-loops are only
/// present when ingestion allowed them; edge modifications never touch them.
///
/// The adjacency is held in CSR form with sorted neighbor lists, so row
/// iteration, membership queries and the matvec y = A x are all cheap.
class Graph {
public:
    Graph() = default;

    /// Builds a graph from an arbitrary pair list. Pairs may repeat and may
    /// appear in both orientations. In strict mode a repeated pair, or a
    /// self-loop with allow_self_loops unset, is an error; in lenient mode
    /// repeats are merged and disallowed loops are dropped.
    static Graph from_edge_list(std::size_t n, std::span<const std::pair<NodeId, NodeId>> pairs,
                                bool allow_self_loops = false, IngestMode mode = IngestMode::lenient);

    /// Same, from canonical edges that are already sorted and unique.
    static Graph from_sorted_edges(std::size_t n, std::vector<EdgeRef> edges,
                                   std::vector<NodeId> loops = {});

    std::size_t n() const { return n_; }
    std::size_t m() const { return edges_.size(); }

    const std::vector<EdgeRef>& edges() const { return edges_; }
    const std::vector<NodeId>& self_loops() const { return loops_; }

    std::span<const NodeId> neighbors(NodeId v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }

    /// Number of incident non-loop edges.
    std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
    std::vector<double> degrees() const;
    std::size_t max_degree() const;

    bool has_loop(NodeId v) const { return has_loop_[v] != 0; }
    /// Row sum of A: degree plus one for a retained diagonal entry.
    double row_sum(NodeId v) const { return static_cast<double>(degree(v) + (has_loop(v) ? 1 : 0)); }

    bool has_edge(NodeId a, NodeId b) const;

    /// y = A x.
    void matvec(std::span<const double> x, std::span<double> y) const;

    /// Position of e in edges(), or m() if absent.
    std::size_t edge_index(const EdgeRef& e) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_ && a.loops_ == b.loops_;
    }

private:
    void build_adjacency();

    std::size_t n_ = 0;
    std::vector<EdgeRef> edges_;
    std::vector<NodeId> loops_;
    std::vector<char> has_loop_;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> adj_;
};

enum class ModKind { downdate, update };

struct ModificationRecord {
    ModKind kind = ModKind::downdate;
    EdgeRef edge;
    std::size_t step = 0;
};

const char* to_string(ModKind kind);

/// A - UW^T: removes an existing edge.
Graph downdate_edge(const Graph& g, const EdgeRef& e);
/// A + UW^T: adds a virtual edge.
Graph update_edge(const Graph& g, const EdgeRef& e);
/// Applies one record, checking that it is legal for g.
Graph apply(const Graph& g, const ModificationRecord& rec);

bool is_connected(const Graph& g);

/// Connectivity of g - e by a single BFS that skips e. Linear in m.
bool remains_connected_without(const Graph& g, const EdgeRef& e);

/// All bridges of g, sorted. One iterative DFS, linear in n + m.
std::vector<EdgeRef> find_bridges(const Graph& g);

/// Component label per node (labels ordered by smallest member) and count.
std::pair<std::vector<std::size_t>, std::size_t> connected_components(const Graph& g);

struct Subgraph {
    Graph graph;
    /// original_label[k] is the input node that became node k.
    std::vector<NodeId> original_label;
};

/// Induced subgraph on the largest component (ties go to the component with
/// the smallest node id), relabeled contiguously in original order.
Subgraph largest_component(const Graph& g);

}  // namespace tcomm
