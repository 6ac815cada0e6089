#include "tcomm/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tcomm {

EdgeRef EdgeRef::make(NodeId a, NodeId b) {
    if (a == b) {
        throw std::invalid_argument("self pair (" + std::to_string(a) + "," + std::to_string(b) +
                                    ") is not an edge");
    }
    return a < b ? EdgeRef{a, b} : EdgeRef{b, a};
}

const char* to_string(ModKind kind) {
    return kind == ModKind::downdate ? "downdate" : "update";
}

Graph Graph::from_edge_list(std::size_t n, std::span<const std::pair<NodeId, NodeId>> pairs,
                            bool allow_self_loops, IngestMode mode) {
    std::vector<EdgeRef> edges;
    std::vector<NodeId> loops;
    edges.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        if (a >= n || b >= n) {
            throw std::out_of_range("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                    ") out of range for n=" + std::to_string(n));
        }
        if (a == b) {
            if (allow_self_loops) {
                loops.push_back(a);
            } else if (mode == IngestMode::strict) {
                throw std::invalid_argument("self-loop at node " + std::to_string(a) +
                                            " but self-loops are not allowed");
            }
            continue;
        }
        edges.push_back(EdgeRef::make(a, b));
    }
    std::sort(edges.begin(), edges.end());
    std::sort(loops.begin(), loops.end());
    if (mode == IngestMode::strict) {
        auto dup = std::adjacent_find(edges.begin(), edges.end());
        if (dup != edges.end()) {
            throw std::invalid_argument("duplicate edge (" + std::to_string(dup->i) + "," +
                                        std::to_string(dup->j) + ")");
        }
        if (std::adjacent_find(loops.begin(), loops.end()) != loops.end()) {
            throw std::invalid_argument("duplicate self-loop");
        }
    }
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    loops.erase(std::unique(loops.begin(), loops.end()), loops.end());
    return from_sorted_edges(n, std::move(edges), std::move(loops));
}

Graph Graph::from_sorted_edges(std::size_t n, std::vector<EdgeRef> edges, std::vector<NodeId> loops) {
    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.loops_ = std::move(loops);
    g.build_adjacency();
    return g;
}

void Graph::build_adjacency() {
    has_loop_.assign(n_, 0);
    for (NodeId v : loops_) has_loop_[v] = 1;

    offsets_.assign(n_ + 1, 0);
    for (const auto& e : edges_) {
        ++offsets_[e.i + 1];
        ++offsets_[e.j + 1];
    }
    for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];

    // Edges are sorted by (i, j), so filling in edge order leaves every
    // neighbor list sorted: for row v, the smaller neighbors arrive (as e.i,
    // in increasing order) before any larger neighbor (as e.j).
    adj_.resize(offsets_[n_]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) adj_[fill[e.j]++] = e.i;
    for (const auto& e : edges_) adj_[fill[e.i]++] = e.j;
}

std::vector<double> Graph::degrees() const {
    std::vector<double> d(n_);
    for (NodeId v = 0; v < n_; ++v) d[v] = static_cast<double>(degree(v));
    return d;
}

std::size_t Graph::max_degree() const {
    std::size_t best = 0;
    for (NodeId v = 0; v < n_; ++v) best = std::max(best, degree(v));
    return best;
}

bool Graph::has_edge(NodeId a, NodeId b) const {
    if (a >= n_ || b >= n_ || a == b) return false;
    if (degree(a) > degree(b)) std::swap(a, b);
    auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

std::size_t Graph::edge_index(const EdgeRef& e) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return edges_.size();
    return static_cast<std::size_t>(it - edges_.begin());
}

void Graph::matvec(std::span<const double> x, std::span<double> y) const {
    for (NodeId v = 0; v < n_; ++v) {
        double acc = has_loop_[v] ? x[v] : 0.0;
        for (std::size_t k = offsets_[v]; k < offsets_[v + 1]; ++k) acc += x[adj_[k]];
        y[v] = acc;
    }
}

namespace {

void check_pair(const Graph& g, const EdgeRef& e) {
    if (e.i >= g.n() || e.j >= g.n()) {
        throw std::out_of_range("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                ") out of range for n=" + std::to_string(g.n()));
    }
    if (e.i == e.j) throw std::invalid_argument("self-loops cannot be modified");
}

std::string describe(const EdgeRef& e) {
    return "(" + std::to_string(e.i) + "," + std::to_string(e.j) + ")";
}

}  // namespace

Graph downdate_edge(const Graph& g, const EdgeRef& e) {
    check_pair(g, e);
    std::size_t pos = g.edge_index(e);
    if (pos == g.m()) throw std::invalid_argument("downdate of absent edge " + describe(e));
    std::vector<EdgeRef> edges;
    edges.reserve(g.m() - 1);
    edges.insert(edges.end(), g.edges().begin(), g.edges().begin() + static_cast<std::ptrdiff_t>(pos));
    edges.insert(edges.end(), g.edges().begin() + static_cast<std::ptrdiff_t>(pos) + 1, g.edges().end());
    return Graph::from_sorted_edges(g.n(), std::move(edges), g.self_loops());
}

Graph update_edge(const Graph& g, const EdgeRef& e) {
    check_pair(g, e);
    auto it = std::lower_bound(g.edges().begin(), g.edges().end(), e);
    if (it != g.edges().end() && *it == e) {
        throw std::invalid_argument("update of existing edge " + describe(e));
    }
    std::vector<EdgeRef> edges;
    edges.reserve(g.m() + 1);
    edges.insert(edges.end(), g.edges().begin(), it);
    edges.push_back(e);
    edges.insert(edges.end(), it, g.edges().end());
    return Graph::from_sorted_edges(g.n(), std::move(edges), g.self_loops());
}

Graph apply(const Graph& g, const ModificationRecord& rec) {
    return rec.kind == ModKind::downdate ? downdate_edge(g, rec.edge) : update_edge(g, rec.edge);
}

namespace {

// BFS from node 0 that ignores the single edge `skip` (pass i == j to skip nothing).
std::size_t reachable_count(const Graph& g, EdgeRef skip) {
    if (g.n() == 0) return 0;
    std::vector<char> seen(g.n(), 0);
    std::vector<NodeId> queue;
    queue.reserve(g.n());
    queue.push_back(0);
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        NodeId v = queue[head];
        for (NodeId w : g.neighbors(v)) {
            if (seen[w]) continue;
            if ((v == skip.i && w == skip.j) || (v == skip.j && w == skip.i)) continue;
            seen[w] = 1;
            queue.push_back(w);
        }
    }
    return queue.size();
}

}  // namespace

bool is_connected(const Graph& g) {
    if (g.n() == 0) throw std::invalid_argument("connectivity of an empty node set is undefined");
    return reachable_count(g, EdgeRef{0, 0}) == g.n();
}

bool remains_connected_without(const Graph& g, const EdgeRef& e) {
    check_pair(g, e);
    if (g.edge_index(e) == g.m()) throw std::invalid_argument("edge " + describe(e) + " not present");
    return reachable_count(g, e) == g.n();
}

std::vector<EdgeRef> find_bridges(const Graph& g) {
    const std::size_t n = g.n();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> disc(n, unvisited), low(n, 0);
    std::vector<EdgeRef> bridges;

    struct Frame {
        NodeId v;
        NodeId parent;
        std::size_t next;  // index into neighbors(v)
    };
    std::vector<Frame> stack;
    std::size_t time = 0;

    for (NodeId root = 0; root < n; ++root) {
        if (disc[root] != unvisited) continue;
        disc[root] = low[root] = time++;
        stack.push_back({root, root, 0});
        while (!stack.empty()) {
            Frame& f = stack.back();
            auto nb = g.neighbors(f.v);
            if (f.next < nb.size()) {
                NodeId w = nb[f.next++];
                // Simple graph: the tree edge back to the parent is the only one to skip.
                if (w == f.parent && f.v != f.parent) continue;
                if (disc[w] == unvisited) {
                    disc[w] = low[w] = time++;
                    stack.push_back({w, f.v, 0});
                } else {
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                NodeId v = f.v;
                NodeId p = f.parent;
                stack.pop_back();
                if (!stack.empty()) {
                    low[p] = std::min(low[p], low[v]);
                    if (low[v] > disc[p]) bridges.push_back(EdgeRef::make(p, v));
                }
            }
        }
    }
    std::sort(bridges.begin(), bridges.end());
    return bridges;
}

std::pair<std::vector<std::size_t>, std::size_t> connected_components(const Graph& g) {
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> label(g.n(), none);
    std::size_t count = 0;
    std::vector<NodeId> queue;
    for (NodeId s = 0; s < g.n(); ++s) {
        if (label[s] != none) continue;
        queue.assign(1, s);
        label[s] = count;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            for (NodeId w : g.neighbors(queue[head])) {
                if (label[w] == none) {
                    label[w] = count;
                    queue.push_back(w);
                }
            }
        }
        ++count;
    }
    return {std::move(label), count};
}

Subgraph largest_component(const Graph& g) {
    auto [label, count] = connected_components(g);
    if (count <= 1) {
        std::vector<NodeId> identity(g.n());
        for (NodeId v = 0; v < g.n(); ++v) identity[v] = v;
        return {g, std::move(identity)};
    }
    std::vector<std::size_t> size(count, 0);
    for (auto l : label) ++size[l];
    // max_element returns the first maximum, i.e. the component with the smallest member.
    std::size_t best = static_cast<std::size_t>(std::max_element(size.begin(), size.end()) - size.begin());

    constexpr NodeId none = static_cast<NodeId>(-1);
    std::vector<NodeId> relabel(g.n(), none);
    std::vector<NodeId> original;
    for (NodeId v = 0; v < g.n(); ++v) {
        if (label[v] == best) {
            relabel[v] = original.size();
            original.push_back(v);
        }
    }
    std::vector<EdgeRef> edges;
    for (const auto& e : g.edges()) {
        if (label[e.i] == best) edges.push_back({relabel[e.i], relabel[e.j]});
    }
    std::vector<NodeId> loops;
    for (NodeId v : g.self_loops()) {
        if (label[v] == best) loops.push_back(relabel[v]);
    }
    // Relabeling is monotone, so the edge order is preserved.
    return {Graph::from_sorted_edges(original.size(), std::move(edges), std::move(loops)), std::move(original)};
}

}  // namespace tcomm
