#include "tcomm/generators.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tcomm/rng.hpp"

namespace tcomm {

namespace {

constexpr std::size_t max_regenerations = 100;

Graph draw_pref(const GenSpec& s, Rng& rng) {
    std::vector<EdgeRef> edges;
    // Each edge contributes both endpoints, so a uniform pick is degree-proportional.
    std::vector<NodeId> endpoints;
    for (NodeId a = 0; a <= s.d; ++a) {
        for (NodeId b = a + 1; b <= s.d; ++b) {
            edges.push_back({a, b});
            endpoints.push_back(a);
            endpoints.push_back(b);
        }
    }
    std::vector<NodeId> chosen;
    for (NodeId v = s.d + 1; v < s.n; ++v) {
        chosen.clear();
        while (chosen.size() < s.d) {
            NodeId t = endpoints[rng.below(endpoints.size())];
            if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) chosen.push_back(t);
        }
        for (NodeId t : chosen) {
            edges.push_back({t, v});
            endpoints.push_back(t);
            endpoints.push_back(v);
        }
    }
    std::sort(edges.begin(), edges.end());
    return Graph::from_sorted_edges(s.n, std::move(edges));
}

Graph draw_smallw(const GenSpec& s, Rng& rng) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId v = 0; v < s.n; ++v) {
        for (std::size_t off = 1; off <= s.k; ++off) pairs.emplace_back(v, (v + off) % s.n);
    }
    Graph ring = Graph::from_edge_list(s.n, pairs);
    std::vector<EdgeRef> edges = ring.edges();
    std::set<EdgeRef> chords;
    auto present = [&](NodeId a, NodeId b) { return ring.has_edge(a, b) || chords.count(EdgeRef::make(a, b)) > 0; };
    for (NodeId v = 0; v < s.n; ++v) {
        if (rng.uniform() >= s.p) continue;
        if (ring.degree(v) + 1 >= s.n) continue;  // v is already adjacent to everyone
        for (std::size_t tries = 0; tries < 64 * s.n; ++tries) {
            NodeId u = rng.below(s.n);
            if (u == v || present(u, v)) continue;
            chords.insert(EdgeRef::make(u, v));
            edges.push_back(EdgeRef::make(u, v));
            break;
        }
    }
    std::sort(edges.begin(), edges.end());
    return Graph::from_sorted_edges(s.n, std::move(edges));
}

void validate(const GenSpec& s) {
    if (s.model == GenModel::pref) {
        if (s.d < 1) throw std::invalid_argument("pref: d must be >= 1");
        if (s.d >= s.n) throw std::invalid_argument("pref: d must be < n");
    } else {
        if (s.k < 1) throw std::invalid_argument("smallw: k must be >= 1");
        if (2 * s.k >= s.n) throw std::invalid_argument("smallw: need n > 2k");
        if (!(s.p >= 0.0 && s.p <= 1.0)) throw std::invalid_argument("smallw: p must lie in [0, 1]");
    }
}

}  // namespace

GenSpec parse_gen_spec(const std::string& text, std::uint64_t seed) {
    static const std::regex pref_re(R"(\s*pref\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*)");
    static const std::regex smallw_re(R"(\s*smallw\(\s*(\d+)\s*,\s*(\d+)\s*,\s*([0-9.eE+-]+)\s*\)\s*)");
    std::smatch m;
    GenSpec s;
    s.seed = seed;
    if (std::regex_match(text, m, pref_re)) {
        s.model = GenModel::pref;
        s.n = std::stoull(m[1]);
        s.d = std::stoull(m[2]);
    } else if (std::regex_match(text, m, smallw_re)) {
        s.model = GenModel::smallw;
        s.n = std::stoull(m[1]);
        s.k = std::stoull(m[2]);
        s.p = std::stod(m[3]);
    } else {
        throw std::invalid_argument("cannot parse generator spec '" + text + "'; expected pref(n,d) or smallw(n,k,p)");
    }
    validate(s);
    return s;
}

std::string to_string(const GenSpec& s) {
    std::ostringstream out;
    if (s.model == GenModel::pref) {
        out << "pref(" << s.n << "," << s.d << ")";
    } else {
        out.precision(17);
        out << "smallw(" << s.n << "," << s.k << "," << s.p << ")";
    }
    return out.str();
}

Generated generate(const GenSpec& spec) {
    validate(spec);
    Generated out;
    for (std::size_t attempt = 0; attempt <= max_regenerations; ++attempt) {
        std::uint64_t seed = attempt == 0 ? spec.seed : splitmix64(spec.seed + attempt);
        Rng rng(seed);
        Graph g = spec.model == GenModel::pref ? draw_pref(spec, rng) : draw_smallw(spec, rng);
        if (!is_connected(g)) {
            ++out.regenerations;
            continue;
        }
        out.graph = std::move(g);
        out.seed_used = seed;
        out.metadata = {
            "generator " + to_string(spec),
            "seed " + std::to_string(spec.seed) + " used " + std::to_string(seed) + " regenerations " +
                std::to_string(out.regenerations),
            "rng mt19937_64, bounded draws by rejection, reals from the top 53 bits",
            spec.model == GenModel::pref ? "pref: seed graph is a (d+1)-clique; targets drawn by degree without replacement"
                                         : "smallw: ring with k neighbors per side, then one chord per node with probability p",
        };
        return out;
    }
    throw std::runtime_error("generate: no connected draw after " + std::to_string(max_regenerations) + " attempts");
}

}  // namespace tcomm
