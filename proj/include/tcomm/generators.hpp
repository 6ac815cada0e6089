#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcomm/graph.hpp"

namespace tcomm {

enum class GenModel { pref, smallw };

struct GenSpec {
    GenModel model = GenModel::pref;
    std::size_t n = 0;
    /// pref: edges attached per new node.
    std::size_t d = 2;
    /// smallw: ring neighbors on each side.
    std::size_t k = 2;
    /// smallw: per-node chord probability.
    double p = 0.1;
    std::uint64_t seed = 1;
};

struct Generated {
    Graph graph;
    /// Number of seeds skipped because the draw was disconnected.
    std::size_t regenerations = 0;
    std::uint64_t seed_used = 0;
    /// Self-describing header lines for written graph files.
    std::vector<std::string> metadata;
};

/// Parses "pref(n,d)" or "smallw(n,k,p)".
GenSpec parse_gen_spec(const std::string& text, std::uint64_t seed = 1);
std::string to_string(const GenSpec& spec);

/// Draws one graph. Disconnected draws are discarded and redrawn from the
/// next derived seed.
Generated generate(const GenSpec& spec);

}  // namespace tcomm
