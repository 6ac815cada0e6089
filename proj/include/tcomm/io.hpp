#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tcomm/graph.hpp"

namespace tcomm {

struct ReadOptions {
    bool allow_self_loops = false;
    IngestMode mode = IngestMode::lenient;
    /// TSV only: labels start at 1 instead of 0.
    bool one_based = false;
};

/// Reads a Matrix Market coordinate file. Pattern, real and integer fields
/// are accepted (values are ignored; every stored entry is an edge), with
/// symmetric or general symmetry. Indices are 1-based as the format requires.
Graph read_matrix_market(std::istream& in, const ReadOptions& opts = {});
Graph read_matrix_market(const std::filesystem::path& path, const ReadOptions& opts = {});

/// Writes "coordinate pattern symmetric" with the lower triangle stored.
/// Each comment line is emitted with a leading '%'.
void write_matrix_market(std::ostream& out, const Graph& g, const std::vector<std::string>& comments = {});
void write_matrix_market(const std::filesystem::path& path, const Graph& g,
                         const std::vector<std::string>& comments = {});

/// Reads "i<TAB>j" lines; '#' starts a comment. n is one more than the
/// largest label seen.
Graph read_tsv_edges(std::istream& in, const ReadOptions& opts = {});
Graph read_tsv_edges(const std::filesystem::path& path, const ReadOptions& opts = {});

/// Dispatches on extension: ".mtx" is Matrix Market, anything else is TSV.
Graph read_graph(const std::filesystem::path& path, const ReadOptions& opts = {});

}  // namespace tcomm
