#include "tcomm/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tcomm {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

}  // namespace

Graph read_matrix_market(std::istream& in, const ReadOptions& opts) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty Matrix Market stream");
    std::istringstream banner(line);
    std::string tag, object, format, field, symmetry;
    banner >> tag >> object >> format >> field >> symmetry;
    if (tag != "%%MatrixMarket") throw std::runtime_error("missing %%MatrixMarket banner");
    object = lower(object);
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (object != "matrix" || format != "coordinate") {
        throw std::runtime_error("only 'matrix coordinate' Matrix Market files are supported");
    }
    if (field != "pattern" && field != "real" && field != "integer") {
        throw std::runtime_error("unsupported Matrix Market field '" + field + "'");
    }
    if (symmetry != "symmetric" && symmetry != "general") {
        throw std::runtime_error("unsupported Matrix Market symmetry '" + symmetry + "'");
    }

    std::size_t rows = 0, cols = 0, nnz = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '%') continue;
        std::istringstream size_line(line);
        if (!(size_line >> rows >> cols >> nnz)) throw std::runtime_error("malformed size line: " + line);
        break;
    }
    if (rows != cols) throw std::runtime_error("adjacency matrix must be square");

    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(nnz);
    std::size_t read = 0;
    while (read < nnz && std::getline(in, line)) {
        if (line.empty() || line[0] == '%') continue;
        std::istringstream entry(line);
        long long r = 0, c = 0;
        if (!(entry >> r >> c)) throw std::runtime_error("malformed entry: " + line);
        if (r < 1 || c < 1 || static_cast<std::size_t>(r) > rows || static_cast<std::size_t>(c) > cols) {
            throw std::out_of_range("entry out of range: " + line);
        }
        pairs.emplace_back(static_cast<NodeId>(r - 1), static_cast<NodeId>(c - 1));
        ++read;
    }
    if (read != nnz) throw std::runtime_error("Matrix Market stream ended early");

    // A general file lists both triangles; strict mode must not see that as duplication.
    if (symmetry == "general") {
        for (auto& [a, b] : pairs) {
            if (a > b) std::swap(a, b);
        }
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    }
    return Graph::from_edge_list(rows, pairs, opts.allow_self_loops, opts.mode);
}

Graph read_matrix_market(const std::filesystem::path& path, const ReadOptions& opts) {
    auto in = open_in(path);
    return read_matrix_market(in, opts);
}

void write_matrix_market(std::ostream& out, const Graph& g, const std::vector<std::string>& comments) {
    out << "%%MatrixMarket matrix coordinate pattern symmetric\n";
    for (const auto& c : comments) out << "% " << c << '\n';
    out << g.n() << ' ' << g.n() << ' ' << g.m() + g.self_loops().size() << '\n';
    // Column-major lower triangle: column i, rows j >= i.
    std::vector<std::pair<NodeId, NodeId>> entries;
    entries.reserve(g.m() + g.self_loops().size());
    for (const auto& e : g.edges()) entries.emplace_back(e.i, e.j);
    for (NodeId v : g.self_loops()) entries.emplace_back(v, v);
    std::sort(entries.begin(), entries.end());
    for (const auto& [col, row] : entries) out << row + 1 << ' ' << col + 1 << '\n';
}

void write_matrix_market(const std::filesystem::path& path, const Graph& g,
                         const std::vector<std::string>& comments) {
    auto out = open_out(path);
    write_matrix_market(out, g, comments);
}

Graph read_tsv_edges(std::istream& in, const ReadOptions& opts) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    std::size_t n = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream fields(line);
        long long a = 0, b = 0;
        if (!(fields >> a >> b)) {
            throw std::runtime_error("malformed edge on line " + std::to_string(lineno) + ": " + line);
        }
        long long base = opts.one_based ? 1 : 0;
        if (a < base || b < base) throw std::out_of_range("negative label on line " + std::to_string(lineno));
        auto u = static_cast<NodeId>(a - base);
        auto v = static_cast<NodeId>(b - base);
        n = std::max(n, std::max(u, v) + 1);
        pairs.emplace_back(u, v);
    }
    return Graph::from_edge_list(n, pairs, opts.allow_self_loops, opts.mode);
}

Graph read_tsv_edges(const std::filesystem::path& path, const ReadOptions& opts) {
    auto in = open_in(path);
    return read_tsv_edges(in, opts);
}

Graph read_graph(const std::filesystem::path& path, const ReadOptions& opts) {
    if (lower(path.extension().string()) == ".mtx") return read_matrix_market(path, opts);
    return read_tsv_edges(path, opts);
}

}  // namespace tcomm
