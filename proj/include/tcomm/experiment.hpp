#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tcomm/heuristics.hpp"
#include "tcomm/robustness.hpp"

namespace tcomm {

inline constexpr const char* library_version = "1.0.0";

enum class Mode { analyze, downdate, update, rewire, bounds, generate, bench, compare };

const char* to_string(Mode m);
Mode parse_mode(const std::string& s);

struct ExperimentConfig {
    Mode mode = Mode::analyze;
    /// Graph file (.mtx or TSV). Ignored when `generate` is set.
    std::string input;
    /// Generator spec such as "pref(1000,2)".
    std::string generate;
    std::vector<std::string> methods{"eigenvector"};
    /// Forces every method to its greedy (true) or ".no" (false) variant.
    std::optional<bool> greedy;
    std::size_t budget = 10;
    double pct = 0.1;
    CandidateMode candidate_mode = CandidateMode::within;
    /// compare / bounds: which modification problem to run.
    ModKind kind = ModKind::update;
    bool bounds_track = false;
    std::uint64_t seed = 1;
    std::size_t chan_t = 50;
    double beta = 1.0;
    std::string out_prefix = "tcomm";
    std::size_t oracle_cap = 2000;
    bool strict_io = false;
    bool allow_self_loops = false;
    /// Write measured selection times; otherwise the column is 0 so reruns
    /// produce identical files.
    bool timings = false;
    bool write_graph = false;
    MetricSet metrics;
    /// bench: graph sizes and the pref attachment count.
    std::vector<std::size_t> bench_sizes{1000, 2000, 3000, 4000, 5000, 6000, 7000};
    std::size_t bench_d = 2;
};

struct RunResult {
    int exit_code = 0;
    std::vector<std::string> artifacts;
    std::vector<std::string> warnings;
};

/// JSON round trip of the configuration, used for the run manifest.
std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_manifest(const std::string& path);

/// Runs one experiment, writing artifacts under cfg.out_prefix and a short
/// human-readable summary to `log`. Errors are reported on `log` with a
/// nonzero exit code.
RunResult run(const ExperimentConfig& cfg, std::ostream& log);

inline constexpr const char* trajectory_header =
    "step,kind,i,j,tc_normalized,natural_connectivity,lambda1,lambda2,gap,selection_ms";

}  // namespace tcomm
