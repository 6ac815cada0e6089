#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tcomm/experiment.hpp"

namespace {

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Total communicability analysis and edge modification experiments"};
    tcomm::ExperimentConfig cfg;

    std::string manifest, mode = "analyze", kind = "update", cand_mode = "within", metrics = "tc,natural,spectrum";
    std::vector<std::string> methods;
    bool greedy = false, no_greedy = false;

    app.add_option("--manifest", manifest, "Replay the configuration stored in a run manifest");
    app.add_option("--input,-i", cfg.input, "Graph file: Matrix Market (.mtx) or TSV edge list");
    app.add_option("--generate,-g", cfg.generate, "Generator spec: pref(n,d) or smallw(n,k,p)");
    app.add_option("--mode,-m", mode, "analyze|downdate|update|rewire|bounds|generate|bench|compare");
    app.add_option("--method", methods,
                   "optimal|subgraph|eigenvector|nodeTC|degree|node|random|chan, '.no' suffix for one-shot ranking; "
                   "repeat or comma-separate for compare/bench");
    app.add_option("--budget,-K", cfg.budget, "Number of modifications");
    app.add_option("--pct", cfg.pct, "Fraction of top eigenvector-central nodes forming the update candidates");
    app.add_option("--candidate-mode", cand_mode, "within|incident");
    app.add_option("--kind", kind, "downdate|update for compare, bounds and bench");
    app.add_flag("--track", cfg.bounds_track, "bounds mode: propagate the bounds along a modification plan");
    app.add_option("--seed", cfg.seed, "Seed for generators and random methods");
    app.add_flag("--greedy", greedy, "Recompute rankings after every step");
    app.add_flag("--no-greedy", no_greedy, "Rank once (the .no variants)");
    app.add_option("--chan-t", cfg.chan_t, "Eigenpairs tracked by chan");
    app.add_option("--beta", cfg.beta, "Inverse temperature for analyze");
    app.add_option("--out-prefix,-o", cfg.out_prefix, "Prefix for written artifacts");
    app.add_option("--oracle-cap", cfg.oracle_cap, "Largest n handled by dense eigendecomposition");
    app.add_flag("--strict-io", cfg.strict_io, "Reject duplicate edges and disallowed self-loops");
    app.add_flag("--allow-self-loops", cfg.allow_self_loops, "Keep diagonal entries of the input");
    app.add_flag("--timings", cfg.timings, "Write measured selection times into the trajectory");
    app.add_flag("--write-graph", cfg.write_graph, "Write the modified graph as Matrix Market");
    app.add_option("--metrics", metrics, "Comma list of tc,natural,spectrum");
    app.add_option("--bench-sizes", cfg.bench_sizes, "Graph sizes for bench")->delimiter(',');
    app.add_option("--bench-d", cfg.bench_d, "pref attachment count for bench");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!manifest.empty()) {
            std::string prefix = cfg.out_prefix;
            bool prefix_given = app.count("--out-prefix") > 0;
            cfg = tcomm::load_manifest(manifest);
            if (prefix_given) cfg.out_prefix = prefix;
        } else {
            cfg.mode = tcomm::parse_mode(mode);
            if (kind != "update" && kind != "downdate") throw std::invalid_argument("--kind must be downdate or update");
            cfg.kind = kind == "downdate" ? tcomm::ModKind::downdate : tcomm::ModKind::update;
            if (cand_mode != "within" && cand_mode != "incident") {
                throw std::invalid_argument("--candidate-mode must be within or incident");
            }
            cfg.candidate_mode = cand_mode == "incident" ? tcomm::CandidateMode::incident : tcomm::CandidateMode::within;
            if (greedy && no_greedy) throw std::invalid_argument("--greedy and --no-greedy are exclusive");
            if (greedy) cfg.greedy = true;
            if (no_greedy) cfg.greedy = false;
            if (!methods.empty()) {
                cfg.methods.clear();
                for (const auto& m : methods) {
                    for (auto& part : split(m)) cfg.methods.push_back(part);
                }
            }
            auto list = split(metrics);
            cfg.metrics = {false, false, false};
            for (const auto& m : list) {
                if (m == "tc") cfg.metrics.tc = true;
                else if (m == "natural") cfg.metrics.natural = true;
                else if (m == "spectrum") cfg.metrics.spectrum = true;
                else throw std::invalid_argument("unknown metric '" + m + "'");
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error[invalid]: " << e.what() << '\n';
        return 1;
    }

    auto result = tcomm::run(cfg, std::cerr);
    for (const auto& a : result.artifacts) std::cout << a << '\n';
    return result.exit_code;
}
