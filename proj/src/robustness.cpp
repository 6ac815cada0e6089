#include "tcomm/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tcomm/centrality.hpp"

namespace tcomm {

namespace {

// ln sum exp(x_k).
double log_sum_exp(std::span<const double> x) {
    double top = *std::max_element(x.begin(), x.end());
    double acc = 0.0;
    for (double v : x) acc += std::exp(v - top);
    return top + std::log(acc);
}

std::vector<double> eigenvalues_of(const Graph& g, std::size_t cap) {
    Vector lam = dense_eigenvalues(g, cap);
    return {lam.data(), lam.data() + lam.size()};
}

}  // namespace

EstradaEstimate estrada_index(const Graph& g, bool exact, std::size_t cap) {
    EstradaEstimate out;
    if (g.n() == 0) return out;
    if (exact && g.n() <= cap) {
        auto lam = eigenvalues_of(g, cap);
        out.value = out.lower = out.upper = std::exp(log_sum_exp(lam));
        return out;
    }
    std::vector<NodeId> nodes(g.n());
    std::iota(nodes.begin(), nodes.end(), NodeId{0});
    out.exact = false;
    for (const auto& d : diag_expm_estimate(g, nodes)) {
        out.lower += d.lower;
        out.upper += d.upper;
        out.value += d.estimate;
    }
    return out;
}

double natural_connectivity(const Graph& g, std::size_t cap) {
    if (g.n() == 0) throw std::invalid_argument("natural_connectivity: empty graph");
    double n = static_cast<double>(g.n());
    if (g.n() <= cap) return log_sum_exp(eigenvalues_of(g, cap)) - std::log(n);
    return std::log(estrada_index(g, false, cap).value) - std::log(n);
}

ThermoProfile thermo_profile(std::span<const double> lam, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("thermo_profile: beta must be positive");
    if (lam.empty()) throw std::invalid_argument("thermo_profile: empty spectrum");
    ThermoProfile t;
    t.beta = beta;
    std::vector<double> x(lam.size());
    for (std::size_t k = 0; k < lam.size(); ++k) x[k] = beta * lam[k];
    t.log_z = log_sum_exp(x);
    t.z = std::exp(t.log_z);
    t.p.resize(lam.size());
    for (std::size_t k = 0; k < lam.size(); ++k) {
        double logp = x[k] - t.log_z;
        t.p[k] = std::exp(logp);
        t.entropy -= t.p[k] * logp;
        t.energy -= lam[k] * t.p[k];
    }
    t.free_energy = -t.log_z / beta;
    return t;
}

ThermoProfile thermo_profile(const Graph& g, double beta, std::size_t cap, std::size_t truncate_t) {
    if (g.n() <= cap) return thermo_profile(eigenvalues_of(g, cap), beta);
    if (truncate_t == 0) {
        throw std::invalid_argument("thermo_profile: n=" + std::to_string(g.n()) + " exceeds cap " +
                                    std::to_string(cap) + " and truncation was not requested");
    }
    auto top = top_eigenpairs(g, std::min(truncate_t, g.n()));
    std::vector<double> lam(top.values.data(), top.values.data() + top.values.size());
    auto t = thermo_profile(lam, beta);
    t.truncated = true;
    return t;
}

double spectral_gap(const Graph& g) {
    if (g.n() < 2) throw std::invalid_argument("spectral_gap: need at least two nodes");
    auto e = top_eigenpairs(g, 2);
    return e.values[0] - e.values[1];
}

MetricSnapshot snapshot(const Graph& g, const MetricSet& metrics, std::size_t cap) {
    MetricSnapshot s;
    if (metrics.tc) s.tc_normalized = total_communicability(g).normalized;
    if (metrics.natural) s.natural_connectivity = natural_connectivity(g, cap);
    if (metrics.spectrum) {
        if (g.n() == 1) {
            s.lambda1 = g.has_loop(0) ? 1.0 : 0.0;
        } else {
            auto e = top_eigenpairs(g, 2);
            s.lambda1 = e.values[0];
            s.lambda2 = e.values[1];
            s.gap = s.lambda1 - s.lambda2;
        }
    }
    return s;
}

std::vector<MetricSnapshot> track_trajectory(const Graph& g, std::span<const ModificationRecord> records,
                                             const MetricSet& metrics, std::size_t cap) {
    std::vector<MetricSnapshot> out;
    out.reserve(records.size() + 1);
    Graph cur = g;
    out.push_back(snapshot(cur, metrics, cap));
    for (std::size_t k = 0; k < records.size(); ++k) {
        cur = apply(cur, records[k]);
        auto s = snapshot(cur, metrics, cap);
        s.step = k + 1;
        s.record = records[k];
        out.push_back(s);
    }
    return out;
}

}  // namespace tcomm
