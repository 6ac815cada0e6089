#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "tcomm/graph.hpp"
#include "tcomm/spectral.hpp"

namespace tcomm {

struct EstradaEstimate {
    double value = 0.0;
    /// Equal to value when computed exactly.
    double lower = 0.0;
    double upper = 0.0;
    bool exact = true;
};

/// Tr(e^A). Exact by eigenvalues when n <= cap and `exact` is set, otherwise
/// the sum of Gauss-Radau diagonal brackets.
EstradaEstimate estrada_index(const Graph& g, bool exact = true, std::size_t cap = default_oracle_cap);

/// ln(Tr(e^A) / n), evaluated in log space.
double natural_connectivity(const Graph& g, std::size_t cap = default_oracle_cap);

struct ThermoProfile {
    double beta = 1.0;
    double log_z = 0.0;
    /// Partition function; may overflow to inf, log_z never does.
    double z = 0.0;
    std::vector<double> p;
    double entropy = 0.0;
    double energy = 0.0;
    double free_energy = 0.0;
    /// Only the top eigenvalues were used.
    bool truncated = false;
};

/// Statistical-mechanics quantities of the Hamiltonian -A at inverse
/// temperature beta (k_B = 1). Above the cap, truncate_t > 0 permits using
/// only the top truncate_t eigenvalues; otherwise the call throws.
ThermoProfile thermo_profile(const Graph& g, double beta, std::size_t cap = default_oracle_cap,
                             std::size_t truncate_t = 0);

/// Same from an explicit spectrum.
ThermoProfile thermo_profile(std::span<const double> eigenvalues, double beta);

double spectral_gap(const Graph& g);

struct MetricSet {
    bool tc = true;
    bool natural = true;
    bool spectrum = true;
};

struct MetricSnapshot {
    std::size_t step = 0;
    std::optional<ModificationRecord> record;
    double tc_normalized = std::numeric_limits<double>::quiet_NaN();
    double natural_connectivity = std::numeric_limits<double>::quiet_NaN();
    double lambda1 = std::numeric_limits<double>::quiet_NaN();
    double lambda2 = std::numeric_limits<double>::quiet_NaN();
    double gap = std::numeric_limits<double>::quiet_NaN();
};

MetricSnapshot snapshot(const Graph& g, const MetricSet& metrics, std::size_t cap = default_oracle_cap);

/// Snapshot of the initial graph followed by one per applied record. Each
/// snapshot is computed from scratch.
std::vector<MetricSnapshot> track_trajectory(const Graph& g, std::span<const ModificationRecord> records,
                                             const MetricSet& metrics = {}, std::size_t cap = default_oracle_cap);

}  // namespace tcomm
