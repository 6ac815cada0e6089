#pragma once

#include <cstddef>

#include "tcomm/graph.hpp"
#include "tcomm/spectral.hpp"

namespace tcomm {

/// First Lanczos coefficients of -A from the normalized ones vector:
/// omega = minus the mean row sum, gamma = population standard deviation.
struct DegreeMoments {
    double omega = 0.0;
    double gamma = 0.0;
    std::size_t n = 0;
};

struct BoundsPair {
    double lower = 0.0;
    double upper = 0.0;
    SpectrumInterval interval;
    DegreeMoments moments;
};

DegreeMoments degree_moments(const Graph& g);

/// [c(e^{-x} - e^{-y}) + x e^{-y} - y e^{-x}] / (x - y). Throws when x and y
/// coincide to round-off.
double phi(double x, double y, double c);

/// e_1^T e^{-J} e_1 for J = [[omega, gamma], [gamma, w2]] chosen so that tau
/// is an eigenvalue of J. This is the Gauss-Radau value with node tau.
double radau_2x2_value(double omega, double gamma, double tau, double c);

/// Two-sided bracket on TC(A)/n: the prescribed node at beta gives the lower
/// bound and at alpha the upper bound.
BoundsPair tc_bounds(const DegreeMoments& m, const SpectrumInterval& iv);

/// Bracket with the interval taken from default_spectrum_interval(g).
BoundsPair tc_bounds(const Graph& g);

/// Moments after removing an edge whose endpoints had degrees di, dj.
DegreeMoments downdated_moments(const DegreeMoments& m, double di, double dj);

/// Moments after adding a virtual edge whose endpoints had degrees di, dj.
DegreeMoments updated_moments(const DegreeMoments& m, double di, double dj);

/// Interval still containing the spectrum of -A after one modification.
SpectrumInterval interval_after(ModKind kind, const SpectrumInterval& iv);

}  // namespace tcomm
