#include "tcomm/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace tcomm {

namespace {

constexpr double radicand_slack = 1e-10;

double checked_sqrt(double r, const char* what) {
    if (r < 0.0) {
        if (r < -radicand_slack) throw std::domain_error(std::string(what) + ": negative variance " + std::to_string(r));
        return 0.0;
    }
    return std::sqrt(r);
}

}  // namespace

DegreeMoments degree_moments(const Graph& g) {
    DegreeMoments m;
    m.n = g.n();
    if (m.n == 0) throw std::invalid_argument("degree_moments: empty node set");
    double mean = 0.0;
    for (NodeId v = 0; v < g.n(); ++v) mean += g.row_sum(v);
    mean /= static_cast<double>(m.n);
    double var = 0.0;
    for (NodeId v = 0; v < g.n(); ++v) {
        double d = g.row_sum(v) - mean;
        var += d * d;
    }
    m.omega = -mean;
    m.gamma = std::sqrt(var / static_cast<double>(m.n));
    return m;
}

double phi(double x, double y, double c) {
    double scale = std::max({1.0, std::abs(x), std::abs(y)});
    if (std::abs(x - y) <= 1e-14 * scale) throw std::domain_error("phi: coincident nodes");
    double ex = std::exp(-x), ey = std::exp(-y);
    return (c * (ex - ey) + x * ey - y * ex) / (x - y);
}

double radau_2x2_value(double omega, double gamma, double tau, double c) {
    if (gamma == 0.0) return std::exp(-omega);
    if (omega == tau) throw std::domain_error("radau_2x2_value: prescribed node equals omega");
    double mu2 = omega + gamma * gamma / (omega - tau);
    return phi(tau, mu2, c);
}

BoundsPair tc_bounds(const DegreeMoments& m, const SpectrumInterval& iv) {
    if (iv.alpha > iv.beta) throw std::invalid_argument("tc_bounds: alpha > beta");
    BoundsPair b;
    b.interval = iv;
    b.moments = m;
    if (m.gamma == 0.0) {
        // Regular graph (including the empty one): ones is an eigenvector, TC/n is exact.
        b.lower = b.upper = std::exp(-m.omega);
        return b;
    }
    b.lower = radau_2x2_value(m.omega, m.gamma, iv.beta, m.omega);
    b.upper = radau_2x2_value(m.omega, m.gamma, iv.alpha, m.omega);
    return b;
}

BoundsPair tc_bounds(const Graph& g) {
    auto m = degree_moments(g);
    if (g.m() == 0 && g.self_loops().empty()) return tc_bounds(m, SpectrumInterval{0.0, 0.0});
    return tc_bounds(m, default_spectrum_interval(g));
}

DegreeMoments downdated_moments(const DegreeMoments& m, double di, double dj) {
    const double n = static_cast<double>(m.n);
    DegreeMoments out = m;
    out.omega = m.omega + 2.0 / n;
    double r = m.gamma * m.gamma - (2.0 / n) * (di + dj - 1.0 + 2.0 * m.omega + 2.0 / n);
    out.gamma = checked_sqrt(r, "downdated_moments");
    return out;
}

DegreeMoments updated_moments(const DegreeMoments& m, double di, double dj) {
    const double n = static_cast<double>(m.n);
    DegreeMoments out = m;
    out.omega = m.omega - 2.0 / n;
    double r = m.gamma * m.gamma + (2.0 / n) * (di + dj + 1.0 + 2.0 * m.omega - 2.0 / n);
    out.gamma = checked_sqrt(r, "updated_moments");
    return out;
}

SpectrumInterval interval_after(ModKind kind, const SpectrumInterval& iv) {
    if (kind == ModKind::downdate) return {iv.alpha, iv.beta + 1.0};
    return {iv.alpha - 1.0, iv.beta};
}

}  // namespace tcomm
