#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tcomm/graph.hpp"

namespace tcomm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Symmetric linear operator y = M x.
using Operator = std::function<void(const Vector& x, Vector& y)>;

class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A dense or brute-force path was asked for a graph above its size cap.
class CapExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// y = scale * A x for the adjacency matrix of g.
Operator adjacency_operator(const Graph& g, double scale = 1.0);

/// Output of a symmetric Lanczos run.
///
/// After p steps, diag holds omega_1..omega_p and off holds gamma_1..gamma_p,
/// where gamma_k is the norm of the residual that would start step k + 1.
/// The p x p tridiagonal uses off[0..p-2]; off[p-1] is what a Gauss-Radau
/// extension needs. On breakdown the run stops at the step whose gamma
/// vanished, that gamma is stored as 0, and `breakdown` is set.
struct LanczosTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;
    /// n x p orthonormal basis when requested.
    Matrix basis;
    bool breakdown = false;

    std::size_t steps() const { return diag.size(); }
};

/// Runs up to `steps` Lanczos steps on op from the unit vector v0. With
/// `reorth` every new vector is orthogonalized twice against the whole basis.
LanczosTridiagonal lanczos(const Operator& op, const Vector& v0, std::size_t steps, bool reorth = true,
                           bool keep_basis = false);

/// Leading eigenpairs of A, largest first.
struct EigenpairSet {
    Vector values;
    /// Column k is the unit eigenvector for values[k].
    Matrix vectors;
    /// ||A q_k - lambda_k q_k||_2 measured on the returned pairs.
    Vector residuals;
    /// Set when lambda_1 and lambda_2 coincide to working accuracy.
    bool leading_degenerate = false;
    std::vector<std::string> warnings;

    std::size_t size() const { return static_cast<std::size_t>(values.size()); }
};

/// Top t eigenpairs by Lanczos with full reorthogonalization. Each residual
/// satisfies ||A q - lambda q|| <= tol * ||A||. Eigenvectors follow the
/// sign convention "first nonzero entry positive"; q_1 of a connected graph
/// is then entrywise positive.
EigenpairSet top_eigenpairs(const Graph& g, std::size_t t, double tol = 1e-10);

/// Interval [alpha, beta] assumed to contain the spectrum of -A.
struct SpectrumInterval {
    double alpha = 0.0;
    double beta = 0.0;
};

/// alpha = -(lambda_1 Ritz value + its residual), beta = largest row sum.
SpectrumInterval default_spectrum_interval(const Graph& g);

/// w ~= e^A v. The Krylov dimension grows until two successive
/// approximants differ by at most tol relative, up to max_dim.
Vector expm_action(const Graph& g, const Vector& v, double tol = 1e-8, std::size_t max_dim = 100);

struct DiagEstimate {
    NodeId node = 0;
    double lower = 0.0;
    double upper = 0.0;
    double estimate = 0.0;
};

/// Gauss-Radau brackets of (e^A)_ii for each requested node, from
/// quad_steps Lanczos steps on -A started at e_i. The interval defaults to
/// default_spectrum_interval(g). The point estimate is the bracket midpoint.
std::vector<DiagEstimate> diag_expm_estimate(const Graph& g, std::span<const NodeId> nodes,
                                             std::size_t quad_steps = 5,
                                             std::optional<SpectrumInterval> interval = std::nullopt);

inline constexpr std::size_t default_oracle_cap = 2000;

/// Full spectrum of A in descending order with orthonormal eigenvectors.
struct DenseSpectrum {
    Vector values;
    Matrix vectors;
};

DenseSpectrum dense_spectrum(const Graph& g, std::size_t cap = default_oracle_cap);

/// Eigenvalues only, descending.
Vector dense_eigenvalues(const Graph& g, std::size_t cap = default_oracle_cap);

/// e^A by full symmetric eigendecomposition.
Matrix dense_expm_oracle(const Graph& g, std::size_t cap = default_oracle_cap);

/// e_1^T f(T) e_1 for the symmetric tridiagonal T, f = exp(scale * x).
double tridiagonal_exp_e1(std::span<const double> diag, std::span<const double> off, double scale);

}  // namespace tcomm
