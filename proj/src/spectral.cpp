#include "tcomm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tcomm/rng.hpp"

namespace tcomm {

Operator adjacency_operator(const Graph& g, double scale) {
    return [&g, scale](const Vector& x, Vector& y) {
        y.resize(x.size());
        g.matvec({x.data(), static_cast<std::size_t>(x.size())}, {y.data(), static_cast<std::size_t>(y.size())});
        if (scale != 1.0) y *= scale;
    };
}

namespace {

constexpr double breakdown_rel = 1e-12;

void orthogonalize(const Matrix& basis, Eigen::Index cols, Vector& w) {
    if (cols == 0) return;
    for (int pass = 0; pass < 2; ++pass) {
        Vector h = basis.leftCols(cols).transpose() * w;
        w.noalias() -= basis.leftCols(cols) * h;
    }
}

void ensure_capacity(Matrix& basis, Eigen::Index cols) {
    if (basis.cols() >= cols) return;
    Eigen::Index grown = std::max<Eigen::Index>(cols, 2 * basis.cols());
    basis.conservativeResize(Eigen::NoChange, grown);
}

// Eigen-decomposition of the symmetric tridiagonal with the given diagonal
// and the first diag.size()-1 entries of off.
Eigen::SelfAdjointEigenSolver<Matrix> tridiagonal_eigen(std::span<const double> diag, std::span<const double> off,
                                                        bool vectors) {
    const auto p = static_cast<Eigen::Index>(diag.size());
    Vector d = Eigen::Map<const Vector>(diag.data(), p);
    Vector e = p > 1 ? Vector(Eigen::Map<const Vector>(off.data(), p - 1)) : Vector(0);
    Eigen::SelfAdjointEigenSolver<Matrix> es;
    es.computeFromTridiagonal(d, e, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    return es;
}

// beta * exp(T) e_1 for the leading p x p block.
Vector tridiagonal_exp_column(std::span<const double> diag, std::span<const double> off, double beta) {
    auto es = tridiagonal_eigen(diag, off, true);
    const Vector& theta = es.eigenvalues();
    const Matrix& s = es.eigenvectors();
    double shift = theta.maxCoeff();
    Vector weights = (theta.array() - shift).exp().matrix().cwiseProduct(s.row(0).transpose());
    return (beta * std::exp(shift)) * (s * weights);
}

// Deterministic, entrywise-positive, symmetry-breaking start vector.
Vector start_vector(std::size_t n, std::uint64_t salt) {
    Vector v(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t h = splitmix64(splitmix64(salt) ^ i);
        v[static_cast<Eigen::Index>(i)] = 1.0 + 0.5 * static_cast<double>(h >> 11) * 0x1.0p-53;
    }
    return v.normalized();
}

void fix_sign(Eigen::Ref<Vector> q) {
    double big = q.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < q.size(); ++i) {
        if (std::abs(q[i]) > 1e-10 * big) {
            if (q[i] < 0) q = -q;
            return;
        }
    }
}

}  // namespace

double tridiagonal_exp_e1(std::span<const double> diag, std::span<const double> off, double scale) {
    auto es = tridiagonal_eigen(diag, off, true);
    Vector theta = scale * es.eigenvalues();
    double shift = theta.maxCoeff();
    double acc = 0.0;
    for (Eigen::Index k = 0; k < theta.size(); ++k) {
        double w = es.eigenvectors()(0, k);
        acc += w * w * std::exp(theta[k] - shift);
    }
    return acc * std::exp(shift);
}

LanczosTridiagonal lanczos(const Operator& op, const Vector& v0, std::size_t steps, bool reorth, bool keep_basis) {
    if (steps == 0) throw std::invalid_argument("lanczos needs at least one step");
    if (std::abs(v0.norm() - 1.0) > 1e-10) throw std::invalid_argument("lanczos start vector must have unit norm");

    const Eigen::Index n = v0.size();
    LanczosTridiagonal out;
    const bool store = reorth || keep_basis;
    Matrix basis;
    if (store) {
        basis.resize(n, static_cast<Eigen::Index>(std::min<std::size_t>(steps, static_cast<std::size_t>(n))));
        basis.col(0) = v0;
    }

    Vector q = v0, q_prev = Vector::Zero(n), w(n);
    double beta_prev = 0.0;
    double scale = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        op(q, w);
        if (k > 0) w.noalias() -= beta_prev * q_prev;
        double alpha = q.dot(w);
        w.noalias() -= alpha * q;
        if (reorth) orthogonalize(basis, static_cast<Eigen::Index>(k + 1), w);
        double beta = w.norm();
        out.diag.push_back(alpha);
        scale = std::max({scale, std::abs(alpha), beta_prev});
        if (beta <= breakdown_rel * std::max(1.0, scale) || static_cast<Eigen::Index>(k + 1) == n) {
            // k + 1 == n: the Krylov space is the whole space, nothing is left.
            out.off.push_back(beta <= breakdown_rel * std::max(1.0, scale) ? 0.0 : beta);
            out.breakdown = out.off.back() == 0.0;
            if (static_cast<Eigen::Index>(k + 1) == n) {
                out.off.back() = 0.0;
                out.breakdown = true;
            }
            break;
        }
        out.off.push_back(beta);
        q_prev = q;
        q = w / beta;
        beta_prev = beta;
        if (store && k + 1 < steps) basis.col(static_cast<Eigen::Index>(k + 1)) = q;
    }
    if (keep_basis) out.basis = basis.leftCols(static_cast<Eigen::Index>(out.steps()));
    return out;
}

EigenpairSet top_eigenpairs(const Graph& g, std::size_t t, double tol) {
    const std::size_t n = g.n();
    if (t == 0 || t > n) throw std::invalid_argument("top_eigenpairs: need 1 <= t <= n");
    const auto N = static_cast<Eigen::Index>(n);
    auto op = adjacency_operator(g);

    const std::size_t min_steps = std::min(n, std::max<std::size_t>(2 * t + 10, 20));
    const std::size_t cap = std::min(n, std::max<std::size_t>(3000, 4 * t));

    Matrix basis(N, static_cast<Eigen::Index>(std::min<std::size_t>(cap, 64)));
    std::vector<double> diag, off;
    std::uint64_t restarts = 0;

    Vector q = start_vector(n, restarts);
    basis.col(0) = q;
    Vector w(N);
    double beta_prev = 0.0;
    double scale = 0.0;
    std::size_t next_check = min_steps;

    Eigen::SelfAdjointEigenSolver<Matrix> ritz;
    std::size_t k = 0;  // basis vectors in use
    while (true) {
        op(q, w);
        if (beta_prev != 0.0) w.noalias() -= beta_prev * basis.col(static_cast<Eigen::Index>(k) - 1);
        double alpha = q.dot(w);
        w.noalias() -= alpha * q;
        orthogonalize(basis, static_cast<Eigen::Index>(k + 1), w);
        double beta = w.norm();
        diag.push_back(alpha);
        ++k;
        scale = std::max({scale, std::abs(alpha), beta_prev});
        bool broke = beta <= breakdown_rel * std::max(1.0, scale);
        off.push_back(broke ? 0.0 : beta);

        const bool exhausted = k == n;
        if (exhausted || (k >= min_steps && (k >= next_check || broke)) || k == cap) {
            ritz = tridiagonal_eigen(diag, off, true);
            const Vector& theta = ritz.eigenvalues();
            double norm_a = std::max({std::abs(theta[0]), std::abs(theta[theta.size() - 1]), 1e-300});
            bool converged = k >= t;
            for (std::size_t j = 0; converged && j < t; ++j) {
                Eigen::Index col = static_cast<Eigen::Index>(k) - 1 - static_cast<Eigen::Index>(j);
                double res = off.back() * std::abs(ritz.eigenvectors()(static_cast<Eigen::Index>(k) - 1, col));
                if (res > tol * norm_a) converged = false;
            }
            if (converged || exhausted) break;
            if (k == cap) {
                throw NonConvergence("top_eigenpairs: no convergence within " + std::to_string(cap) +
                                     " Lanczos steps");
            }
            next_check = k + std::max<std::size_t>(5, k / 8);
        }

        ensure_capacity(basis, static_cast<Eigen::Index>(k + 1));
        if (broke) {
            // Invariant subspace found; continue in its orthogonal complement.
            Vector r;
            do {
                r = start_vector(n, ++restarts);
                orthogonalize(basis, static_cast<Eigen::Index>(k), r);
            } while (r.norm() < 1e-8);
            q = r.normalized();
            beta_prev = 0.0;
        } else {
            q = w / beta;
            beta_prev = beta;
        }
        basis.col(static_cast<Eigen::Index>(k)) = q;
    }

    EigenpairSet out;
    const auto T = static_cast<Eigen::Index>(t);
    const auto K = static_cast<Eigen::Index>(k);
    out.values.resize(T);
    out.vectors.resize(N, T);
    out.residuals.resize(T);
    for (Eigen::Index j = 0; j < T; ++j) {
        Eigen::Index col = K - 1 - j;
        out.values[j] = ritz.eigenvalues()[col];
        Vector y = basis.leftCols(K) * ritz.eigenvectors().col(col);
        y.normalize();
        fix_sign(y);
        out.vectors.col(j) = y;
        Vector ay(N);
        op(y, ay);
        out.residuals[j] = (ay - out.values[j] * y).norm();
    }
    if (t >= 2 && out.values[0] - out.values[1] <= 1e-8 * std::max(1.0, std::abs(out.values[0]))) {
        out.leading_degenerate = true;
        out.warnings.emplace_back("lambda_1 and lambda_2 coincide to working accuracy; q_1 is not unique");
    }
    return out;
}

SpectrumInterval default_spectrum_interval(const Graph& g) {
    double beta = 0.0;
    for (NodeId v = 0; v < g.n(); ++v) beta = std::max(beta, g.row_sum(v));
    auto top = top_eigenpairs(g, 1);
    double lambda = top.values[0] + top.residuals[0];
    lambda += 1e-12 * std::max(1.0, std::abs(lambda));
    // The Gershgorin bound also caps lambda_1, so never report a wider interval than needed.
    return {-std::min(lambda, beta), beta};
}

Vector expm_action(const Graph& g, const Vector& v, double tol, std::size_t max_dim) {
    const std::size_t n = g.n();
    if (static_cast<std::size_t>(v.size()) != n) throw std::invalid_argument("expm_action: dimension mismatch");
    const auto N = static_cast<Eigen::Index>(n);
    double beta0 = v.norm();
    if (beta0 == 0.0) return Vector::Zero(N);

    auto op = adjacency_operator(g);
    const std::size_t cap = std::min(n, max_dim);
    Matrix basis(N, static_cast<Eigen::Index>(cap));
    basis.col(0) = v / beta0;
    std::vector<double> diag, off;
    Vector w(N), coeff, prev;
    double beta_prev = 0.0, scale = 0.0;

    for (std::size_t k = 0;; ++k) {
        const auto K = static_cast<Eigen::Index>(k);
        op(basis.col(K), w);
        if (k > 0) w.noalias() -= beta_prev * basis.col(K - 1);
        double alpha = basis.col(K).dot(w);
        w.noalias() -= alpha * basis.col(K);
        orthogonalize(basis, K + 1, w);
        double beta = w.norm();
        diag.push_back(alpha);
        scale = std::max({scale, std::abs(alpha), beta_prev});
        bool broke = beta <= breakdown_rel * std::max(1.0, scale) || k + 1 == n;

        coeff = tridiagonal_exp_column(diag, off, beta0);
        bool converged = broke;
        if (!converged && k >= 2) {
            double diff = (coeff.head(K) - prev).squaredNorm() + coeff[K] * coeff[K];
            converged = std::sqrt(diff) <= tol * coeff.norm();
        }
        if (converged) return basis.leftCols(K + 1) * coeff;
        if (k + 1 == cap) {
            throw NonConvergence("expm_action: Krylov dimension cap " + std::to_string(max_dim) + " reached");
        }
        prev = coeff;
        off.push_back(beta);
        basis.col(K + 1) = w / beta;
        beta_prev = beta;
    }
}

std::vector<DiagEstimate> diag_expm_estimate(const Graph& g, std::span<const NodeId> nodes, std::size_t quad_steps,
                                             std::optional<SpectrumInterval> interval) {
    if (quad_steps == 0) throw std::invalid_argument("diag_expm_estimate: quad_steps must be >= 1");
    SpectrumInterval iv = interval ? *interval : default_spectrum_interval(g);
    if (iv.alpha > iv.beta) throw std::invalid_argument("diag_expm_estimate: alpha > beta");

    const auto N = static_cast<Eigen::Index>(g.n());
    auto op = adjacency_operator(g, -1.0);
    std::vector<DiagEstimate> out;
    out.reserve(nodes.size());
    for (NodeId node : nodes) {
        if (node >= g.n()) throw std::out_of_range("diag_expm_estimate: node out of range");
        Vector e = Vector::Zero(N);
        e[static_cast<Eigen::Index>(node)] = 1.0;
        auto lt = lanczos(op, e, quad_steps, true);
        const std::size_t p = lt.steps();

        DiagEstimate est{node, 0.0, 0.0, 0.0};
        if (lt.breakdown) {
            // Krylov space is invariant: the Gauss rule is exact.
            double exact = tridiagonal_exp_e1(lt.diag, lt.off, -1.0);
            est.lower = est.upper = est.estimate = exact;
            out.push_back(est);
            continue;
        }

        auto ritz = tridiagonal_eigen(lt.diag, lt.off, false).eigenvalues();
        double slack = 1e-9 * std::max({1.0, std::abs(iv.alpha), std::abs(iv.beta)});
        if (ritz.minCoeff() < iv.alpha - slack || ritz.maxCoeff() > iv.beta + slack) {
            throw std::invalid_argument("diag_expm_estimate: interval does not contain the spectrum of -A");
        }

        // Extend J_p by one row so that tau becomes an eigenvalue:
        // (J_p - tau I) delta = gamma_p^2 e_p, omega_{p+1} = tau + delta_p.
        auto radau = [&](double tau) {
            const auto P = static_cast<Eigen::Index>(p);
            Matrix shifted = Matrix::Zero(P, P);
            for (Eigen::Index r = 0; r < P; ++r) {
                shifted(r, r) = lt.diag[static_cast<std::size_t>(r)] - tau;
                if (r + 1 < P) shifted(r, r + 1) = shifted(r + 1, r) = lt.off[static_cast<std::size_t>(r)];
            }
            Vector rhs = Vector::Zero(P);
            double gamma_p = lt.off[p - 1];
            rhs[P - 1] = gamma_p * gamma_p;
            Vector delta = shifted.partialPivLu().solve(rhs);
            std::vector<double> d(lt.diag), o(lt.off);
            d.push_back(tau + delta[P - 1]);
            o.push_back(0.0);
            return tridiagonal_exp_e1(d, o, -1.0);
        };
        double up = radau(iv.alpha);
        double lo = radau(iv.beta);
        if (lo > up) std::swap(lo, up);
        // Walks of length zero contribute 1 to every diagonal entry of e^A.
        est.lower = std::max(lo, 1.0);
        est.upper = std::max(up, est.lower);
        est.estimate = 0.5 * (est.lower + est.upper);
        out.push_back(est);
    }
    return out;
}

namespace {

Matrix dense_adjacency(const Graph& g, std::size_t cap) {
    if (g.n() > cap) {
        throw CapExceeded("dense oracle: n=" + std::to_string(g.n()) + " exceeds cap " + std::to_string(cap));
    }
    const auto N = static_cast<Eigen::Index>(g.n());
    Matrix a = Matrix::Zero(N, N);
    for (const auto& e : g.edges()) {
        a(static_cast<Eigen::Index>(e.i), static_cast<Eigen::Index>(e.j)) = 1.0;
        a(static_cast<Eigen::Index>(e.j), static_cast<Eigen::Index>(e.i)) = 1.0;
    }
    for (NodeId v : g.self_loops()) a(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v)) = 1.0;
    return a;
}

}  // namespace

Vector dense_eigenvalues(const Graph& g, std::size_t cap) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(dense_adjacency(g, cap), Eigen::EigenvaluesOnly);
    return es.eigenvalues().reverse();
}

DenseSpectrum dense_spectrum(const Graph& g, std::size_t cap) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(dense_adjacency(g, cap));
    DenseSpectrum out;
    out.values = es.eigenvalues().reverse();
    out.vectors = es.eigenvectors().rowwise().reverse();
    return out;
}

Matrix dense_expm_oracle(const Graph& g, std::size_t cap) {
    auto spec = dense_spectrum(g, cap);
    return spec.vectors * spec.values.array().exp().matrix().asDiagonal() * spec.vectors.transpose();
}

}  // namespace tcomm
