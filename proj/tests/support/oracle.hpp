#pragma once

// Reference computations for tests. They deliberately avoid the library's
// Lanczos and eigen-solver paths.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tcomm/graph.hpp"
#include "tcomm/heuristics.hpp"

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd adjacency(const tcomm::Graph& g);

/// e^M by scaling and squaring with a Taylor series.
MatrixXd expm_taylor(const MatrixXd& m);

/// Eigenvalues (descending) and eigenvectors of a symmetric matrix by cyclic Jacobi rotations.
struct Eig {
    VectorXd values;
    MatrixXd vectors;
};
Eig jacobi_eigen(const MatrixXd& a);

double tc(const tcomm::Graph& g);
double tc_normalized(const tcomm::Graph& g);

/// Population mean and standard deviation of the row sums.
std::pair<double, double> degree_mean_std(const tcomm::Graph& g);

}  // namespace oracle

namespace fixtures {

tcomm::Graph path(std::size_t n);
tcomm::Graph cycle(std::size_t n);
tcomm::Graph complete(std::size_t n);
tcomm::Graph star(std::size_t leaves);
tcomm::Graph empty(std::size_t n);
tcomm::Graph from_pairs(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> pairs);

/// Named networks shipped with the repository, or nullopt when absent.
std::optional<tcomm::Graph> dataset(const std::string& name);
tcomm::Graph zachary();

/// Random connected graph: a random spanning tree plus extra edges with
/// probability p.
tcomm::Graph random_connected(std::size_t n, double p, std::uint64_t seed);

/// Mixed-model family of connected graphs with n <= max_n.
std::vector<tcomm::Graph> mixed_family(std::size_t count, std::size_t max_n, std::uint64_t seed);

}  // namespace fixtures

namespace checks {

struct ShiftReport {
    std::size_t checked = 0;
    std::size_t violations = 0;
    double worst = 0.0;
};

/// Replays the plan and, for every record, compares lambda_1 before and after
/// with the edge eigenvector centrality on the pre-modification graph.
ShiftReport eigenvalue_shift(const tcomm::Graph& g, const tcomm::ModificationPlan& plan, double slack = 1e-8);

}  // namespace checks
