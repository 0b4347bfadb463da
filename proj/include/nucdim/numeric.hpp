#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace nucdim {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Largest singular value.
double operator_norm(const CMatrix& m);

// Rank with a relative singular-value threshold.
int matrix_rank(const CMatrix& m, double rel_tol = 1e-7);

// Orthonormal basis of the (right) null space of m.
std::vector<CVector> null_space(const CMatrix& m, double rel_tol = 1e-9);

// Groups eigenvalues that agree within `tol` (absolute), returning one
// representative per cluster and the member indices.
struct EigenCluster {
  Complex value;
  std::vector<int> members;
};
std::vector<EigenCluster> cluster_values(const CVector& values, double tol);

// Nearest integer with enforced residual; throws NumericalDegeneracy.
std::int64_t round_to_integer(double value, double tol, const char* what);

}  // namespace nucdim
