#include "nucdim/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "nucdim/errors.hpp"

namespace nucdim {

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

int matrix_rank(const CMatrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  double cut = sv(0) * rel_tol;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return rank;
}

std::vector<CVector> null_space(const CMatrix& m, double rel_tol) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cut = (sv.size() > 0 ? sv(0) : 0.0) * rel_tol;
  std::vector<CVector> basis;
  for (int i = 0; i < svd.matrixV().cols(); ++i) {
    if (i >= sv.size() || sv(i) <= cut)
      basis.push_back(svd.matrixV().col(i));
  }
  return basis;
}

std::vector<EigenCluster> cluster_values(const CVector& values, double tol) {
  std::vector<EigenCluster> clusters;
  for (int i = 0; i < values.size(); ++i) {
    bool placed = false;
    for (auto& c : clusters) {
      if (std::abs(values(i) - c.value) < tol) {
        c.members.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({values(i), {i}});
  }
  return clusters;
}

std::int64_t round_to_integer(double value, double tol, const char* what) {
  double rounded = std::round(value);
  if (std::abs(value - rounded) > tol)
    fail(ErrorKind::NumericalDegeneracy,
         std::string(what) + " = " + std::to_string(value) +
             " is not an integer within " + std::to_string(tol));
  return static_cast<std::int64_t>(rounded);
}

}  // namespace nucdim
