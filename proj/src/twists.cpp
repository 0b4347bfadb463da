#include "nucdim/twists.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nucdim/errors.hpp"

namespace nucdim {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

std::pair<std::int64_t, std::int64_t> reduce(std::int64_t num, std::int64_t den) {
  if (den == 0) fail(ErrorKind::ParseError, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num %= den;  // angles live modulo one full turn
  if (num < 0) num += den;
  return {num, den};
}

Complex unit_from_angle(std::int64_t num, std::int64_t den) {
  double theta = kTau * static_cast<double>(num) / static_cast<double>(den);
  return Complex(std::cos(theta), std::sin(theta));
}

}  // namespace

void TwoCocycle::set_rational(int a, int b, std::int64_t num, std::int64_t den) {
  if (!groupoid_->compose(a, b))
    fail(ErrorKind::InvalidCocycle, "cocycle entry on a non-composable pair");
  auto reduced = reduce(num, den);
  angles_[{a, b}] = reduced;
  values_[{a, b}] = unit_from_angle(reduced.first, reduced.second);
}

void TwoCocycle::set_value(int a, int b, Complex value) {
  if (!groupoid_->compose(a, b))
    fail(ErrorKind::InvalidCocycle, "cocycle entry on a non-composable pair");
  if (std::abs(std::abs(value) - 1.0) > 1e-9)
    fail(ErrorKind::InvalidCocycle, "cocycle values must have modulus 1");
  values_[{a, b}] = value;
  ++float_entries_;
}

Complex TwoCocycle::value(int a, int b) const {
  auto it = values_.find({a, b});
  return it == values_.end() ? Complex(1, 0) : it->second;
}

std::optional<std::pair<std::int64_t, std::int64_t>> TwoCocycle::rational(
    int a, int b) const {
  auto it = angles_.find({a, b});
  if (it != angles_.end()) return it->second;
  if (values_.count({a, b})) return std::nullopt;  // float entry
  return std::make_pair<std::int64_t, std::int64_t>(0, 1);  // default 1
}

TwoCocycle TwoCocycle::from_json(const FiniteGroupoid& g,
                                 const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
  if (!j.is_array()) fail(ErrorKind::ParseError, "cocycle file must be an array");
  TwoCocycle sigma(&g);
  for (const auto& entry : j) {
    if (!entry.is_object() || !entry.contains("a") || !entry.contains("b") ||
        !entry.contains("angle"))
      fail(ErrorKind::ParseError, "cocycle entries need a, b, angle");
    int a = entry["a"].get<int>();
    int b = entry["b"].get<int>();
    if (a < 0 || a >= static_cast<int>(g.size()) || b < 0 ||
        b >= static_cast<int>(g.size()))
      fail(ErrorKind::ParseError, "cocycle element index out of range");
    const auto& angle = entry["angle"];
    if (angle.is_string()) {
      std::string s = angle.get<std::string>();
      auto slash = s.find('/');
      try {
        if (slash == std::string::npos) {
          sigma.set_rational(a, b, std::stoll(s), 1);
        } else {
          sigma.set_rational(a, b, std::stoll(s.substr(0, slash)),
                             std::stoll(s.substr(slash + 1)));
        }
      } catch (const std::exception&) {
        fail(ErrorKind::ParseError, "bad angle \"" + s + "\"");
      }
    } else if (angle.is_number()) {
      double turns = angle.get<double>();
      sigma.set_value(a, b, Complex(std::cos(kTau * turns), std::sin(kTau * turns)));
    } else {
      fail(ErrorKind::ParseError, "angle must be a string fraction or number");
    }
  }
  return sigma;
}

CocycleCheck validate_cocycle(const TwoCocycle& sigma) {
  const FiniteGroupoid& g = sigma.groupoid();
  const int n = static_cast<int>(g.size());
  CocycleCheck result;

  auto angle_of = [&](int a, int b) { return sigma.rational(a, b); };
  bool exact = sigma.all_rational();

  // Normalisation on pairs involving units.
  for (int e = 0; e < n; ++e) {
    for (int pass = 0; pass < 2; ++pass) {
      int a = pass == 0 ? g.r(e) : e;
      int b = pass == 0 ? e : g.s(e);
      if (std::abs(sigma.value(a, b) - Complex(1, 0)) > 1e-12 &&
          !(exact && angle_of(a, b) == std::make_pair<std::int64_t, std::int64_t>(0, 1))) {
        result.violation = "normalisation fails at (" + g.label(a) + ", " +
                           g.label(b) + ")";
        return result;
      }
    }
  }

  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      auto ab = g.compose(a, b);
      if (!ab) continue;
      for (int c = 0; c < n; ++c) {
        auto bc = g.compose(b, c);
        if (!bc) continue;
        bool ok;
        if (exact) {
          auto lhs1 = *angle_of(a, b), lhs2 = *angle_of(*ab, c);
          auto rhs1 = *angle_of(b, c), rhs2 = *angle_of(a, *bc);
          // compare sums of fractions mod 1 exactly
          std::int64_t lnum = lhs1.first * lhs2.second + lhs2.first * lhs1.second;
          std::int64_t lden = lhs1.second * lhs2.second;
          std::int64_t rnum = rhs1.first * rhs2.second + rhs2.first * rhs1.second;
          std::int64_t rden = rhs1.second * rhs2.second;
          ok = reduce(lnum, lden) == reduce(rnum, rden);
        } else {
          Complex lhs = sigma.value(a, b) * sigma.value(*ab, c);
          Complex rhs = sigma.value(b, c) * sigma.value(a, *bc);
          ok = std::abs(lhs - rhs) <= 1e-12;
        }
        if (!ok) {
          result.violation = "identity fails at (" + g.label(a) + ", " +
                             g.label(b) + ", " + g.label(c) + ")";
          return result;
        }
      }
    }
  }
  result.valid = true;
  return result;
}

StructureAlgebra::StructureAlgebra(const FiniteGroupoid& g,
                                   const TwoCocycle& sigma)
    : groupoid_(&g), sigma_(&sigma), n_(g.size()) {
  auto check = validate_cocycle(sigma);
  if (!check.valid) fail(ErrorKind::InvalidCocycle, check.violation);
}

CVector StructureAlgebra::multiply(const CVector& x, const CVector& y) const {
  const int n = static_cast<int>(n_);
  CVector out = CVector::Zero(n);
  for (int a = 0; a < n; ++a) {
    if (x(a) == Complex(0, 0)) continue;
    for (int b = 0; b < n; ++b) {
      if (y(b) == Complex(0, 0)) continue;
      auto ab = groupoid_->compose(a, b);
      if (ab) out(*ab) += sigma_->value(a, b) * x(a) * y(b);
    }
  }
  return out;
}

CVector StructureAlgebra::star(const CVector& x) const {
  const int n = static_cast<int>(n_);
  CVector out = CVector::Zero(n);
  for (int a = 0; a < n; ++a) {
    int inv = groupoid_->inverse(a);
    out(inv) += std::conj(sigma_->value(a, inv)) * std::conj(x(a));
  }
  return out;
}

CVector StructureAlgebra::unit() const {
  CVector out = CVector::Zero(static_cast<int>(n_));
  for (int u : groupoid_->units()) out(u) = Complex(1, 0);
  return out;
}

CMatrix StructureAlgebra::left_mult(const CVector& x) const {
  const int n = static_cast<int>(n_);
  CMatrix m = CMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    if (x(a) == Complex(0, 0)) continue;
    for (int b = 0; b < n; ++b) {
      auto ab = groupoid_->compose(a, b);
      if (ab) m(*ab, b) += sigma_->value(a, b) * x(a);
    }
  }
  return m;
}

CMatrix StructureAlgebra::right_mult(const CVector& x) const {
  const int n = static_cast<int>(n_);
  CMatrix m = CMatrix::Zero(n, n);
  for (int b = 0; b < n; ++b) {
    if (x(b) == Complex(0, 0)) continue;
    for (int a = 0; a < n; ++a) {
      auto ab = groupoid_->compose(a, b);
      if (ab) m(*ab, a) += sigma_->value(a, b) * x(b);
    }
  }
  return m;
}

CMatrix StructureAlgebra::regular_representation(const CVector& x) const {
  return left_mult(x);
}

double StructureAlgebra::norm(const CVector& x) const {
  return operator_norm(regular_representation(x));
}

std::vector<std::int64_t> wedderburn_degrees(const StructureAlgebra& a,
                                             std::uint64_t seed) {
  const int n = static_cast<int>(a.dimension());

  // The center: x with L_e x = R_e x for every generator e.
  CMatrix stacked(n * n, n);
  for (int e = 0; e < n; ++e) {
    CVector delta = CVector::Zero(n);
    delta(e) = Complex(1, 0);
    CMatrix diff = a.left_mult(delta) - a.right_mult(delta);
    stacked.block(e * n, 0, n, n) = diff;
  }
  auto center = null_space(stacked);
  if (center.empty())
    fail(ErrorKind::NumericalDegeneracy, "could not compute the center");
  const int k = static_cast<int>(center.size());

  std::mt19937_64 rng(seed ^ 0xabcdef1234567890ull);
  std::uniform_real_distribution<double> unif(0.25, 1.0);
  const int max_attempts = 12;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    // A random Hermitian central element: symmetrise a random combination.
    CVector z = CVector::Zero(n);
    for (int t = 0; t < k; ++t)
      z += Complex(unif(rng), unif(rng)) * center[t];
    CVector h = 0.5 * (z + a.star(z));

    CMatrix lh = a.left_mult(h);
    Eigen::ComplexEigenSolver<CMatrix> solver(lh);
    if (solver.info() != Eigen::Success) continue;
    auto clusters = cluster_values(solver.eigenvalues(),
                                   1e-8 * (1 + operator_norm(lh)));
    if (static_cast<int>(clusters.size()) != k) continue;  // need k blocks

    // Central idempotents by Lagrange interpolation in the algebra.
    std::vector<std::int64_t> degrees;
    bool ok = true;
    for (int t = 0; t < k && ok; ++t) {
      CVector e = a.unit();
      for (int sidx = 0; sidx < k; ++sidx) {
        if (sidx == t) continue;
        Complex denom = clusters[t].value - clusters[sidx].value;
        if (std::abs(denom) < 1e-10) {
          ok = false;
          break;
        }
        CVector shifted = h - clusters[sidx].value * a.unit();
        e = a.multiply(e, shifted) / denom;
      }
      if (!ok) break;
      int rank = matrix_rank(a.left_mult(e));
      try {
        degrees.push_back(
            round_to_integer(std::sqrt(static_cast<double>(rank)), 1e-6,
                             "sqrt(rank of block)"));
      } catch (const Error&) {
        ok = false;
      }
    }
    if (!ok) continue;
    std::int64_t sum_sq = 0;
    for (auto d : degrees) sum_sq += d * d;
    if (sum_sq != n) continue;
    std::sort(degrees.begin(), degrees.end());
    return degrees;
  }
  fail(ErrorKind::NumericalDegeneracy,
       "Wedderburn decomposition failed after retries");
}

TwistBoundReport check_twist_bound(const FiniteGroupoid& g,
                                   const TwoCocycle& sigma, std::int64_t M,
                                   std::uint64_t seed) {
  TwistBoundReport report;
  report.bound = M;
  for (int u : g.units()) {
    auto fiber = g.source_fiber(u);
    report.max_fiber =
        std::max(report.max_fiber, static_cast<std::int64_t>(fiber.size()));
  }
  if (report.max_fiber > M)
    fail(ErrorKind::PreconditionViolated,
         "|G_u| = " + std::to_string(report.max_fiber) + " exceeds M = " +
             std::to_string(M));
  StructureAlgebra algebra(g, sigma);
  report.degrees = wedderburn_degrees(algebra, seed);
  report.max_degree = report.degrees.empty() ? 0 : report.degrees.back();
  if (report.max_degree > M)
    fail(ErrorKind::BoundViolated,
         "twisted irreducible degree " + std::to_string(report.max_degree) +
             " exceeds M = " + std::to_string(M));
  return report;
}

CommutatorReport commutator_estimate_check(const FiniteGroupoid& g,
                                           const TwoCocycle& sigma,
                                           const std::map<int, double>& h,
                                           const CVector& f) {
  const int n = static_cast<int>(g.size());
  // Bisection support: at most one element per range unit and per source
  // unit.
  std::set<int> ranges, srcs;
  for (int e = 0; e < n; ++e) {
    if (f(e) == Complex(0, 0)) continue;
    if (!ranges.insert(g.r(e)).second || !srcs.insert(g.s(e)).second)
      fail(ErrorKind::NotABisection,
           "support of f has two elements sharing a range or source");
  }

  auto h_at = [&](int u) {
    auto it = h.find(u);
    return it == h.end() ? 0.0 : it->second;
  };

  StructureAlgebra algebra(g, sigma);
  CVector commutator = CVector::Zero(n);
  double sup = 0;
  for (int e = 0; e < n; ++e) {
    if (f(e) == Complex(0, 0)) continue;
    double diff = h_at(g.r(e)) - h_at(g.s(e));
    commutator(e) = diff * f(e);
    sup = std::max(sup, std::abs(diff));
  }

  CommutatorReport report;
  report.f_norm = algebra.norm(f);
  report.lhs = algebra.norm(commutator);
  report.rhs = sup * report.f_norm;
  report.holds = report.lhs <= report.rhs + 1e-9;
  return report;
}

TwoCocycle coboundary_perturbation(const TwoCocycle& sigma,
                                   const std::vector<Complex>& c) {
  const FiniteGroupoid& g = sigma.groupoid();
  const int n = static_cast<int>(g.size());
  if (static_cast<int>(c.size()) != n)
    fail(ErrorKind::InvalidCocycle, "coboundary data must cover all elements");
  for (int e = 0; e < n; ++e) {
    if (std::abs(std::abs(c[e]) - 1.0) > 1e-9)
      fail(ErrorKind::InvalidCocycle, "coboundary values must have modulus 1");
    if (g.is_unit(e) && std::abs(c[e] - Complex(1, 0)) > 1e-12)
      fail(ErrorKind::InvalidCocycle, "coboundary must be 1 on units");
  }
  TwoCocycle result(&g);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto ab = g.compose(a, b);
      if (!ab) continue;
      result.set_value(a, b, sigma.value(a, b) * c[a] * c[b] / c[*ab]);
    }
  return result;
}

}  // namespace nucdim
