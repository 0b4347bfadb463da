#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nucdim/finite_groupoid.hpp"
#include "nucdim/numeric.hpp"

namespace nucdim {

// A normalised T-valued 2-cocycle on a finite groupoid, stored on
// composable pairs.  Values given as rational multiples of 2*pi are kept
// exact; omitted pairs default to 1.
class TwoCocycle {
 public:
  explicit TwoCocycle(const FiniteGroupoid* groupoid) : groupoid_(groupoid) {}

  static TwoCocycle trivial(const FiniteGroupoid& g) { return TwoCocycle(&g); }

  // angle = p/q of a full turn, so the value is exp(2*pi*i*p/q).
  void set_rational(int a, int b, std::int64_t num, std::int64_t den);
  void set_value(int a, int b, Complex value);

  Complex value(int a, int b) const;
  // The exact angle as a reduced fraction of a full turn, when available.
  std::optional<std::pair<std::int64_t, std::int64_t>> rational(int a, int b) const;
  bool all_rational() const { return float_entries_ == 0; }

  const FiniteGroupoid& groupoid() const { return *groupoid_; }

  // Cocycle input format: [{"a": 3, "b": 5, "angle": "1/2"}, ...]; angles
  // may also be floating point fractions of a full turn.
  static TwoCocycle from_json(const FiniteGroupoid& g, const std::string& text);

 private:
  const FiniteGroupoid* groupoid_;
  std::map<std::pair<int, int>, Complex> values_;
  std::map<std::pair<int, int>, std::pair<std::int64_t, std::int64_t>> angles_;
  std::size_t float_entries_ = 0;
};

struct CocycleCheck {
  bool valid = false;
  std::string violation;  // first violating triple/pair, when invalid
};

// Checks the cocycle identity s(a,b) s(ab,c) = s(b,c) s(a,bc) on all
// composable triples and the normalisation s(r(a),a) = s(a,s(a)) = 1.
// Exact for rational inputs, 1e-12 otherwise.
CocycleCheck validate_cocycle(const TwoCocycle& sigma);

// The twisted convolution *-algebra C(G, sigma): N = |G|, with products
// d_a d_b = sigma(a,b) d_{ab} (0 when not composable) and involution
// d_g^* = conj(sigma(g, g^{-1})) d_{g^{-1}}.
class StructureAlgebra {
 public:
  StructureAlgebra(const FiniteGroupoid& g, const TwoCocycle& sigma);

  std::size_t dimension() const { return n_; }
  const FiniteGroupoid& groupoid() const { return *groupoid_; }

  // Coefficient-vector operations.
  CVector multiply(const CVector& x, const CVector& y) const;
  CVector star(const CVector& x) const;
  CVector unit() const;  // sum of the unit generators

  // Left/right multiplication matrices on the algebra itself.
  CMatrix left_mult(const CVector& x) const;
  CMatrix right_mult(const CVector& x) const;

  // The regular representation on C^G (block-diagonal over source
  // fibers); operator norms in it realise the reduced C*-norm.
  CMatrix regular_representation(const CVector& x) const;

  double norm(const CVector& x) const;

 private:
  const FiniteGroupoid* groupoid_;
  const TwoCocycle* sigma_;
  std::size_t n_;
};

// Block degrees {d_i} of the Wedderburn decomposition A = (+) M_{d_i}:
// the center is computed by a linear solve, a random Hermitian central
// element is diagonalised, and each eigenprojection e_i gives
// d_i = sqrt(rank of left multiplication by e_i).  Sorted ascending;
// asserts sum d_i^2 = N.
std::vector<std::int64_t> wedderburn_degrees(const StructureAlgebra& a,
                                             std::uint64_t seed = 0);

struct TwistBoundReport {
  std::int64_t bound = 0;            // M
  std::int64_t max_fiber = 0;        // max |G_u|
  std::int64_t max_degree = 0;
  std::vector<std::int64_t> degrees;
};

// Checks that all twisted irreducible degrees are at most M, under the
// hypothesis |G_u| <= M for all units.  A violation would falsify the
// finite model and is reported as BoundViolated.
TwistBoundReport check_twist_bound(const FiniteGroupoid& g, const TwoCocycle& sigma,
                                   std::int64_t M, std::uint64_t seed = 0);

struct CommutatorReport {
  double lhs = 0;       // ||V(h) f - f V(h)||
  double rhs = 0;       // sup |h(r)-h(s)| over supp f, times ||f||
  double f_norm = 0;
  bool holds = false;   // lhs <= rhs + 1e-9
};

// The finite model of the bisection commutator estimate: f must be
// supported on a bisection (at most one element per range unit and per
// source unit).
CommutatorReport commutator_estimate_check(const FiniteGroupoid& g,
                                           const TwoCocycle& sigma,
                                           const std::map<int, double>& h,
                                           const CVector& f);

// A coboundary perturbation sigma'(a,b) = sigma(a,b) c(a) c(b) / c(ab)
// with |c| = 1 and c = 1 on units; leaves the decomposition unchanged.
TwoCocycle coboundary_perturbation(const TwoCocycle& sigma,
                                   const std::vector<Complex>& c);

}  // namespace nucdim
