#include "nucdim/twists.hpp"

#include <random>

#include "doctest.h"
#include "nucdim/errors.hpp"
#include "test_helpers.hpp"

using namespace nucdim;
using nucdim::testing::s3_sign_model;

namespace {

// Klein four group with the anticommuting cocycle sigma(a^i b^j, a^k b^l)
// = (-1)^{jk}.  Element order in Klein4 = Z/2 x Z/2: index = 2i + j.
TwoCocycle klein_cocycle(const FiniteGroupoid& klein) {
  TwoCocycle sigma(&klein);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          if (j * k % 2 == 1)
            sigma.set_rational(2 * i + j, 2 * k + l, 1, 2);  // angle 1/2 = -1
        }
  return sigma;
}

CVector delta(const FiniteGroupoid& g, int e) {
  CVector v = CVector::Zero(static_cast<int>(g.size()));
  v(e) = Complex(1, 0);
  return v;
}

}  // namespace

TEST_CASE("cocycle validation") {
  FiniteGroupoid s3g = FiniteGroupoid::from_group(FiniteGroup::named("S3"));
  CHECK(validate_cocycle(TwoCocycle::trivial(s3g)).valid);

  FiniteGroupoid klein =
      FiniteGroupoid::from_group(FiniteGroup::named("Klein4"));
  CHECK(validate_cocycle(klein_cocycle(klein)).valid);

  // random unit values violate the identity almost surely
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  TwoCocycle random_sigma(&klein);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (klein.is_unit(a) || klein.is_unit(b)) continue;  // keep normalised
      double turns = unif(rng);
      random_sigma.set_value(a, b, Complex(std::cos(6.283185307 * turns),
                                           std::sin(6.283185307 * turns)));
    }
  auto check = validate_cocycle(random_sigma);
  CHECK_FALSE(check.valid);
  CHECK_FALSE(check.violation.empty());
}

TEST_CASE("twisted algebra structure") {
  // trivial cocycle on a group: the group algebra
  FiniteGroupoid s3g = FiniteGroupoid::from_group(FiniteGroup::named("S3"));
  StructureAlgebra group_algebra(s3g, TwoCocycle::trivial(s3g));
  CHECK(group_algebra.dimension() == 6);

  // trivial cocycle on an all-units groupoid: commutative
  FiniteGroup triv = FiniteGroup::named("Z/1");
  FiniteGroupoid units3 =
      transformation_groupoid(triv, {"x", "y", "z"}, {{0, 1, 2}});
  StructureAlgebra commutative(units3, TwoCocycle::trivial(units3));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK((commutative.multiply(delta(units3, a), delta(units3, b)) -
             commutative.multiply(delta(units3, b), delta(units3, a)))
                .norm() == 0);

  // Klein four with the nondegenerate cocycle: delta_a delta_b = -delta_b
  // delta_a
  FiniteGroupoid klein =
      FiniteGroupoid::from_group(FiniteGroup::named("Klein4"));
  TwoCocycle sigma = klein_cocycle(klein);
  StructureAlgebra twisted(klein, sigma);
  int a = 2, b = 1;  // a = (1,0), b = (0,1) in the 2i+j indexing
  CVector ab = twisted.multiply(delta(klein, a), delta(klein, b));
  CVector ba = twisted.multiply(delta(klein, b), delta(klein, a));
  CHECK((ab + ba).norm() < 1e-12);
  CHECK(ab.norm() > 0.5);

  // star identity (x y)^* = y^* x^* on basis vectors
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 20; ++trial) {
    int x = static_cast<int>(rng() % 4), y = static_cast<int>(rng() % 4);
    CVector lhs = twisted.star(twisted.multiply(delta(klein, x), delta(klein, y)));
    CVector rhs = twisted.multiply(twisted.star(delta(klein, y)),
                                   twisted.star(delta(klein, x)));
    CHECK((lhs - rhs).norm() < 1e-10);
  }
}

TEST_CASE("wedderburn degrees") {
  using D = std::vector<std::int64_t>;

  FiniteGroupoid s3g = FiniteGroupoid::from_group(FiniteGroup::named("S3"));
  CHECK(wedderburn_degrees(StructureAlgebra(s3g, TwoCocycle::trivial(s3g))) ==
        D{1, 1, 2});

  FiniteGroupoid klein =
      FiniteGroupoid::from_group(FiniteGroup::named("Klein4"));
  CHECK(wedderburn_degrees(StructureAlgebra(klein, klein_cocycle(klein))) ==
        D{2});
  CHECK(wedderburn_degrees(StructureAlgebra(klein, TwoCocycle::trivial(klein))) ==
        D{1, 1, 1, 1});

  FiniteGroup triv = FiniteGroup::named("Z/1");
  FiniteGroupoid units4 =
      transformation_groupoid(triv, {"a", "b", "c", "d"}, {{0, 1, 2, 3}});
  CHECK(wedderburn_degrees(StructureAlgebra(units4, TwoCocycle::trivial(units4))) ==
        D{1, 1, 1, 1});

  FiniteGroupoid pair3 = FiniteGroupoid::transitive(3, triv);
  CHECK(wedderburn_degrees(StructureAlgebra(pair3, TwoCocycle::trivial(pair3))) ==
        D{3});
}

TEST_CASE("Klein-four twisted algebra is 2x2 matrices") {
  // Explicit isomorphism onto M_2 via X^i Z^j; multiplication matches the
  // cocycle: (X^i Z^j)(X^k Z^l) = (-1)^{jk} X^{i+k} Z^{j+l}.
  FiniteGroupoid klein =
      FiniteGroupoid::from_group(FiniteGroup::named("Klein4"));
  TwoCocycle sigma = klein_cocycle(klein);
  StructureAlgebra algebra(klein, sigma);

  CMatrix X(2, 2), Z(2, 2), I = CMatrix::Identity(2, 2);
  X << 0, 1, 1, 0;
  Z << 1, 0, 0, -1;
  auto rep = [&](int idx) {
    CMatrix m = I;
    if (idx / 2 == 1) m = m * X;
    if (idx % 2 == 1) m = m * Z;
    return m;
  };
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      CVector prod = algebra.multiply(delta(klein, x), delta(klein, y));
      CMatrix expected = rep(x) * rep(y);
      CMatrix got = CMatrix::Zero(2, 2);
      for (int t = 0; t < 4; ++t) got += prod(t) * rep(t);
      CHECK((expected - got).norm() < 1e-12);
    }
}

TEST_CASE("wedderburn matches the spectrum on random groupoids") {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 20; ++trial) {
    FiniteGroupoid g = random_groupoid(rng, 40);
    auto entries = spectrum(g, trial);
    std::vector<std::int64_t> expected;
    for (const auto& e : entries)
      for (std::int64_t i = 0; i < e.multiplicity; ++i)
        expected.push_back(e.induced_dimension);
    std::sort(expected.begin(), expected.end());
    auto got = wedderburn_degrees(StructureAlgebra(g, TwoCocycle::trivial(g)),
                                  trial);
    CHECK(got == expected);
  }
}

TEST_CASE("coboundary invariance") {
  std::mt19937_64 rng(97);
  FiniteGroupoid klein =
      FiniteGroupoid::from_group(FiniteGroup::named("Klein4"));
  TwoCocycle sigma = klein_cocycle(klein);
  auto base = wedderburn_degrees(StructureAlgebra(klein, sigma));

  std::uniform_real_distribution<double> unif(0, 1);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Complex> c(klein.size(), Complex(1, 0));
    for (int e = 0; e < static_cast<int>(klein.size()); ++e) {
      if (klein.is_unit(e)) continue;
      double theta = 6.283185307179586 * unif(rng);
      c[e] = Complex(std::cos(theta), std::sin(theta));
    }
    TwoCocycle perturbed = coboundary_perturbation(sigma, c);
    CHECK(validate_cocycle(perturbed).valid);
    CHECK(wedderburn_degrees(StructureAlgebra(klein, perturbed), trial) == base);
  }
}

TEST_CASE("disjoint unions add degree multisets") {
  FiniteGroup triv = FiniteGroup::named("Z/1");
  FiniteGroupoid a = FiniteGroupoid::transitive(2, FiniteGroup::named("Z/2"));
  FiniteGroupoid b = FiniteGroupoid::transitive(3, triv);
  FiniteGroupoid u = FiniteGroupoid::disjoint_union(a, b);
  auto da = wedderburn_degrees(StructureAlgebra(a, TwoCocycle::trivial(a)));
  auto db = wedderburn_degrees(StructureAlgebra(b, TwoCocycle::trivial(b)));
  std::vector<std::int64_t> expected = da;
  expected.insert(expected.end(), db.begin(), db.end());
  std::sort(expected.begin(), expected.end());
  CHECK(wedderburn_degrees(StructureAlgebra(u, TwoCocycle::trivial(u))) ==
        expected);
}

TEST_CASE("twist bound check") {
  FiniteGroupoid g = s3_sign_model();
  TwoCocycle sigma = TwoCocycle::trivial(g);
  auto report = check_twist_bound(g, sigma, 6);
  CHECK(report.max_fiber == 6);
  CHECK(report.max_degree == 2);

  // precondition: |G_u| <= M
  CHECK_THROWS_AS(check_twist_bound(g, sigma, 5), Error);

  // transitive free groupoid on n units: single degree n = M
  FiniteGroupoid pair4 = FiniteGroupoid::transitive(4, FiniteGroup::named("Z/1"));
  auto r4 = check_twist_bound(pair4, TwoCocycle::trivial(pair4), 4);
  CHECK(r4.degrees == std::vector<std::int64_t>{4});

  // all-units groupoid with M = 1
  FiniteGroup triv = FiniteGroup::named("Z/1");
  FiniteGroupoid units2 = transformation_groupoid(triv, {"x", "y"}, {{0, 1}});
  auto r1 = check_twist_bound(units2, TwoCocycle::trivial(units2), 1);
  CHECK(r1.max_degree == 1);
}

TEST_CASE("commutator estimate") {
  FiniteGroupoid g = s3_sign_model();
  TwoCocycle sigma = TwoCocycle::trivial(g);
  const int n = static_cast<int>(g.size());
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> unif(-1, 1);

  // constant h: the commutator vanishes
  std::map<int, double> constant;
  for (int u : g.units()) constant[u] = 0.7;
  CVector f = delta(g, 7);
  auto zero = commutator_estimate_check(g, sigma, constant, f);
  CHECK(zero.lhs < 1e-12);
  CHECK(zero.holds);

  // single generator: equality
  for (int e = 0; e < n; e += 5) {
    std::map<int, double> h;
    for (int u : g.units()) h[u] = unif(rng);
    auto report = commutator_estimate_check(g, sigma, h, delta(g, e));
    CHECK(report.holds);
    CHECK(report.lhs == doctest::Approx(report.rhs).epsilon(1e-10));
  }

  // random bisection-supported f: the inequality holds
  for (int trial = 0; trial < 100; ++trial) {
    std::map<int, double> h;
    for (int u : g.units()) h[u] = unif(rng);
    // greedy random bisection support
    CVector fv = CVector::Zero(n);
    std::set<int> used_r, used_s;
    for (int tries = 0; tries < 10; ++tries) {
      int e = static_cast<int>(rng() % n);
      if (used_r.count(g.r(e)) || used_s.count(g.s(e))) continue;
      used_r.insert(g.r(e));
      used_s.insert(g.s(e));
      fv(e) = Complex(unif(rng), unif(rng));
    }
    auto report = commutator_estimate_check(g, sigma, h, fv);
    CHECK(report.holds);
  }

  // non-bisection support is rejected
  CVector bad = CVector::Zero(n);
  int u0 = g.units()[0];
  int count = 0;
  for (int e = 0; e < n && count < 2; ++e)
    if (g.r(e) == u0 && !g.is_unit(e)) {
      bad(e) = Complex(1, 0);
      ++count;
    }
  REQUIRE(count == 2);
  CHECK_THROWS_AS(commutator_estimate_check(g, sigma, constant, bad), Error);
}

TEST_CASE("cocycle JSON input") {
  FiniteGroupoid klein =
      FiniteGroupoid::from_group(FiniteGroup::named("Klein4"));
  // sigma(a, b) = -1 entry via the rational angle 1/2.
  TwoCocycle sigma = TwoCocycle::from_json(
      klein, R"([{"a": 2, "b": 1, "angle": "1/2"}])");
  CHECK(std::abs(sigma.value(2, 1) - Complex(-1, 0)) < 1e-12);
  CHECK(std::abs(sigma.value(1, 2) - Complex(1, 0)) < 1e-12);  // default

  CHECK_THROWS_AS(TwoCocycle::from_json(klein, R"([{"a": 99}])"), Error);
}
