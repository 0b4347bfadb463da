#include "nucdim/finite_groupoid.hpp"

#include <map>
#include <random>

#include "doctest.h"
#include "nucdim/errors.hpp"
#include "test_helpers.hpp"

using namespace nucdim;
using nucdim::testing::s3_sign_model;
using nucdim::testing::z2_sign_model;

TEST_CASE("transformation groupoid construction") {
  FiniteGroupoid g = s3_sign_model();
  CHECK(g.size() == 30);
  CHECK(g.units().size() == 5);

  // trivial group: everything is a unit
  FiniteGroup triv = FiniteGroup::named("Z/1");
  FiniteGroupoid all_units =
      transformation_groupoid(triv, {"x", "y"}, {{0, 1}});
  CHECK(all_units.size() == 2);
  CHECK(all_units.units().size() == 2);

  // compatibility failure
  FiniteGroup z2 = FiniteGroup::named("Z/2");
  CHECK_THROWS_AS(transformation_groupoid(z2, {"x", "y"}, {{0, 1}, {0, 1}}),
                  Error);
  CHECK_THROWS_AS(transformation_groupoid(z2, {"x", "y"}, {{1, 0}, {0, 1}}),
                  Error);
}

TEST_CASE("orbits of the sign model") {
  FiniteGroupoid g = s3_sign_model();
  auto orbs = orbits(g);
  REQUIRE(orbs.size() == 3);
  std::multiset<std::size_t> sizes;
  for (const auto& o : orbs) sizes.insert(o.size());
  CHECK(sizes == std::multiset<std::size_t>{1, 2, 2});

  FiniteGroupoid pair5 = FiniteGroupoid::transitive(5, FiniteGroup::named("Z/1"));
  CHECK(orbits(pair5).size() == 1);

  FiniteGroup triv = FiniteGroup::named("Z/1");
  FiniteGroupoid all_units = transformation_groupoid(triv, {"x", "y"}, {{0, 1}});
  CHECK(orbits(all_units).size() == 2);
}

TEST_CASE("isotropy groups of the sign model") {
  FiniteGroupoid g = s3_sign_model();
  // the unit at point "0" is the middle of the 5-point grid
  int zero_unit = -1;
  for (int u : g.units())
    if (g.label(u).rfind("(0,", 0) == 0) zero_unit = u;
  REQUIRE(zero_unit >= 0);

  auto [iso0, members0] = g.isotropy_at(zero_unit);
  CHECK(iso0.order() == 6);
  CHECK_FALSE(iso0.is_abelian());
  CHECK(irrep_degrees(iso0) == std::vector<std::int64_t>{1, 1, 2});

  int one_unit = -1;
  for (int u : g.units())
    if (g.label(u).rfind("(1,", 0) == 0) one_unit = u;
  REQUIRE(one_unit >= 0);
  auto [iso1, members1] = g.isotropy_at(one_unit);
  CHECK(iso1.order() == 3);  // the alternating subgroup
  CHECK(iso1.is_abelian());

  int non_unit = -1;
  for (int e = 0; e < static_cast<int>(g.size()); ++e)
    if (!g.is_unit(e)) non_unit = e;
  CHECK_THROWS_AS(g.isotropy_at(non_unit), Error);
}

TEST_CASE("spectrum of the sign model") {
  FiniteGroupoid g = s3_sign_model();
  auto entries = spectrum(g);

  // At orbit {0}: degrees {1,1,2} giving dimensions 1 (twice) and 2; at
  // each two-point orbit: three 1-dimensional isotropy irreps inducing
  // dimension 2.
  std::map<std::pair<std::size_t, std::int64_t>, std::int64_t> seen;
  for (const auto& e : entries)
    seen[{e.orbit.size(), e.induced_dimension}] += e.multiplicity;
  CHECK(seen[{1, 1}] == 2);
  CHECK(seen[{1, 2}] == 1);
  CHECK(seen[{2, 2}] == 6);  // 3 per two-point orbit
  CHECK(entries.size() == 4);

  std::int64_t max_dim = 0;
  for (const auto& e : entries) max_dim = std::max(max_dim, e.induced_dimension);
  CHECK(max_dim == 2);

  // dimension count: sum of multiplicity * dim^2 = |G|
  std::int64_t total = 0;
  for (const auto& e : entries)
    total += e.multiplicity * e.induced_dimension * e.induced_dimension;
  CHECK(total == static_cast<std::int64_t>(g.size()));

  // all-units groupoid: every entry has dimension 1
  FiniteGroup triv = FiniteGroup::named("Z/1");
  FiniteGroupoid all_units = transformation_groupoid(triv, {"x", "y"}, {{0, 1}});
  for (const auto& e : spectrum(all_units)) CHECK(e.induced_dimension == 1);

  // transitive free groupoid on n units: one entry of dimension n
  FiniteGroupoid pair4 = FiniteGroupoid::transitive(4, triv);
  auto sp = spectrum(pair4);
  REQUIRE(sp.size() == 1);
  CHECK(sp[0].induced_dimension == 4);
  CHECK(sp[0].multiplicity == 1);
}

TEST_CASE("subhomogeneity") {
  FiniteGroupoid g = s3_sign_model();
  CHECK(is_subhomogeneous(g, 2));
  CHECK_FALSE(is_subhomogeneous(g, 1));
  CHECK(is_subhomogeneous(g, static_cast<std::int64_t>(g.size())));

  FiniteGroupoid pair5 = FiniteGroupoid::transitive(5, FiniteGroup::named("Z/1"));
  CHECK_FALSE(is_subhomogeneous(pair5, 4));
  CHECK(is_subhomogeneous(pair5, 5));

  // monotone in M
  for (std::int64_t m = 1; m < 8; ++m)
    if (is_subhomogeneous(g, m)) CHECK(is_subhomogeneous(g, m + 1));
}

TEST_CASE("strata") {
  FiniteGroupoid g = s3_sign_model();
  Strata st = strata(g);
  CHECK(st.exactly[1].size() == 1);
  CHECK(st.exactly[2].size() == 4);
  CHECK(st.at_least[1].size() == 5);
  CHECK(st.at_most[1].size() == 1);
  CHECK(st.at_least[2].size() == 4);

  // X_{<=n} and X_{>=n+1} partition the units
  for (std::size_t n = 0; n <= 2; ++n) {
    std::set<int> le(st.at_most[n].begin(), st.at_most[n].end());
    std::set<int> ge;
    if (st.at_least.count(n + 1))
      ge.insert(st.at_least[n + 1].begin(), st.at_least[n + 1].end());
    CHECK(le.size() + ge.size() == g.units().size());
    for (int u : ge) CHECK_FALSE(le.count(u));
  }

  // strata are unions of orbits
  for (const auto& orb : orbits(g)) {
    std::set<int> stratum(st.exactly[orb.size()].begin(),
                          st.exactly[orb.size()].end());
    for (int u : orb) CHECK(stratum.count(u));
  }
}

TEST_CASE("composition series of the Z/2 sign model") {
  FiniteGroupoid g = z2_sign_model();
  auto series = composition_series(g);
  REQUIRE(series.applicable);
  CHECK(series.thresholds == std::vector<std::int64_t>{0, 1, 2});
  REQUIRE(series.prim.size() == 2);
  std::int64_t prim1 = 0;
  for (const auto& e : series.prim[0]) prim1 += e.multiplicity;
  CHECK(prim1 == 2);  // two 1-dimensional classes at the fixed point
  std::int64_t prim2 = 0;
  for (const auto& e : series.prim[1]) prim2 += e.multiplicity;
  CHECK(prim2 == 1);
  CHECK(series.supports[0].size() == 3);  // X_{>=1} = everything
  CHECK(series.supports[1].size() == 2);  // X_{>=2} = the free orbit
  CHECK(series.restriction_check_passed);
}

TEST_CASE("composition series is not applicable with non-abelian isotropy") {
  FiniteGroupoid g = s3_sign_model();
  auto series = composition_series(g);
  CHECK_FALSE(series.applicable);
  CHECK(g.label(series.non_abelian_witness_unit).rfind("(0,", 0) == 0);
}

TEST_CASE("composition series of an all-units groupoid") {
  FiniteGroup triv = FiniteGroup::named("Z/1");
  FiniteGroupoid all_units = transformation_groupoid(triv, {"x", "y"}, {{0, 1}});
  auto series = composition_series(all_units);
  REQUIRE(series.applicable);
  CHECK(series.thresholds == std::vector<std::int64_t>{0, 1});
  CHECK(series.restriction_check_passed);
}

TEST_CASE("prim M n finite check") {
  // For each orbit of size n and M = n*d, the entries of dimension M at
  // that orbit match the isotropy irreps of degree d.
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    FiniteGroupoid g = random_groupoid(rng);
    auto entries = spectrum(g);
    for (const auto& orb : orbits(g)) {
      auto [iso, members] = g.isotropy_at(orb.front());
      auto degrees = irrep_degrees(iso);
      std::int64_t n = static_cast<std::int64_t>(orb.size());
      for (std::int64_t d = 1; d <= 8; ++d) {
        std::int64_t m = n * d;
        std::int64_t from_spectrum = 0;
        for (const auto& e : entries)
          if (e.orbit == orb && e.induced_dimension == m)
            from_spectrum += e.multiplicity;
        std::int64_t from_isotropy =
            std::count(degrees.begin(), degrees.end(), d);
        CHECK(from_spectrum == from_isotropy);
      }
    }
  }
}

TEST_CASE("multiplier diagonal") {
  FiniteGroupoid g = s3_sign_model();
  const int n = static_cast<int>(g.size());

  std::map<int, Complex> ones;
  for (int u : g.units()) ones[u] = Complex(1, 0);
  CHECK((multiplier_diag(g, ones) - CMatrix::Identity(n, n)).norm() == 0);

  // V(h) f and f V(h) against convolution, on random f.
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> unif(-1, 1);
  std::map<int, Complex> h;
  for (int u : g.units()) h[u] = Complex(unif(rng), unif(rng));
  CMatrix d = multiplier_diag(g, h);
  for (int trial = 0; trial < 5; ++trial) {
    CVector fvec(n);
    for (int i = 0; i < n; ++i) fvec(i) = Complex(unif(rng), unif(rng));
    CVector vh_f(n), f_vh(n);
    for (int e = 0; e < n; ++e) {
      vh_f(e) = h[g.r(e)] * fvec(e);
      f_vh(e) = h[g.s(e)] * fvec(e);
    }
    CHECK((d * convolution_matrix(g, fvec) - convolution_matrix(g, vh_f)).norm() <
          1e-10);
    CHECK((convolution_matrix(g, fvec) * d - convolution_matrix(g, f_vh)).norm() <
          1e-10);
  }

  // indicator of an invariant unit set is central
  auto orbs = orbits(g);
  std::map<int, Complex> indicator;
  for (int u : orbs[1]) indicator[u] = Complex(1, 0);
  CMatrix p = multiplier_diag(g, indicator);
  double max_comm = 0;
  for (int e = 0; e < n; ++e) {
    CVector delta = CVector::Zero(n);
    delta(e) = Complex(1, 0);
    CMatrix conv = convolution_matrix(g, delta);
    max_comm = std::max(max_comm, (p * conv - conv * p).norm());
  }
  CHECK(max_comm < 1e-10);

  // indicator of a non-invariant set is not central
  std::map<int, Complex> bad;
  bad[orbs[1].front()] = Complex(1, 0);  // one point of a two-point orbit
  CMatrix q = multiplier_diag(g, bad);
  double witness = 0;
  for (int e = 0; e < n; ++e) {
    CVector delta = CVector::Zero(n);
    delta(e) = Complex(1, 0);
    CMatrix conv = convolution_matrix(g, delta);
    witness = std::max(witness, (q * conv - conv * q).norm());
  }
  CHECK(witness > 0.5);
}

TEST_CASE("restriction and disjoint union") {
  FiniteGroupoid g = s3_sign_model();
  auto orbs = orbits(g);
  FiniteGroupoid restricted = g.restricted_to(orbs[0]);
  CHECK(restricted.units().size() == orbs[0].size());

  FiniteGroupoid u = FiniteGroupoid::disjoint_union(
      FiniteGroupoid::from_group(FiniteGroup::named("Z/2")),
      FiniteGroupoid::transitive(2, FiniteGroup::named("Z/1")));
  CHECK(u.size() == 6);
  CHECK(u.units().size() == 3);
  CHECK(orbits(u).size() == 2);
}
