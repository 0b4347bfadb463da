#include "nucdim/group.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "nucdim/errors.hpp"

using namespace nucdim;

TEST_CASE("named groups") {
  CHECK(FiniteGroup::named("S3").order() == 6);
  CHECK(FiniteGroup::named("Z/5").order() == 5);
  CHECK(FiniteGroup::named("Q8").order() == 8);
  CHECK(FiniteGroup::named("Klein4").order() == 4);
  CHECK(FiniteGroup::named("D/4").order() == 8);
  CHECK(FiniteGroup::named("S4").order() == 24);
  CHECK(FiniteGroup::named("A4").order() == 12);

  CHECK_FALSE(FiniteGroup::named("S3").is_abelian());
  CHECK(FiniteGroup::named("Z/6").is_abelian());
  CHECK(FiniteGroup::named("Klein4").is_abelian());
  CHECK_FALSE(FiniteGroup::named("Q8").is_abelian());

  CHECK_THROWS_AS(FiniteGroup::named("E8"), Error);
}

TEST_CASE("group JSON input") {
  // Z/3 as a bare table.
  auto g = FiniteGroup::from_json("[[0,1,2],[1,2,0],[2,0,1]]");
  CHECK(g.order() == 3);
  CHECK(g.identity() == 0);
  CHECK(g.invert(1) == 2);

  auto named = FiniteGroup::from_json(
      R"({"table": [[0,1],[1,0]], "names": ["e", "s"]})");
  CHECK(named.name_of(1) == "s");

  // A latin square that is not associative.
  CHECK_THROWS_AS(
      FiniteGroup::from_json(
          "[[0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]"),
      Error);
  CHECK_THROWS_AS(FiniteGroup::from_json("[[1]]"), Error);
}

TEST_CASE("conjugacy classes") {
  auto s3 = FiniteGroup::named("S3");
  auto classes = conjugacy_classes(s3);
  REQUIRE(classes.size() == 3);
  std::multiset<std::size_t> sizes;
  for (const auto& c : classes) sizes.insert(c.size());
  CHECK(sizes == std::multiset<std::size_t>{1, 2, 3});

  auto z6 = FiniteGroup::named("Z/6");
  CHECK(conjugacy_classes(z6).size() == 6);

  CHECK(conjugacy_classes(FiniteGroup::named("Q8")).size() == 5);
}

TEST_CASE("irrep degrees of named groups") {
  using D = std::vector<std::int64_t>;
  CHECK(irrep_degrees(FiniteGroup::named("S3")) == D{1, 1, 2});
  CHECK(irrep_degrees(FiniteGroup::named("Z/4")) == D{1, 1, 1, 1});
  CHECK(irrep_degrees(FiniteGroup::named("Q8")) == D{1, 1, 1, 1, 2});
  CHECK(irrep_degrees(FiniteGroup::named("Klein4")) == D{1, 1, 1, 1});
  CHECK(irrep_degrees(FiniteGroup::named("D/4")) == D{1, 1, 1, 1, 2});
  CHECK(irrep_degrees(FiniteGroup::named("D/5")) == D{1, 1, 2, 2});
  CHECK(irrep_degrees(FiniteGroup::named("A4")) == D{1, 1, 1, 3});
  CHECK(irrep_degrees(FiniteGroup::named("S4")) == D{1, 1, 2, 3, 3});
}

TEST_CASE("degree constraints on random groups") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    FiniteGroup g = random_group(rng);
    REQUIRE(g.order() <= 48);
    auto degrees = irrep_degrees(g, trial);
    auto classes = conjugacy_classes(g);
    CHECK(degrees.size() == classes.size());
    std::int64_t sum_sq = 0;
    for (auto d : degrees) {
      sum_sq += d * d;
      CHECK(static_cast<std::int64_t>(g.order()) % d == 0);
    }
    CHECK(sum_sq == static_cast<std::int64_t>(g.order()));
    if (g.is_abelian())
      CHECK(degrees == std::vector<std::int64_t>(g.order(), 1));
  }
}

TEST_CASE("relabeling preserves the degree multiset") {
  std::mt19937_64 rng(67);
  auto s4 = FiniteGroup::named("S4");
  std::vector<int> perm(s4.order());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  std::shuffle(perm.begin(), perm.end(), rng);
  CHECK(irrep_degrees(s4.relabeled(perm)) == irrep_degrees(s4));
}
