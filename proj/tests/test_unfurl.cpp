#include "nucdim/unfurl.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "nucdim/errors.hpp"
#include "test_helpers.hpp"

using namespace nucdim;
using nucdim::testing::e1;

namespace {

// Independent lag oracle: scan candidate lags and compare long unrollings
// of the two image rays symbol by symbol.
std::int64_t brute_force_lag(const UnfurledGraph& f, const EPPath& x,
                             const EPPath& y) {
  UnfurledInfinitePath X = psi(f, x), Y = psi(f, y);
  std::int64_t window = 4 * (X.tail_position() + Y.tail_position() +
                             x.tail_period() + y.tail_period());
  for (std::int64_t l = -window; l <= window; ++l) {
    std::int64_t start = std::max(X.tail_position(), Y.tail_position() - l);
    bool ok = true;
    for (std::int64_t i = start; i <= start + 2 * window && ok; ++i)
      if (uip_symbol(f, X, i) != uip_symbol(f, Y, i + l)) ok = false;
    if (ok) return l;
  }
  FAIL("no lag found by the oracle");
  return 0;
}

}  // namespace

TEST_CASE("unfurl E1") {
  auto g = e1();
  UnfurledGraph f = unfurl(g, 4);
  GraphPtr F = f.materialized(4);

  for (const char* v : {"u'", "w'[a]/0", "w'[a]/1", "w'[a]/2", "w'[a]/3",
                        "w'[a]/4"})
    CHECK(F->vertex_index(v) >= 0);
  for (const char* e : {"e'", "a'/0", "a'/1", "a'/2", "a'/3"})
    CHECK(F->edge_index(e) >= 0);

  const auto& eprime = F->edge(F->edge_index("e'"));
  CHECK(F->vertex_id(eprime.range) == "u'");
  CHECK(F->vertex_id(eprime.source) == "w'[a]/0");

  const auto& a0 = F->edge(F->edge_index("a'/0"));
  CHECK(F->vertex_id(a0.range) == "w'[a]/0");
  CHECK(F->vertex_id(a0.source) == "w'[a]/1");

  CHECK(cycle_vertices(*F).empty());

  auto u0 = f.U0();
  CHECK(std::count(u0.begin(), u0.end(), "u'") == 1);
  CHECK(std::count(u0.begin(), u0.end(), "w'[a]/0") == 1);
  CHECK(u0.size() == 2);
}

TEST_CASE("unfurl acyclic graph is a primed copy") {
  auto g = DirectedGraph::make(
      {"a", "b", "c"}, {{"e1", "a", "b"}, {"e2", "b", "c"}});
  UnfurledGraph f = unfurl(g, 4);
  GraphPtr F = f.materialized(4);
  CHECK(F->vertex_count() == 3);
  CHECK(F->edge_count() == 2);
  CHECK(F->vertex_index("a'") >= 0);
  CHECK(F->edge_index("e1'") >= 0);
}

TEST_CASE("unfurl a 2-cycle") {
  auto g = nucdim::testing::two_cycle_with_exit();
  UnfurledGraph f = unfurl(g, 5);
  GraphPtr F = f.materialized(5);
  // representative starts at w2 (the exit vertex), so the ray alternates
  // c1, c0, c1, ...
  REQUIRE(f.representatives().size() == 1);
  CHECK(f.representatives()[0].edge_ids() ==
        std::vector<std::string>{"c1", "c0"});
  CHECK(F->edge_index("c1'/0") >= 0);
  CHECK(F->edge_index("c0'/1") >= 0);
  CHECK(F->edge_index("c1'/2") >= 0);
  CHECK(cycle_vertices(*F).empty());
}

TEST_CASE("phi") {
  auto g = e1();
  UnfurledGraph f = unfurl(g, 8);
  int a = g->edge_index("a"), e = g->edge_index("e");

  FPath img = phi(f, FinitePath(g, std::vector<int>{e, a, a}));
  CHECK(img.edges == std::vector<std::string>{"e'", "a'/0", "a'/1"});
  CHECK(img.range_vertex == "u'");

  FPath vertex_img = phi(f, FinitePath(g, g->vertex_index("u")));
  CHECK(vertex_img.edges.empty());
  CHECK(vertex_img.range_vertex == "u'");

  FPath pure = phi(f, FinitePath(g, std::vector<int>{a, a}));
  CHECK(pure.edges == std::vector<std::string>{"a'/0", "a'/1"});
  CHECK(pure.range_vertex == "w'[a]/0");
}

TEST_CASE("phi preserves length and concatenation at V0 boundaries") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = nucdim::testing::random_entrance_free_graph(rng);
    UnfurledGraph f = unfurl(g, 32);
    // all paths of length <= 8 from a random start
    std::vector<std::vector<int>> stack;
    for (int e = 0; e < static_cast<int>(g->edge_count()); ++e)
      stack.push_back({e});
    std::size_t scanned = 0;
    while (!stack.empty() && scanned < 300) {
      auto edges = stack.back();
      stack.pop_back();
      ++scanned;
      FinitePath mu(g, edges);
      FPath img = phi(f, mu);
      CHECK(img.edges.size() == mu.length());  // |Phi(mu)| = |mu|
      // extend
      if (edges.size() < 8) {
        for (int e2 : g->in_edges(g->edge(edges.back()).source)) {
          auto longer = edges;
          longer.push_back(e2);
          stack.push_back(std::move(longer));
        }
      }
      // multiplicativity when the split point lies in V^0
      for (std::size_t cut = 1; cut < edges.size(); ++cut) {
        int mid = g->edge(edges[cut - 1]).source;
        if (!f.in_V0(mid)) continue;
        FinitePath front(g, std::vector<int>(edges.begin(), edges.begin() + cut));
        FinitePath back(g, std::vector<int>(edges.begin() + cut, edges.end()));
        FPath fa = phi(f, front), fb = phi(f, back);
        std::vector<std::string> joined = fa.edges;
        joined.insert(joined.end(), fb.edges.begin(), fb.edges.end());
        CHECK(joined == img.edges);
      }
    }
  }
}

TEST_CASE("psi") {
  auto g = e1();
  UnfurledGraph f = unfurl(g, 8);

  UnfurledInfinitePath ea = psi(f, EPPath::parse(g, "e^a"));
  CHECK(ea.prefix == std::vector<std::string>{"e'"});
  CHECK(ea.subscript == 0);
  CHECK(ea.tail_position() == 2);
  CHECK(uip_symbol(f, ea, 1) == "e'");
  CHECK(uip_symbol(f, ea, 2) == "a'/0");
  CHECK(uip_symbol(f, ea, 5) == "a'/3");

  UnfurledInfinitePath pure = psi(f, EPPath::parse(g, "^a"));
  CHECK(pure.prefix.empty());
  CHECK(pure.subscript == 0);
  CHECK(pure.tail_position() == 1);

  // Non-representative rotation: the tail starts at the matching
  // subscript j > 0.
  auto g2 = nucdim::testing::two_cycle_with_exit();
  UnfurledGraph f2 = unfurl(g2, 8);
  UnfurledInfinitePath rot = psi(f2, EPPath::parse(g2, "^c0.c1"));
  CHECK(rot.subscript == 1);  // starts at w1 = w_{alpha,1}
  UnfurledInfinitePath rep = psi(f2, EPPath::parse(g2, "^c1.c0"));
  CHECK(rep.subscript == 0);
}

TEST_CASE("psi respects cylinders") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 15; ++trial) {
    auto g = nucdim::testing::random_entrance_free_graph(rng);
    UnfurledGraph f = unfurl(g, 32);
    for (const auto& x : enumerate_infinite_paths(g)) {
      UnfurledInfinitePath X = psi(f, x);
      for (std::int64_t n = 1; n <= 6; ++n) {
        std::vector<int> pre;
        for (std::int64_t i = 1; i <= n; ++i) pre.push_back(x.symbol(i));
        FPath img = phi(f, FinitePath(g, pre));
        for (std::int64_t i = 1; i <= n; ++i)
          CHECK(uip_symbol(f, X, i) == img.edges[i - 1]);
      }
    }
  }
}

TEST_CASE("lag") {
  auto g = e1();
  UnfurledGraph f = unfurl(g, 8);
  EPPath ea = EPPath::parse(g, "e^a");
  EPPath pure = EPPath::parse(g, "^a");

  CHECK(lag(f, ea, pure) == -1);
  CHECK(lag(f, pure, ea) == 1);
  CHECK(lag(f, ea, ea) == 0);
  CHECK(lag(f, pure, pure) == 0);

  CHECK(lag(f, ea, pure) == brute_force_lag(f, ea, pure));

  auto loops = DirectedGraph::make(
      {"v", "w", "z"},
      {{"p", "v", "v"}, {"q", "w", "w"}, {"t", "z", "v"}, {"s", "z", "w"}});
  UnfurledGraph floops = unfurl(loops, 8);
  CHECK_THROWS_AS(lag(floops, EPPath::parse(loops, "^p"),
                      EPPath::parse(loops, "^q")),
                  Error);
}

TEST_CASE("lag matches the brute-force oracle and is additive") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 15; ++trial) {
    auto g = nucdim::testing::random_entrance_free_graph(rng);
    UnfurledGraph f = unfurl(g, 64);
    auto paths = enumerate_infinite_paths(g);
    for (const auto& x : paths) {
      for (const auto& y : paths) {
        if (shift_lags(x, y).empty) continue;
        std::int64_t l = lag(f, x, y);
        CHECK(l == brute_force_lag(f, x, y));
        for (const auto& z : paths) {
          if (shift_lags(y, z).empty) continue;
          CHECK(lag(f, x, z) == l + lag(f, y, z));
        }
      }
    }
  }
}

TEST_CASE("upsilon") {
  auto g = e1();
  UnfurledGraph f = unfurl(g, 8);
  EPPath ea = EPPath::parse(g, "e^a");
  EPPath pure = EPPath::parse(g, "^a");

  QuotientElement q = upsilon(f, GroupoidElement(ea, 3, pure));
  CHECK(q.l == -1);  // independent of k = 3
  CHECK(q == upsilon(f, GroupoidElement(ea, 0, pure)));

  QuotientElement unit = upsilon(f, GroupoidElement::unit(ea));
  CHECK(unit.l == 0);
  CHECK(unit.X == unit.Y);

  QuotientElement iso = upsilon(f, GroupoidElement(pure, 5, pure));
  CHECK(iso.l == 0);
  CHECK(iso.X == iso.Y);
}

TEST_CASE("verify_unfurl on E1") {
  auto g = e1();
  VerificationReport report = verify_unfurl(g, 6);
  CHECK(report.all_passed);
  CHECK(report.checks.size() >= 6);
  for (const auto& c : report.checks) CHECK(c.passed);
}

TEST_CASE("verify_unfurl catches a corrupted lag function") {
  auto g = e1();
  UnfurledGraph f = unfurl(g, 16);
  VerifyOptions options;
  options.lag_override = [&f](const EPPath& x, const EPPath& y) {
    std::int64_t true_lag = lag(f, x, y);
    // corrupt non-unit values
    return ep_equal(x, y) ? true_lag : true_lag + 1;
  };
  VerificationReport report = verify_unfurl(g, 16, options);
  CHECK_FALSE(report.all_passed);
  bool homomorphism_failed = false;
  for (const auto& c : report.checks)
    if (c.name == "upsilon-homomorphism" && !c.passed && !c.witness.empty())
      homomorphism_failed = true;
  CHECK(homomorphism_failed);
}

TEST_CASE("verify_unfurl on an acyclic graph is vacuous") {
  auto g = DirectedGraph::make(
      {"a", "b", "c"}, {{"e1", "a", "b"}, {"e2", "b", "c"}});
  VerificationReport report = verify_unfurl(g, 4);
  CHECK(report.all_passed);
}

TEST_CASE("verify_unfurl across random graphs and depths") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 8; ++trial) {
    auto g = nucdim::testing::random_entrance_free_graph(rng);
    VerificationReport report = verify_unfurl(g, 64);
    CHECK(report.all_passed);
  }
}

TEST_CASE("materialized F stays acyclic at any depth") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 6; ++trial) {
    auto g = nucdim::testing::random_entrance_free_graph(rng);
    UnfurledGraph f = unfurl(g, 4);
    for (std::size_t depth : {4u, 16u, 64u}) {
      GraphPtr F = f.materialized(depth);
      CHECK(cycle_vertices(*F).empty());
      CHECK(enumerate_simple_cycles(F).empty());
    }
  }
}
