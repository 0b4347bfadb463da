#include "nucdim/graph.hpp"

#include <random>
#include <set>

#include "doctest.h"
#include "nucdim/errors.hpp"
#include "test_helpers.hpp"

using namespace nucdim;
using nucdim::testing::e1;
using nucdim::testing::e1_json;

namespace {

GraphPtr random_digraph(std::mt19937_64& rng, int max_vertices = 8) {
  int n = 1 + static_cast<int>(rng() % max_vertices);
  std::vector<std::string> vertices;
  for (int i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i));
  int m = static_cast<int>(rng() % (2 * n + 1));
  std::vector<std::array<std::string, 3>> edges;
  for (int e = 0; e < m; ++e)
    edges.push_back({"e" + std::to_string(e),
                     vertices[rng() % n], vertices[rng() % n]});
  return DirectedGraph::make(std::move(vertices), std::move(edges));
}

}  // namespace

TEST_CASE("graph JSON loading") {
  auto g = DirectedGraph::from_json(e1_json());
  CHECK(g->vertex_count() == 2);
  CHECK(g->edge_count() == 2);
  CHECK(g->edge(g->edge_index("a")).range == g->vertex_index("w"));
  CHECK(g->edge(g->edge_index("e")).source == g->vertex_index("w"));

  auto single = DirectedGraph::from_json(R"({"vertices": ["v"], "edges": []})");
  CHECK(single->vertex_count() == 1);
  CHECK(single->edge_count() == 0);

  CHECK_THROWS_AS(DirectedGraph::from_json(
                      R"({"vertices": ["v"],
                          "edges": [{"id":"e","range":"v","source":"z"}]})"),
                  Error);
  try {
    DirectedGraph::from_json(
        R"({"vertices": ["v"], "edges": [{"id":"e","range":"v","source":"z"}]})");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DanglingEndpoint);
  }

  try {
    DirectedGraph::from_json(R"({"vertices": ["v", "v"], "edges": []})");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicateId);
  }

  try {
    DirectedGraph::from_json(R"({"vertices": [], "edges": [], "extra": 1})");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }

  CHECK_THROWS_AS(DirectedGraph::from_json("not json"), Error);
}

TEST_CASE("JSON round trip") {
  auto g = DirectedGraph::from_json(e1_json());
  auto again = DirectedGraph::from_json(g->to_json());
  CHECK(g->same_structure(*again));
}

TEST_CASE("DOT export draws source -> range") {
  auto g = e1();
  std::string dot = g->to_dot();
  CHECK(dot.find("\"w\" -> \"u\" [label=\"e\"]") != std::string::npos);
  CHECK(dot.find("\"w\" -> \"w\" [label=\"a\"]") != std::string::npos);
}

TEST_CASE("sources") {
  CHECK(sources(*e1()).empty());

  auto single = DirectedGraph::make({"v"}, {});
  CHECK(sources(*single) == std::set<int>{0});

  auto chain = DirectedGraph::make({"v1", "v2"}, {{"e", "v1", "v2"}});
  CHECK(sources(*chain) == std::set<int>{chain->vertex_index("v2")});
}

TEST_CASE("cycle_vertices") {
  auto g = e1();
  CHECK(cycle_vertices(*g) == std::set<int>{g->vertex_index("w")});

  auto chain = DirectedGraph::make(
      {"a", "b", "c"}, {{"e1", "a", "b"}, {"e2", "b", "c"}});
  CHECK(cycle_vertices(*chain).empty());

  auto loops = DirectedGraph::make(
      {"v", "w"}, {{"p", "v", "v"}, {"q", "w", "w"}});
  CHECK(cycle_vertices(*loops).size() == 2);
}

TEST_CASE("enumerate_simple_cycles") {
  auto g = e1();
  auto cycles = enumerate_simple_cycles(g);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].edge_ids() == std::vector<std::string>{"a"});
  CHECK(cycles[0].simple());

  auto chain = DirectedGraph::make(
      {"a", "b", "c"}, {{"e1", "a", "b"}, {"e2", "b", "c"}});
  CHECK(enumerate_simple_cycles(chain).empty());

  // Two loops at one vertex: each alone is simple; the length-2 word
  // revisits w so it is not a simple cycle.
  auto two_loops = DirectedGraph::make(
      {"w"}, {{"a", "w", "w"}, {"b", "w", "w"}});
  auto cs = enumerate_simple_cycles(two_loops);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].edge_ids() == std::vector<std::string>{"a"});
  CHECK(cs[1].edge_ids() == std::vector<std::string>{"b"});

  CHECK_THROWS_AS(enumerate_simple_cycles(two_loops, 1), Error);
}

TEST_CASE("has_entrance and has_exit") {
  auto g = e1();
  ReturnPath loop_a = ReturnPath::from_ids(g, {"a"});
  CHECK_FALSE(has_entrance(*g, loop_a));
  CHECK(has_exit(*g, loop_a));

  auto g2 = DirectedGraph::make(
      {"u", "w"}, {{"a", "w", "w"}, {"e", "u", "w"}, {"f", "w", "u"}});
  ReturnPath loop_a2 = ReturnPath::from_ids(g2, {"a"});
  CHECK(has_entrance(*g2, loop_a2));

  auto isolated = DirectedGraph::make({"v"}, {{"p", "v", "v"}});
  ReturnPath loop_p = ReturnPath::from_ids(isolated, {"p"});
  CHECK_FALSE(has_exit(*isolated, loop_p));

  auto two_loops = DirectedGraph::make(
      {"w"}, {{"a", "w", "w"}, {"b", "w", "w"}});
  ReturnPath cyc_a = ReturnPath::from_ids(two_loops, {"a"});
  CHECK(has_entrance(*two_loops, cyc_a));

  auto twoc = nucdim::testing::two_cycle_with_exit();
  ReturnPath c = ReturnPath::from_ids(twoc, {"c0", "c1"});
  CHECK(has_exit(*twoc, c));
  CHECK_FALSE(has_entrance(*twoc, c));

  CHECK_THROWS_AS(ReturnPath::from_ids(g, {"e"}), Error);
}

TEST_CASE("classify") {
  auto cls = classify(e1());
  CHECK(cls.has_cycles);
  CHECK(cls.stably_finite);
  CHECK_FALSE(cls.condition_K);
  CHECK(cls.every_cycle_has_exit);
  CHECK(cls.source_vertices.empty());
  REQUIRE(cls.cycle_classes.size() == 1);
  CHECK(cls.cycle_classes[0].second == std::set<std::string>{"w"});

  auto chain = DirectedGraph::make(
      {"a", "b", "c"}, {{"e1", "a", "b"}, {"e2", "b", "c"}});
  auto cls2 = classify(chain);
  CHECK_FALSE(cls2.has_cycles);
  CHECK(cls2.stably_finite);
  CHECK(cls2.condition_K);  // vacuous

  // Loop with an entrance: stably finite fails, condition (K) holds.
  auto loop_in = DirectedGraph::make(
      {"u", "w"}, {{"a", "w", "w"}, {"f", "w", "u"}, {"e", "u", "w"}});
  auto cls3 = classify(loop_in);
  CHECK(cls3.has_cycles);
  CHECK_FALSE(cls3.stably_finite);
  CHECK(cls3.condition_K);
}

TEST_CASE("classify is deterministic") {
  auto a = classify(DirectedGraph::from_json(e1_json()));
  auto b = classify(DirectedGraph::from_json(e1_json()));
  CHECK(a.stably_finite == b.stably_finite);
  CHECK(a.cycle_classes.size() == b.cycle_classes.size());
  CHECK(a.cycle_classes[0].first.edge_ids() == b.cycle_classes[0].first.edge_ids());
}

TEST_CASE("cycle_representatives") {
  auto reps = cycle_representatives(e1());
  REQUIRE(reps.size() == 1);
  CHECK(reps[0].edge_ids() == std::vector<std::string>{"a"});

  // 2-cycle with the exit only at w2: the representative starts there.
  auto g = DirectedGraph::make(
      {"w1", "w2", "v"},
      {{"a0", "w1", "w2"}, {"a1", "w2", "w1"}, {"e", "v", "w2"}});
  auto reps2 = cycle_representatives(g);
  REQUIRE(reps2.size() == 1);
  CHECK(g->vertex_id(reps2[0].range()) == "w2");
  CHECK(reps2[0].edge_ids() == std::vector<std::string>{"a1", "a0"});

  auto entrance = DirectedGraph::make(
      {"u", "w"}, {{"a", "w", "w"}, {"f", "w", "u"}, {"e", "u", "w"}});
  CHECK_THROWS_AS(cycle_representatives(entrance), Error);

  auto no_exit = DirectedGraph::make({"v"}, {{"p", "v", "v"}});
  CHECK_THROWS_AS(cycle_representatives(no_exit), Error);
}

TEST_CASE("stably-finite cross-check on random graphs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    auto g = random_digraph(rng);
    // classify cross-checks the fast in-degree route against exhaustive
    // entrance checks internally and throws on disagreement.
    try {
      auto cls = classify(g);
      if (!cls.has_cycles) CHECK(cls.stably_finite);
      if (cls.stably_finite && cls.has_cycles) CHECK_FALSE(cls.condition_K);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::CapExceeded);
    }
  }
}

TEST_CASE("entrance-free structure: disjoint simple classes") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = nucdim::testing::random_entrance_free_graph(rng);
    auto cls = classify(g);
    REQUIRE(cls.stably_finite);
    std::set<std::string> seen;
    for (const auto& [rep, vs] : cls.cycle_classes) {
      CHECK(rep.simple());
      for (const auto& v : vs) CHECK(seen.insert(v).second);  // disjoint
    }
    // cycle_vertices equals the union of the simple cycle vertex sets.
    std::set<int> unions;
    for (const auto& c : enumerate_simple_cycles(g))
      for (int v : c.vertex_set()) unions.insert(v);
    CHECK(unions == cycle_vertices(*g));
  }
}
