#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace nucdim {

// A finite directed graph E = (E^0, E^1, r, s).  Paths are listed from the
// range, so a path mu_1...mu_k satisfies s(mu_j) = r(mu_{j+1}).
//
// Immutable after construction; all operations on graphs are pure functions.
class DirectedGraph {
 public:
  struct Edge {
    std::string id;
    int range = -1;   // vertex index of r(e)
    int source = -1;  // vertex index of s(e)
  };

  // Builds and validates a graph.  Throws DuplicateId / DanglingEndpoint.
  static std::shared_ptr<const DirectedGraph> make(
      std::vector<std::string> vertices,
      std::vector<std::array<std::string, 3>> edges);  // {id, range, source}

  // Parses the JSON graph format:
  //   {"vertices": ["u","w"], "edges": [{"id":"a","range":"w","source":"w"}]}
  // Unknown keys are rejected.  Throws ParseError and the make() errors.
  static std::shared_ptr<const DirectedGraph> from_json(const std::string& text);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& vertex_id(int v) const { return vertices_.at(v); }
  const Edge& edge(int e) const { return edges_.at(e); }
  const std::string& edge_id(int e) const { return edges_.at(e).id; }

  // Index lookups; -1 when absent.
  int vertex_index(const std::string& id) const;
  int edge_index(const std::string& id) const;

  // r^{-1}(v): edges whose range is v.
  const std::vector<int>& in_edges(int v) const { return in_edges_.at(v); }
  // s^{-1}(v): edges whose source is v.
  const std::vector<int>& out_edges(int v) const { return out_edges_.at(v); }

  std::string to_json() const;
  // One node per vertex, one arrow per edge drawn source -> range,
  // edge label = id.
  std::string to_dot() const;

  bool same_structure(const DirectedGraph& other) const;

 private:
  DirectedGraph() = default;

  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> vertex_index_;
  std::unordered_map<std::string, int> edge_index_;
  std::vector<std::vector<int>> in_edges_;
  std::vector<std::vector<int>> out_edges_;
};

using GraphPtr = std::shared_ptr<const DirectedGraph>;

// Two path values belong together only if they live on the same graph.
void require_same_graph(const GraphPtr& a, const GraphPtr& b);

// A return path: a nonempty finite path mu with s(mu) = r(mu).
class ReturnPath {
 public:
  // Validates connectivity and closure; computes the `simple` flag
  // (ranges of all edges pairwise distinct).
  ReturnPath(GraphPtr graph, std::vector<int> edges);

  static ReturnPath from_ids(const GraphPtr& graph,
                             const std::vector<std::string>& ids);

  const GraphPtr& graph() const { return graph_; }
  const std::vector<int>& edges() const { return edges_; }
  std::size_t length() const { return edges_.size(); }
  bool simple() const { return simple_; }

  int range() const;   // r(mu) = r(first edge)
  int source() const;  // s(mu) = s(last edge), equal to range()

  // Vertices {r(mu_1), ..., r(mu_k)} as a sorted set.
  std::set<int> vertex_set() const;

  // The cyclic rotation starting at position i (0-based).
  ReturnPath rotated(std::size_t i) const;

  std::vector<std::string> edge_ids() const;

  bool operator==(const ReturnPath& other) const;

 private:
  GraphPtr graph_;
  std::vector<int> edges_;
  bool simple_ = false;
};

struct Classification {
  bool is_row_finite = true;
  std::set<std::string> source_vertices;  // v with r^{-1}(v) empty
  bool has_cycles = false;
  bool stably_finite = false;      // no return path has an entrance
  bool every_cycle_has_exit = false;
  bool condition_K = false;        // every return path has an entrance
  // One representative per class (classes = equal vertex sets), with the
  // class's vertex set.
  std::vector<std::pair<ReturnPath, std::set<std::string>>> cycle_classes;
};

constexpr std::size_t kDefaultCycleCap = 10000;

// Vertices v with r^{-1}(v) empty.  The paper's sentence defines sources via
// s^{-1}; path extension under the paths-from-range convention needs r^{-1},
// which is the reading used throughout this library.
std::set<int> sources(const DirectedGraph& g);

// Vertices lying on some return path, via strongly connected components.
std::set<int> cycle_vertices(const DirectedGraph& g);

// All simple return paths up to rotation, each normalised to the rotation
// with lexicographically smallest first edge id.  Throws CapExceeded when
// more than `cap` circuits exist.
std::vector<ReturnPath> enumerate_simple_cycles(const GraphPtr& g,
                                                std::size_t cap = kDefaultCycleCap);

// |r^{-1}(r(mu_i))| > 1 for some vertex on the return path.
bool has_entrance(const DirectedGraph& g, const ReturnPath& c);

// |s^{-1}(s(mu_i))| > 1 for some vertex on the return path.
bool has_exit(const DirectedGraph& g, const ReturnPath& c);

// Full structural classification.  `stably_finite` is computed two ways
// (in-degree of cycle vertices; exhaustive entrance checks on enumerated
// simple cycles) and cross-checked.
Classification classify(const GraphPtr& g, std::size_t cap = kDefaultCycleCap);

// One representative per cycle class, rotated so an exit edge leaves the
// representative's range vertex; ties broken by smallest first edge id.
// Requires: no return path has an entrance, every return path has an exit.
std::vector<ReturnPath> cycle_representatives(const GraphPtr& g,
                                              std::size_t cap = kDefaultCycleCap);

}  // namespace nucdim
