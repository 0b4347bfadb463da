#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nucdim/graph.hpp"

namespace nucdim {

// A finite path mu in E, possibly of length 0 (a vertex).
class FinitePath {
 public:
  // Length-0 path at a vertex.
  FinitePath(GraphPtr graph, int base_vertex);
  // Nonempty path; validates s(mu_j) = r(mu_{j+1}).
  FinitePath(GraphPtr graph, std::vector<int> edges);

  static FinitePath from_ids(const GraphPtr& graph,
                             const std::vector<std::string>& ids);

  const GraphPtr& graph() const { return graph_; }
  const std::vector<int>& edges() const { return edges_; }
  std::size_t length() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  int range() const;   // r(first edge) or the base vertex
  int source() const;  // s(last edge) or the base vertex

  // mu.nu with s(mu) = r(nu).
  FinitePath concat(const FinitePath& tail) const;
  // The first n edges (n <= length); a vertex path at range() for n = 0.
  FinitePath prefix(std::size_t n) const;

  std::vector<std::string> edge_ids() const;

  bool operator==(const FinitePath& other) const;

 private:
  GraphPtr graph_;
  std::vector<int> edges_;
  int base_vertex_;  // only meaningful when edges_ is empty
};

// The set of valid lags between two shift-equivalent paths: empty, or a
// full arithmetic progression offset + modulus * Z.  Tails of eventually
// periodic paths are periodic, so nothing in between occurs.
struct LagSet {
  bool empty = true;
  std::int64_t offset = 0;    // normalised into [0, modulus)
  std::int64_t modulus = 1;   // primitive period of the common tail

  static LagSet none() { return LagSet{}; }
  static LagSet progression(std::int64_t offset, std::int64_t modulus);

  bool contains(std::int64_t k) const;
  LagSet negated() const;  // lags of (y, x) given lags of (x, y)

  bool operator==(const LagSet& other) const;
};

// An eventually periodic infinite path prefix . cycle^infinity.
//
// Canonical form: the cycle has primitive period and the prefix is
// shortest (its last edge differs from the cycle's last edge).  Two
// EPPaths represent the same edge sequence iff their canonical forms are
// identical, which makes equality of infinite paths decidable.
class EPPath {
 public:
  // Validates s(prefix) = r(cycle) and canonicalises.
  EPPath(FinitePath prefix, ReturnPath cycle);

  static EPPath parse(const GraphPtr& graph, const std::string& literal);

  const GraphPtr& graph() const { return prefix_.graph(); }
  const FinitePath& prefix() const { return prefix_; }
  const ReturnPath& cycle() const { return cycle_; }
  bool canonical() const { return canonical_; }

  int range() const { return prefix_.empty() ? cycle_.range() : prefix_.range(); }
  // Primitive period of the tail.
  std::int64_t tail_period() const { return static_cast<std::int64_t>(cycle_.length()); }

  // The i-th edge of the represented infinite sequence, 1-based.
  int symbol(std::int64_t i) const;

  // Drops the first edge (the one-sided shift).
  EPPath shifted() const;
  // Prepends an edge e with s(e) = r(this).
  EPPath prepended(int edge) const;

  // Literal in the CLI grammar, e.g. "e^a" for e.a^infinity, "^a" for
  // a^infinity.
  std::string to_literal() const;

  bool operator==(const EPPath& other) const;
  bool operator<(const EPPath& other) const;  // lexicographic on the literal parts

 private:
  FinitePath prefix_;
  ReturnPath cycle_;
  bool canonical_ = false;
};

// Unique canonical form; idempotent; preserves the represented sequence.
EPPath canonicalize(const EPPath& p);

// Equality of the represented infinite edge sequences.
bool ep_equal(const EPPath& p, const EPPath& q);

// The complete finite set E^infinity in canonical form.  Requires that no
// return path has an entrance (otherwise the path space is uncountable)
// and that the graph has no sources (r^{-1}(v) nonempty for all v).
std::vector<EPPath> enumerate_infinite_paths(const GraphPtr& g);

// Internal variant used by verification code: tolerates sources (vertices
// with no infinite path simply contribute nothing).  Still requires the
// no-entrance hypothesis.
std::vector<EPPath> enumerate_infinite_paths_tolerant(const GraphPtr& g);

// All valid lags k with x_i = y_{i+k} eventually.
LagSet shift_lags(const EPPath& x, const EPPath& y);

// x in Z(mu): the first |mu| edges of x equal mu.  A length-0 mu tests
// r(x) = base vertex.
bool in_cylinder(const EPPath& x, const FinitePath& mu);

enum class CylinderRelation { Disjoint, LeftInsideRight, RightInsideLeft, Equal };

// Prefix logic on cylinder sets: Z(mu) is inside Z(nu) iff nu is a prefix
// of mu.
CylinderRelation cylinder_relation(const FinitePath& mu, const FinitePath& nu);

// Path literals:  finite paths are "@v" (length 0) or "e1.e2"; eventually
// periodic paths are "<prefix>^<cycle>" with an optional prefix, e.g.
// "e^a" for e.a^infinity and "^a" for a^infinity.
FinitePath parse_finite_path(const GraphPtr& graph, const std::string& literal);
std::string format_finite_path(const FinitePath& path);

}  // namespace nucdim
