#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nucdim/paths.hpp"

namespace nucdim {

// An element (x, k, y) of the graph groupoid G_E, with k a valid lag
// (validated at construction).  Units are normalised as (x, 0, x); any
// (x, k, x) with k != 0 is isotropy but not a unit.
class GroupoidElement {
 public:
  GroupoidElement(EPPath x, std::int64_t k, EPPath y);

  static GroupoidElement unit(const EPPath& x) { return {x, 0, x}; }
  static GroupoidElement parse(const GraphPtr& graph, const std::string& literal);

  const EPPath& x() const { return x_; }
  std::int64_t k() const { return k_; }
  const EPPath& y() const { return y_; }

  bool is_unit() const { return k_ == 0 && ep_equal(x_, y_); }

  std::string to_literal() const;  // "(x | k | y)"

  bool operator==(const GroupoidElement& other) const;

 private:
  EPPath x_;
  std::int64_t k_;
  EPPath y_;
};

// (x,k,y) . (y,l,z) = (x, k+l, z); requires ep_equal(g.y, h.x).
GroupoidElement compose(const GroupoidElement& g, const GroupoidElement& h);

// (x,k,y)^{-1} = (y,-k,x).
GroupoidElement inverse(const GroupoidElement& g);

// r(g) = s(g), i.e. ep_equal(x, y).
bool is_isotropy(const GroupoidElement& g);

struct IsotropyGroup {
  bool is_integers = true;       // trivial only for acyclic path types (unfurl)
  std::int64_t generator = 1;    // positive generator of the lag subgroup
};

// The isotropy group at an eventually periodic path: (primitive tail
// period) . Z.
IsotropyGroup isotropy_group(const EPPath& x);

constexpr std::size_t kDefaultOrbitCap = 10000;

// The orbit [x]: all paths shift-equivalent to x, computed as the closure
// of {x} under the shift and under prepending edges.  Throws CapExceeded
// when more than `cap` paths are found.
std::vector<EPPath> orbit(const EPPath& x, std::size_t cap = kDefaultOrbitCap);

// Partition of E^infinity by orbit size; requires the preconditions of
// enumerate_infinite_paths.
std::map<std::size_t, std::vector<EPPath>> strata(const GraphPtr& g);

// Upsilon(g) = Upsilon(h) iff g h^{-1} is isotropy: the lag is quotiented
// out, so this is equality of both endpoint paths.
bool quotient_equal(const GroupoidElement& g, const GroupoidElement& h);

// The basic compact open bisection Z(mu, nu).
struct BasicBisection {
  FinitePath mu;
  FinitePath nu;

  BasicBisection(FinitePath mu, FinitePath nu);
  std::int64_t lag() const;  // |nu| - |mu|
};

// Membership of (x,k,y) in Z(mu,nu): x in Z(mu), y in Z(nu), k = |nu|-|mu|
// and x_i = y_{i+k} for all i > |mu|.
bool bisection_contains(const BasicBisection& b, const GroupoidElement& g);

std::vector<GroupoidElement> bisection_members(
    const BasicBisection& b, const std::vector<GroupoidElement>& universe);

// Membership of (x,k,y) in Z(mu,nu).Iso(G_E): endpoints in the cylinders
// and x_i = y_{i + |nu| - |mu|} for all i > |mu|, any k.
bool bisection_iso_contains(const BasicBisection& b, const GroupoidElement& g);

// For an isotropy element (x,k,x) with k > 0 in an entrance-free graph,
// the bisection Z(x_1..x_N, x_1..x_{N+k}) from the open-isotropy lemma;
// it contains the element and, under the hypothesis, only isotropy.
BasicBisection isotropy_witness_bisection(const GroupoidElement& g);

// The exhaustive test fragment of G_E: all (x, k, y) with x, y in
// E^infinity and k ranging over the lag-set offset plus `spread` moduli on
// each side (so 2*spread + 1 lags per equivalent pair).
struct ElementUniverse {
  GraphPtr graph;
  std::vector<EPPath> paths;
  std::vector<std::vector<LagSet>> lags;  // lags[i][j] = shift_lags(paths[i], paths[j])
  struct Entry {
    int x;  // index into paths
    std::int64_t k;
    int y;
  };
  std::vector<Entry> elements;

  GroupoidElement element(std::size_t idx) const;

  static ElementUniverse build(const GraphPtr& g, int spread = 3);
  // As above but tolerating sources (used by verification on graphs whose
  // path space is still finite).
  static ElementUniverse build_tolerant(const GraphPtr& g, int spread = 3);
};

}  // namespace nucdim
