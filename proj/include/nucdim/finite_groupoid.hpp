#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nucdim/group.hpp"
#include "nucdim/numeric.hpp"

namespace nucdim {

// A finite groupoid: an explicit element set with a partial composition.
// Composition is defined exactly when s(g) = r(h); all axioms are
// validated on construction.
class FiniteGroupoid {
 public:
  FiniteGroupoid(std::vector<int> unit_of_r, std::vector<int> unit_of_s,
                 std::vector<std::vector<int>> composition,  // -1 = undefined
                 std::vector<int> inverse,
                 std::vector<std::string> labels = {});

  std::size_t size() const { return unit_of_r_.size(); }
  const std::vector<int>& units() const { return units_; }
  bool is_unit(int e) const { return unit_of_r_[e] == e && unit_of_s_[e] == e; }

  int r(int e) const { return unit_of_r_[e]; }  // unit element index
  int s(int e) const { return unit_of_s_[e]; }
  int inverse(int e) const { return inverse_[e]; }
  std::optional<int> compose(int a, int b) const {
    int c = composition_[a][b];
    return c < 0 ? std::nullopt : std::optional<int>(c);
  }

  const std::string& label(int e) const { return labels_[e]; }

  // G_u: elements with s = u.
  std::vector<int> source_fiber(int u) const;

  // The isotropy group G(u) = G^u cap G_u, with the element indices it was
  // built from.
  std::pair<FiniteGroup, std::vector<int>> isotropy_at(int u) const;

  // Restriction to an invariant (or arbitrary) unit subset.
  FiniteGroupoid restricted_to(const std::vector<int>& unit_subset) const;

  static FiniteGroupoid disjoint_union(const FiniteGroupoid& a,
                                       const FiniteGroupoid& b);

  // A group as a one-unit groupoid.
  static FiniteGroupoid from_group(const FiniteGroup& h);

  // The transitive groupoid on `orbit_size` units with isotropy H:
  // elements (i, j, h), r = i, s = j.
  static FiniteGroupoid transitive(std::size_t orbit_size, const FiniteGroup& h);

 private:
  std::vector<int> unit_of_r_, unit_of_s_;
  std::vector<std::vector<int>> composition_;
  std::vector<int> inverse_;
  std::vector<std::string> labels_;
  std::vector<int> units_;
};

// The transformation groupoid X x| H of a left action of H on X:
// elements (x, h) with r = x and s = h^{-1}.x.  `action[h][x]` is h.x;
// identity and compatibility laws are checked.
FiniteGroupoid transformation_groupoid(const FiniteGroup& h,
                                       const std::vector<std::string>& points,
                                       const std::vector<std::vector<int>>& action);

// Orbit partition of the units, each orbit sorted, orbits ordered by their
// least unit.
std::vector<std::vector<int>> orbits(const FiniteGroupoid& g);

// One entry of the spectrum: irreducible representations induced from a
// degree-d irreducible of the isotropy group along an orbit have dimension
// |orbit| * d; `multiplicity` counts the isotropy irreducibles of that
// degree.
struct SpectrumEntry {
  std::vector<int> orbit;          // unit element indices, sorted
  std::int64_t isotropy_degree = 1;
  std::int64_t induced_dimension = 1;
  std::int64_t multiplicity = 1;
};

std::vector<SpectrumEntry> spectrum(const FiniteGroupoid& g,
                                    std::uint64_t seed = 0);

// Orbits of size <= M and isotropy irreducibles of degree <= M.  The
// equivalent bound max induced dimension <= M^2 is cross-asserted.
bool is_subhomogeneous(const FiniteGroupoid& g, std::int64_t M,
                       std::uint64_t seed = 0);

struct Strata {
  std::map<std::size_t, std::vector<int>> exactly;  // X_{=n}
  std::map<std::size_t, std::vector<int>> at_most;  // X_{<=n}
  std::map<std::size_t, std::vector<int>> at_least; // X_{>=n}
};

Strata strata(const FiniteGroupoid& g);

struct CompositionSeries {
  bool applicable = false;
  int non_abelian_witness_unit = -1;  // set when not applicable
  std::vector<std::int64_t> thresholds;  // M_0 = 0 < M_1 < ... < M_j
  // Prim_{M_n} for n >= 1: the spectrum entries of dimension M_n.
  std::vector<std::vector<SpectrumEntry>> prim;
  // Unit-space supports X_{>= M_n} for n >= 1.
  std::vector<std::vector<int>> supports;
  bool restriction_check_passed = false;
};

// The ideal filtration by representation dimension, defined when all
// isotropy groups are abelian; validated by comparing each Prim_{M_n}
// against the spectrum of the restriction to X_{= M_n}.
CompositionSeries composition_series(const FiniteGroupoid& g,
                                     std::uint64_t seed = 0);

// The diagonal multiplier V(h) acting on the free module over the
// elements by gamma -> h(r(gamma)); h is given per unit element index.
CMatrix multiplier_diag(const FiniteGroupoid& g,
                        const std::map<int, Complex>& h);

// Left convolution by the coefficient vector f in the (untwisted) regular
// representation on C^G.
CMatrix convolution_matrix(const FiniteGroupoid& g, const CVector& f);

// A "random" finite groupoid assembled from transitive pieces (every
// finite groupoid is such a disjoint union), used by the cross-validation
// suites.
FiniteGroupoid random_groupoid(std::mt19937_64& rng, std::size_t max_elements = 40);

}  // namespace nucdim
