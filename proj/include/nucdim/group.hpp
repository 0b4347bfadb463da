#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace nucdim {

// A finite group given by its multiplication table.  Elements are indices
// 0..n-1; the table is validated on construction (identity, inverses,
// associativity).
class FiniteGroup {
 public:
  FiniteGroup(std::vector<std::vector<int>> table,
              std::vector<std::string> names = {});

  // Parses {"table": [[...]], "names": [...]} (names optional) or a bare
  // n x n array.  The identity is located from the table.
  static FiniteGroup from_json(const std::string& text);
  // "S3", "S4", "A4", "Z/n", "Q8", "Klein4", "D/n" (dihedral of order 2n).
  static FiniteGroup named(const std::string& name);

  std::size_t order() const { return table_.size(); }
  int identity() const { return identity_; }
  int multiply(int a, int b) const { return table_[a][b]; }
  int invert(int a) const { return inverse_[a]; }
  const std::string& name_of(int a) const { return names_[a]; }
  const std::vector<std::vector<int>>& table() const { return table_; }

  bool is_abelian() const;

  // Relabels elements by a permutation (an isomorphic copy).
  FiniteGroup relabeled(const std::vector<int>& perm) const;

  // Direct product, elements (a, b) enumerated b-fastest.
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<std::string> names_;
  int identity_ = -1;
};

// Partition into conjugacy classes, each sorted, classes ordered by their
// smallest member (the identity's class comes first).
std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g);

// The multiset of irreducible complex representation degrees, by the
// numerical class-sum method: eigenvectors of a random combination of the
// class-sum multiplication matrices give the central characters, and the
// degrees are recovered from the orthogonality normalisation.  Degrees are
// sorted ascending.
std::vector<std::int64_t> irrep_degrees(const FiniteGroup& g,
                                        std::uint64_t seed = 0);

// A random group of order <= max_order: a direct product of named building
// blocks, relabeled by a random permutation.
FiniteGroup random_group(std::mt19937_64& rng, std::size_t max_order = 48);

}  // namespace nucdim
