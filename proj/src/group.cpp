#include "nucdim/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nucdim/errors.hpp"
#include "nucdim/numeric.hpp"

namespace nucdim {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table,
                         std::vector<std::string> names)
    : table_(std::move(table)), names_(std::move(names)) {
  const int n = static_cast<int>(table_.size());
  if (n == 0) fail(ErrorKind::ParseError, "empty multiplication table");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n)
      fail(ErrorKind::ParseError, "multiplication table is not square");
    for (int v : row)
      if (v < 0 || v >= n)
        fail(ErrorKind::ParseError, "table entry out of range");
  }
  if (names_.empty()) {
    for (int i = 0; i < n; ++i) names_.push_back("g" + std::to_string(i));
  } else if (static_cast<int>(names_.size()) != n) {
    fail(ErrorKind::ParseError, "names length differs from table size");
  }

  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      if (table_[e][a] != a || table_[a][e] != a) ok = false;
    if (ok) {
      identity_ = e;
      break;
    }
  }
  if (identity_ < 0) fail(ErrorKind::InvalidAction, "no identity element");

  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
    if (inverse_[a] < 0)
      fail(ErrorKind::InvalidAction, "element without inverse");
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          fail(ErrorKind::InvalidAction, "multiplication is not associative");
}

FiniteGroup FiniteGroup::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
  nlohmann::json table = j;
  std::vector<std::string> names;
  if (j.is_object()) {
    if (!j.contains("table"))
      fail(ErrorKind::ParseError, "group object needs a \"table\"");
    table = j["table"];
    if (j.contains("names"))
      for (const auto& s : j["names"]) names.push_back(s.get<std::string>());
  }
  if (!table.is_array()) fail(ErrorKind::ParseError, "table must be an array");
  std::vector<std::vector<int>> rows;
  for (const auto& r : table) {
    std::vector<int> row;
    for (const auto& v : r) row.push_back(v.get<int>());
    rows.push_back(std::move(row));
  }
  return FiniteGroup(std::move(rows), std::move(names));
}

namespace {

FiniteGroup cyclic(int n) {
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) {
    names.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  }
  return FiniteGroup(std::move(table), std::move(names));
}

// All permutations of {0..k-1} in lexicographic one-line order.
std::vector<std::vector<int>> permutations(int k) {
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> all;
  do {
    all.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return all;
}

FiniteGroup symmetric(int k) {
  auto perms = permutations(k);
  const int n = static_cast<int>(perms.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n; ++i) index[perms[i]] = i;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) {
    std::string nm;
    for (int v : perms[a]) nm += std::to_string(v);
    names.push_back(nm);
    for (int b = 0; b < n; ++b) {
      std::vector<int> comp(k);
      for (int x = 0; x < k; ++x) comp[x] = perms[a][perms[b][x]];
      table[a][b] = index[comp];
    }
  }
  return FiniteGroup(std::move(table), std::move(names));
}

bool perm_is_even(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0;
}

FiniteGroup alternating(int k) {
  auto perms = permutations(k);
  std::vector<std::vector<int>> evens;
  for (auto& p : perms)
    if (perm_is_even(p)) evens.push_back(p);
  const int n = static_cast<int>(evens.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n; ++i) index[evens[i]] = i;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> comp(k);
      for (int x = 0; x < k; ++x) comp[x] = evens[a][evens[b][x]];
      table[a][b] = index[comp];
    }
  return FiniteGroup(std::move(table));
}

FiniteGroup quaternion8() {
  // Elements 1, -1, i, -i, j, -j, k, -k.
  const std::vector<std::string> names{"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  auto neg = [](int a) { return a ^ 1; };
  // base products on {1, i, j, k} = indices {0, 2, 4, 6} with signs
  auto base_mul = [&](int a, int b, int& sign) {
    // returns the base letter of a*b for a,b in {0,2,4,6}
    static const int letter[4][4] = {
        // 1    i    j    k
        {0, 2, 4, 6},
        {2, 0, 6, 4},
        {4, 6, 0, 2},
        {6, 4, 2, 0},
    };
    static const int signs[4][4] = {
        {+1, +1, +1, +1},
        {+1, -1, +1, -1},
        {+1, -1, -1, +1},
        {+1, +1, -1, -1},
    };
    sign = signs[a / 2][b / 2];
    return letter[a / 2][b / 2];
  };
  std::vector<std::vector<int>> table(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int sign = 1;
      int base = base_mul(a & ~1, b & ~1, sign);
      if (a & 1) sign = -sign;
      if (b & 1) sign = -sign;
      table[a][b] = sign > 0 ? base : neg(base);
    }
  return FiniteGroup(std::move(table), names);
}

FiniteGroup dihedral(int n) {
  // Order 2n: elements r^a (0..n-1) and s r^a (n..2n-1), s r^a s = r^{-a}.
  const int order = 2 * n;
  auto idx = [&](int flip, int rot) { return flip * n + ((rot % n) + n) % n; };
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (int f1 = 0; f1 < 2; ++f1)
    for (int a = 0; a < n; ++a)
      for (int f2 = 0; f2 < 2; ++f2)
        for (int b = 0; b < n; ++b) {
          // (s^f1 r^a)(s^f2 r^b) = s^{f1+f2} r^{(-1)^{f2} a + b}
          int rot = (f2 ? -a : a) + b;
          table[idx(f1, a)][idx(f2, b)] = idx((f1 + f2) % 2, rot);
        }
  return FiniteGroup(std::move(table));
}

}  // namespace

FiniteGroup FiniteGroup::named(const std::string& name) {
  if (name == "S3") return symmetric(3);
  if (name == "S4") return symmetric(4);
  if (name == "A4") return alternating(4);
  if (name == "Q8") return quaternion8();
  if (name == "Klein4")
    return direct_product(cyclic(2), cyclic(2));
  if (name.rfind("Z/", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(name.substr(2));
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "bad cyclic group name \"" + name + "\"");
    }
    if (n < 1) fail(ErrorKind::ParseError, "cyclic group order must be >= 1");
    return cyclic(n);
  }
  if (name.rfind("D/", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(name.substr(2));
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "bad dihedral group name \"" + name + "\"");
    }
    if (n < 2) fail(ErrorKind::ParseError, "dihedral parameter must be >= 2");
    return dihedral(n);
  }
  fail(ErrorKind::ParseError, "unknown group name \"" + name + "\"");
}

bool FiniteGroup::is_abelian() const {
  const int n = static_cast<int>(order());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (table_[a][b] != table_[b][a]) return false;
  return true;
}

FiniteGroup FiniteGroup::relabeled(const std::vector<int>& perm) const {
  const int n = static_cast<int>(order());
  if (static_cast<int>(perm.size()) != n)
    fail(ErrorKind::InvalidAction, "relabeling permutation has wrong size");
  std::vector<int> inv(n);
  for (int i = 0; i < n; ++i) inv[perm[i]] = i;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      table[perm[a]][perm[b]] = perm[table_[a][b]];
  std::vector<std::string> names(n);
  for (int a = 0; a < n; ++a) names[perm[a]] = names_[a];
  return FiniteGroup(std::move(table), std::move(names));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a,
                                        const FiniteGroup& b) {
  const int na = static_cast<int>(a.order());
  const int nb = static_cast<int>(b.order());
  std::vector<std::vector<int>> table(na * nb, std::vector<int>(na * nb));
  std::vector<std::string> names;
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y)
      names.push_back("(" + a.name_of(x) + "," + b.name_of(y) + ")");
  for (int x1 = 0; x1 < na; ++x1)
    for (int y1 = 0; y1 < nb; ++y1)
      for (int x2 = 0; x2 < na; ++x2)
        for (int y2 = 0; y2 < nb; ++y2)
          table[x1 * nb + y1][x2 * nb + y2] =
              a.multiply(x1, x2) * nb + b.multiply(y1, y2);
  return FiniteGroup(std::move(table), std::move(names));
}

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g) {
  const int n = static_cast<int>(g.order());
  std::vector<int> cls(n, -1);
  std::vector<std::vector<int>> classes;
  for (int a = 0; a < n; ++a) {
    if (cls[a] >= 0) continue;
    std::set<int> members;
    for (int s = 0; s < n; ++s)
      members.insert(g.multiply(g.multiply(s, a), g.invert(s)));
    int id = static_cast<int>(classes.size());
    classes.emplace_back(members.begin(), members.end());
    for (int m : members) cls[m] = id;
  }
  return classes;
}

std::vector<std::int64_t> irrep_degrees(const FiniteGroup& g,
                                        std::uint64_t seed) {
  auto classes = conjugacy_classes(g);
  const int k = static_cast<int>(classes.size());
  const int n = static_cast<int>(g.order());
  std::vector<int> class_of(n);
  for (int c = 0; c < k; ++c)
    for (int a : classes[c]) class_of[a] = c;

  // Structure constants of class-sum multiplication: z_i z_j = sum_l a_ijl z_l
  // with a_ijl = #{(x,y) in C_i x C_j : xy = t_l} for any fixed t_l in C_l.
  // M_i acts on the center's basis: (M_i)_{l j} = a_ijl.
  std::vector<Eigen::MatrixXd> M(k, Eigen::MatrixXd::Zero(k, k));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      std::vector<std::int64_t> count(k, 0);
      for (int x : classes[i])
        for (int y : classes[j]) ++count[class_of[g.multiply(x, y)]];
      for (int l = 0; l < k; ++l) {
        // counts are class-constant; normalise by |C_l|
        M[i](l, j) = static_cast<double>(count[l]) /
                     static_cast<double>(classes[l].size());
      }
    }
  }

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> unif(0.25, 1.0);
  const int max_attempts = 24;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Eigen::MatrixXd mix = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) mix += unif(rng) * M[i];
    Eigen::ComplexEigenSolver<CMatrix> solver(mix.cast<Complex>());
    if (solver.info() != Eigen::Success) continue;
    auto clusters = cluster_values(solver.eigenvalues(), 1e-8 * (1 + k));
    if (static_cast<int>(clusters.size()) != k) continue;  // resample

    std::vector<std::int64_t> degrees;
    bool ok = true;
    for (int t = 0; t < k && ok; ++t) {
      CVector v = solver.eigenvectors().col(t);
      int pivot = 0;
      for (int i = 1; i < k; ++i)
        if (std::abs(v(i)) > std::abs(v(pivot))) pivot = i;
      // omega_i = |C_i| chi(g_i) / chi(1): eigenvalue of M_i on v.
      double denom = 0;
      for (int i = 0; i < k; ++i) {
        Complex omega = (M[i] * v)(pivot) / v(pivot);
        denom += std::norm(omega) / static_cast<double>(classes[i].size());
      }
      double d = std::sqrt(static_cast<double>(n) / denom);
      try {
        degrees.push_back(round_to_integer(d, 1e-6, "irreducible degree"));
      } catch (const Error&) {
        ok = false;
      }
    }
    if (!ok) continue;
    std::int64_t sum_sq = 0;
    for (auto d : degrees) sum_sq += d * d;
    if (sum_sq != n) continue;
    std::sort(degrees.begin(), degrees.end());
    return degrees;
  }
  fail(ErrorKind::NumericalDegeneracy,
       "class-sum diagonalisation failed after retries");
}

FiniteGroup random_group(std::mt19937_64& rng, std::size_t max_order) {
  std::vector<FiniteGroup> blocks{
      cyclic(2),  cyclic(3),  cyclic(4), cyclic(5), cyclic(6), cyclic(7),
      cyclic(8),  symmetric(3), quaternion8(), dihedral(4), dihedral(5),
      alternating(4), symmetric(4),
  };
  std::uniform_int_distribution<std::size_t> pick(0, blocks.size() - 1);
  FiniteGroup g = blocks[pick(rng)];
  // Optionally multiply by a second block while the order stays small.
  for (int extra = 0; extra < 2; ++extra) {
    if (rng() % 2 == 0) break;
    const FiniteGroup& h = blocks[pick(rng)];
    if (g.order() * h.order() > max_order) break;
    g = FiniteGroup::direct_product(g, h);
  }
  std::vector<int> perm(g.order());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return g.relabeled(perm);
}

}  // namespace nucdim
