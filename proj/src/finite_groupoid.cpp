#include "nucdim/finite_groupoid.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "nucdim/errors.hpp"

namespace nucdim {

FiniteGroupoid::FiniteGroupoid(std::vector<int> unit_of_r,
                               std::vector<int> unit_of_s,
                               std::vector<std::vector<int>> composition,
                               std::vector<int> inverse,
                               std::vector<std::string> labels)
    : unit_of_r_(std::move(unit_of_r)),
      unit_of_s_(std::move(unit_of_s)),
      composition_(std::move(composition)),
      inverse_(std::move(inverse)),
      labels_(std::move(labels)) {
  const int n = static_cast<int>(unit_of_r_.size());
  if (n == 0) fail(ErrorKind::InvalidAction, "empty groupoid");
  if (static_cast<int>(unit_of_s_.size()) != n ||
      static_cast<int>(composition_.size()) != n ||
      static_cast<int>(inverse_.size()) != n)
    fail(ErrorKind::InvalidAction, "inconsistent groupoid data sizes");
  if (labels_.empty())
    for (int e = 0; e < n; ++e) labels_.push_back("e" + std::to_string(e));

  for (int e = 0; e < n; ++e) {
    if (unit_of_r_[e] < 0 || unit_of_r_[e] >= n || unit_of_s_[e] < 0 ||
        unit_of_s_[e] >= n)
      fail(ErrorKind::InvalidAction, "range/source out of bounds");
    if (is_unit(e)) units_.push_back(e);
  }
  for (int u : units_) {
    if (unit_of_r_[u] != u || unit_of_s_[u] != u)
      fail(ErrorKind::InvalidAction, "unit with r or s not itself");
  }
  for (int e = 0; e < n; ++e) {
    int rr = unit_of_r_[e], ss = unit_of_s_[e];
    if (!is_unit(rr) || !is_unit(ss))
      fail(ErrorKind::InvalidAction, "r/s must land in the unit set");
    // g g^{-1} = unit at r(g), g^{-1} g = unit at s(g)
    int inv = inverse_[e];
    if (inv < 0 || inv >= n) fail(ErrorKind::InvalidAction, "inverse out of bounds");
    if (unit_of_r_[inv] != ss || unit_of_s_[inv] != rr)
      fail(ErrorKind::InvalidAction, "inverse has wrong endpoints");
    if (composition_[e][inv] != rr || composition_[inv][e] != ss)
      fail(ErrorKind::InvalidAction, "g g^{-1} is not the unit at r(g)");
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int c = composition_[a][b];
      bool composable = unit_of_s_[a] == unit_of_r_[b];
      if (composable != (c >= 0))
        fail(ErrorKind::InvalidAction,
             "composition must be defined exactly when s(a) = r(b)");
      if (c >= 0) {
        if (c >= n) fail(ErrorKind::InvalidAction, "composition out of bounds");
        if (unit_of_r_[c] != unit_of_r_[a] || unit_of_s_[c] != unit_of_s_[b])
          fail(ErrorKind::InvalidAction, "composition endpoints are wrong");
      }
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (composition_[a][b] < 0) continue;
      for (int c = 0; c < n; ++c) {
        if (composition_[b][c] < 0) continue;
        if (composition_[composition_[a][b]][c] !=
            composition_[a][composition_[b][c]])
          fail(ErrorKind::InvalidAction, "composition is not associative");
      }
    }
  // unit laws
  for (int e = 0; e < n; ++e) {
    if (composition_[unit_of_r_[e]][e] != e || composition_[e][unit_of_s_[e]] != e)
      fail(ErrorKind::InvalidAction, "unit laws fail");
  }
}

std::vector<int> FiniteGroupoid::source_fiber(int u) const {
  if (!is_unit(u)) fail(ErrorKind::NotAUnit, label(u) + " is not a unit");
  std::vector<int> fiber;
  for (int e = 0; e < static_cast<int>(size()); ++e)
    if (unit_of_s_[e] == u) fiber.push_back(e);
  return fiber;
}

std::pair<FiniteGroup, std::vector<int>> FiniteGroupoid::isotropy_at(int u) const {
  if (!is_unit(u)) fail(ErrorKind::NotAUnit, label(u) + " is not a unit");
  std::vector<int> members;
  for (int e = 0; e < static_cast<int>(size()); ++e)
    if (unit_of_r_[e] == u && unit_of_s_[e] == u) members.push_back(e);
  std::vector<int> pos(size(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) pos[members[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> table(members.size(),
                                      std::vector<int>(members.size()));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < members.size(); ++i) {
    names.push_back(label(members[i]));
    for (std::size_t j = 0; j < members.size(); ++j)
      table[i][j] = pos[composition_[members[i]][members[j]]];
  }
  return {FiniteGroup(std::move(table), std::move(names)), members};
}

FiniteGroupoid FiniteGroupoid::restricted_to(
    const std::vector<int>& unit_subset) const {
  std::set<int> keep(unit_subset.begin(), unit_subset.end());
  for (int u : keep)
    if (!is_unit(u)) fail(ErrorKind::NotAUnit, label(u) + " is not a unit");
  std::vector<int> members;
  for (int e = 0; e < static_cast<int>(size()); ++e)
    if (keep.count(unit_of_r_[e]) && keep.count(unit_of_s_[e]))
      members.push_back(e);
  std::vector<int> pos(size(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) pos[members[i]] = static_cast<int>(i);
  std::vector<int> ur, us, inv;
  std::vector<std::vector<int>> comp(members.size(),
                                     std::vector<int>(members.size(), -1));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < members.size(); ++i) {
    ur.push_back(pos[unit_of_r_[members[i]]]);
    us.push_back(pos[unit_of_s_[members[i]]]);
    inv.push_back(pos[inverse_[members[i]]]);
    labels.push_back(label(members[i]));
    for (std::size_t j = 0; j < members.size(); ++j) {
      int c = composition_[members[i]][members[j]];
      comp[i][j] = c < 0 ? -1 : pos[c];
    }
  }
  return FiniteGroupoid(std::move(ur), std::move(us), std::move(comp),
                        std::move(inv), std::move(labels));
}

FiniteGroupoid FiniteGroupoid::disjoint_union(const FiniteGroupoid& a,
                                              const FiniteGroupoid& b) {
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  std::vector<int> ur, us, inv;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> comp(na + nb, std::vector<int>(na + nb, -1));
  for (int e = 0; e < na; ++e) {
    ur.push_back(a.unit_of_r_[e]);
    us.push_back(a.unit_of_s_[e]);
    inv.push_back(a.inverse_[e]);
    labels.push_back("A." + a.label(e));
  }
  for (int e = 0; e < nb; ++e) {
    ur.push_back(na + b.unit_of_r_[e]);
    us.push_back(na + b.unit_of_s_[e]);
    inv.push_back(na + b.inverse_[e]);
    labels.push_back("B." + b.label(e));
  }
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < na; ++y) comp[x][y] = a.composition_[x][y];
  for (int x = 0; x < nb; ++x)
    for (int y = 0; y < nb; ++y) {
      int c = b.composition_[x][y];
      comp[na + x][na + y] = c < 0 ? -1 : na + c;
    }
  return FiniteGroupoid(std::move(ur), std::move(us), std::move(comp),
                        std::move(inv), std::move(labels));
}

FiniteGroupoid FiniteGroupoid::from_group(const FiniteGroup& h) {
  const int n = static_cast<int>(h.order());
  std::vector<int> ur(n, h.identity()), us(n, h.identity()), inv(n);
  std::vector<std::vector<int>> comp(n, std::vector<int>(n));
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    inv[a] = h.invert(a);
    labels.push_back(h.name_of(a));
    for (int b = 0; b < n; ++b) comp[a][b] = h.multiply(a, b);
  }
  return FiniteGroupoid(std::move(ur), std::move(us), std::move(comp),
                        std::move(inv), std::move(labels));
}

FiniteGroupoid FiniteGroupoid::transitive(std::size_t orbit_size,
                                          const FiniteGroup& h) {
  const int o = static_cast<int>(orbit_size);
  const int m = static_cast<int>(h.order());
  const int n = o * o * m;
  auto idx = [&](int i, int j, int a) { return (i * o + j) * m + a; };
  std::vector<int> ur(n), us(n), inv(n);
  std::vector<std::string> labels(n);
  std::vector<std::vector<int>> comp(n, std::vector<int>(n, -1));
  for (int i = 0; i < o; ++i)
    for (int j = 0; j < o; ++j)
      for (int a = 0; a < m; ++a) {
        int e = idx(i, j, a);
        ur[e] = idx(i, i, h.identity());
        us[e] = idx(j, j, h.identity());
        inv[e] = idx(j, i, h.invert(a));
        labels[e] = "(" + std::to_string(i) + "<-" + std::to_string(j) + ";" +
                    h.name_of(a) + ")";
      }
  for (int i = 0; i < o; ++i)
    for (int j = 0; j < o; ++j)
      for (int k = 0; k < o; ++k)
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            comp[idx(i, j, a)][idx(j, k, b)] = idx(i, k, h.multiply(a, b));
  return FiniteGroupoid(std::move(ur), std::move(us), std::move(comp),
                        std::move(inv), std::move(labels));
}

FiniteGroupoid transformation_groupoid(
    const FiniteGroup& h, const std::vector<std::string>& points,
    const std::vector<std::vector<int>>& action) {
  const int m = static_cast<int>(h.order());
  const int np = static_cast<int>(points.size());
  if (static_cast<int>(action.size()) != m)
    fail(ErrorKind::InvalidAction, "action must be given for every group element");
  for (const auto& row : action) {
    if (static_cast<int>(row.size()) != np)
      fail(ErrorKind::InvalidAction, "action row has wrong size");
    for (int x : row)
      if (x < 0 || x >= np) fail(ErrorKind::InvalidAction, "action image out of range");
  }
  for (int x = 0; x < np; ++x)
    if (action[h.identity()][x] != x)
      fail(ErrorKind::InvalidAction, "identity must act trivially");
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int x = 0; x < np; ++x)
        if (action[a][action[b][x]] != action[h.multiply(a, b)][x])
          fail(ErrorKind::InvalidAction,
               "compatibility a.(b.x) = (ab).x fails");

  const int n = np * m;
  auto idx = [&](int x, int a) { return x * m + a; };
  std::vector<int> ur(n), us(n), inv(n);
  std::vector<std::string> labels(n);
  std::vector<std::vector<int>> comp(n, std::vector<int>(n, -1));
  for (int x = 0; x < np; ++x)
    for (int a = 0; a < m; ++a) {
      int e = idx(x, a);
      int ainv = h.invert(a);
      ur[e] = idx(x, h.identity());
      us[e] = idx(action[ainv][x], h.identity());
      inv[e] = idx(action[ainv][x], ainv);
      labels[e] = "(" + points[x] + "," + h.name_of(a) + ")";
    }
  for (int x = 0; x < np; ++x)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        // (x, a) . (a^{-1}.x, b) = (x, ab)
        int y = action[h.invert(a)][x];
        comp[idx(x, a)][idx(y, b)] = idx(x, h.multiply(a, b));
      }
  return FiniteGroupoid(std::move(ur), std::move(us), std::move(comp),
                        std::move(inv), std::move(labels));
}

std::vector<std::vector<int>> orbits(const FiniteGroupoid& g) {
  // Union-find on units via r(e) ~ s(e).
  std::map<int, int> parent;
  for (int u : g.units()) parent[u] = u;
  std::function<int(int)> find = [&](int u) {
    while (parent[u] != u) u = parent[u] = parent[parent[u]];
    return u;
  };
  for (int e = 0; e < static_cast<int>(g.size()); ++e) {
    int a = find(g.r(e)), b = find(g.s(e));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<int, std::vector<int>> grouped;
  for (int u : g.units()) grouped[find(u)].push_back(u);
  std::vector<std::vector<int>> result;
  for (auto& [root, members] : grouped) {
    std::sort(members.begin(), members.end());
    result.push_back(members);
  }
  return result;
}

std::vector<SpectrumEntry> spectrum(const FiniteGroupoid& g, std::uint64_t seed) {
  std::vector<SpectrumEntry> entries;
  for (const auto& orb : orbits(g)) {
    // Isotropy groups along an orbit are conjugate; use the least unit.
    auto [iso, members] = g.isotropy_at(orb.front());
    auto degrees = irrep_degrees(iso, seed);
    std::map<std::int64_t, std::int64_t> by_degree;
    for (auto d : degrees) ++by_degree[d];
    for (const auto& [d, mult] : by_degree) {
      SpectrumEntry entry;
      entry.orbit = orb;
      entry.isotropy_degree = d;
      entry.induced_dimension = static_cast<std::int64_t>(orb.size()) * d;
      entry.multiplicity = mult;
      entries.push_back(std::move(entry));
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) {
              return std::tie(a.orbit, a.isotropy_degree) <
                     std::tie(b.orbit, b.isotropy_degree);
            });
  return entries;
}

bool is_subhomogeneous(const FiniteGroupoid& g, std::int64_t M,
                       std::uint64_t seed) {
  bool by_parts = true;
  for (const auto& orb : orbits(g)) {
    if (static_cast<std::int64_t>(orb.size()) > M) by_parts = false;
    auto [iso, members] = g.isotropy_at(orb.front());
    auto degrees = irrep_degrees(iso, seed);
    if (!degrees.empty() && degrees.back() > M) by_parts = false;
  }
  std::int64_t max_induced = 0;
  for (const auto& entry : spectrum(g, seed))
    max_induced = std::max(max_induced, entry.induced_dimension);
  // Orbits <= M and isotropy degrees <= M force induced dimensions <= M^2.
  if (by_parts && max_induced > M * M)
    fail(ErrorKind::VerificationFailed,
         "subhomogeneity cross-check failed: induced dimension " +
             std::to_string(max_induced) + " > M^2");
  return by_parts;
}

Strata strata(const FiniteGroupoid& g) {
  Strata result;
  std::size_t max_size = 0;
  for (const auto& orb : orbits(g)) {
    auto& bucket = result.exactly[orb.size()];
    bucket.insert(bucket.end(), orb.begin(), orb.end());
    max_size = std::max(max_size, orb.size());
  }
  for (auto& [n, units] : result.exactly) std::sort(units.begin(), units.end());
  for (std::size_t n = 0; n <= max_size; ++n) {
    std::vector<int> le, ge;
    for (const auto& [sz, units] : result.exactly) {
      if (sz <= n) le.insert(le.end(), units.begin(), units.end());
      if (sz >= n) ge.insert(ge.end(), units.begin(), units.end());
    }
    std::sort(le.begin(), le.end());
    std::sort(ge.begin(), ge.end());
    result.at_most[n] = std::move(le);
    result.at_least[n] = std::move(ge);
  }
  return result;
}

CompositionSeries composition_series(const FiniteGroupoid& g,
                                     std::uint64_t seed) {
  CompositionSeries series;
  for (const auto& orb : orbits(g)) {
    auto [iso, members] = g.isotropy_at(orb.front());
    if (!iso.is_abelian()) {
      series.applicable = false;
      series.non_abelian_witness_unit = orb.front();
      return series;
    }
  }
  series.applicable = true;

  auto entries = spectrum(g, seed);
  std::set<std::int64_t> dims;
  for (const auto& e : entries) dims.insert(e.induced_dimension);
  series.thresholds.push_back(0);
  for (auto d : dims) series.thresholds.push_back(d);

  bool all_restrictions_ok = true;
  for (std::size_t n = 1; n < series.thresholds.size(); ++n) {
    std::int64_t m = series.thresholds[n];
    std::vector<SpectrumEntry> prim_m;
    for (const auto& e : entries)
      if (e.induced_dimension == m) prim_m.push_back(e);

    // Support X_{>= M_n}: units in orbits of size >= M_n (abelian isotropy
    // makes induced dimension = orbit size).
    std::vector<int> support;
    for (const auto& orb : orbits(g))
      if (static_cast<std::int64_t>(orb.size()) >= m)
        support.insert(support.end(), orb.begin(), orb.end());
    std::sort(support.begin(), support.end());

    // Independent cross-check: the spectrum of G restricted to X_{= M_n}
    // must consist of dimension-M_n entries matching Prim_{M_n} in count.
    std::vector<int> exact;
    for (const auto& orb : orbits(g))
      if (static_cast<std::int64_t>(orb.size()) == m)
        exact.insert(exact.end(), orb.begin(), orb.end());
    std::int64_t expected = 0;
    for (const auto& e : prim_m) expected += e.multiplicity;
    std::int64_t got = 0;
    if (!exact.empty()) {
      auto restricted = g.restricted_to(exact);
      for (const auto& e : spectrum(restricted, seed)) {
        if (e.induced_dimension != m) all_restrictions_ok = false;
        got += e.multiplicity;
      }
    }
    if (got != expected) all_restrictions_ok = false;

    series.prim.push_back(std::move(prim_m));
    series.supports.push_back(std::move(support));
  }
  series.restriction_check_passed = all_restrictions_ok;
  return series;
}

CMatrix multiplier_diag(const FiniteGroupoid& g,
                        const std::map<int, Complex>& h) {
  const int n = static_cast<int>(g.size());
  CMatrix d = CMatrix::Zero(n, n);
  for (int e = 0; e < n; ++e) {
    auto it = h.find(g.r(e));
    d(e, e) = it == h.end() ? Complex(0, 0) : it->second;
  }
  return d;
}

CMatrix convolution_matrix(const FiniteGroupoid& g, const CVector& f) {
  const int n = static_cast<int>(g.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    if (f(a) == Complex(0, 0)) continue;
    for (int b = 0; b < n; ++b) {
      auto c = g.compose(a, b);
      if (c) m(*c, b) += f(a);
    }
  }
  return m;
}

FiniteGroupoid random_groupoid(std::mt19937_64& rng, std::size_t max_elements) {
  std::vector<FiniteGroup> groups{
      FiniteGroup::named("Z/1"), FiniteGroup::named("Z/2"),
      FiniteGroup::named("Z/3"), FiniteGroup::named("Klein4"),
      FiniteGroup::named("S3"),
  };
  std::uniform_int_distribution<int> pick_group(0, static_cast<int>(groups.size()) - 1);
  std::uniform_int_distribution<int> pick_orbit(1, 3);
  std::optional<FiniteGroupoid> result;
  std::size_t total = 0;
  int pieces = 1 + static_cast<int>(rng() % 3);
  for (int p = 0; p < pieces; ++p) {
    const FiniteGroup& h = groups[pick_group(rng)];
    int o = pick_orbit(rng);
    std::size_t sz = static_cast<std::size_t>(o) * o * h.order();
    if (total + sz > max_elements) continue;
    auto piece = FiniteGroupoid::transitive(o, h);
    total += sz;
    result = result ? FiniteGroupoid::disjoint_union(*result, piece) : piece;
  }
  if (!result) result = FiniteGroupoid::transitive(1, groups[0]);
  return *result;
}

}  // namespace nucdim
