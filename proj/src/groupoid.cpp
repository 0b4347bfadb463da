#include "nucdim/groupoid.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "nucdim/errors.hpp"

namespace nucdim {

GroupoidElement::GroupoidElement(EPPath x, std::int64_t k, EPPath y)
    : x_(std::move(x)), k_(k), y_(std::move(y)) {
  LagSet lags = shift_lags(x_, y_);
  if (!lags.contains(k_))
    fail(ErrorKind::NotShiftEquivalent,
         "k = " + std::to_string(k_) + " is not a valid lag for (" +
             x_.to_literal() + ", " + y_.to_literal() + ")");
}

GroupoidElement GroupoidElement::parse(const GraphPtr& graph,
                                       const std::string& literal) {
  std::string s = literal;
  auto strip = [](std::string t) {
    std::size_t a = t.find_first_not_of(" \t");
    std::size_t b = t.find_last_not_of(" \t");
    if (a == std::string::npos) return std::string();
    return t.substr(a, b - a + 1);
  };
  s = strip(s);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    fail(ErrorKind::ParseError, "element literal must be \"(x | k | y)\"");
  s = s.substr(1, s.size() - 2);
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == '|') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3)
    fail(ErrorKind::ParseError, "element literal must have three | parts");
  EPPath x = EPPath::parse(graph, strip(parts[0]));
  EPPath y = EPPath::parse(graph, strip(parts[2]));
  std::int64_t k = 0;
  try {
    k = std::stoll(strip(parts[1]));
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, "lag must be an integer");
  }
  return GroupoidElement(x, k, y);
}

std::string GroupoidElement::to_literal() const {
  std::ostringstream out;
  out << "(" << x_.to_literal() << " | " << k_ << " | " << y_.to_literal()
      << ")";
  return out.str();
}

bool GroupoidElement::operator==(const GroupoidElement& other) const {
  return k_ == other.k_ && x_ == other.x_ && y_ == other.y_;
}

GroupoidElement compose(const GroupoidElement& g, const GroupoidElement& h) {
  if (!ep_equal(g.y(), h.x()))
    fail(ErrorKind::NotComposable, "s(g) != r(h)");
  return GroupoidElement(g.x(), g.k() + h.k(), h.y());
}

GroupoidElement inverse(const GroupoidElement& g) {
  return GroupoidElement(g.y(), -g.k(), g.x());
}

bool is_isotropy(const GroupoidElement& g) { return ep_equal(g.x(), g.y()); }

IsotropyGroup isotropy_group(const EPPath& x) {
  // shift_lags(x, x) = (tail period) . Z; eventually periodic paths always
  // have Z isotropy.
  return IsotropyGroup{true, x.tail_period()};
}

std::vector<EPPath> orbit(const EPPath& x, std::size_t cap) {
  const GraphPtr& g = x.graph();
  std::set<EPPath> seen;
  std::deque<EPPath> queue;
  seen.insert(x);
  queue.push_back(x);
  while (!queue.empty()) {
    EPPath cur = queue.front();
    queue.pop_front();
    std::vector<EPPath> next;
    next.push_back(cur.shifted());
    // prepending f . x needs s(f) = r(x)
    for (int e : g->out_edges(cur.range())) next.push_back(cur.prepended(e));
    for (auto& n : next) {
      if (seen.insert(n).second) {
        if (seen.size() > cap)
          fail(ErrorKind::CapExceeded,
               "orbit exceeds cap " + std::to_string(cap));
        queue.push_back(n);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::map<std::size_t, std::vector<EPPath>> strata(const GraphPtr& g) {
  auto paths = enumerate_infinite_paths(g);
  if (paths.empty())
    fail(ErrorKind::PreconditionViolated, "empty path space");
  std::map<std::size_t, std::vector<EPPath>> result;
  for (const auto& x : paths) result[orbit(x).size()].push_back(x);
  return result;
}

bool quotient_equal(const GroupoidElement& g, const GroupoidElement& h) {
  return ep_equal(g.x(), h.x()) && ep_equal(g.y(), h.y());
}

BasicBisection::BasicBisection(FinitePath mu_in, FinitePath nu_in)
    : mu(std::move(mu_in)), nu(std::move(nu_in)) {
  require_same_graph(mu.graph(), nu.graph());
  if (mu.source() != nu.source())
    fail(ErrorKind::InvalidPath, "Z(mu, nu) needs s(mu) = s(nu)");
}

std::int64_t BasicBisection::lag() const {
  return static_cast<std::int64_t>(nu.length()) -
         static_cast<std::int64_t>(mu.length());
}

namespace {

// x_i = y_{i+k} for all i > start.  The tails are periodic, so checking a
// window past both prefixes and one common period suffices.
bool tails_match_from(const EPPath& x, const EPPath& y, std::int64_t k,
                      std::int64_t start) {
  if (!shift_lags(x, y).contains(k)) return false;
  std::int64_t px = static_cast<std::int64_t>(x.prefix().length());
  std::int64_t py = static_cast<std::int64_t>(y.prefix().length());
  std::int64_t bound =
      std::max({start, px, py - k}) + 2 * x.tail_period() + 1;
  for (std::int64_t i = start + 1; i <= bound; ++i) {
    if (i < 1 || i + k < 1) return false;  // y_{i+k} must exist
    if (x.symbol(i) != y.symbol(i + k)) return false;
  }
  return true;
}

}  // namespace

bool bisection_contains(const BasicBisection& b, const GroupoidElement& g) {
  if (g.k() != b.lag()) return false;
  if (!in_cylinder(g.x(), b.mu) || !in_cylinder(g.y(), b.nu)) return false;
  return tails_match_from(g.x(), g.y(), g.k(),
                          static_cast<std::int64_t>(b.mu.length()));
}

std::vector<GroupoidElement> bisection_members(
    const BasicBisection& b, const std::vector<GroupoidElement>& universe) {
  std::vector<GroupoidElement> result;
  for (const auto& g : universe) {
    require_same_graph(g.x().graph(), b.mu.graph());
    if (bisection_contains(b, g)) result.push_back(g);
  }
  return result;
}

bool bisection_iso_contains(const BasicBisection& b, const GroupoidElement& g) {
  if (!in_cylinder(g.x(), b.mu) || !in_cylinder(g.y(), b.nu)) return false;
  return tails_match_from(g.x(), g.y(), b.lag(),
                          static_cast<std::int64_t>(b.mu.length()));
}

BasicBisection isotropy_witness_bisection(const GroupoidElement& g) {
  if (!is_isotropy(g) || g.k() == 0)
    fail(ErrorKind::PreconditionViolated,
         "witness bisections exist for isotropy elements with k != 0");
  GroupoidElement h = g.k() > 0 ? g : inverse(g);
  const EPPath& x = h.x();
  std::int64_t k = h.k();
  // x_i = x_{i+k} for i > N; N = |prefix| works since the tail has period
  // dividing k.
  std::int64_t n = static_cast<std::int64_t>(x.prefix().length());
  std::vector<int> mu_edges, nu_edges;
  for (std::int64_t i = 1; i <= n; ++i) mu_edges.push_back(x.symbol(i));
  for (std::int64_t i = 1; i <= n + k; ++i) nu_edges.push_back(x.symbol(i));
  const GraphPtr& gr = x.graph();
  FinitePath mu = mu_edges.empty() ? FinitePath(gr, x.range())
                                   : FinitePath(gr, std::move(mu_edges));
  FinitePath nu(gr, std::move(nu_edges));
  return BasicBisection(mu, nu);
}

GroupoidElement ElementUniverse::element(std::size_t idx) const {
  const Entry& e = elements.at(idx);
  return GroupoidElement(paths[e.x], e.k, paths[e.y]);
}

namespace {

ElementUniverse build_universe(const GraphPtr& g, int spread, bool tolerant) {
  ElementUniverse u;
  u.graph = g;
  u.paths = tolerant ? enumerate_infinite_paths_tolerant(g)
                     : enumerate_infinite_paths(g);
  std::size_t n = u.paths.size();
  u.lags.assign(n, std::vector<LagSet>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      u.lags[i][j] = shift_lags(u.paths[i], u.paths[j]);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const LagSet& l = u.lags[i][j];
      if (l.empty) continue;
      for (int t = -spread; t <= spread; ++t)
        u.elements.push_back(
            {static_cast<int>(i), l.offset + t * l.modulus, static_cast<int>(j)});
    }
  }
  return u;
}

}  // namespace

ElementUniverse ElementUniverse::build(const GraphPtr& g, int spread) {
  return build_universe(g, spread, false);
}

ElementUniverse ElementUniverse::build_tolerant(const GraphPtr& g, int spread) {
  return build_universe(g, spread, true);
}

}  // namespace nucdim
