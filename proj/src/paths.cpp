#include "nucdim/paths.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "nucdim/errors.hpp"

namespace nucdim {

FinitePath::FinitePath(GraphPtr graph, int base_vertex)
    : graph_(std::move(graph)), base_vertex_(base_vertex) {
  if (!graph_) fail(ErrorKind::InvalidPath, "path needs a graph");
  if (base_vertex_ < 0 || base_vertex_ >= static_cast<int>(graph_->vertex_count()))
    fail(ErrorKind::InvalidPath, "base vertex out of range");
}

FinitePath::FinitePath(GraphPtr graph, std::vector<int> edges)
    : graph_(std::move(graph)), edges_(std::move(edges)), base_vertex_(-1) {
  if (!graph_) fail(ErrorKind::InvalidPath, "path needs a graph");
  if (edges_.empty())
    fail(ErrorKind::InvalidPath, "use the vertex constructor for length-0 paths");
  for (std::size_t j = 0; j < edges_.size(); ++j) {
    if (edges_[j] < 0 || edges_[j] >= static_cast<int>(graph_->edge_count()))
      fail(ErrorKind::InvalidPath, "edge index out of range");
    if (j + 1 < edges_.size() &&
        graph_->edge(edges_[j]).source != graph_->edge(edges_[j + 1]).range)
      fail(ErrorKind::InvalidPath,
           "consecutive edges do not satisfy s(mu_j) = r(mu_{j+1})");
  }
  base_vertex_ = graph_->edge(edges_.front()).range;
}

FinitePath FinitePath::from_ids(const GraphPtr& graph,
                                const std::vector<std::string>& ids) {
  std::vector<int> edges;
  for (const auto& id : ids) {
    int e = graph->edge_index(id);
    if (e < 0) fail(ErrorKind::InvalidPath, "no edge named \"" + id + "\"");
    edges.push_back(e);
  }
  return FinitePath(graph, std::move(edges));
}

int FinitePath::range() const {
  return edges_.empty() ? base_vertex_ : graph_->edge(edges_.front()).range;
}

int FinitePath::source() const {
  return edges_.empty() ? base_vertex_ : graph_->edge(edges_.back()).source;
}

FinitePath FinitePath::concat(const FinitePath& tail) const {
  require_same_graph(graph_, tail.graph_);
  if (source() != tail.range())
    fail(ErrorKind::InvalidPath, "paths are not composable: s(mu) != r(nu)");
  if (tail.empty()) return *this;
  if (empty()) return tail;
  std::vector<int> edges = edges_;
  edges.insert(edges.end(), tail.edges_.begin(), tail.edges_.end());
  return FinitePath(graph_, std::move(edges));
}

FinitePath FinitePath::prefix(std::size_t n) const {
  if (n > edges_.size()) fail(ErrorKind::InvalidPath, "prefix longer than path");
  if (n == 0) return FinitePath(graph_, range());
  return FinitePath(graph_, std::vector<int>(edges_.begin(), edges_.begin() + n));
}

std::vector<std::string> FinitePath::edge_ids() const {
  std::vector<std::string> ids;
  ids.reserve(edges_.size());
  for (int e : edges_) ids.push_back(graph_->edge_id(e));
  return ids;
}

bool FinitePath::operator==(const FinitePath& other) const {
  if (!graph_->same_structure(*other.graph_)) return false;
  if (edges_.empty() != other.edges_.empty()) return false;
  if (edges_.empty()) return base_vertex_ == other.base_vertex_;
  return edges_ == other.edges_;
}

LagSet LagSet::progression(std::int64_t offset, std::int64_t modulus) {
  LagSet s;
  s.empty = false;
  s.modulus = modulus;
  s.offset = ((offset % modulus) + modulus) % modulus;
  return s;
}

bool LagSet::contains(std::int64_t k) const {
  if (empty) return false;
  return ((k - offset) % modulus + modulus) % modulus == 0;
}

LagSet LagSet::negated() const {
  if (empty) return none();
  return progression(-offset, modulus);
}

bool LagSet::operator==(const LagSet& other) const {
  if (empty != other.empty) return false;
  if (empty) return true;
  return offset == other.offset && modulus == other.modulus;
}

namespace {

// Smallest period d of the word w such that w is (first d)^(|w|/d).
std::size_t primitive_period(const std::vector<int>& w) {
  for (std::size_t d = 1; d <= w.size(); ++d) {
    if (w.size() % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < w.size() && ok; ++i)
      if (w[i] != w[i % d]) ok = false;
    if (ok) return d;
  }
  return w.size();
}

}  // namespace

EPPath::EPPath(FinitePath prefix, ReturnPath cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  require_same_graph(prefix_.graph(), cycle_.graph());
  if (!prefix_.empty() && prefix_.source() != cycle_.range())
    fail(ErrorKind::InvalidPath, "s(prefix) != r(cycle)");
  if (prefix_.empty() && prefix_.range() != cycle_.range())
    fail(ErrorKind::InvalidPath, "base vertex of empty prefix must be r(cycle)");

  // Canonicalise: primitive period first, then absorb as much of the
  // prefix into the cycle as rotation allows.
  const GraphPtr& g = prefix_.graph();
  std::vector<int> c = cycle_.edges();
  std::size_t d = primitive_period(c);
  if (d < c.size()) c.resize(d);

  std::vector<int> p = prefix_.edges();
  while (!p.empty() && p.back() == c.back()) {
    p.pop_back();
    std::rotate(c.begin(), c.begin() + (c.size() - 1), c.end());
  }
  cycle_ = ReturnPath(g, std::move(c));
  prefix_ = p.empty() ? FinitePath(g, cycle_.range()) : FinitePath(g, std::move(p));
  canonical_ = true;
}

int EPPath::symbol(std::int64_t i) const {
  if (i < 1) fail(ErrorKind::InvalidPath, "symbols are 1-based");
  std::int64_t np = static_cast<std::int64_t>(prefix_.length());
  if (i <= np) return prefix_.edges()[i - 1];
  return cycle_.edges()[(i - np - 1) % tail_period()];
}

EPPath EPPath::shifted() const {
  if (!prefix_.empty()) {
    const GraphPtr& g = graph();
    std::vector<int> p(prefix_.edges().begin() + 1, prefix_.edges().end());
    FinitePath rest = p.empty() ? FinitePath(g, cycle_.range())
                                : FinitePath(g, std::move(p));
    return EPPath(rest, cycle_);
  }
  // Pure cycle: rotate left.
  ReturnPath rotated = cycle_.rotated(1);
  return EPPath(FinitePath(graph(), rotated.range()), rotated);
}

EPPath EPPath::prepended(int edge) const {
  const GraphPtr& g = graph();
  if (edge < 0 || edge >= static_cast<int>(g->edge_count()))
    fail(ErrorKind::InvalidPath, "edge index out of range");
  if (g->edge(edge).source != range())
    fail(ErrorKind::InvalidPath, "edge does not extend the path: s(e) != r(x)");
  std::vector<int> p;
  p.push_back(edge);
  p.insert(p.end(), prefix_.edges().begin(), prefix_.edges().end());
  return EPPath(FinitePath(g, std::move(p)), cycle_);
}

std::string EPPath::to_literal() const {
  std::ostringstream out;
  const auto pids = prefix_.edge_ids();
  for (std::size_t i = 0; i < pids.size(); ++i) {
    if (i) out << '.';
    out << pids[i];
  }
  out << '^';
  const auto cids = cycle_.edge_ids();
  for (std::size_t i = 0; i < cids.size(); ++i) {
    if (i) out << '.';
    out << cids[i];
  }
  return out.str();
}

bool EPPath::operator==(const EPPath& other) const {
  return prefix_ == other.prefix_ && cycle_ == other.cycle_;
}

bool EPPath::operator<(const EPPath& other) const {
  auto key = [](const EPPath& p) {
    return std::make_pair(p.prefix_.edges(), p.cycle_.edges());
  };
  return key(*this) < key(other);
}

EPPath canonicalize(const EPPath& p) { return p; }  // constructor canonicalises

bool ep_equal(const EPPath& p, const EPPath& q) {
  require_same_graph(p.graph(), q.graph());
  return p == q;
}

namespace {

std::vector<EPPath> enumerate_impl(const GraphPtr& g, bool tolerate_sources) {
  const DirectedGraph& graph = *g;
  std::set<int> cyc = cycle_vertices(graph);
  for (int v : cyc)
    if (graph.in_edges(v).size() > 1)
      fail(ErrorKind::PreconditionViolated,
           "a return path through \"" + graph.vertex_id(v) +
               "\" has an entrance; E^infinity is uncountable");
  if (!tolerate_sources) {
    auto src = sources(graph);
    if (!src.empty())
      fail(ErrorKind::PreconditionViolated,
           "graph has a source: \"" + graph.vertex_id(*src.begin()) + "\"");
  }

  // The forced tail from a cycle vertex: each cycle vertex has in-degree 1,
  // so the continuation is deterministic.
  auto forced_cycle = [&](int w) {
    std::vector<int> edges;
    int v = w;
    do {
      int e = graph.in_edges(v).front();
      edges.push_back(e);
      v = graph.edge(e).source;
    } while (v != w);
    return ReturnPath(g, std::move(edges));
  };

  std::vector<EPPath> result;
  // DFS over extension choices: from the current vertex v the next edge is
  // any e with r(e) = v; walks stop at the first cycle vertex, where the
  // tail is forced.  The V^0 part is acyclic, so walks terminate.
  std::vector<int> walk;
  std::function<void(int)> dfs = [&](int v) {
    if (cyc.count(v)) {
      ReturnPath tail = forced_cycle(v);
      FinitePath prefix = walk.empty() ? FinitePath(g, v)
                                       : FinitePath(g, walk);
      result.emplace_back(prefix, tail);
      return;
    }
    for (int e : graph.in_edges(v)) {
      walk.push_back(e);
      dfs(graph.edge(e).source);
      walk.pop_back();
    }
  };
  for (int v = 0; v < static_cast<int>(graph.vertex_count()); ++v) {
    walk.clear();
    dfs(v);
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace

std::vector<EPPath> enumerate_infinite_paths(const GraphPtr& g) {
  return enumerate_impl(g, false);
}

std::vector<EPPath> enumerate_infinite_paths_tolerant(const GraphPtr& g) {
  return enumerate_impl(g, true);
}

LagSet shift_lags(const EPPath& x, const EPPath& y) {
  require_same_graph(x.graph(), y.graph());
  const auto& c = x.cycle().edges();
  const auto& d = y.cycle().edges();
  if (c.size() != d.size()) return LagSet::none();  // primitive periods differ
  std::int64_t m = static_cast<std::int64_t>(c.size());

  // Find the unique rotation delta with c[j] = d[(j + delta) mod m]; at most
  // one exists because both words are primitive.
  std::optional<std::int64_t> delta;
  for (std::int64_t t = 0; t < m; ++t) {
    bool ok = true;
    for (std::int64_t j = 0; j < m && ok; ++j)
      if (c[j] != d[(j + t) % m]) ok = false;
    if (ok) {
      delta = t;
      break;
    }
  }
  if (!delta) return LagSet::none();
  // x_i = y_{i+k} for large i iff k = delta - |p_x| + |p_y| (mod m).
  std::int64_t px = static_cast<std::int64_t>(x.prefix().length());
  std::int64_t py = static_cast<std::int64_t>(y.prefix().length());
  return LagSet::progression(*delta - px + py, m);
}

bool in_cylinder(const EPPath& x, const FinitePath& mu) {
  require_same_graph(x.graph(), mu.graph());
  if (mu.empty()) return x.range() == mu.range();
  for (std::size_t i = 0; i < mu.length(); ++i)
    if (x.symbol(static_cast<std::int64_t>(i) + 1) != mu.edges()[i]) return false;
  return true;
}

CylinderRelation cylinder_relation(const FinitePath& mu, const FinitePath& nu) {
  require_same_graph(mu.graph(), nu.graph());
  auto is_prefix = [](const FinitePath& a, const FinitePath& b) {
    // a prefix of b, with length-0 paths matching on the range vertex
    if (a.empty()) return a.range() == b.range();
    if (a.length() > b.length()) return false;
    return std::equal(a.edges().begin(), a.edges().end(), b.edges().begin());
  };
  bool mu_in_nu = is_prefix(nu, mu);
  bool nu_in_mu = is_prefix(mu, nu);
  if (mu_in_nu && nu_in_mu) return CylinderRelation::Equal;
  if (mu_in_nu) return CylinderRelation::LeftInsideRight;
  if (nu_in_mu) return CylinderRelation::RightInsideLeft;
  return CylinderRelation::Disjoint;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

FinitePath parse_finite_path(const GraphPtr& graph, const std::string& literal) {
  if (literal.empty()) fail(ErrorKind::ParseError, "empty path literal");
  if (literal[0] == '@') {
    std::string v = literal.substr(1);
    int idx = graph->vertex_index(v);
    if (idx < 0) fail(ErrorKind::ParseError, "no vertex named \"" + v + "\"");
    return FinitePath(graph, idx);
  }
  return FinitePath::from_ids(graph, split(literal, '.'));
}

std::string format_finite_path(const FinitePath& path) {
  if (path.empty()) return "@" + path.graph()->vertex_id(path.range());
  std::ostringstream out;
  auto ids = path.edge_ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out << '.';
    out << ids[i];
  }
  return out.str();
}

EPPath EPPath::parse(const GraphPtr& graph, const std::string& literal) {
  auto caret = literal.find('^');
  if (caret == std::string::npos)
    fail(ErrorKind::ParseError,
         "eventually periodic path literal needs '^': \"" + literal + "\"");
  std::string prefix_part = literal.substr(0, caret);
  std::string cycle_part = literal.substr(caret + 1);
  if (cycle_part.empty())
    fail(ErrorKind::ParseError, "empty cycle in \"" + literal + "\"");
  ReturnPath cycle = ReturnPath::from_ids(graph, split(cycle_part, '.'));
  FinitePath prefix = prefix_part.empty()
                          ? FinitePath(graph, cycle.range())
                          : parse_finite_path(graph, prefix_part);
  return EPPath(prefix, cycle);
}

}  // namespace nucdim
