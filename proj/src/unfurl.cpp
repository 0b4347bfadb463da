#include "nucdim/unfurl.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "nucdim/errors.hpp"

namespace nucdim {

std::string UnfurledGraph::primed_vertex(int v) const {
  return base_->vertex_id(v) + "'";
}

std::string UnfurledGraph::tail_vertex(int rep, std::int64_t i) const {
  const ReturnPath& alpha = reps_.at(rep);
  return "w'[" + base_->edge_id(alpha.edges().front()) + "]/" + std::to_string(i);
}

std::string UnfurledGraph::primed_edge(int e) const {
  return base_->edge_id(e) + "'";
}

std::string UnfurledGraph::tail_edge(int rep, std::int64_t i) const {
  const ReturnPath& alpha = reps_.at(rep);
  std::int64_t m = static_cast<std::int64_t>(alpha.length());
  int original = alpha.edges()[static_cast<std::size_t>(i % m)];
  return base_->edge_id(original) + "'/" + std::to_string(i);
}

std::string UnfurledGraph::vertex_name(int v) const {
  if (in_V0(v)) return primed_vertex(v);
  auto [rep, i] = cycle_position(v);
  return tail_vertex(rep, i);
}

std::pair<int, std::int64_t> UnfurledGraph::cycle_position(int v) const {
  int rep = rep_of_vertex_.at(v);
  if (rep < 0) fail(ErrorKind::InvalidPath, "vertex is not on a cycle");
  return {rep, subscript_of_vertex_.at(v)};
}

std::vector<std::string> UnfurledGraph::U0() const {
  std::vector<std::string> result;
  for (int v = 0; v < static_cast<int>(base_->vertex_count()); ++v)
    if (in_V0(v)) result.push_back(primed_vertex(v));
  for (int r = 0; r < static_cast<int>(reps_.size()); ++r)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(reps_[r].length()); ++i)
      result.push_back(tail_vertex(r, i));
  return result;
}

GraphPtr UnfurledGraph::materialized() const { return materialized(depth_); }

GraphPtr UnfurledGraph::materialized(std::size_t T) const {
  // Tail subscripts referenced by duplicated edges stay below |alpha|, so
  // the depth is raised to max |alpha| when a smaller T is requested.
  std::size_t depth = std::max<std::size_t>(T, 1);
  for (const auto& rep : reps_) depth = std::max(depth, rep.length());

  std::vector<std::string> vertices;
  std::vector<std::array<std::string, 3>> edges;
  for (int v = 0; v < static_cast<int>(base_->vertex_count()); ++v)
    if (in_V0(v)) vertices.push_back(primed_vertex(v));
  for (int r = 0; r < static_cast<int>(reps_.size()); ++r)
    for (std::int64_t i = 0; i <= static_cast<std::int64_t>(depth); ++i)
      vertices.push_back(tail_vertex(r, i));

  for (int e = 0; e < static_cast<int>(base_->edge_count()); ++e) {
    int rv = base_->edge(e).range;
    if (!in_V0(rv)) continue;  // cycle edges are replaced by the rays
    int sv = base_->edge(e).source;
    edges.push_back({primed_edge(e), primed_vertex(rv), vertex_name(sv)});
  }
  for (int r = 0; r < static_cast<int>(reps_.size()); ++r)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(depth); ++i)
      edges.push_back({tail_edge(r, i), tail_vertex(r, i), tail_vertex(r, i + 1)});

  return DirectedGraph::make(std::move(vertices), std::move(edges));
}

UnfurledGraph unfurl(const GraphPtr& g, std::size_t T) {
  UnfurledGraph f;
  f.base_ = g;
  f.reps_ = cycle_representatives(g);
  f.rep_of_vertex_.assign(g->vertex_count(), -1);
  f.subscript_of_vertex_.assign(g->vertex_count(), 0);
  for (int r = 0; r < static_cast<int>(f.reps_.size()); ++r) {
    const auto& edges = f.reps_[r].edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      int v = g->edge(edges[i]).range;  // w_{alpha,i} = r_E(alpha_i)
      f.rep_of_vertex_[v] = r;
      f.subscript_of_vertex_[v] = static_cast<std::int64_t>(i);
    }
  }
  f.depth_ = std::max<std::size_t>(T, 1);
  for (const auto& rep : f.reps_) f.depth_ = std::max(f.depth_, rep.length());
  return f;
}

namespace {

// Walk state while mapping an E-path into F: either at a primed V^0
// vertex, or on the ray of representative `rep` at subscript `i`.
struct WalkPos {
  bool on_ray = false;
  int v0 = -1;
  int rep = -1;
  std::int64_t i = 0;
};

WalkPos start_position(const UnfurledGraph& f, int vertex) {
  WalkPos pos;
  if (f.in_V0(vertex)) {
    pos.v0 = vertex;
  } else {
    auto [rep, i] = f.cycle_position(vertex);
    pos.on_ray = true;
    pos.rep = rep;
    pos.i = i;
  }
  return pos;
}

std::string position_name(const UnfurledGraph& f, const WalkPos& pos) {
  return pos.on_ray ? f.tail_vertex(pos.rep, pos.i) : f.primed_vertex(pos.v0);
}

// Maps one E-edge, advancing the position.  Paths fall into a cycle via an
// exit edge and then follow the ray without wrapping.
std::string step(const UnfurledGraph& f, WalkPos& pos, int e) {
  const DirectedGraph& g = *f.base();
  int rv = g.edge(e).range;
  if (f.in_V0(rv)) {
    std::string name = f.primed_edge(e);
    pos = start_position(f, g.edge(e).source);
    return name;
  }
  // r_E(e) lies on a cycle: under the no-entrance hypothesis e is the
  // unique cycle edge into that vertex, so the image is the current ray
  // edge.
  if (!pos.on_ray)
    fail(ErrorKind::InvalidPath, "path enters a cycle without its ray position");
  std::string name = f.tail_edge(pos.rep, pos.i);
  pos.i += 1;
  return name;
}

}  // namespace

FPath phi(const UnfurledGraph& f, const FinitePath& mu) {
  require_same_graph(f.base(), mu.graph());
  FPath result;
  WalkPos pos = start_position(f, mu.range());
  result.range_vertex = position_name(f, pos);
  for (int e : mu.edges()) result.edges.push_back(step(f, pos, e));
  result.source_vertex = position_name(f, pos);
  return result;
}

bool UnfurledInfinitePath::operator<(const UnfurledInfinitePath& other) const {
  return std::tie(prefix, rep, subscript) <
         std::tie(other.prefix, other.rep, other.subscript);
}

UnfurledInfinitePath psi(const UnfurledGraph& f, const EPPath& x) {
  require_same_graph(f.base(), x.graph());
  UnfurledInfinitePath result;
  WalkPos pos = start_position(f, x.range());
  result.range_vertex = position_name(f, pos);
  for (int e : x.prefix().edges()) result.prefix.push_back(step(f, pos, e));
  if (!pos.on_ray)
    fail(ErrorKind::InvalidPath, "eventually periodic path must reach a cycle");
  result.rep = pos.rep;
  result.subscript = pos.i;
  return result;
}

std::string uip_symbol(const UnfurledGraph& f, const UnfurledInfinitePath& X,
                       std::int64_t i) {
  if (i < 1) fail(ErrorKind::InvalidPath, "symbols are 1-based");
  if (i < X.tail_position()) return X.prefix[static_cast<std::size_t>(i - 1)];
  return f.tail_edge(X.rep, X.subscript + (i - X.tail_position()));
}

std::int64_t lag(const UnfurledGraph& f, const EPPath& x, const EPPath& y) {
  LagSet lags = shift_lags(x, y);
  if (lags.empty)
    fail(ErrorKind::NotShiftEquivalent,
         x.to_literal() + " and " + y.to_literal() + " are not shift equivalent");
  UnfurledInfinitePath X = psi(f, x);
  UnfurledInfinitePath Y = psi(f, y);
  if (X.rep != Y.rep)
    fail(ErrorKind::VerificationFailed,
         "shift-equivalent paths landed on different rays");
  // Psi(x)_i = alpha'_{j_x + i - p_x} for i >= p_x, so the unique lag is
  std::int64_t l = (Y.tail_position() - Y.subscript) -
                   (X.tail_position() - X.subscript);
  // Cross-check against direct symbol comparison.
  std::int64_t start = std::max(X.tail_position(), Y.tail_position() - l);
  std::int64_t bound = start + 2 * x.tail_period();
  for (std::int64_t i = start; i <= bound; ++i)
    if (uip_symbol(f, X, i) != uip_symbol(f, Y, i + l))
      fail(ErrorKind::VerificationFailed, "lag alignment self-check failed");
  return l;
}

QuotientElement upsilon(const UnfurledGraph& f, const GroupoidElement& g) {
  return QuotientElement{psi(f, g.x()), lag(f, g.x(), g.y()), psi(f, g.y())};
}

namespace {

// All finite paths of length <= n, grouped later by source.
std::vector<FinitePath> finite_paths_up_to(const GraphPtr& g, std::size_t n) {
  std::vector<FinitePath> result;
  for (int v = 0; v < static_cast<int>(g->vertex_count()); ++v)
    result.emplace_back(g, v);
  std::vector<std::vector<int>> frontier;
  for (int e = 0; e < static_cast<int>(g->edge_count()); ++e)
    frontier.push_back({e});
  std::size_t len = 1;
  while (!frontier.empty() && len <= n) {
    std::vector<std::vector<int>> next;
    for (auto& edges : frontier) {
      result.emplace_back(g, edges);
      int src = g->edge(edges.back()).source;
      // extend on the source side: the next edge has r(e) = s(last)
      for (int e : g->in_edges(src)) {
        auto longer = edges;
        longer.push_back(e);
        next.push_back(std::move(longer));
      }
    }
    frontier = std::move(next);
    ++len;
  }
  return result;
}

std::string qe_string(const UnfurledGraph& f, const QuotientElement& q) {
  std::ostringstream out;
  auto dump = [&](const UnfurledInfinitePath& X) {
    for (const auto& e : X.prefix) out << e << ".";
    out << "ray(" << f.tail_edge(X.rep, X.subscript) << "...)";
  };
  out << "(";
  dump(q.X);
  out << " | " << q.l << " | ";
  dump(q.Y);
  out << ")";
  return out.str();
}

}  // namespace

VerificationReport verify_unfurl(const GraphPtr& g, std::size_t T,
                                 const VerifyOptions& options) {
  VerificationReport report;
  UnfurledGraph f = unfurl(g, T);
  ElementUniverse universe = ElementUniverse::build_tolerant(g, options.spread);
  const std::size_t n_paths = universe.paths.size();

  // Depth accounting: ray subscripts touched by the comparisons below are
  // recorded exactly; if they exceed T the run errors rather than
  // reporting results the acyclicity check at depth T does not cover.
  std::int64_t max_needed = 0;
  auto sym = [&](const UnfurledInfinitePath& X, std::int64_t i) {
    if (i >= X.tail_position())
      max_needed = std::max(max_needed, X.subscript + (i - X.tail_position()));
    return uip_symbol(f, X, i);
  };

  auto lag_fn = [&](const EPPath& x, const EPPath& y) {
    if (options.lag_override) return options.lag_override(x, y);
    // lag() cross-checks itself on a window ending at subscript
    // j_x + j_y + 2 * period.
    std::int64_t l = lag(f, x, y);
    UnfurledInfinitePath X = psi(f, x), Y = psi(f, y);
    max_needed = std::max(max_needed,
                          X.subscript + Y.subscript + 2 * x.tail_period());
    return l;
  };

  std::vector<UnfurledInfinitePath> images;
  images.reserve(n_paths);
  std::int64_t max_period = 1;
  for (const auto& x : universe.paths) {
    images.push_back(psi(f, x));
    max_period = std::max(max_period, x.tail_period());
  }

  // (a) materialized F has no return paths.
  {
    CheckResult check{"materialized-F-acyclic"};
    GraphPtr F = f.materialized(T);
    auto cyc = cycle_vertices(*F);
    check.passed = cyc.empty();
    check.detail = "T = " + std::to_string(T) + ", |F^0| = " +
                   std::to_string(F->vertex_count());
    if (!check.passed) check.witness = F->vertex_id(*cyc.begin());
    report.checks.push_back(check);
  }

  // (b) Psi injective on E^infinity.
  {
    CheckResult check{"psi-injective"};
    std::set<UnfurledInfinitePath> distinct(images.begin(), images.end());
    check.passed = distinct.size() == images.size();
    check.detail = std::to_string(images.size()) + " paths";
    if (!check.passed) check.witness = "duplicate Psi image";
    report.checks.push_back(check);
  }

  // Precompute Upsilon on the universe via the (possibly overridden) lag.
  std::vector<QuotientElement> ups;
  ups.reserve(universe.elements.size());
  for (const auto& entry : universe.elements) {
    QuotientElement q;
    q.X = images[entry.x];
    q.Y = images[entry.y];
    q.l = lag_fn(universe.paths[entry.x], universe.paths[entry.y]);
    ups.push_back(std::move(q));
  }

  // (c) Upsilon(gh) = Upsilon(g)Upsilon(h) for all composable pairs.
  {
    CheckResult check{"upsilon-homomorphism"};
    check.passed = true;
    std::size_t pairs = 0;
    // Group elements by their x-path to find h with h.x = g.y quickly.
    std::vector<std::vector<std::size_t>> by_x(n_paths);
    for (std::size_t i = 0; i < universe.elements.size(); ++i)
      by_x[universe.elements[i].x].push_back(i);
    for (std::size_t gi = 0; gi < universe.elements.size() && check.passed; ++gi) {
      const auto& ge = universe.elements[gi];
      for (std::size_t hi : by_x[ge.y]) {
        const auto& he = universe.elements[hi];
        ++pairs;
        // Upsilon(gh): product has endpoints (ge.x, he.y).
        std::int64_t l_prod =
            lag_fn(universe.paths[ge.x], universe.paths[he.y]);
        std::int64_t l_sum = ups[gi].l + ups[hi].l;
        if (l_prod != l_sum || !(ups[gi].Y == ups[hi].X)) {
          check.passed = false;
          check.witness = universe.element(gi).to_literal() + " * " +
                          universe.element(hi).to_literal() + ": l(gh) = " +
                          std::to_string(l_prod) + " but l(g)+l(h) = " +
                          std::to_string(l_sum);
          break;
        }
      }
    }
    check.detail = std::to_string(pairs) + " composable pairs";
    report.checks.push_back(check);
  }

  // (d) Upsilon(g) = Upsilon(h) iff quotient_equal(g, h).
  {
    CheckResult check{"upsilon-kernel-is-isotropy"};
    check.passed = true;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < universe.elements.size() && check.passed; ++i) {
      for (std::size_t j = 0; j < universe.elements.size(); ++j) {
        ++pairs;
        bool same_image = ups[i] == ups[j];
        bool q_equal = universe.elements[i].x == universe.elements[j].x &&
                       universe.elements[i].y == universe.elements[j].y;
        if (same_image != q_equal) {
          check.passed = false;
          check.witness = universe.element(i).to_literal() + " vs " +
                          universe.element(j).to_literal();
          break;
        }
      }
    }
    check.detail = std::to_string(pairs) + " element pairs";
    report.checks.push_back(check);
  }

  // (e) Upsilon^{-1}(Z(xi', eta')) = Z(xi, eta) Iso(G_E) on the universe,
  // for sampled xi, eta with s(xi) = s(eta).
  {
    CheckResult check{"bisection-preimages"};
    check.passed = true;
    auto paths = finite_paths_up_to(g, options.max_path_length);
    // Basic neighbourhoods of (G_F)|_U are Z(xi', eta') with equal
    // F-sources; the F-source carries the ray subscript, so pairs merely
    // sharing an E-source need not qualify.
    std::map<std::string, std::vector<std::size_t>> by_source;
    for (std::size_t i = 0; i < paths.size(); ++i)
      by_source[phi(f, paths[i]).source_vertex].push_back(i);
    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    for (const auto& [src, idxs] : by_source)
      for (std::size_t a : idxs)
        for (std::size_t b : idxs) candidates.emplace_back(a, b);
    std::mt19937_64 rng(options.seed ^ 0x5eedu);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    if (candidates.size() > options.bisection_samples)
      candidates.resize(options.bisection_samples);

    std::size_t tested = 0;
    for (const auto& [a, b] : candidates) {
      BasicBisection ze(paths[a], paths[b]);
      FPath xi = phi(f, ze.mu);
      FPath eta = phi(f, ze.nu);
      std::int64_t l_img = static_cast<std::int64_t>(eta.length()) -
                           static_cast<std::int64_t>(xi.length());
      ++tested;
      for (std::size_t i = 0; i < universe.elements.size(); ++i) {
        // Membership of Upsilon(g) in Z(xi', eta').
        const QuotientElement& q = ups[i];
        auto starts_with = [&](const UnfurledInfinitePath& X, const FPath& p) {
          if (p.edges.empty()) return X.range_vertex == p.range_vertex;
          for (std::size_t t = 0; t < p.edges.size(); ++t)
            if (sym(X, static_cast<std::int64_t>(t) + 1) != p.edges[t])
              return false;
          return true;
        };
        bool in_image = q.l == l_img && starts_with(q.X, xi) &&
                        starts_with(q.Y, eta);
        if (in_image) {
          // tails beyond the prefixes must agree: X_i = Y_{i + l}
          std::int64_t start = static_cast<std::int64_t>(xi.length());
          std::int64_t from = std::max(
              {start + 1, q.X.tail_position(), q.Y.tail_position() - q.l});
          for (std::int64_t i2 = start + 1; i2 <= from + max_period; ++i2)
            if (sym(q.X, i2) != sym(q.Y, i2 + q.l)) {
              in_image = false;
              break;
            }
        }
        bool in_preimage =
            bisection_iso_contains(ze, universe.element(i));
        if (in_image != in_preimage) {
          check.passed = false;
          check.witness = universe.element(i).to_literal() + " for Z(" +
                          format_finite_path(ze.mu) + ", " +
                          format_finite_path(ze.nu) + ")";
          break;
        }
      }
      if (!check.passed) break;
    }
    check.detail = std::to_string(tested) + " sampled bisections";
    report.checks.push_back(check);
  }

  // (f) principality of the image fragment: equal endpoints force equal
  // lags.
  {
    CheckResult check{"image-fragment-principal"};
    check.passed = true;
    std::map<std::pair<int, int>, std::int64_t> lag_of;
    for (std::size_t i = 0; i < universe.elements.size(); ++i) {
      std::pair<int, int> key{universe.elements[i].x, universe.elements[i].y};
      auto [it, inserted] = lag_of.emplace(key, ups[i].l);
      if (!inserted && it->second != ups[i].l) {
        check.passed = false;
        check.witness = qe_string(f, ups[i]);
        break;
      }
    }
    check.detail = std::to_string(lag_of.size()) + " endpoint pairs";
    report.checks.push_back(check);
  }

  // Informational: the closed-form lag printed in the source material,
  // l = |mu| + 1 - (|nu| + 1 + |beta|), versus alignment, on one generic
  // pair (both entering the ray through an exit edge).
  if (!options.lag_override) {
    for (std::size_t i = 0; i < n_paths; ++i) {
      for (std::size_t j = 0; j < n_paths; ++j) {
        if (universe.lags[i][j].empty) continue;
        const auto& X = images[i];
        const auto& Y = images[j];
        if (X.prefix.empty() || Y.prefix.empty() || X.subscript != 0) continue;
        std::int64_t m = universe.paths[i].tail_period();
        std::int64_t beta = (m - Y.subscript) % m;
        std::int64_t closed_form = (X.tail_position() - 1) -
                                   ((Y.tail_position() - 1) + beta);
        std::int64_t aligned = lag(f, universe.paths[i], universe.paths[j]);
        std::ostringstream note;
        note << "closed-form lag on (" << universe.paths[i].to_literal()
             << ", " << universe.paths[j].to_literal() << "): " << closed_form
             << "; alignment: " << aligned
             << (closed_form == aligned ? " (agree)" : " (differ)");
        report.notes.push_back(note.str());
        i = n_paths;  // one sample is enough
        break;
      }
    }
  }

  if (max_needed > static_cast<std::int64_t>(std::max(T, f.depth())))
    fail(ErrorKind::PreconditionViolated,
         "verification touched ray depth " + std::to_string(max_needed) +
             " > T = " + std::to_string(T) + "; increase the depth");

  report.all_passed = true;
  for (const auto& c : report.checks) report.all_passed &= c.passed;
  return report;
}

}  // namespace nucdim
