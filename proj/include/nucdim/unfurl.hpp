#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nucdim/groupoid.hpp"
#include "nucdim/paths.hpp"

namespace nucdim {

// The unfurled graph F = F(E): every vertex and edge of E off the cycles
// is duplicated with a prime, and each cycle representative alpha is
// replaced by an infinite ray of vertices w'[alpha]/i and edges
// alpha'_i : w'[alpha]/i <- w'[alpha]/(i+1).  F has no return paths.
//
// Tail vertices and edges are named by rule, so path images and lags are
// computed symbolically at any depth; `materialized` truncates the rays to
// depth T for export and acyclicity checks.
class UnfurledGraph {
 public:
  const GraphPtr& base() const { return base_; }
  const std::vector<ReturnPath>& representatives() const { return reps_; }
  std::size_t depth() const { return depth_; }

  // Naming scheme (stable output format): v' for v in V^0; w'[rho]/i for
  // the i-th tail vertex of the representative with first edge id rho;
  // e' for duplicated edges; tail edge i is a copy of the cycle edge at
  // position i mod |alpha| and is named "<that edge id>'/i".
  std::string primed_vertex(int v) const;      // v in V^0
  std::string tail_vertex(int rep, std::int64_t i) const;
  std::string primed_edge(int e) const;        // r_E(e) in V^0
  std::string tail_edge(int rep, std::int64_t i) const;

  // The F-name of an E-vertex: primed for V^0, w'[rho]/i for the i-th
  // vertex of its representative.
  std::string vertex_name(int v) const;

  bool in_V0(int v) const { return rep_of_vertex_[v] < 0; }
  // For a cycle vertex: (representative index, subscript i within it).
  std::pair<int, std::int64_t> cycle_position(int v) const;

  // U^0: primed V^0 vertices plus w'[alpha]/i for 0 <= i <= |alpha|-1.
  std::vector<std::string> U0() const;

  // F truncated to tail depth T: tail vertices 0..T, tail edges 0..T-1.
  GraphPtr materialized() const;
  GraphPtr materialized(std::size_t T) const;

 private:
  friend UnfurledGraph unfurl(const GraphPtr& g, std::size_t T);

  GraphPtr base_;
  std::vector<ReturnPath> reps_;
  std::size_t depth_ = 0;
  std::vector<int> rep_of_vertex_;        // -1 for V^0
  std::vector<std::int64_t> subscript_of_vertex_;
};

// Builds F.  Requires the cycle_representatives preconditions (no return
// path has an entrance; every return path has an exit); acyclic graphs
// yield a disjoint primed copy of E.
UnfurledGraph unfurl(const GraphPtr& g, std::size_t T = 16);

// A finite path of F, by edge names, with both endpoint names tracked
// (the source carries the ray subscript, which the edge list of a
// length-0 path cannot).
struct FPath {
  std::vector<std::string> edges;
  std::string range_vertex;
  std::string source_vertex;

  std::size_t length() const { return edges.size(); }
  bool operator==(const FPath& other) const {
    return edges == other.edges && range_vertex == other.range_vertex;
  }
};

// Phi: the unique F-path corresponding to mu; preserves length.
FPath phi(const UnfurledGraph& f, const FinitePath& mu);

// Psi(x): an aperiodic infinite path of F, stored as an explicit prefix of
// primed edges followed by the ray alpha'_j alpha'_{j+1} ...  The tail
// begins at position prefix.size() + 1.
struct UnfurledInfinitePath {
  std::vector<std::string> prefix;
  int rep = -1;
  std::int64_t subscript = 0;     // j: first tail edge is alpha'_j
  std::string range_vertex;

  std::int64_t tail_position() const {
    return static_cast<std::int64_t>(prefix.size()) + 1;
  }

  bool operator==(const UnfurledInfinitePath& other) const {
    return rep == other.rep && subscript == other.subscript &&
           prefix == other.prefix;
  }
  bool operator<(const UnfurledInfinitePath& other) const;
};

UnfurledInfinitePath psi(const UnfurledGraph& f, const EPPath& x);

// The i-th edge name of Psi-image paths, 1-based.
std::string uip_symbol(const UnfurledGraph& f, const UnfurledInfinitePath& X,
                       std::int64_t i);

// The unique lag l with Psi(x)_i = Psi(y)_{i+l} for large i.  Computed by
// tail alignment and cross-checked against direct symbol comparison.
// Requires shift_lags(x, y) nonempty.
std::int64_t lag(const UnfurledGraph& f, const EPPath& x, const EPPath& y);

// Upsilon((x,k,y)) = (Psi(x), l(x,y), Psi(y)); the lag k is quotiented out.
struct QuotientElement {
  UnfurledInfinitePath X;
  std::int64_t l = 0;
  UnfurledInfinitePath Y;

  bool operator==(const QuotientElement& other) const {
    return l == other.l && X == other.X && Y == other.Y;
  }
};

QuotientElement upsilon(const UnfurledGraph& f, const GroupoidElement& g);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;   // counts, notes
  std::string witness;  // counterexample, when failed
};

struct VerificationReport {
  bool all_passed = false;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;
};

struct VerifyOptions {
  int spread = 3;                  // lags per endpoint pair in the universe
  std::size_t bisection_samples = 64;
  std::size_t max_path_length = 4;  // for sampled xi, eta
  std::uint64_t seed = 0;
  // Test hook: replaces the lag function to confirm that corrupted lags
  // are caught (check (c) must then fail with a witness).
  std::function<std::int64_t(const EPPath&, const EPPath&)> lag_override;
};

// Runs the quotient-isomorphism verification at finite scale:
//   (a) materialized F is acyclic (depth T),
//   (b) Psi is injective on E^infinity,
//   (c) Upsilon(gh) = Upsilon(g)Upsilon(h) on all composable pairs,
//   (d) Upsilon(g) = Upsilon(h)  iff  quotient_equal(g, h),
//   (e) preimages of sampled basic bisections equal Z(xi,eta).Iso(G_E),
//   (f) principality of the image fragment (equal endpoints force equal lags),
// and errors rather than truncating if a comparison would need depth > T.
VerificationReport verify_unfurl(const GraphPtr& g, std::size_t T = 64,
                                 const VerifyOptions& options = {});

}  // namespace nucdim
