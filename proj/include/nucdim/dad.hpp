#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nucdim/finite_groupoid.hpp"
#include "nucdim/groupoid.hpp"
#include "nucdim/unfurl.hpp"

namespace nucdim {

// An element oracle over an ambient (possibly infinite) groupoid: elements
// are opaque string keys; composition and inverse are callbacks.
class ElementOracle {
 public:
  virtual ~ElementOracle() = default;
  virtual std::optional<std::string> compose(const std::string& a,
                                             const std::string& b) const = 0;
  virtual std::string inverse(const std::string& a) const = 0;
  virtual std::string range_unit(const std::string& a) const = 0;
  virtual std::string source_unit(const std::string& a) const = 0;
};

// A finite, inverse-closed, unit-containing fragment W of the ambient
// groupoid.
struct GroupoidFragment {
  std::shared_ptr<const ElementOracle> oracle;
  std::set<std::string> elements;

  // Closes the seed under inverses and adds the endpoint units.
  static GroupoidFragment make(std::shared_ptr<const ElementOracle> oracle,
                               const std::vector<std::string>& seed);

  std::set<std::string> unit_keys() const;  // s(W) union r(W)
};

constexpr std::size_t kDefaultClosureCap = 10000;

// The subgroupoid generated by {gamma in frag : s(gamma), r(gamma) in U},
// as the closure under composition and inverse; throws CapExceeded when
// the closure exceeds `cap` (reported as "not verifiably precompact").
std::set<std::string> generated_subgroupoid(const GroupoidFragment& frag,
                                            const std::set<std::string>& units,
                                            std::size_t cap = kDefaultClosureCap);

struct DadCertificate {
  GroupoidFragment fragment;
  int d = 0;
  std::vector<std::set<std::string>> covers;    // U_0 ... U_d (unit keys)
  std::vector<std::set<std::string>> closures;  // H_0 ... H_d
  std::size_t cap = kDefaultClosureCap;
};

struct CertificateCheck {
  bool ok = false;
  std::string failure;  // cover / closure condition that failed
};

// Checks the cover condition and recomputes each closure.
CertificateCheck verify_dad_certificate(const DadCertificate& cert);

// Searches for the least d <= d_max with a verified certificate, trying
// partitions of the unit keys (exhaustive up to ~12 units, randomised
// beyond).  "nullopt" means "not found", not a proof of absence.
std::optional<DadCertificate> search_dad(const GroupoidFragment& frag, int d_max,
                                         std::size_t cap = kDefaultClosureCap,
                                         std::uint64_t seed = 0);

// Oracle over a finite groupoid (element keys are indices as strings).
std::shared_ptr<const ElementOracle> finite_groupoid_oracle(
    std::shared_ptr<const FiniteGroupoid> g);

// Oracle over the graph groupoid G_E (keys are element literals).  The
// closure of a fragment containing nontrivial isotropy is infinite, which
// the cap detects.
std::shared_ptr<const ElementOracle> graph_groupoid_oracle(GraphPtr graph);
std::string graph_element_key(const GroupoidElement& g);

// Oracle over the principal image fragment G_F|_U of the unfurled graph
// (keys serialise Upsilon images); lags are unique given endpoints, so
// closures stay finite.
class UnfurlOracleHandle {
 public:
  virtual ~UnfurlOracleHandle() = default;
  virtual std::string key_of(const QuotientElement& q) const = 0;
  virtual std::shared_ptr<const ElementOracle> oracle() const = 0;
};
std::shared_ptr<const UnfurlOracleHandle> unfurl_oracle(
    std::shared_ptr<const UnfurledGraph> f);

}  // namespace nucdim
