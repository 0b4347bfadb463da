#include "nucdim/dad.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "nucdim/errors.hpp"

namespace nucdim {

GroupoidFragment GroupoidFragment::make(
    std::shared_ptr<const ElementOracle> oracle,
    const std::vector<std::string>& seed) {
  GroupoidFragment frag;
  frag.oracle = std::move(oracle);
  for (const auto& key : seed) {
    frag.elements.insert(key);
    frag.elements.insert(frag.oracle->inverse(key));
    frag.elements.insert(frag.oracle->range_unit(key));
    frag.elements.insert(frag.oracle->source_unit(key));
  }
  return frag;
}

std::set<std::string> GroupoidFragment::unit_keys() const {
  std::set<std::string> keys;
  for (const auto& e : elements) {
    keys.insert(oracle->range_unit(e));
    keys.insert(oracle->source_unit(e));
  }
  return keys;
}

std::set<std::string> generated_subgroupoid(const GroupoidFragment& frag,
                                            const std::set<std::string>& units,
                                            std::size_t cap) {
  if (cap < frag.elements.size())
    fail(ErrorKind::PreconditionViolated, "cap smaller than the fragment");
  const auto& oracle = *frag.oracle;
  std::set<std::string> closure;
  std::deque<std::string> queue;
  auto add = [&](const std::string& key) {
    if (closure.insert(key).second) {
      if (closure.size() > cap)
        fail(ErrorKind::CapExceeded,
             "closure exceeded cap " + std::to_string(cap) +
                 "; not verifiably precompact");
      queue.push_back(key);
    }
  };
  for (const auto& e : frag.elements)
    if (units.count(oracle.range_unit(e)) && units.count(oracle.source_unit(e)))
      add(e);
  while (!queue.empty()) {
    std::string a = queue.front();
    queue.pop_front();
    add(oracle.inverse(a));
    // compose with everything already present (both orders)
    std::vector<std::string> snapshot(closure.begin(), closure.end());
    for (const auto& b : snapshot) {
      if (auto ab = oracle.compose(a, b)) add(*ab);
      if (auto ba = oracle.compose(b, a)) add(*ba);
    }
  }
  return closure;
}

CertificateCheck verify_dad_certificate(const DadCertificate& cert) {
  CertificateCheck result;
  if (static_cast<int>(cert.covers.size()) != cert.d + 1) {
    result.failure = "certificate must carry d+1 covers";
    return result;
  }
  std::set<std::string> covered;
  for (const auto& u : cert.covers) covered.insert(u.begin(), u.end());
  for (const auto& key : cert.fragment.unit_keys()) {
    if (!covered.count(key)) {
      result.failure = "cover misses unit " + key;
      return result;
    }
  }
  for (std::size_t i = 0; i < cert.covers.size(); ++i) {
    std::set<std::string> closure;
    try {
      closure = generated_subgroupoid(cert.fragment, cert.covers[i], cert.cap);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::CapExceeded) {
        result.failure = "closure of U_" + std::to_string(i) +
                         " is not finite within the cap";
        return result;
      }
      throw;
    }
    if (i < cert.closures.size() && !cert.closures[i].empty() &&
        cert.closures[i] != closure) {
      result.failure = "closure of U_" + std::to_string(i) +
                       " differs from the recorded one";
      return result;
    }
  }
  result.ok = true;
  return result;
}

namespace {

// All ways to colour `items` with at most `colours` colours, restricted
// set-partition style: item i may open colour c only if c <= max used + 1.
void partitions(std::size_t index, int colours_used, int max_colours,
                std::vector<int>& colour, const std::vector<std::string>& items,
                const std::function<bool(const std::vector<int>&, int)>& visit,
                bool& stop) {
  if (stop) return;
  if (index == items.size()) {
    if (visit(colour, colours_used)) stop = true;
    return;
  }
  for (int c = 0; c < std::min(colours_used + 1, max_colours); ++c) {
    colour[index] = c;
    partitions(index + 1, std::max(colours_used, c + 1), max_colours, colour,
               items, visit, stop);
    if (stop) return;
  }
}

std::optional<DadCertificate> try_certificate(
    const GroupoidFragment& frag, const std::vector<std::string>& units,
    const std::vector<int>& colour, int d, std::size_t cap) {
  DadCertificate cert;
  cert.fragment = frag;
  cert.d = d;
  cert.cap = cap;
  cert.covers.assign(d + 1, {});
  for (std::size_t i = 0; i < units.size(); ++i)
    cert.covers[colour[i]].insert(units[i]);
  for (int i = 0; i <= d; ++i) {
    try {
      cert.closures.push_back(
          generated_subgroupoid(frag, cert.covers[i], cap));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::CapExceeded) return std::nullopt;
      throw;
    }
  }
  return cert;
}

}  // namespace

std::optional<DadCertificate> search_dad(const GroupoidFragment& frag, int d_max,
                                         std::size_t cap, std::uint64_t seed) {
  auto unit_set = frag.unit_keys();
  std::vector<std::string> units(unit_set.begin(), unit_set.end());

  for (int d = 0; d <= d_max; ++d) {
    if (units.size() <= 12) {
      // Exhaustive over set partitions into at most d+1 blocks.
      std::vector<int> colour(units.size(), 0);
      std::optional<DadCertificate> found;
      bool stop = false;
      std::function<bool(const std::vector<int>&, int)> visit =
          [&](const std::vector<int>& col, int used) {
            if (used != d + 1 && !(units.empty() && d == 0)) return false;
            auto cert = try_certificate(frag, units, col, d, cap);
            if (cert) {
              found = std::move(cert);
              return true;
            }
            return false;
          };
      if (units.empty()) {
        auto cert = try_certificate(frag, units, {}, d, cap);
        if (cert) return cert;
      } else {
        partitions(0, 0, d + 1, colour, units, visit, stop);
        if (found) return found;
      }
    } else {
      // Randomised colourings.
      std::mt19937_64 rng(seed ^ (0x9e37u + d));
      std::uniform_int_distribution<int> pick(0, d);
      for (int attempt = 0; attempt < 512; ++attempt) {
        std::vector<int> colour(units.size());
        for (auto& c : colour) c = pick(rng);
        auto cert = try_certificate(frag, units, colour, d, cap);
        if (cert) return cert;
      }
    }
  }
  return std::nullopt;
}

namespace {

class FiniteOracle final : public ElementOracle {
 public:
  explicit FiniteOracle(std::shared_ptr<const FiniteGroupoid> g)
      : g_(std::move(g)) {}

  std::optional<std::string> compose(const std::string& a,
                                     const std::string& b) const override {
    auto c = g_->compose(index(a), index(b));
    if (!c) return std::nullopt;
    return std::to_string(*c);
  }
  std::string inverse(const std::string& a) const override {
    return std::to_string(g_->inverse(index(a)));
  }
  std::string range_unit(const std::string& a) const override {
    return std::to_string(g_->r(index(a)));
  }
  std::string source_unit(const std::string& a) const override {
    return std::to_string(g_->s(index(a)));
  }

 private:
  int index(const std::string& key) const {
    int i = std::stoi(key);
    if (i < 0 || i >= static_cast<int>(g_->size()))
      fail(ErrorKind::InvalidAction, "unknown element key " + key);
    return i;
  }
  std::shared_ptr<const FiniteGroupoid> g_;
};

class GraphOracle final : public ElementOracle {
 public:
  explicit GraphOracle(GraphPtr graph) : graph_(std::move(graph)) {}

  std::optional<std::string> compose(const std::string& a,
                                     const std::string& b) const override {
    GroupoidElement ga = parse(a), gb = parse(b);
    if (!ep_equal(ga.y(), gb.x())) return std::nullopt;
    return graph_element_key(nucdim::compose(ga, gb));
  }
  std::string inverse(const std::string& a) const override {
    return graph_element_key(nucdim::inverse(parse(a)));
  }
  std::string range_unit(const std::string& a) const override {
    return graph_element_key(GroupoidElement::unit(parse(a).x()));
  }
  std::string source_unit(const std::string& a) const override {
    return graph_element_key(GroupoidElement::unit(parse(a).y()));
  }

 private:
  GroupoidElement parse(const std::string& key) const {
    return GroupoidElement::parse(graph_, key);
  }
  GraphPtr graph_;
};

class UnfurlOracle final : public ElementOracle {
 public:
  explicit UnfurlOracle(std::shared_ptr<const UnfurledGraph> f) : f_(std::move(f)) {}

  static std::string uip_key(const UnfurledGraph& f,
                             const UnfurledInfinitePath& x) {
    std::ostringstream out;
    for (const auto& e : x.prefix) out << e << ".";
    out << "ray[" << x.rep << "]@" << x.subscript;
    return out.str();
  }

  std::string key(const QuotientElement& q) const {
    std::ostringstream out;
    out << uip_key(*f_, q.X) << " | " << q.l << " | " << uip_key(*f_, q.Y);
    return out.str();
  }

  std::optional<std::string> compose(const std::string& a,
                                     const std::string& b) const override {
    const QuotientElement& ga = lookup(a);
    const QuotientElement& gb = lookup(b);
    if (!(ga.Y == gb.X)) return std::nullopt;
    QuotientElement product{ga.X, ga.l + gb.l, gb.Y};
    return intern(product);
  }
  std::string inverse(const std::string& a) const override {
    const QuotientElement& g = lookup(a);
    return intern(QuotientElement{g.Y, -g.l, g.X});
  }
  std::string range_unit(const std::string& a) const override {
    const QuotientElement& g = lookup(a);
    return intern(QuotientElement{g.X, 0, g.X});
  }
  std::string source_unit(const std::string& a) const override {
    const QuotientElement& g = lookup(a);
    return intern(QuotientElement{g.Y, 0, g.Y});
  }

  std::string intern(const QuotientElement& q) const {
    std::string k = key(q);
    table_.emplace(k, q);
    return k;
  }

 private:
  const QuotientElement& lookup(const std::string& k) const {
    auto it = table_.find(k);
    if (it == table_.end())
      fail(ErrorKind::InvalidAction, "unknown element key " + k);
    return it->second;
  }
  std::shared_ptr<const UnfurledGraph> f_;
  mutable std::map<std::string, QuotientElement> table_;
};

class Handle final : public UnfurlOracleHandle {
 public:
  explicit Handle(std::shared_ptr<const UnfurledGraph> f)
      : oracle_(std::make_shared<UnfurlOracle>(std::move(f))) {}
  std::string key_of(const QuotientElement& q) const override {
    return oracle_->intern(q);
  }
  std::shared_ptr<const ElementOracle> oracle() const override { return oracle_; }

 private:
  std::shared_ptr<UnfurlOracle> oracle_;
};

}  // namespace

std::shared_ptr<const ElementOracle> finite_groupoid_oracle(
    std::shared_ptr<const FiniteGroupoid> g) {
  return std::make_shared<FiniteOracle>(std::move(g));
}

std::string graph_element_key(const GroupoidElement& g) {
  return g.to_literal();
}

std::shared_ptr<const ElementOracle> graph_groupoid_oracle(GraphPtr graph) {
  return std::make_shared<GraphOracle>(std::move(graph));
}

std::shared_ptr<const UnfurlOracleHandle> unfurl_oracle(
    std::shared_ptr<const UnfurledGraph> f) {
  return std::make_shared<Handle>(std::move(f));
}

}  // namespace nucdim
