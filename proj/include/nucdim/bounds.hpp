#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nucdim {

// One step of a certified chain: "verified" steps were checked by this
// run, "cited" steps rest on the literature.
struct ChainStep {
  std::string step;
  std::string status;  // "verified" | "cited"
  std::string witness;
};

struct BoundReport {
  std::map<std::string, std::int64_t> facts;
  std::string formula;
  std::int64_t bound = 0;
  std::vector<ChainStep> chain;
  std::vector<std::string> notes;

  // {facts: {...}, formula: id, bound: int, chain: [{step, status,
  // witness?}], notes: [...]}
  std::string to_json() const;
};

// Known formula ids and the inputs they require:
//   prop-4.2              d, n                -> (d+1)(n+1) - 1
//   thm-main              supPrim, dimG0, dad -> (s+1)(g+1)(a+1) - 1
//   cor-abelian           dimSdual, dimG0, dad
//   cor-compact           dimG0, dad
//   thm-subhomog          supPrim, dimG0
//   cor-subhomog-compact  dimG0
//   cor-twist             dimG0
//   thm-twist             dad, dimG0
//   lemma-ext             dimNucIdeal, dimNucQuotient -> max
//   prop-nonunital        d, n, dimMhat  (general bound; the
//                         subhomogeneous variant is reported in facts)
// All inputs are plain dimensions (the +1 convention is internal).
BoundReport evaluate_bound(const std::string& formula,
                           const std::map<std::string, std::int64_t>& inputs);

std::vector<std::string> known_formulas();

}  // namespace nucdim
