#pragma once

#include <cstdint>

#include "nucdim/bounds.hpp"
#include "nucdim/graph.hpp"

namespace nucdim {

constexpr std::uint64_t kDefaultSeed = 20240817;

struct PipelineOptions {
  std::uint64_t seed = kDefaultSeed;
  std::size_t depth = 64;                    // ray truncation for checks
  std::size_t closure_cap = 10000;
  int spread = 3;                            // lags per endpoint pair
};

// The end-to-end certified chain for a directed graph:
//   - acyclic        -> bound 0 (AF, cited),
//   - stably finite  -> unfurling verification + d = 0 certificate on the
//                       image fragment, then the abelian-isotropy formula
//                       (1+1)(0+1)(0+1) - 1 = 1 (all steps verified),
//   - condition (K)  -> bound 2 (cited).
// Mixed entrance structure is unsupported (the isotropy does not vary
// continuously); that case throws NotApplicable.  Verification failures
// abort with the counterexample.
BoundReport certified_pipeline(const GraphPtr& g,
                               const PipelineOptions& options = {});

}  // namespace nucdim
