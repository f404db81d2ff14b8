#ifndef GSMF_TOOLS_IDENTITY_SUITE_H_
#define GSMF_TOOLS_IDENTITY_SUITE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "gsmf/objective.h"

namespace gsmf::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Randomized checks of the operator identities, the prox optimality of both
// regularizers and the relaxation identity on `spec`. Checks that need
// relaxation parameters are skipped when `params` is null.
std::vector<CheckResult> RunIdentitySuite(const ProblemSpec& spec,
                                          const RelaxationParams* params,
                                          std::uint64_t seed, int trials = 100);

}  // namespace gsmf::cli

#endif  // GSMF_TOOLS_IDENTITY_SUITE_H_
