#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobhh/presets.hpp"

namespace frobhh {

struct InvariantResult {
  std::string id;
  std::string status;  // "pass", "fail" or "skipped: <reason>"
  std::size_t instances = 0;
  std::string witness;  // first failing instance
  double seconds = 0;

  bool failed() const { return status == "fail"; }
};

struct VerifyOptions {
  int lo = -3, hi = 3;          // degrees for complex-level checks
  int product_radius = 2;       // |degree| bound for random classes in product checks
  int trials = 6;               // random instances per product check
  std::uint64_t seed = 42;
  std::size_t budget = kDefaultBudget;
};

struct VerifyReport {
  std::vector<InvariantResult> results;
  bool budget_exceeded = false;

  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
};

// Runs every invariant on an algebra with the form given by gram (input basis).
// Failures are recorded, never thrown; preset checks run when preset is set.
template <class F>
VerifyReport run_verify(const Algebra<F>& a, const DenseMatrix<F>& gram, std::optional<Preset> preset,
                        const VerifyOptions& opt);

}  // namespace frobhh
