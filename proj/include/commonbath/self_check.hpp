#ifndef COMMONBATH_SELF_CHECK_HPP
#define COMMONBATH_SELF_CHECK_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace commonbath {

inline constexpr std::uint64_t kDefaultSeed = 20061016;

struct CheckOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Test hook: run the algebra suite against a Levi-Civita symbol with one
  /// sign flipped. The suite must then fail.
  bool corrupt_levi_civita = false;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  /// Worst residual observed and the bound it was held to.
  double worst = 0.0;
  double bound = 0.0;
};

/// Runs every machine-checkable invariant at fixed sample counts. Each
/// suite is printed as one "PASS|FAIL name worst=... bound=..." line to
/// `log` (if given).
std::vector<SuiteResult> run_self_check(const CheckOptions& options, std::ostream* log = nullptr);

}  // namespace commonbath

#endif  // COMMONBATH_SELF_CHECK_HPP
