#ifndef COMMONBATH_COMMANDS_HPP
#define COMMONBATH_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "commonbath/config.hpp"
#include "commonbath/generator.hpp"
#include "commonbath/self_check.hpp"

namespace commonbath {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitIntegration = 2,
  kExitNotApplicable = 3,
  kExitSelfCheck = 4,
};

/// Header of the trajectory CSV; a '#' comment line documenting the
/// coefficient order precedes it in the file.
std::string trajectory_csv_header();
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

/// Report printed by `steady`. Throws NotApplicableError when the closed form
/// does not apply and `numeric_only` is false.
nlohmann::json steady_report(const RunConfig& config, bool numeric_only);

enum class SweepParameter { Tau, B, S, Lambda1, Lambda2, Lambda3 };

/// Accepts tau, B, s, lambda_1, lambda_2, lambda_3. Throws ConfigError.
SweepParameter parse_sweep_parameter(const std::string& name);
std::string sweep_parameter_name(SweepParameter p);

/// The configuration a sweep row runs with. For tau the initial state is
/// replaced by w P + (1 - w)|00><00| with w = (1 - tau) / 4; for s by the
/// Werner state with that s. Throws ConfigError for out-of-range values.
RunConfig sweep_variant(const RunConfig& base, SweepParameter p, double value);

struct SweepRow {
  double value = 0.0;
  double tau = 0.0;
  double concurrence_closed = 0.0;
  double concurrence_evolved = 0.0;
  /// Werner initial states only: 2s [1 - (2 + Delta) / (3 + 2R)] and the
  /// measured C(final) - C(initial).
  std::optional<double> delta_c_closed;
  std::optional<double> delta_c_evolved;
};

/// Rows are computed concurrently and returned in input order.
std::vector<SweepRow> run_sweep(const RunConfig& base, SweepParameter p, const std::vector<double>& values);

std::string sweep_csv_header();
void write_sweep_csv(SweepParameter p, const std::vector<SweepRow>& rows, std::ostream& out);

/// Formats with 15 significant digits.
std::string format_number(double x);

/// Integer in TOOL_SEED, else the default seed.
std::uint64_t seed_from_env();

int cmd_evolve(const std::string& config_path, const std::string& out_path, std::ostream& err);
int cmd_steady(const std::string& config_path, bool numeric_only, std::ostream& out, std::ostream& err);
int cmd_sweep(const std::string& config_path, const std::string& param, const std::string& values,
              const std::string& out_path, std::ostream& err);
int cmd_check(const CheckOptions& options, std::ostream& out);

}  // namespace commonbath

#endif  // COMMONBATH_COMMANDS_HPP
