#include "commonbath/commands.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "commonbath/entanglement.hpp"
#include "commonbath/linalg.hpp"
#include "commonbath/steady_state.hpp"

namespace commonbath {

using nlohmann::json;

namespace {

json coefficients_json(const PauliCoefficients& c) {
  json rij = json::array();
  for (int i = 0; i < 3; ++i) rij.push_back({c.rij(i, 0), c.rij(i, 1), c.rij(i, 2)});
  return {{"r0i", {c.r0i(0), c.r0i(1), c.r0i(2)}},
          {"ri0", {c.ri0(0), c.ri0(1), c.ri0(2)}},
          {"rij", rij}};
}

json matrix_json(const RealMatrix3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2)});
  return rows;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0' || !std::isfinite(v))
      throw ConfigError("--values: cannot parse '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw ConfigError("--values: empty list");
  return values;
}

// Runs a command body and maps library errors onto exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IntegrationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIntegration;
  } catch (const NotApplicableError& e) {
    err << "error: " << e.what() << " (pass --numeric-only)\n";
    return kExitNotApplicable;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string trajectory_csv_header() {
  std::string h = "t,tau,trace_err,min_pt_eig,concurrence";
  for (const char* label : coefficient_labels()) h += std::string(",") + label;
  return h;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  out << "# rho = 1/4 [1 + r0i (1 x s_i) + ri0 (s_i x 1) + rij (s_i x s_j)]; "
         "columns r01..r03, r10..r30, r11..r33 in row-major order\n";
  out << trajectory_csv_header() << "\n";
  for (const Sample& s : traj.samples) {
    out << format_number(s.t) << ',' << format_number(s.tau) << ',' << format_number(s.trace_error) << ','
        << format_number(s.min_pt_eigenvalue) << ',' << format_number(s.concurrence);
    const CoefficientVector v = s.state.flatten();
    for (int k = 0; k < 15; ++k) out << ',' << format_number(v(k));
    out << "\n";
  }
}

json steady_report(const RunConfig& config, bool numeric_only) {
  const KossakowskiBlock block = config.block();
  const PauliCoefficients initial = config.initial_coefficients();
  const double tau = std::clamp(initial.tau(), -3.0, 1.0);
  const NullSpace ns = liouvillian_null_space(block);
  const std::optional<PauliCoefficients> numeric = ns.point_at_tau(tau);

  json report;
  report["tau"] = tau;
  report["oracle"] = {{"dimension", ns.dimension},
                      {"full_rank_found", ns.full_rank_found},
                      {"member_min_eigenvalue", ns.member_min_eigenvalue}};

  if (numeric_only) {
    if (numeric) {
      const ComplexMatrix4 m = to_matrix(*numeric);
      report["numeric"] = {{"coefficients", coefficients_json(*numeric)},
                           {"concurrence", concurrence(m)},
                           {"min_eigenvalue", min_eigenvalue(m)}};
    } else {
      report["numeric"] = nullptr;
    }
    return report;
  }

  const StationaryFamily family = stationary_family(block);
  const ClosedConcurrence closed = concurrence_closed(family.M, family.R, tau);
  const EquilibriumState eq = asymptotic_state(initial, family);

  report["frame"] = {{"lambda", {family.frame.lambda(0), family.frame.lambda(1), family.frame.lambda(2)}},
                     {"B", family.frame.coupling()},
                     {"rotation", matrix_json(family.frame.rotation)},
                     {"boundary", family.boundary}};
  report["M"] = family.M;
  report["N"] = family.N;
  report["R"] = family.R;
  report["Delta"] = closed.delta;
  report["threshold"] = closed.threshold;
  report["components"] = {{"rho3", eq.rho3}, {"rho11", eq.rho11}, {"rho22", eq.rho22}, {"rho33", eq.rho33}};
  report["equilibrium_coefficients"] = coefficients_json(eq.coefficients);
  report["concurrence_closed"] = closed.concurrence;
  report["concurrence_numeric"] = concurrence(eq.state);
  report["oracle"]["residual"] =
      numeric ? json((numeric->flatten() - eq.coefficients.flatten()).cwiseAbs().maxCoeff()) : json(nullptr);
  return report;
}

SweepParameter parse_sweep_parameter(const std::string& name) {
  if (name == "tau") return SweepParameter::Tau;
  if (name == "B") return SweepParameter::B;
  if (name == "s") return SweepParameter::S;
  if (name == "lambda_1") return SweepParameter::Lambda1;
  if (name == "lambda_2") return SweepParameter::Lambda2;
  if (name == "lambda_3") return SweepParameter::Lambda3;
  throw ConfigError("--param: expected one of tau, B, s, lambda_1, lambda_2, lambda_3");
}

std::string sweep_parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::Tau: return "tau";
    case SweepParameter::B: return "B";
    case SweepParameter::S: return "s";
    case SweepParameter::Lambda1: return "lambda_1";
    case SweepParameter::Lambda2: return "lambda_2";
    case SweepParameter::Lambda3: return "lambda_3";
  }
  return "";
}

RunConfig sweep_variant(const RunConfig& base, SweepParameter p, double value) {
  RunConfig cfg = base;
  const std::string field = "--values (" + sweep_parameter_name(p) + "=" + format_number(value) + ")";
  switch (p) {
    case SweepParameter::Tau: {
      if (value < -3.0 || value > 1.0) throw ConfigError(field + ": tau must lie in [-3, 1]");
      const double w = (1.0 - value) / 4.0;
      const Eigen::Vector2cd up(1.0, 0.0);
      MixedInitial mixed;
      mixed.parts.push_back({w, WernerInitial{0.0}});
      mixed.parts.push_back({1.0 - w, ProductInitial{up, up}});
      cfg.initial = mixed;
      break;
    }
    case SweepParameter::S:
      if (value < 0.0 || value > 0.75) throw ConfigError(field + ": s must lie in [0, 3/4]");
      cfg.initial = WernerInitial{value};
      break;
    case SweepParameter::B: {
      const double n = base.bath.B.norm();
      const RealVector3 dir = n > 0.0 ? RealVector3(base.bath.B / n) : RealVector3(0.0, 0.0, 1.0);
      cfg.bath.B = value * dir;
      break;
    }
    case SweepParameter::Lambda1:
    case SweepParameter::Lambda2:
    case SweepParameter::Lambda3: {
      if (!cfg.bath.lambda) throw ConfigError("--param: lambda sweeps need a bath given by lambda, not A");
      const int axis = p == SweepParameter::Lambda1 ? 0 : p == SweepParameter::Lambda2 ? 1 : 2;
      (*cfg.bath.lambda)(axis) = value;
      break;
    }
  }
  try {
    cfg.bath.build();
  } catch (const ConfigError& e) {
    throw ConfigError(field + ": " + e.what());
  }
  return cfg;
}

std::vector<SweepRow> run_sweep(const RunConfig& base, SweepParameter p, const std::vector<double>& values) {
  // Validate everything before any work starts.
  std::vector<RunConfig> configs;
  for (double v : values) configs.push_back(sweep_variant(base, p, v));

  std::vector<SweepRow> rows(values.size());
  std::vector<std::exception_ptr> errors(values.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        const RunConfig& cfg = configs[i];
        const KossakowskiBlock block = cfg.block();
        const StationaryFamily family = stationary_family(block);
        const PauliCoefficients init = cfg.initial_coefficients();
        const double tau = std::clamp(init.tau(), -3.0, 1.0);
        const ClosedConcurrence closed = concurrence_closed(family.M, family.R, tau);

        IntegratorSettings settings = cfg.settings(block);
        settings.sample_every = INT_MAX;  // first and last samples only
        const Trajectory traj = evolve(init, block, settings);

        SweepRow& row = rows[i];
        row.value = values[i];
        row.tau = tau;
        row.concurrence_closed = closed.concurrence;
        row.concurrence_evolved = traj.back().concurrence;
        if (const auto* w = std::get_if<WernerInitial>(&cfg.initial)) {
          row.delta_c_closed = 2.0 * w->s * (1.0 - (2.0 + closed.delta) / (3.0 + 2.0 * family.R));
          row.delta_c_evolved = row.concurrence_evolved - traj.samples.front().concurrence;
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const std::size_t n_threads =
      std::max<std::size_t>(1, std::min<std::size_t>(configs.size(), std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

std::string sweep_csv_header() {
  return "param,value,tau,concurrence_closed,concurrence_evolved,delta_c_closed,delta_c_evolved";
}

void write_sweep_csv(SweepParameter p, const std::vector<SweepRow>& rows, std::ostream& out) {
  out << sweep_csv_header() << "\n";
  const std::string name = sweep_parameter_name(p);
  for (const SweepRow& r : rows) {
    out << name << ',' << format_number(r.value) << ',' << format_number(r.tau) << ','
        << format_number(r.concurrence_closed) << ',' << format_number(r.concurrence_evolved) << ','
        << (r.delta_c_closed ? format_number(*r.delta_c_closed) : "") << ','
        << (r.delta_c_evolved ? format_number(*r.delta_c_evolved) : "") << "\n";
  }
}

std::uint64_t seed_from_env() {
  if (const char* env = std::getenv("TOOL_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return kDefaultSeed;
}

int cmd_evolve(const std::string& config_path, const std::string& out_path, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(config_path);
    const KossakowskiBlock block = cfg.block();
    const Trajectory traj = evolve(cfg.initial_coefficients(), block, cfg.settings(block));
    std::ofstream out(out_path);
    if (!out) throw ConfigError("--out: cannot write '" + out_path + "'");
    write_trajectory_csv(traj, out);
    return int(kExitOk);
  });
}

int cmd_steady(const std::string& config_path, bool numeric_only, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(config_path);
    out << steady_report(cfg, numeric_only).dump(2) << "\n";
    return int(kExitOk);
  });
}

int cmd_sweep(const std::string& config_path, const std::string& param, const std::string& values,
              const std::string& out_path, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(config_path);
    const SweepParameter p = parse_sweep_parameter(param);
    const std::vector<SweepRow> rows = run_sweep(cfg, p, parse_values(values));
    std::ofstream out(out_path);
    if (!out) throw ConfigError("--out: cannot write '" + out_path + "'");
    write_sweep_csv(p, rows, out);
    return int(kExitOk);
  });
}

int cmd_check(const CheckOptions& options, std::ostream& out) {
  const std::vector<SuiteResult> results = run_self_check(options, &out);
  for (const SuiteResult& r : results) {
    if (!r.passed) {
      out << "self-check failed: " << r.name << "\n";
      return kExitSelfCheck;
    }
  }
  out << "all " << results.size() << " suites passed\n";
  return kExitOk;
}

}  // namespace commonbath
