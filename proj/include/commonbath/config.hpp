#ifndef COMMONBATH_CONFIG_HPP
#define COMMONBATH_CONFIG_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "commonbath/bath.hpp"
#include "commonbath/generator.hpp"
#include "commonbath/pauli_algebra.hpp"

namespace commonbath {

/// Invalid configuration document; the message names the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Exactly one of `A` (full symmetric matrix) or `lambda` (its diagonal).
struct BathSpec {
  std::optional<RealMatrix3> A;
  std::optional<RealVector3> lambda;
  RealVector3 B = RealVector3::Zero();

  RealMatrix3 real_part() const;
  KossakowskiBlock build() const;
};

struct ProductInitial {
  Eigen::Vector2cd phi;
  Eigen::Vector2cd psi;
};

/// s/3 Q + (1 - s) P, 0 <= s <= 3/4.
struct WernerInitial {
  double s = 0.75;
};

struct PauliInitial {
  PauliCoefficients coefficients;
};

struct MixedComponent {
  double weight = 0.0;
  std::variant<ProductInitial, WernerInitial, PauliInitial> state;
};

struct MixedInitial {
  std::vector<MixedComponent> parts;
};

using InitialState = std::variant<ProductInitial, WernerInitial, PauliInitial, MixedInitial>;

struct IntegratorConfig {
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<int> sample_every;
};

inline constexpr double kDefaultTEnd = 50.0;
inline constexpr int kDefaultSampleEvery = 10;

struct RunConfig {
  BathSpec bath;
  InitialState initial = WernerInitial{};
  IntegratorConfig integrator;

  KossakowskiBlock block() const;
  ComplexMatrix4 initial_matrix() const;
  PauliCoefficients initial_coefficients() const;
  /// Fills unset fields: dt = default_dt(block), t_end = 50, sample_every = 10.
  IntegratorSettings settings(const KossakowskiBlock& block) const;
};

/// Throws ConfigError. Complex amplitudes are written as a number or a
/// [re, im] pair.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

nlohmann::json to_json(const RunConfig& config);

ComplexMatrix4 initial_matrix(const InitialState& initial);

}  // namespace commonbath

#endif  // COMMONBATH_CONFIG_HPP
