#include "commonbath/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace commonbath {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(field + ": " + what);
}

void only_keys(const json& obj, const std::string& field, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(field, "expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) fail(field + "." + key, "unknown field");
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(field, "must be finite");
  return x;
}

RealVector3 vec3(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 3) fail(field, "expected an array of 3 numbers");
  RealVector3 out;
  for (int i = 0; i < 3; ++i) out(i) = number(v[i], field + "[" + std::to_string(i) + "]");
  return out;
}

RealMatrix3 mat3(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 3) fail(field, "expected a 3x3 array");
  RealMatrix3 out;
  for (int i = 0; i < 3; ++i) out.row(i) = vec3(v[i], field + "[" + std::to_string(i) + "]").transpose();
  return out;
}

Complex complex_number(const json& v, const std::string& field) {
  if (v.is_number()) return {number(v, field), 0.0};
  if (v.is_array() && v.size() == 2) return {number(v[0], field + "[0]"), number(v[1], field + "[1]")};
  fail(field, "expected a number or a [re, im] pair");
}

Eigen::Vector2cd amplitude(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2) fail(field, "expected 2 complex amplitudes");
  Eigen::Vector2cd out(complex_number(v[0], field + "[0]"), complex_number(v[1], field + "[1]"));
  if (std::abs(out.norm() - 1.0) > 1e-9) fail(field, "amplitudes must be normalized");
  return out;
}

json vec_json(const RealVector3& v) { return json::array({v(0), v(1), v(2)}); }

json mat_json(const RealMatrix3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) rows.push_back(vec_json(m.row(i).transpose()));
  return rows;
}

json amplitude_json(const Eigen::Vector2cd& v) {
  return json::array({json::array({v(0).real(), v(0).imag()}), json::array({v(1).real(), v(1).imag()})});
}

using PureVariant = std::variant<ProductInitial, WernerInitial, PauliInitial>;

PureVariant parse_simple(const std::string& kind, const json& body, const std::string& field) {
  if (kind == "product") {
    only_keys(body, field, {"phi", "psi"});
    if (!body.contains("phi") || !body.contains("psi")) fail(field, "requires phi and psi");
    return ProductInitial{amplitude(body["phi"], field + ".phi"), amplitude(body["psi"], field + ".psi")};
  }
  if (kind == "werner_eq27") {
    only_keys(body, field, {"s"});
    if (!body.contains("s")) fail(field, "requires s");
    const double s = number(body["s"], field + ".s");
    if (s < 0.0 || s > 0.75) fail(field + ".s", "must lie in [0, 3/4]");
    return WernerInitial{s};
  }
  if (kind == "pauli") {
    PauliCoefficients c;
    if (body.is_array()) {
      if (body.size() != 15) fail(field, "expected 15 coefficients");
      CoefficientVector v;
      for (int k = 0; k < 15; ++k) v(k) = number(body[k], field + "[" + std::to_string(k) + "]");
      c = PauliCoefficients::unflatten(v);
    } else {
      only_keys(body, field, {"r0i", "ri0", "rij"});
      if (!body.contains("r0i") || !body.contains("ri0") || !body.contains("rij"))
        fail(field, "requires r0i, ri0 and rij");
      c.r0i = vec3(body["r0i"], field + ".r0i");
      c.ri0 = vec3(body["ri0"], field + ".ri0");
      c.rij = mat3(body["rij"], field + ".rij");
    }
    const StateDiagnostics d = diagnose(to_matrix(c));
    if (!d.positive()) {
      std::ostringstream msg;
      msg << "coefficients do not describe a state (min eigenvalue " << d.min_eigenvalue << ")";
      fail(field, msg.str());
    }
    return PauliInitial{c};
  }
  fail(field, "unknown initial-state variant '" + kind + "'");
}

json simple_json(const PureVariant& v) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ProductInitial>) {
          return {{"product", {{"phi", amplitude_json(s.phi)}, {"psi", amplitude_json(s.psi)}}}};
        } else if constexpr (std::is_same_v<T, WernerInitial>) {
          return {{"werner_eq27", {{"s", s.s}}}};
        } else {
          return {{"pauli",
                   {{"r0i", vec_json(s.coefficients.r0i)},
                    {"ri0", vec_json(s.coefficients.ri0)},
                    {"rij", mat_json(s.coefficients.rij)}}}};
        }
      },
      v);
}

ComplexMatrix4 simple_matrix(const PureVariant& v) {
  return std::visit(
      [](const auto& s) -> ComplexMatrix4 {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ProductInitial>) return product_state(s.phi, s.psi);
        else if constexpr (std::is_same_v<T, WernerInitial>) return werner_state(s.s);
        else return to_matrix(s.coefficients);
      },
      v);
}

}  // namespace

RealMatrix3 BathSpec::real_part() const {
  if (A) return *A;
  if (lambda) return lambda->asDiagonal();
  return RealMatrix3::Zero();
}

KossakowskiBlock BathSpec::build() const {
  try {
    return make_bath(real_part(), B);
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("bath: ") + e.what());
  }
}

ComplexMatrix4 initial_matrix(const InitialState& initial) {
  if (const auto* mixed = std::get_if<MixedInitial>(&initial)) {
    ComplexMatrix4 m = ComplexMatrix4::Zero();
    for (const MixedComponent& part : mixed->parts) m += part.weight * simple_matrix(part.state);
    return m;
  }
  return std::visit(
      [](const auto& s) -> ComplexMatrix4 {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MixedInitial>) return ComplexMatrix4::Zero();
        else return simple_matrix(PureVariant{s});
      },
      initial);
}

KossakowskiBlock RunConfig::block() const { return bath.build(); }

ComplexMatrix4 RunConfig::initial_matrix() const { return commonbath::initial_matrix(initial); }

PauliCoefficients RunConfig::initial_coefficients() const {
  return to_coefficients(initial_matrix()).coefficients;
}

IntegratorSettings RunConfig::settings(const KossakowskiBlock& blk) const {
  IntegratorSettings s;
  s.dt = integrator.dt.value_or(default_dt(blk));
  s.t_end = integrator.t_end.value_or(kDefaultTEnd);
  s.sample_every = integrator.sample_every.value_or(kDefaultSampleEvery);
  return s;
}

RunConfig parse_config(const json& doc) {
  only_keys(doc, "config", {"bath", "initial", "integrator"});
  RunConfig cfg;

  if (!doc.contains("bath")) fail("bath", "missing");
  const json& bath = doc["bath"];
  only_keys(bath, "bath", {"A", "lambda", "B"});
  if (bath.contains("A") && bath.contains("lambda")) fail("bath", "give either A or lambda, not both");
  if (!bath.contains("A") && !bath.contains("lambda")) fail("bath", "requires A or lambda");
  if (bath.contains("A")) cfg.bath.A = mat3(bath["A"], "bath.A");
  if (bath.contains("lambda")) cfg.bath.lambda = vec3(bath["lambda"], "bath.lambda");
  if (bath.contains("B")) cfg.bath.B = vec3(bath["B"], "bath.B");
  cfg.bath.build();

  if (!doc.contains("initial")) fail("initial", "missing");
  const json& init = doc["initial"];
  if (!init.is_object() || init.size() != 1)
    fail("initial", "exactly one of product, werner_eq27, pauli, mixed is required");
  const auto& [kind, body] = *init.items().begin();
  if (kind == "mixed") {
    if (!body.is_array() || body.empty()) fail("initial.mixed", "expected a non-empty array");
    MixedInitial mixed;
    double total = 0.0;
    for (std::size_t n = 0; n < body.size(); ++n) {
      const std::string field = "initial.mixed[" + std::to_string(n) + "]";
      const json& item = body[n];
      if (!item.is_object() || !item.contains("weight") || item.size() != 2)
        fail(field, "expected {weight, <variant>}");
      MixedComponent part;
      part.weight = number(item["weight"], field + ".weight");
      if (part.weight < 0.0) fail(field + ".weight", "must be non-negative");
      for (const auto& [k, v] : item.items())
        if (k != "weight") part.state = parse_simple(k, v, field + "." + k);
      total += part.weight;
      mixed.parts.push_back(std::move(part));
    }
    if (std::abs(total - 1.0) > 1e-12) fail("initial.mixed", "weights must sum to 1");
    cfg.initial = std::move(mixed);
  } else {
    std::visit([&](auto&& s) { cfg.initial = s; }, parse_simple(kind, body, "initial." + kind));
  }

  if (doc.contains("integrator")) {
    const json& integ = doc["integrator"];
    only_keys(integ, "integrator", {"dt", "t_end", "sample_every"});
    if (integ.contains("dt")) {
      cfg.integrator.dt = number(integ["dt"], "integrator.dt");
      if (*cfg.integrator.dt <= 0.0) fail("integrator.dt", "must be positive");
    }
    if (integ.contains("t_end")) {
      cfg.integrator.t_end = number(integ["t_end"], "integrator.t_end");
      if (*cfg.integrator.t_end <= 0.0) fail("integrator.t_end", "must be positive");
    }
    if (integ.contains("sample_every")) {
      if (!integ["sample_every"].is_number_integer() || integ["sample_every"].get<long>() < 1)
        fail("integrator.sample_every", "must be a positive integer");
      cfg.integrator.sample_every = integ["sample_every"].get<int>();
    }
    const IntegratorSettings s = cfg.settings(cfg.block());
    if (s.dt > s.t_end) fail("integrator.dt", "must not exceed t_end");
  }
  return cfg;
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

json to_json(const RunConfig& config) {
  json doc;
  json bath;
  if (config.bath.A) bath["A"] = mat_json(*config.bath.A);
  if (config.bath.lambda) bath["lambda"] = vec_json(*config.bath.lambda);
  bath["B"] = vec_json(config.bath.B);
  doc["bath"] = bath;

  if (const auto* mixed = std::get_if<MixedInitial>(&config.initial)) {
    json parts = json::array();
    for (const MixedComponent& part : mixed->parts) {
      json item = simple_json(part.state);
      item["weight"] = part.weight;
      parts.push_back(item);
    }
    doc["initial"] = {{"mixed", parts}};
  } else {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (!std::is_same_v<T, MixedInitial>) doc["initial"] = simple_json(PureVariant{s});
        },
        config.initial);
  }

  json integ = json::object();
  if (config.integrator.dt) integ["dt"] = *config.integrator.dt;
  if (config.integrator.t_end) integ["t_end"] = *config.integrator.t_end;
  if (config.integrator.sample_every) integ["sample_every"] = *config.integrator.sample_every;
  if (!integ.empty()) doc["integrator"] = integ;
  return doc;
}

}  // namespace commonbath
