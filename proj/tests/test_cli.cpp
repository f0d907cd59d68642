#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "commonbath/commands.hpp"
#include "commonbath/config.hpp"
#include "commonbath/entanglement.hpp"
#include "commonbath/linalg.hpp"

using namespace commonbath;
namespace fs = std::filesystem;

namespace {

const std::string kData = COMMONBATH_TEST_DATA;

std::string data(const std::string& name) { return kData + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "commonbath_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string write_scratch(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + COMMONBATH_CLI_PATH + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines_of(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<double> columns(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) out.push_back(std::stod(cell));
  return out;
}

const char* kWerner = R"({
  "bath": {"lambda": [1, 1, 1], "B": [0, 0, 0.5]},
  "initial": {"werner_eq27": {"s": 0.25}}
})";

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("werner config") {
    const RunConfig cfg = parse_config_text(kWerner);
    CHECK(std::holds_alternative<WernerInitial>(cfg.initial));
    CHECK(concurrence(cfg.initial_matrix()) == doctest::Approx(0.5));
    const IntegratorSettings s = cfg.settings(cfg.block());
    CHECK(s.t_end == kDefaultTEnd);
    CHECK(s.sample_every == kDefaultSampleEvery);
    CHECK(s.dt == doctest::Approx(0.01));
  }

  SUBCASE("full A with complex product amplitudes") {
    const RunConfig cfg = load_config(data("frozen.json"));
    const PauliCoefficients c = cfg.initial_coefficients();
    CHECK(c.ri0(1) == doctest::Approx(0.96));
    CHECK(c.ri0(2) == doctest::Approx(-0.28));
    CHECK(c.r0i(2) == doctest::Approx(1.0));
  }

  SUBCASE("mixed initial states") {
    const RunConfig cfg = load_config(data("misaligned.json"));
    const ComplexMatrix4 rho = cfg.initial_matrix();
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-14);
    CHECK(tau_of(cfg.initial_coefficients()) == doctest::Approx(0.5 * (4 * 0.1 - 3) + 0.5));
  }

  SUBCASE("pauli initial state as object or flat array") {
    const RunConfig a = parse_config_text(R"({"bath": {"lambda": [1,1,1], "B": [0,0,0]},
      "initial": {"pauli": {"r0i": [0,0,0.5], "ri0": [0,0,0], "rij": [[0,0,0],[0,0,0],[0,0,0]]}}})");
    const RunConfig b = parse_config_text(R"({"bath": {"lambda": [1,1,1], "B": [0,0,0]},
      "initial": {"pauli": [0,0,0.5, 0,0,0, 0,0,0, 0,0,0, 0,0,0]}})");
    CHECK(a.initial_coefficients().flatten() == b.initial_coefficients().flatten());
  }

  SUBCASE("round trip is idempotent") {
    for (const char* name : {"werner.json", "product.json", "frozen.json", "misaligned.json"}) {
      const nlohmann::json once = to_json(load_config(data(name)));
      const nlohmann::json twice = to_json(parse_config(once));
      CHECK(once == twice);
    }
  }

  SUBCASE("errors name the field") {
    auto message = [](const std::string& text) -> std::string {
      try {
        parse_config_text(text);
      } catch (const ConfigError& e) {
        return e.what();
      }
      return "";
    };
    CHECK(message(R"({"bath": {"lambda": [1,1,1], "A": [[1,0,0],[0,1,0],[0,0,1]], "B": [0,0,0]},
      "initial": {"werner_eq27": {"s": 0.1}}})").find("bath") != std::string::npos);
    CHECK(message(R"({"bath": {"lambda": [1,1,1], "B": [0,0,0]},
      "initial": {"werner_eq27": {"s": 0.9}}})").find("s") != std::string::npos);
    CHECK(message(R"({"bath": {"lambda": [1,1,1], "B": [0,0,0]},
      "initial": {"werner_eq27": {"s": 0.1}, "product": {"phi": [1,0], "psi": [1,0]}}})")
              .find("initial") != std::string::npos);
    CHECK(message(R"({"bath": {"lambda": [1,1,1], "B": [0,0,5]},
      "initial": {"werner_eq27": {"s": 0.1}}})").find("bath") != std::string::npos);
    CHECK(message(R"({"bath": {"lambda": [1,1,1], "B": [0,0,0]},
      "initial": {"product": {"phi": [1,1], "psi": [1,0]}}})").find("phi") != std::string::npos);
    CHECK(message(R"({"bath": {"lambda": [1,1,1], "B": [0,0,0]},
      "initial": {"werner_eq27": {"s": 0.1}}, "extra": 1})").find("extra") != std::string::npos);
    CHECK(message(R"({"bath": {"lambda": [1,1,1], "B": [0,0,0]},
      "initial": {"mixed": [{"weight": 0.7, "werner_eq27": {"s": 0.1}}]}})").find("weight") != std::string::npos);
    CHECK(message("{not json").find("JSON") != std::string::npos);
  }
}

TEST_CASE("steady report") {
  SUBCASE("werner start") {
    const nlohmann::json r = steady_report(parse_config_text(kWerner), false);
    CHECK(r["threshold"].get<double>() == doctest::Approx(-0.6363636363636364));
    CHECK(r["tau"].get<double>() == doctest::Approx(-2.0));
    CHECK(r["concurrence_closed"].get<double>() == doctest::Approx(0.5769230769230769));
    CHECK(r["concurrence_numeric"].get<double>() == doctest::Approx(0.5769230769230769));
    CHECK(r["oracle"]["dimension"].get<int>() == 1);
  }

  SUBCASE("tau = 1 start is separable at equilibrium") {
    RunConfig cfg = parse_config_text(kWerner);
    cfg.initial = ProductInitial{Eigen::Vector2cd(1, 0), Eigen::Vector2cd(1, 0)};
    CHECK(steady_report(cfg, false)["concurrence_closed"].get<double>() == 0.0);
  }

  SUBCASE("singlet start") {
    RunConfig cfg = parse_config_text(kWerner);
    cfg.initial = WernerInitial{0.0};
    CHECK(steady_report(cfg, false)["concurrence_closed"].get<double>() == 1.0);
  }

  SUBCASE("B = 0") {
    const nlohmann::json r = steady_report(load_config(data("frozen.json")), false);
    CHECK(r["M"].get<double>() == 0.0);
    CHECK(r["N"].get<double>() == 0.0);
    CHECK(r["R"].get<double>() == 0.0);
    CHECK(r["threshold"].get<double>() == doctest::Approx(-1.0));
  }

  SUBCASE("misaligned bath") {
    const RunConfig cfg = load_config(data("misaligned.json"));
    CHECK_THROWS_AS(steady_report(cfg, false), NotApplicableError);
    const nlohmann::json r = steady_report(cfg, true);
    CHECK(r["oracle"]["full_rank_found"].get<bool>());
    CHECK_FALSE(r.contains("M"));
  }
}

TEST_CASE("sweep") {
  const RunConfig base = parse_config_text(kWerner);

  SUBCASE("s grid reproduces the enhancement") {
    const std::vector<SweepRow> rows = run_sweep(base, SweepParameter::S, {0.0, 0.1, 0.25});
    REQUIRE(rows.size() == 3);
    const double expected[] = {0.0, 0.030769230769230771, 0.076923076923076927};
    for (int k = 0; k < 3; ++k) {
      REQUIRE(rows[k].delta_c_closed.has_value());
      CHECK(*rows[k].delta_c_closed == doctest::Approx(expected[k]).epsilon(1e-12));
      CHECK(std::abs(*rows[k].delta_c_evolved - expected[k]) < 1e-5);
      CHECK(std::abs(rows[k].concurrence_closed - rows[k].concurrence_evolved) < 1e-5);
    }
    CHECK(*rows[0].delta_c_closed == 0.0);
  }

  SUBCASE("separable tau values with B = 0") {
    RunConfig cfg = base;
    cfg.bath.B = RealVector3::Zero();
    for (const SweepRow& r : run_sweep(cfg, SweepParameter::Tau, {-1.0, -0.5, 0.0, 1.0})) {
      CHECK(r.concurrence_closed == 0.0);
      CHECK(r.concurrence_evolved < 1e-6);
    }
  }

  SUBCASE("rows come back in input order") {
    const std::vector<double> values = {0.5, 0.1, 0.3, 0.2, 0.4};
    const std::vector<SweepRow> rows = run_sweep(base, SweepParameter::B, values);
    for (std::size_t k = 0; k < values.size(); ++k) CHECK(rows[k].value == values[k]);
  }

  SUBCASE("parameter names and ranges") {
    CHECK(parse_sweep_parameter("lambda_2") == SweepParameter::Lambda2);
    CHECK(sweep_parameter_name(SweepParameter::Tau) == "tau");
    CHECK_THROWS_AS(parse_sweep_parameter("gamma"), ConfigError);
    CHECK_THROWS_AS(sweep_variant(base, SweepParameter::Tau, 1.5), ConfigError);
    CHECK_THROWS_AS(sweep_variant(base, SweepParameter::S, 0.8), ConfigError);
    CHECK_THROWS_AS(sweep_variant(base, SweepParameter::B, 1.5), ConfigError);
  }
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333333");
  CHECK(format_number(-3.0) == "-3");
}

TEST_CASE("self-check") {
  SUBCASE("passes and is deterministic") {
    std::ostringstream a, b;
    CHECK(cmd_check({}, a) == kExitOk);
    CHECK(cmd_check({}, b) == kExitOk);
    CHECK(a.str() == b.str());
  }

  SUBCASE("corrupted epsilon fails the algebra suite") {
    CheckOptions opt;
    opt.corrupt_levi_civita = true;
    std::ostringstream out;
    CHECK(cmd_check(opt, out) == kExitSelfCheck);
    CHECK(out.str().find("FAIL product_table") != std::string::npos);
  }

  SUBCASE("other seeds pass too") {
    CheckOptions opt;
    opt.seed = 7;
    const auto results = run_self_check(opt);
    CHECK(results.size() == 18);
    for (const SuiteResult& r : results) CHECK_MESSAGE(r.passed, r.name);
  }
}

TEST_CASE("command-line binary") {
  SUBCASE("evolve writes the trajectory schema") {
    const std::string out = scratch("werner.csv").string();
    const Run r = run_cli("evolve --config " + data("werner.json") + " --out " + out);
    REQUIRE(r.code == 0);
    const auto lines = lines_of(out);
    REQUIRE(lines.size() > 3);
    CHECK(lines[0].rfind("#", 0) == 0);
    CHECK(lines[1] == trajectory_csv_header());
    CHECK(lines[1] ==
          "t,tau,trace_err,min_pt_eig,concurrence,r01,r02,r03,r10,r20,r30,r11,r12,r13,r21,r22,r23,r31,r32,r33");
    const auto first = columns(lines[2]);
    CHECK(first[0] == 0.0);
    CHECK(first[4] == doctest::Approx(0.5));
    const auto last = columns(lines.back());
    CHECK(last[0] == doctest::Approx(50.0));
    CHECK(last[4] == doctest::Approx(0.5769230769).epsilon(1e-6));
  }

  SUBCASE("frozen dynamics gives identical rows") {
    const std::string out = scratch("frozen.csv").string();
    REQUIRE(run_cli("evolve --config " + data("frozen.json") + " --out " + out).code == 0);
    const auto lines = lines_of(out);
    REQUIRE(lines.size() == 13);
    for (std::size_t k = 3; k < lines.size(); ++k)
      CHECK(lines[k].substr(lines[k].find(',')) == lines[2].substr(lines[2].find(',')));
  }

  SUBCASE("|01> becomes entangled within the first samples") {
    const std::string out = scratch("product.csv").string();
    REQUIRE(run_cli("evolve --config " + data("product.json") + " --out " + out).code == 0);
    const auto lines = lines_of(out);
    CHECK(columns(lines[2])[4] == 0.0);
    CHECK(columns(lines[3])[4] > 0.0);
  }

  SUBCASE("integration failure exits 2") {
    const std::string cfg = write_scratch("coarse.json", R"({
      "bath": {"lambda": [1, 1, 1], "B": [0, 0, 0.5]},
      "initial": {"product": {"phi": [1, 0], "psi": [1, 0]}},
      "integrator": {"t_end": 10, "dt": 1}})");
    const Run r = run_cli("evolve --config " + cfg + " --out " + scratch("coarse.csv").string());
    CHECK(r.code == 2);
    CHECK(r.out.find("dt") != std::string::npos);
  }

  SUBCASE("invalid config exits 1 and names the field") {
    const std::string cfg = write_scratch("bad.json", R"({
      "bath": {"lambda": [1, 1, 1], "B": [0, 0, 0.5]},
      "initial": {"werner_eq27": {"s": 2}}})");
    const Run r = run_cli("steady --config " + cfg);
    CHECK(r.code == 1);
    CHECK(r.out.find("werner_eq27") != std::string::npos);
    CHECK(run_cli("steady --config /nonexistent.json").code == 1);
    CHECK(run_cli("frobnicate").code == 1);
  }

  SUBCASE("steady: exit 3 without --numeric-only on a misaligned bath") {
    CHECK(run_cli("steady --config " + data("misaligned.json")).code == 3);
    const Run r = run_cli("steady --config " + data("misaligned.json") + " --numeric-only");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["oracle"]["dimension"].get<int>() == 1);
  }

  SUBCASE("sweep CSV") {
    const std::string out = scratch("sweep.csv").string();
    REQUIRE(run_cli("sweep --config " + data("werner.json") + " --param s --values 0,0.1,0.25 --out " + out).code == 0);
    const auto lines = lines_of(out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == sweep_csv_header());
    CHECK(lines[2].rfind("s,0.1,", 0) == 0);
    CHECK(columns(lines[3].substr(2))[4] == doctest::Approx(0.0769230769230769));
    CHECK(run_cli("sweep --config " + data("werner.json") + " --param tau --values 0,2 --out " + out).code == 1);
    CHECK(run_cli("sweep --config " + data("werner.json") + " --param s --values 0,x --out " + out).code == 1);
  }

  SUBCASE("check honours TOOL_SEED and is reproducible") {
    const Run a = run_cli("check", "TOOL_SEED=99");
    const Run b = run_cli("check", "TOOL_SEED=99");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("all 18 suites passed") != std::string::npos);
  }
}
