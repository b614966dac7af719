#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "nlohmann/json.hpp"
#include "perp/experiment.hpp"
#include "perp/verify.hpp"

using nlohmann::json;
using perp::config_from_json;
using perp::ExperimentConfig;
using perp::law_from_json;
using perp::MixingLaw;

static const char* kHeader =
    "x,ln_predicted,ln_bracket_lo,ln_bracket_hi,ln_path_cert,ln_sandwich_lo,"
    "ln_sandwich_hi,ln_atom_lower,p_hat,ci99_lo,ci99_hi,ln_p_hat,"
    "ratio_to_normalizer";

static std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

TEST_CASE("law round-trip through json") {
  json j = {{"family", "weibull_at_one"}, {"c", 1.0}, {"alpha", 2.0}};
  MixingLaw w = law_from_json(j);
  CHECK(w.family() == MixingLaw::Family::WeibullAtOne);
  CHECK(perp::law_to_json(w) == j);

  json nested = {{"family", "atom_at_one"},
                 {"p", 0.7},
                 {"base", {{"family", "power_uniform"}, {"alpha", 1.0}}}};
  MixingLaw a = law_from_json(nested);
  CHECK(a.family() == MixingLaw::Family::AtomAtOne);
  CHECK(a.param_a() == 0.7);
  CHECK(perp::law_to_json(a) == nested);

  CHECK_THROWS_AS(law_from_json(json{{"family", "nope"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(law_from_json(json{{"family", "power_uniform"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      law_from_json(json{{"family", "power_uniform"}, {"alpha", -1.0}}),
      std::invalid_argument);
}

TEST_CASE("config parsing, explicit xs and grid expansion") {
  json j = {{"family", "power_uniform"},
            {"alpha", 1.0},
            {"q", 2.0},
            {"xs", {4.0, 8.0, 16.0}},
            {"n_samples", 5000},
            {"seed", 99},
            {"workers", 2}};
  ExperimentConfig cfg = config_from_json(j);
  CHECK(cfg.q == 2.0);
  CHECK(cfg.xs == std::vector<double>{4.0, 8.0, 16.0});
  CHECK(cfg.n_samples == 5000);
  CHECK(cfg.seed == 99);
  CHECK(cfg.workers == 2);

  json g = {{"law", {{"family", "gamma_exp"}}},
            {"grid", {{"x_min", 2.0}, {"x_max", 8.0}, {"points", 3}}}};
  ExperimentConfig cg = config_from_json(g);
  REQUIRE(cg.xs.size() == 3);
  CHECK(cg.xs[0] == doctest::Approx(2.0));
  CHECK(cg.xs[1] == doctest::Approx(4.0));
  CHECK(cg.xs[2] == doctest::Approx(8.0));

  // defaults: geometric grid on [2q, 50q], 12 points
  ExperimentConfig cd = config_from_json(json{{"family", "gamma_exp"}});
  REQUIRE(cd.xs.size() == 12);
  CHECK(cd.xs.front() == doctest::Approx(2.0));
  CHECK(cd.xs.back() == doctest::Approx(50.0));

  CHECK_THROWS_AS(
      config_from_json(json{{"family", "gamma_exp"}, {"xs", {3.0, 2.0}}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      config_from_json(json{{"family", "gamma_exp"}, {"n_samples", 0}}),
      std::invalid_argument);
}

TEST_CASE("csv schema and formatting") {
  ExperimentConfig cfg = config_from_json(
      json{{"family", "weibull_at_one"}, {"c", 1.0}, {"alpha", 2.0},
           {"xs", {10.0, 20.0}}});
  perp::TailReport rep = perp::cmd_predict(cfg);
  std::string csv = perp::report_to_csv(rep);
  auto lines = split_lines(csv);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == kHeader);
  // every data row has 13 cells
  for (std::size_t r = 1; r < lines.size(); ++r) {
    int commas = 0;
    for (char ch : lines[r])
      if (ch == ',') ++commas;
    CHECK(commas == 12);
  }
  // predict populates the model columns, leaves MC columns empty
  CHECK(lines[1].substr(0, 3) == "10,");
  CHECK(lines[1].find("-200") != std::string::npos);
  CHECK(lines[1].rfind(",,,,,") != std::string::npos);
}

TEST_CASE("cmd_predict is pure and byte-stable") {
  ExperimentConfig cfg =
      config_from_json(json{{"family", "gamma_exp"}, {"xs", {3.0, 6.0}}});
  std::string a = perp::report_to_csv(perp::cmd_predict(cfg));
  std::string b = perp::report_to_csv(perp::cmd_predict(cfg));
  CHECK(a == b);
}

TEST_CASE("cmd_simulate zero hits leaves ln_p_hat empty, keeps ci99_hi") {
  ExperimentConfig cfg = config_from_json(
      json{{"family", "power_uniform"}, {"alpha", 1.0}, {"xs", {100.0}},
           {"n_samples", 500}, {"seed", 4}});
  perp::TailReport rep = perp::cmd_simulate(cfg);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].p_hat.has_value());
  CHECK(*rep.rows[0].p_hat == 0.0);
  CHECK_FALSE(rep.rows[0].ln_p_hat.has_value());
  REQUIRE(rep.rows[0].ci99_hi.has_value());
  CHECK(*rep.rows[0].ci99_hi > 0.0);
}

TEST_CASE("merge_csv joins on x, preferring non-empty cells") {
  ExperimentConfig cfg = config_from_json(
      json{{"family", "power_uniform"}, {"alpha", 1.0}, {"xs", {3.0, 5.0}},
           {"n_samples", 20000}, {"seed", 11}});
  std::string pred = perp::report_to_csv(perp::cmd_predict(cfg));
  std::string sim = perp::report_to_csv(perp::cmd_simulate(cfg));
  std::string merged = perp::merge_csv({pred, sim});
  auto lines = split_lines(merged);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == kHeader);
  // merged rows should carry both a prediction and a p_hat
  auto plines = split_lines(pred);
  auto slines = split_lines(sim);
  for (int r = 1; r <= 2; ++r) {
    CHECK(lines[r].size() >= plines[r].size());
    CHECK(lines[r].size() >= slines[r].size());
  }
}

TEST_CASE("verification suites pass, and the broken-constant hook fails") {
  perp::VerifyOptions quick;
  quick.sampler_draws = 20000;
  auto suites = perp::run_verification(quick);
  CHECK(perp::all_passed(suites));

  perp::VerifyOptions broken = quick;
  broken.broken_regvar_constant = 3.0;
  auto bad = perp::run_verification(broken);
  CHECK_FALSE(perp::all_passed(bad));
  bool constant_suite_failed = false;
  for (const auto& s : bad)
    if (s.name == "asymptotics/constant" && s.failed > 0)
      constant_suite_failed = true;
  CHECK(constant_suite_failed);
}
