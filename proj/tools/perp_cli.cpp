// Experiment runner: predict / simulate / bounds / verify / report.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"
#include "perp/experiment.hpp"
#include "perp/verify.hpp"

namespace {

using nlohmann::json;

struct InlineLawFlags {
  std::string family;
  double c = 0.0, alpha = 0.0, beta = 0.0, eta = 0.0, p = 0.0;
  std::string base;  // JSON text for atom_at_one base law
};

void add_common_flags(CLI::App* cmd, std::string& config_path,
                      InlineLawFlags& law, perp::ExperimentConfig& cfg,
                      std::vector<double>& xs) {
  cmd->add_option("--config", config_path, "JSON config file");
  cmd->add_option("--family", law.family,
                  "law family (power_uniform, weibull_at_one, log_power, "
                  "gamma_exp, rapid_non_gamma, atom_at_one)");
  cmd->add_option("--c", law.c, "Weibull-at-one scale c");
  cmd->add_option("--alpha", law.alpha, "power/Weibull exponent alpha");
  cmd->add_option("--beta", law.beta, "log-power scale beta");
  cmd->add_option("--eta", law.eta, "log-power exponent eta");
  cmd->add_option("--p", law.p, "atom-at-one mass p");
  cmd->add_option("--base", law.base, "base law JSON for atom_at_one");
  cmd->add_option("--q", cfg.q, "degenerate payment q");
  cmd->add_option("--xs", xs, "query points (sorted ascending)")
      ->delimiter(',');
  cmd->add_option("--samples", cfg.n_samples, "Monte Carlo sample count");
  cmd->add_option("--seed", cfg.seed, "RNG seed");
  cmd->add_option("--workers", cfg.workers, "worker thread count");
  cmd->add_option("--eps", cfg.eps_trunc, "series truncation threshold");
  cmd->add_option("--out", cfg.out, "output CSV path");
}

json law_flags_to_json(const InlineLawFlags& law) {
  json j;
  j["family"] = law.family;
  if (law.c > 0.0) j["c"] = law.c;
  if (law.alpha > 0.0) j["alpha"] = law.alpha;
  if (law.beta > 0.0) j["beta"] = law.beta;
  if (law.eta > 0.0) j["eta"] = law.eta;
  if (law.p > 0.0) j["p"] = law.p;
  if (!law.base.empty()) j["base"] = json::parse(law.base);
  return j;
}

perp::ExperimentConfig resolve_config(const std::string& config_path,
                                      const InlineLawFlags& law,
                                      const perp::ExperimentConfig& flag_cfg,
                                      const std::vector<double>& xs) {
  json j;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot read config " + config_path);
    in >> j;
  }
  if (!law.family.empty()) {
    json lj = law_flags_to_json(law);
    for (auto& [k, v] : lj.items()) j[k] = v;
  }
  if (!xs.empty()) j["xs"] = xs;
  // inline flags override file values only when set away from defaults
  perp::ExperimentConfig defaults;
  if (flag_cfg.q != defaults.q) j["q"] = flag_cfg.q;
  if (flag_cfg.n_samples != defaults.n_samples)
    j["n_samples"] = flag_cfg.n_samples;
  if (flag_cfg.seed != defaults.seed) j["seed"] = flag_cfg.seed;
  if (flag_cfg.workers != defaults.workers) j["workers"] = flag_cfg.workers;
  if (flag_cfg.eps_trunc != defaults.eps_trunc)
    j["eps_trunc"] = flag_cfg.eps_trunc;
  if (!flag_cfg.out.empty()) j["out"] = flag_cfg.out;
  return perp::config_from_json(j);
}

void emit(const perp::ExperimentConfig& cfg, const perp::TailReport& report,
          const std::string& command) {
  if (cfg.out.empty()) {
    std::cout << perp::report_to_csv(report);
  } else {
    perp::write_report(cfg, report, command);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"perpetuity log-tail toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  InlineLawFlags law;
  perp::ExperimentConfig flag_cfg;
  std::vector<double> xs;

  CLI::App* predict = app.add_subcommand("predict", "analytic tail table");
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo tail table");
  CLI::App* bounds =
      app.add_subcommand("bounds", "certificate and sandwich table");
  for (CLI::App* cmd : {predict, simulate, bounds})
    add_common_flags(cmd, config_path, law, flag_cfg, xs);

  CLI::App* verify = app.add_subcommand("verify", "run invariant suites");
  double break_constant = std::nan("");
  long long verify_draws = 1000000;
  verify->add_option("--break-constant", break_constant,
                     "test hook: override the RegVar(2) constant")
      ->group("");
  verify->add_option("--draws", verify_draws,
                     "sampler-agreement draw count per family");

  CLI::App* report = app.add_subcommand("report", "merge report CSVs");
  std::vector<std::string> merge_inputs;
  std::string merge_out;
  report->add_option("inputs", merge_inputs, "CSV files to merge")->required();
  report->add_option("--out", merge_out, "merged CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      perp::VerifyOptions opt;
      opt.broken_regvar_constant = break_constant;
      opt.sampler_draws = verify_draws;
      auto suites = perp::run_verification(opt);
      for (const auto& s : suites) {
        std::printf("%-32s %s  (%d passed, %d failed)\n", s.name.c_str(),
                    s.failed == 0 ? "PASS" : "FAIL", s.passed, s.failed);
        for (const auto& msg : s.failures)
          std::printf("    %s\n", msg.c_str());
      }
      return perp::all_passed(suites) ? 0 : 1;
    }
    if (report->parsed()) {
      std::vector<std::string> texts;
      for (const auto& path : merge_inputs) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot read " + path);
        std::ostringstream os;
        os << in.rdbuf();
        texts.push_back(os.str());
      }
      std::string merged = perp::merge_csv(texts);
      if (merge_out.empty()) {
        std::cout << merged;
      } else {
        std::ofstream out(merge_out, std::ios::binary);
        out << merged;
      }
      return 0;
    }

    perp::ExperimentConfig cfg = resolve_config(config_path, law, flag_cfg, xs);
    if (predict->parsed()) {
      emit(cfg, perp::cmd_predict(cfg), "predict");
    } else if (simulate->parsed()) {
      emit(cfg, perp::cmd_simulate(cfg), "simulate");
    } else if (bounds->parsed()) {
      emit(cfg, perp::cmd_bounds(cfg), "bounds");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
