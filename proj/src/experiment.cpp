#include "perp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "perp/asymptotics.hpp"
#include "perp/bounds.hpp"
#include "perp/simulate.hpp"

namespace perp {

using nlohmann::json;

MixingLaw law_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family"))
    throw std::invalid_argument("law spec must be an object with a family key");
  std::string fam = j.at("family").get<std::string>();
  auto num = [&](const char* key) {
    if (!j.contains(key))
      throw std::invalid_argument(std::string("family ") + fam +
                                  " requires key " + key);
    return j.at(key).get<double>();
  };
  if (fam == "power_uniform") return MixingLaw::power_uniform(num("alpha"));
  if (fam == "weibull_at_one")
    return MixingLaw::weibull_at_one(num("c"), num("alpha"));
  if (fam == "log_power") return MixingLaw::log_power(num("beta"), num("eta"));
  if (fam == "gamma_exp") return MixingLaw::gamma_exp();
  if (fam == "rapid_non_gamma") return MixingLaw::rapid_non_gamma();
  if (fam == "atom_at_one") {
    if (!j.contains("base"))
      throw std::invalid_argument("atom_at_one requires a base law");
    return MixingLaw::atom_at_one(num("p"), law_from_json(j.at("base")));
  }
  throw std::invalid_argument("unknown family: " + fam);
}

json law_to_json(const MixingLaw& law) {
  json j;
  switch (law.family()) {
    case MixingLaw::Family::PowerUniform:
      j = {{"family", "power_uniform"}, {"alpha", law.param_a()}};
      break;
    case MixingLaw::Family::WeibullAtOne:
      j = {{"family", "weibull_at_one"},
           {"c", law.param_a()},
           {"alpha", law.param_b()}};
      break;
    case MixingLaw::Family::LogPower:
      j = {{"family", "log_power"},
           {"beta", law.param_a()},
           {"eta", law.param_b()}};
      break;
    case MixingLaw::Family::GammaExp:
      j = {{"family", "gamma_exp"}};
      break;
    case MixingLaw::Family::RapidNonGamma:
      j = {{"family", "rapid_non_gamma"}};
      break;
    case MixingLaw::Family::AtomAtOne:
      j = {{"family", "atom_at_one"},
           {"p", law.param_a()},
           {"base", law_to_json(*law.base())}};
      break;
    case MixingLaw::Family::Degenerate:
      j = {{"family", "degenerate"}, {"m", law.param_a()}};
      break;
  }
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  if (j.contains("family")) {
    cfg.law = law_from_json(j);
  } else if (j.contains("law")) {
    cfg.law = law_from_json(j.at("law"));
  } else {
    throw std::invalid_argument("config requires a law (family key)");
  }
  if (j.contains("q")) cfg.q = j.at("q").get<double>();
  if (!(cfg.q > 0.0)) throw std::invalid_argument("q must be positive");

  if (j.contains("xs")) {
    cfg.xs = j.at("xs").get<std::vector<double>>();
  } else if (j.contains("grid")) {
    const json& g = j.at("grid");
    double x_min = g.at("x_min").get<double>();
    double x_max = g.at("x_max").get<double>();
    int points = g.at("points").get<int>();
    if (!(x_min > 0.0 && x_max > x_min && points >= 2))
      throw std::invalid_argument("grid requires 0 < x_min < x_max, points>=2");
    for (int i = 0; i < points; ++i)
      cfg.xs.push_back(x_min * std::pow(x_max / x_min,
                                        static_cast<double>(i) / (points - 1)));
  } else {
    for (int i = 0; i < 12; ++i)
      cfg.xs.push_back(2.0 * cfg.q *
                       std::pow(25.0, static_cast<double>(i) / 11.0));
  }
  if (cfg.xs.empty()) throw std::invalid_argument("xs must be nonempty");
  for (std::size_t i = 0; i + 1 < cfg.xs.size(); ++i)
    if (!(cfg.xs[i] < cfg.xs[i + 1]))
      throw std::invalid_argument("xs must be strictly increasing");

  if (j.contains("n_samples")) cfg.n_samples = j.at("n_samples").get<long long>();
  if (cfg.n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
  if (cfg.workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (j.contains("eps_trunc")) cfg.eps_trunc = j.at("eps_trunc").get<double>();
  if (!(cfg.eps_trunc > 0.0 && cfg.eps_trunc < 1.0))
    throw std::invalid_argument("eps_trunc must lie in (0,1)");
  if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["law"] = law_to_json(cfg.law);
  j["q"] = cfg.q;
  j["xs"] = cfg.xs;
  j["n_samples"] = cfg.n_samples;
  j["seed"] = cfg.seed;
  j["workers"] = cfg.workers;
  j["eps_trunc"] = cfg.eps_trunc;
  j["out"] = cfg.out;
  return j;
}

namespace {

void fill_prediction(const ExperimentConfig& cfg, ReportRow& row) {
  TailPrediction pred = predict_log_tail(cfg.law, cfg.q, row.x);
  if (pred.has_point) row.ln_predicted = pred.ln_predicted;
  if (pred.has_bracket) {
    row.ln_bracket_lo = pred.bracket_lo;
    row.ln_bracket_hi = pred.bracket_hi;
  }
}

double normalizer_at(const ExperimentConfig& cfg, double x) {
  if (cfg.law.tail_class().kind == TailClass::Kind::AtomAtOne) return x;
  return cfg.law.f_value(x / cfg.q);
}

TailReport base_report(const ExperimentConfig& cfg) {
  TailReport report;
  for (double x : cfg.xs) {
    ReportRow row;
    row.x = x;
    fill_prediction(cfg, row);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace

TailReport cmd_predict(const ExperimentConfig& cfg) { return base_report(cfg); }

TailReport cmd_simulate(const ExperimentConfig& cfg) {
  TailReport report = base_report(cfg);
  std::vector<TailEstimate> est =
      estimate_tail(cfg.law, cfg.q, cfg.xs, cfg.n_samples, cfg.seed,
                    cfg.workers, cfg.eps_trunc);
  for (std::size_t i = 0; i < est.size(); ++i) {
    ReportRow& row = report.rows[i];
    row.p_hat = est[i].p_hat;
    row.ci99_lo = est[i].ci99_lo;
    row.ci99_hi = est[i].ci99_hi;
    if (est[i].ln_p_hat_valid) {
      row.ln_p_hat = est[i].ln_p_hat;
      row.ratio_to_normalizer = est[i].ln_p_hat / normalizer_at(cfg, est[i].x);
    }
  }
  return report;
}

TailReport cmd_bounds(const ExperimentConfig& cfg) {
  TailReport report = base_report(cfg);
  bool atom = cfg.law.tail_class().kind == TailClass::Kind::AtomAtOne;
  for (ReportRow& row : report.rows) {
    if (row.x / cfg.q > 1.0) {
      PathCertificate cert = path_certificate(cfg.law, cfg.q, row.x);
      row.ln_path_cert = cert.ln_lower;
    }
    if (row.x > 2.0 * cfg.q) {
      Sandwich s = hitczenko_sandwich(cfg.law, cfg.q, row.x);
      row.ln_sandwich_lo = s.ln_lower;
      row.ln_sandwich_hi = s.ln_upper;
    }
    if (atom)
      row.ln_atom_lower =
          atom_bounds(cfg.law.atom_at_one_mass(), cfg.q, row.x);
  }
  return report;
}

namespace {

const char* kHeader =
    "x,ln_predicted,ln_bracket_lo,ln_bracket_hi,ln_path_cert,ln_sandwich_lo,"
    "ln_sandwich_hi,ln_atom_lower,p_hat,ci99_lo,ci99_hi,ln_p_hat,"
    "ratio_to_normalizer";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt(*v) : std::string();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string report_to_csv(const TailReport& report) {
  std::ostringstream os;
  os << kHeader << "\r\n";
  for (const ReportRow& r : report.rows) {
    os << fmt(r.x) << ',' << fmt_opt(r.ln_predicted) << ','
       << fmt_opt(r.ln_bracket_lo) << ',' << fmt_opt(r.ln_bracket_hi) << ','
       << fmt_opt(r.ln_path_cert) << ',' << fmt_opt(r.ln_sandwich_lo) << ','
       << fmt_opt(r.ln_sandwich_hi) << ',' << fmt_opt(r.ln_atom_lower) << ','
       << fmt_opt(r.p_hat) << ',' << fmt_opt(r.ci99_lo) << ','
       << fmt_opt(r.ci99_hi) << ',' << fmt_opt(r.ln_p_hat) << ','
       << fmt_opt(r.ratio_to_normalizer) << "\r\n";
  }
  return os.str();
}

std::string merge_csv(const std::vector<std::string>& csvs) {
  std::map<double, std::vector<std::string>> rows;
  std::size_t ncols = split_csv_line(kHeader).size();
  for (const std::string& csv : csvs) {
    std::istringstream is(csv);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
      if (line.empty() || line == "\r") continue;
      if (first) {
        first = false;
        if (split_csv_line(line) != split_csv_line(kHeader))
          throw std::invalid_argument("CSV header does not match report schema");
        continue;
      }
      std::vector<std::string> cells = split_csv_line(line);
      cells.resize(ncols);
      double x = std::stod(cells[0]);
      auto& merged = rows[x];
      if (merged.empty()) {
        merged = cells;
      } else {
        for (std::size_t i = 0; i < ncols; ++i)
          if (merged[i].empty() && !cells[i].empty()) merged[i] = cells[i];
      }
    }
  }
  std::ostringstream os;
  os << kHeader << "\r\n";
  for (const auto& [x, cells] : rows) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      os << cells[i] << (i + 1 < cells.size() ? "," : "");
    os << "\r\n";
  }
  return os.str();
}

void write_report(const ExperimentConfig& cfg, const TailReport& report,
                  const std::string& command) {
  if (cfg.out.empty())
    throw std::invalid_argument("config carries no output path");
  std::ofstream csv(cfg.out, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot open output file " + cfg.out);
  csv << report_to_csv(report);

  json sidecar;
  sidecar["version"] = kVersionString;
  sidecar["command"] = command;
  sidecar["config"] = config_to_json(cfg);
  std::ofstream js(cfg.out + ".json", std::ios::binary);
  js << sidecar.dump(2) << '\n';
}

}  // namespace perp
