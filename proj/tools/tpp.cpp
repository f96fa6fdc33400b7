// Copyright 2026 The tpp authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command line front end: simulate / loglik / fit / residuals over
// file-based inputs with deterministic seeding and byte-stable output.
// Exit codes: 0 success, 1 usage error, 2 data or format error,
// 3 numerical failure.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tpp/tpp.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

struct SimulateArgs {
  std::string model_path;
  double t_end = 0.0;
  std::uint64_t seed = 0;
  std::string algorithm = "inverse";
  int replicates = 1;
  std::string out_prefix;
};

struct EvalArgs {
  std::string model_path;
  std::string events_path;
  double t_end = 0.0;
  std::string out_path;  // residuals only
};

struct FitArgs {
  std::string family;
  std::string events_path;
  double t_end = 0.0;
  std::string init;
  int max_iter = 2000;
};

std::vector<double> parse_init_list(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view piece(text.data() + pos,
                           (comma == std::string::npos ? text.size() : comma) -
                               pos);
    values.push_back(tpp::parse_double(piece, "--init"));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

int run_simulate(const SimulateArgs& args) {
  tpp::ModelSpec model = tpp::load_model_spec(args.model_path);
  tpp::SimConfig config;
  config.window.t_end = args.t_end;
  config.seed = args.seed;
  config.replicates = args.replicates;
  config.algorithm = args.algorithm == "inverse" ? tpp::Algorithm::inverse
                                                 : tpp::Algorithm::thinning;
  auto patterns = tpp::simulate_batch(model, config);
  for (std::size_t k = 0; k < patterns.size(); ++k) {
    tpp::write_event_file(args.out_prefix + "_" + std::to_string(k) + ".csv",
                          patterns[k]);
  }
  return 0;
}

int run_loglik(const EvalArgs& args) {
  tpp::ModelSpec model = tpp::load_model_spec(args.model_path);
  tpp::PointPattern pattern =
      tpp::read_event_file(args.events_path, {args.t_end});
  double value = tpp::log_likelihood(model, pattern);
  std::cout << tpp::format_double_decimal(value) << "\n";
  return 0;
}

int run_fit(const FitArgs& args) {
  auto family = tpp::family_from_name(args.family);
  if (!family.has_value()) {
    throw tpp::ParseError("unknown family '" + args.family + "'");
  }
  tpp::PointPattern pattern =
      tpp::read_event_file(args.events_path, {args.t_end});
  tpp::FitConfig config;
  config.initial_params = parse_init_list(args.init);
  config.max_iterations = args.max_iter;
  tpp::FitResult result = tpp::fit_mle(*family, pattern, config);

  nlohmann::ordered_json doc;
  doc["family"] = std::string(tpp::family_name(*family));
  nlohmann::ordered_json params;
  for (const auto& [name, value] : tpp::named_params(result.model)) {
    params[name] = value;
  }
  doc["params"] = params;
  doc["log_likelihood"] = result.log_likelihood;
  doc["converged"] = result.converged;
  doc["iterations"] = result.iterations;
  doc["termination_reason"] =
      std::string(tpp::termination_reason_name(result.termination_reason));
  std::cout << doc.dump() << "\n";
  return 0;
}

int run_residuals(const EvalArgs& args) {
  tpp::ModelSpec model = tpp::load_model_spec(args.model_path);
  tpp::PointPattern pattern =
      tpp::read_event_file(args.events_path, {args.t_end});
  tpp::ResidualReport report = tpp::residual_report(model, pattern);
  tpp::write_text_file(args.out_path,
                       tpp::residual_report_to_json(report).dump(2) + "\n");
  std::cout << "n=" << report.n
            << " ks=" << tpp::format_double(report.ks_statistic)
            << " p=" << tpp::format_double(report.ks_p_value) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal point processes: simulate, evaluate, fit, check"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand(
      "simulate", "Draw realizations of a model on [0, T)");
  simulate->add_option("--model", sim.model_path, "Model spec JSON file")
      ->required();
  simulate->add_option("--t-end", sim.t_end, "Window end T")->required();
  simulate->add_option("--seed", sim.seed, "64-bit seed")->required();
  simulate
      ->add_option("--algorithm", sim.algorithm, "inverse or thinning")
      ->check(CLI::IsMember({"inverse", "thinning"}))
      ->required();
  simulate->add_option("--replicates", sim.replicates, "Replicate count")
      ->check(CLI::PositiveNumber)
      ->default_val(1);
  simulate
      ->add_option("--out", sim.out_prefix,
                   "Output path prefix; writes <prefix>_<k>.csv")
      ->required();

  EvalArgs loglik;
  auto* loglik_cmd =
      app.add_subcommand("loglik", "Exact log-likelihood of an event file");
  loglik_cmd->add_option("--model", loglik.model_path, "Model spec JSON file")
      ->required();
  loglik_cmd->add_option("--events", loglik.events_path, "Event CSV file")
      ->required();
  loglik_cmd->add_option("--t-end", loglik.t_end, "Window end T")->required();

  FitArgs fit;
  auto* fit_cmd =
      app.add_subcommand("fit", "Maximum-likelihood fit of a model family");
  fit_cmd->add_option("--family", fit.family, "Model family tag")->required();
  fit_cmd->add_option("--events", fit.events_path, "Event CSV file")
      ->required();
  fit_cmd->add_option("--t-end", fit.t_end, "Window end T")->required();
  fit_cmd->add_option("--init", fit.init, "Comma-separated initial parameters")
      ->required();
  fit_cmd->add_option("--max-iter", fit.max_iter, "Iteration cap")
      ->check(CLI::PositiveNumber);

  EvalArgs resid;
  auto* resid_cmd = app.add_subcommand(
      "residuals", "Time-rescaling residual report for an event file");
  resid_cmd->add_option("--model", resid.model_path, "Model spec JSON file")
      ->required();
  resid_cmd->add_option("--events", resid.events_path, "Event CSV file")
      ->required();
  resid_cmd->add_option("--t-end", resid.t_end, "Window end T")->required();
  resid_cmd->add_option("--out", resid.out_path, "Residual report JSON path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "tpp: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (loglik_cmd->parsed()) return run_loglik(loglik);
    if (fit_cmd->parsed()) return run_fit(fit);
    return run_residuals(resid);
  } catch (const tpp::DataError& e) {
    std::cerr << "tpp: " << e.what() << "\n";
    return kExitData;
  } catch (const tpp::NumericError& e) {
    std::cerr << "tpp: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "tpp: " << e.what() << "\n";
    return kExitNumeric;
  }
}
