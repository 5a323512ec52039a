// Copyright 2026 The cdlab Authors
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

// Command-line harness: table1, figure <lu|different_n|expected>, predict,
// solve.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cdlab/experiments.h"
#include "cdlab/tabular.h"

namespace {

void Emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coordinate-descent rate experiments on convex quadratics"};
  app.require_subcommand(1);

  cdlab::ExperimentConfig config;
  std::vector<double> deltas;
  std::string variant = "rpcd";
  std::string format = "csv";
  int epochs_budget = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--n", config.n, "Dimension")->capture_default_str();
    cmd->add_option("--delta", deltas, "Delta value(s)");
    cmd->add_option("--seed", config.seed, "Base seed")->capture_default_str();
    cmd->add_option("--replicates", config.replicates, "Replicates per stochastic variant")
        ->capture_default_str();
    cmd->add_option("--tol", config.tol, "Stop once f <= tol")->capture_default_str();
    cmd->add_option("--max-epochs", config.max_epochs, "Epoch cap")->capture_default_str();
    cmd->add_option("--epochs-budget", epochs_budget, "Fixed epoch budget for figures");
    cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--output", config.output_path, "Output path (default stdout)");
    cmd->add_option("--threads", config.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
  };

  auto* table1 = app.add_subcommand("table1", "Observed and predicted per-epoch rates");
  add_common(table1);
  std::vector<std::string> variants;
  table1->add_option("--variant", variants, "Variants to run (ccd, rcd, rpcd)");

  auto* figure = app.add_subcommand("figure", "Plot data for the figures");
  add_common(figure);
  std::string figure_name;
  figure->add_option("name", figure_name, "lu, different_n or expected")
      ->required()
      ->check(CLI::IsMember({"lu", "different_n", "expected"}));
  figure->add_option("--sequences", config.rpcd_sequences,
                     "Permutation sequences averaged for lu")
      ->capture_default_str();
  figure->add_option("--condition", config.condition, "Condition number for lu")
      ->capture_default_str();

  auto* predict = app.add_subcommand("predict", "All rate predictors as JSON");
  predict->add_option("--n", config.n, "Dimension")->capture_default_str();
  double predict_delta = 0.5;
  predict->add_option("--delta", predict_delta, "Delta")->capture_default_str();
  predict->add_option("--output", config.output_path, "Output path (default stdout)");

  auto* solve = app.add_subcommand("solve", "One run; per-epoch CSV trajectory");
  add_common(solve);
  solve->add_option("--variant", variant, "ccd, rcd or rpcd")
      ->check(CLI::IsMember({"ccd", "rcd", "rpcd"}))
      ->capture_default_str();
  solve->add_flag("--zero-x0", config.zero_x0, "Start at the minimizer x0 = 0");

  CLI11_PARSE(app, argc, argv);

  try {
    config.format = cdlab::ParseFormat(format);
    if (epochs_budget > 0) config.epochs_budget = epochs_budget;

    if (*predict) {
      Emit(cdlab::PredictReport(config.n, predict_delta), config.output_path);
      return EXIT_SUCCESS;
    }

    if (*table1) {
      if (!deltas.empty()) config.deltas = deltas;
      if (!variants.empty()) {
        config.variants.clear();
        for (const auto& v : variants) {
          config.variants.push_back(cdlab::ParseOrderingPolicy(v).kind);
        }
      }
      const auto rows = cdlab::RunTable1(config);
      Emit(cdlab::Render(cdlab::Table1ToTable(rows), config, "table1"),
           config.output_path);
      return EXIT_SUCCESS;
    }

    if (*figure) {
      config.deltas = deltas;  // empty: per-figure default
      const std::string command = "figure " + figure_name;
      if (figure_name == "lu") {
        Emit(cdlab::Render(cdlab::FigureLogUniform(config), config, command),
             config.output_path);
      } else if (figure_name == "different_n") {
        const auto result = cdlab::FigureDifferentN(config);
        Emit(cdlab::Render(result.traces, config, command), config.output_path);
        std::cerr << cdlab::ToCsv(result.rates);
      } else {
        Emit(cdlab::Render(cdlab::FigureExpected(config), config, command),
             config.output_path);
      }
      return EXIT_SUCCESS;
    }

    if (*solve) {
      const double delta = deltas.empty() ? 0.05 : deltas.front();
      const auto kind = cdlab::ParseOrderingPolicy(variant).kind;
      Emit(cdlab::Render(cdlab::SolveTrajectory(config, delta, kind), config, "solve"),
           config.output_path);
      return EXIT_SUCCESS;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
