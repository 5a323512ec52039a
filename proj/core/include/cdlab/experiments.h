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

#ifndef CDLAB_EXPERIMENTS_H_
#define CDLAB_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdlab/cd_engine.h"
#include "cdlab/tabular.h"

namespace cdlab {

struct ExperimentConfig {
  int n = 100;
  std::vector<double> deltas = {0.80, 0.50, 0.33, 0.20, 0.10, 0.03};
  std::vector<OrderingPolicy::Kind> variants = {
      OrderingPolicy::Kind::kCyclic, OrderingPolicy::Kind::kRandomWithReplacement,
      OrderingPolicy::Kind::kRandomPermutation};
  std::uint64_t seed = 1;
  int replicates = 20;
  double tol = 1e-8;
  int max_epochs = 1000000;
  std::optional<int> epochs_budget;  // figure commands; per-figure default
  int window = 10;
  int threads = 0;  // 0: hardware concurrency
  int rpcd_sequences = 10;
  double condition = 1e4;
  bool zero_x0 = false;
  Format format = Format::kCsv;
  std::string output_path;
};

// Throws std::invalid_argument when replicates < 1, tol <= 0, or a delta is
// outside the model window for n.
void ValidateConfig(const ExperimentConfig& config);

// Seeds used by the harness. Cell c (index into deltas or the n grid) of a
// run with base seed s uses cell = DeriveSeed(s, c); replicate r then draws
// x0 from DeriveSeed(DeriveSeed(cell, kX0Stream), r) and its ordering from
// DeriveSeed(DeriveSeed(cell, variant stream), r).
std::uint64_t X0Seed(std::uint64_t cell_seed, int replicate);
std::uint64_t OrderingSeed(std::uint64_t cell_seed, OrderingPolicy::Kind kind,
                           int replicate);

struct Table1Row {
  double delta = 0.0;
  double rho_ccd_emp = 0.0;
  double rho_C_sq = 0.0;
  double rho_rcd_emp = 0.0;
  double rho_rcd_emp_std = 0.0;
  double rho_rcd_pred = 0.0;
  double rho_rpcd_emp = 0.0;
  double rho_rpcd_emp_std = 0.0;
  double rho_M = 0.0;
  int replicates = 0;
  int ccd_epochs = 0;
  std::string flag;  // empty unless a run failed or was too short
};

// CCD once, RCD and RPCD over `replicates` seeds, all from Gaussian x0 and
// run to f <= tol. Empirical rates use the last `window` epochs (fewer when a
// run terminates sooner; noted in `flag`). Failed runs are flagged and
// reported as NaN.
std::vector<Table1Row> RunTable1(const ExperimentConfig& config);
Table Table1ToTable(const std::vector<Table1Row>& rows);

// Per-epoch E_x0 f / E_x0 f(x0) for CCD and for `rpcd_sequences` sampled
// permutation sequences on a log-uniform spectrum matrix (default 200 epochs).
Table FigureLogUniform(const ExperimentConfig& config);

struct DifferentNResult {
  Table traces;  // variant, n, epoch, f   (replicate 0)
  Table rates;   // variant, n, rate, rate_std, replicates
};

// delta = 0.001 unless config.deltas has a single entry; n in {10,20,40,80};
// fixed epoch budget (default 5000), no tolerance stop.
DifferentNResult FigureDifferentN(const ExperimentConfig& config);

// One RPCD run (n = config.n, delta = 0.05 unless a single delta is given):
// epoch, f_realized, f_expected = n (eta_l + nu_l) / 2.
Table FigureExpected(const ExperimentConfig& config);

// All predictors for (n, delta) as one JSON object with a config echo.
std::string PredictReport(int n, double delta);

// One run: epoch, f, f_over_f0 (0 when f0 = 0).
Table SolveTrajectory(const ExperimentConfig& config, double delta,
                      OrderingPolicy::Kind kind);

// JSON object describing `config` for the echo block.
std::string ConfigJson(const ExperimentConfig& config, std::string_view command);

std::string Render(const Table& table, const ExperimentConfig& config,
                   std::string_view command);

}  // namespace cdlab

#endif  // CDLAB_EXPERIMENTS_H_
