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


#include "cdlab/experiments.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cdlab/rate_predictors.h"
#include "cdlab/rpcd_recurrence.h"
#include "cdlab/seeded_rng.h"

namespace cdlab {
namespace {

using nlohmann::json;

double At(const Table& t, std::size_t row, const std::string& column) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (t.columns[c] != column) continue;
    const Cell& cell = t.rows[row][c];
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
    return std::get<double>(cell);
  }
  throw std::out_of_range("no column " + column);
}

ExperimentConfig SmallConfig() {
  ExperimentConfig c;
  c.n = 30;
  c.deltas = {0.5, 0.2};
  c.replicates = 3;
  c.threads = 2;
  return c;
}

TEST(ConfigTest, Validation) {
  ExperimentConfig c;
  EXPECT_NO_THROW(ValidateConfig(c));
  c.replicates = 0;
  EXPECT_THROW(ValidateConfig(c), std::invalid_argument);
  c = ExperimentConfig{};
  c.tol = 0.0;
  EXPECT_THROW(ValidateConfig(c), std::invalid_argument);
  c = ExperimentConfig{};
  c.deltas = {2.0};
  EXPECT_THROW(ValidateConfig(c), std::invalid_argument);
}

TEST(SeedTest, StreamsAreDistinct) {
  EXPECT_NE(X0Seed(1, 0), X0Seed(1, 1));
  EXPECT_NE(OrderingSeed(1, OrderingPolicy::Kind::kRandomPermutation, 0),
            OrderingSeed(1, OrderingPolicy::Kind::kRandomWithReplacement, 0));
  EXPECT_NE(X0Seed(1, 0), OrderingSeed(1, OrderingPolicy::Kind::kCyclic, 0));
}

TEST(Table1Test, PredictedColumns) {
  ExperimentConfig c;
  c.deltas = {0.33, 0.20};
  c.replicates = 2;
  const auto rows = RunTable1(c);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(rows[0].rho_C_sq, 0.9971, 5e-5);
  EXPECT_NEAR(rows[0].rho_M, 0.4994, 5e-5);
  EXPECT_NEAR(rows[0].rho_rcd_pred, 0.6081, 5e-5);
  EXPECT_NEAR(rows[1].rho_M, 0.6635, 5e-5);
  for (const auto& r : rows) EXPECT_EQ(r.flag, "");
}

TEST(Table1Test, PredictedColumnsIndependentOfSeedAndReplicates) {
  ExperimentConfig a = SmallConfig();
  ExperimentConfig b = SmallConfig();
  b.seed = 987;
  b.replicates = 5;
  const auto ra = RunTable1(a);
  const auto rb = RunTable1(b);
  for (std::size_t k = 0; k < ra.size(); ++k) {
    EXPECT_EQ(ra[k].rho_C_sq, rb[k].rho_C_sq);
    EXPECT_EQ(ra[k].rho_M, rb[k].rho_M);
    EXPECT_EQ(ra[k].rho_rcd_pred, rb[k].rho_rcd_pred);
  }
}

TEST(Table1Test, DeterministicAcrossThreadCounts) {
  ExperimentConfig a = SmallConfig();
  ExperimentConfig b = SmallConfig();
  a.threads = 1;
  b.threads = 4;
  EXPECT_EQ(Render(Table1ToTable(RunTable1(a)), a, "table1"),
            Render(Table1ToTable(RunTable1(b)), b, "table1"));
}

TEST(Table1Test, ShortRunIsFlagged) {
  ExperimentConfig c = SmallConfig();
  c.deltas = {0.8};
  c.tol = 1e-2;
  const auto rows = RunTable1(c);
  EXPECT_NE(rows[0].flag.find("short-window"), std::string::npos);
}

TEST(Table1Test, RoundTripsThroughParsers) {
  ExperimentConfig c = SmallConfig();
  const Table t = Table1ToTable(RunTable1(c));
  EXPECT_EQ(ParseCsv(Render(t, c, "table1")), t);
  c.format = Format::kJson;
  const std::string text = Render(t, c, "table1");
  EXPECT_EQ(ParseJsonTable(text), t);
  EXPECT_EQ(json::parse(text).at("config").at("command"), "table1");
}

TEST(FigureExpectedTest, ClosedFormCurveIsRecomputed) {
  ExperimentConfig c;
  const Table t = FigureExpected(c);
  const RecurrenceMatrix m = RecurrenceCoefficients(100, 0.05);
  ASSERT_GT(t.rows.size(), 20u);
  for (std::size_t l = 0; l < t.rows.size(); ++l) {
    const RecurrencePair p = Evolve(m, 0.05, static_cast<int>(l));
    EXPECT_EQ(At(t, l, "f_expected"), 0.5 * 100 * (p.eta + p.nu));
  }
}

TEST(FigureExpectedTest, RealizedAndExpectedShareSlope) {
  ExperimentConfig c;
  const Table t = FigureExpected(c);
  const std::size_t last = t.rows.size() - 1;
  const double realized = std::pow(At(t, last, "f_realized") / At(t, last - 10, "f_realized"), 0.1);
  const double expected = std::pow(At(t, last, "f_expected") / At(t, last - 10, "f_expected"), 0.1);
  EXPECT_NEAR(realized, expected, 0.02);
}

TEST(FigureLogUniformTest, StartsAtOneAndDecays) {
  ExperimentConfig c;
  c.n = 30;
  c.epochs_budget = 40;
  c.rpcd_sequences = 3;
  const Table t = FigureLogUniform(c);
  ASSERT_EQ(t.rows.size(), 41u);
  EXPECT_NEAR(At(t, 0, "ccd"), 1.0, 1e-12);
  EXPECT_NEAR(At(t, 0, "rpcd_mean"), 1.0, 1e-12);
  EXPECT_LT(At(t, 40, "ccd"), At(t, 1, "ccd"));
  EXPECT_LE(At(t, 40, "rpcd_min"), At(t, 40, "rpcd_mean"));
  EXPECT_LE(At(t, 40, "rpcd_mean"), At(t, 40, "rpcd_max"));
}

TEST(FigureDifferentNTest, SmallBudgetShape) {
  ExperimentConfig c;
  c.epochs_budget = 50;
  c.replicates = 2;
  const DifferentNResult r = FigureDifferentN(c);
  EXPECT_EQ(r.rates.rows.size(), 12u);  // 3 variants x 4 sizes
  EXPECT_FALSE(r.traces.rows.empty());
}

TEST(PredictTest, Values) {
  const json a = json::parse(PredictReport(100, 0.8));
  EXPECT_NEAR(a.at("rho_M").get<double>(), 0.1162, 5e-5);
  EXPECT_EQ(a.at("config").at("n"), 100);
  const json b = json::parse(PredictReport(100, 1.0));
  EXPECT_EQ(b.at("rho_M").get<double>(), 0.0);
  EXPECT_EQ(b.at("rho_C_sq").get<double>(), 0.0);
  const json c = json::parse(PredictReport(100, 0.05));
  EXPECT_NEAR(c.at("sd_rate").get<double>(), 1.0 - 0.05 / 95.05, 1e-15);
  for (const char* key : {"rpcd_asymptotic_rate", "ccd_upper", "ccd_lower", "rcd_q_epoch",
                          "rcd_r_epoch", "sun_ye", "coefficients"}) {
    EXPECT_TRUE(c.contains(key)) << key;
  }
}

TEST(SolveTest, ZeroStartGivesSingleRow) {
  ExperimentConfig c;
  c.zero_x0 = true;
  const Table t = SolveTrajectory(c, 0.05, OrderingPolicy::Kind::kCyclic);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(At(t, 0, "f"), 0.0);
}

// Averaged over starting points the first RPCD epoch shrinks f by about
// 2 delta. A single run is compared with its conditional expectation given x0.
TEST(SolveTest, RpcdFirstEpochDrop) {
  const int n = 100;
  const double d = 0.05;
  double sum_f0 = 0.0, sum_f1 = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ExperimentConfig c;
    c.seed = seed;
    c.max_epochs = 1;
    const Table t = SolveTrajectory(c, d, OrderingPolicy::Kind::kRandomPermutation);
    sum_f0 += At(t, 0, "f");
    sum_f1 += At(t, 1, "f");
  }
  const double mean_drop = sum_f1 / sum_f0;
  EXPECT_GE(mean_drop, d);
  EXPECT_LE(mean_drop, 4.0 * d);

  ExperimentConfig c;
  const Table t = SolveTrajectory(c, d, OrderingPolicy::Kind::kRandomPermutation);
  EXPECT_LE(At(t, t.rows.size() - 1, "f"), 1e-8);
  // Same x0 as the run: replicate 0 of cell 0.
  SeededRng rng(X0Seed(DeriveSeed(c.seed, 0), 0));
  const Vector x0 = rng.NormalVector(n);
  ASSERT_DOUBLE_EQ(Objective(PermInvariantQuadratic(n, d), x0), At(t, 0, "f"));
  const double conditional = ConditionalExpectedObjective(n, d, 1, x0) / At(t, 0, "f");
  EXPECT_GE(At(t, 1, "f_over_f0"), 0.5 * conditional);
  EXPECT_LE(At(t, 1, "f_over_f0"), 2.0 * conditional);
}

// CCD spends a long transient decaying faster than rho(C)^2, so the epoch count
// is bounded by the rate-based prediction from f0 and matches the prediction
// made once the dominant mode has taken over.
TEST(SolveTest, CcdEpochCountMatchesRate) {
  ExperimentConfig c;
  const Table t = SolveTrajectory(c, 0.05, OrderingPolicy::Kind::kCyclic);
  const double rate = RhoCSquared(100, 0.05);
  const double epochs = static_cast<double>(t.rows.size() - 1);
  const double f0 = At(t, 0, "f");
  EXPECT_LE(epochs, std::log(1e-8 / f0) / std::log(rate));

  std::size_t start = 0;
  while (At(t, start, "f") > 1e-3 * f0) ++start;
  const double remaining = epochs - static_cast<double>(start);
  const double predicted = std::log(1e-8 / At(t, start, "f")) / std::log(rate);
  EXPECT_NEAR(remaining, predicted, 0.2 * predicted);
}

}  // namespace
}  // namespace cdlab
