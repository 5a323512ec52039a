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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "cdlab/quadratic_model.h"
#include "cdlab/rate_predictors.h"
#include "cdlab/rpcd_recurrence.h"
#include "cdlab/seeded_rng.h"
#include "json.hpp"

namespace cdlab {
namespace {

using nlohmann::json;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kX0Stream = 100;

// Runs body(0..count-1) on up to `threads` workers. Results must be written to
// per-index slots; the first exception is rethrown after all workers join.
void ParallelFor(int count, int threads, const std::function<void(int)>& body) {
  int workers = threads > 0 ? threads
                            : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max(count, 1));
  if (workers == 1) {
    for (int k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int k = next++; k < count; k = next++) {
        try {
          body(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct Stats {
  double mean = kNaN;
  double std = kNaN;
  int count = 0;
};

Stats Summarize(const std::vector<double>& values) {
  Stats s;
  double sum = 0.0;
  for (double v : values) {
    if (std::isfinite(v)) {
      sum += v;
      ++s.count;
    }
  }
  if (s.count == 0) return s;
  s.mean = sum / s.count;
  double ss = 0.0;
  for (double v : values) {
    if (std::isfinite(v)) ss += (v - s.mean) * (v - s.mean);
  }
  s.std = s.count > 1 ? std::sqrt(ss / (s.count - 1)) : 0.0;
  return s;
}

bool Wants(const ExperimentConfig& config, OrderingPolicy::Kind kind) {
  return std::find(config.variants.begin(), config.variants.end(), kind) !=
         config.variants.end();
}

OrderingPolicy PolicyFor(OrderingPolicy::Kind kind) {
  switch (kind) {
    case OrderingPolicy::Kind::kRandomWithReplacement:
      return OrderingPolicy::RandomWithReplacement();
    case OrderingPolicy::Kind::kRandomPermutation:
      return OrderingPolicy::RandomPermutation();
    default:
      return OrderingPolicy::Cyclic();
  }
}

struct RateOutcome {
  double rate = kNaN;
  int epochs = 0;
  std::string note;
};

// Rate over the last `window` epochs, shrinking the window when the run
// stopped earlier.
RateOutcome MeasureRate(const QuadraticModel& model, OrderingPolicy::Kind kind,
                        const Vector& x0, const RunOptions& options, int window) {
  RateOutcome out;
  try {
    const Trajectory traj = Run(model, PolicyFor(kind), x0, options);
    out.epochs = traj.epochs();
    const int usable = std::min(window, traj.epochs());
    if (usable < window) out.note = "short-window";
    out.rate = EmpiricalRate(traj, usable);
  } catch (const NumericalError& e) {
    out.note = "diverged";
  } catch (const EstimationError& e) {
    out.note = "no-rate";
  }
  return out;
}

void AddNote(std::string& flag, const std::string& where, const std::string& note) {
  if (note.empty()) return;
  const std::string item = where + ":" + note;
  if (flag.find(item) != std::string::npos) return;
  if (!flag.empty()) flag += ';';
  flag += item;
}

double SingleDeltaOr(const ExperimentConfig& config, double fallback) {
  return config.deltas.size() == 1 ? config.deltas.front() : fallback;
}

}  // namespace

void ValidateConfig(const ExperimentConfig& config) {
  if (config.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  if (!(config.tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (config.window < 1) throw std::invalid_argument("window must be >= 1");
  if (config.max_epochs < 1) throw std::invalid_argument("max_epochs must be >= 1");
  if (config.epochs_budget && *config.epochs_budget < 1) {
    throw std::invalid_argument("epochs budget must be >= 1");
  }
  for (double d : config.deltas) PermInvariantQuadratic check(config.n, d);
}

std::uint64_t X0Seed(std::uint64_t cell_seed, int replicate) {
  return DeriveSeed(DeriveSeed(cell_seed, kX0Stream),
                    static_cast<std::uint64_t>(replicate));
}

std::uint64_t OrderingSeed(std::uint64_t cell_seed, OrderingPolicy::Kind kind,
                           int replicate) {
  return DeriveSeed(DeriveSeed(cell_seed, static_cast<std::uint64_t>(kind)),
                    static_cast<std::uint64_t>(replicate));
}

std::vector<Table1Row> RunTable1(const ExperimentConfig& config) {
  ValidateConfig(config);
  const int n = config.n;
  const int cells = static_cast<int>(config.deltas.size());
  const int reps = config.replicates;

  // Job layout per delta: [ccd, rcd x reps, rpcd x reps].
  const int per_cell = 1 + 2 * reps;
  std::vector<RateOutcome> outcomes(static_cast<std::size_t>(cells * per_cell));

  ParallelFor(cells * per_cell, config.threads, [&](int job) {
    const int cell = job / per_cell;
    const int slot = job % per_cell;
    OrderingPolicy::Kind kind;
    int replicate;
    if (slot == 0) {
      kind = OrderingPolicy::Kind::kCyclic;
      replicate = 0;
    } else if (slot <= reps) {
      kind = OrderingPolicy::Kind::kRandomWithReplacement;
      replicate = slot - 1;
    } else {
      kind = OrderingPolicy::Kind::kRandomPermutation;
      replicate = slot - 1 - reps;
    }
    if (!Wants(config, kind)) return;
    const double delta = config.deltas[static_cast<std::size_t>(cell)];
    const QuadraticModel model = PermInvariantQuadratic(n, delta);
    const std::uint64_t cell_seed =
        DeriveSeed(config.seed, static_cast<std::uint64_t>(cell));
    SeededRng x0_rng(X0Seed(cell_seed, replicate));
    const Vector x0 = x0_rng.NormalVector(n);
    RunOptions options;
    options.max_epochs = config.max_epochs;
    options.tol = config.tol;
    options.seed = OrderingSeed(cell_seed, kind, replicate);
    outcomes[static_cast<std::size_t>(job)] =
        MeasureRate(model, kind, x0, options, config.window);
  });

  std::vector<Table1Row> rows;
  for (int cell = 0; cell < cells; ++cell) {
    const double delta = config.deltas[static_cast<std::size_t>(cell)];
    Table1Row row;
    row.delta = delta;
    row.replicates = reps;
    const auto base = static_cast<std::size_t>(cell * per_cell);

    const RateOutcome& ccd = outcomes[base];
    row.rho_ccd_emp = ccd.rate;
    row.ccd_epochs = ccd.epochs;
    AddNote(row.flag, "ccd", ccd.note);

    std::vector<double> rcd, rpcd;
    for (int r = 0; r < reps; ++r) {
      const RateOutcome& a = outcomes[base + 1 + static_cast<std::size_t>(r)];
      const RateOutcome& b =
          outcomes[base + 1 + static_cast<std::size_t>(reps + r)];
      rcd.push_back(a.rate);
      rpcd.push_back(b.rate);
      AddNote(row.flag, "rcd", a.note);
      AddNote(row.flag, "rpcd", b.note);
    }
    const Stats rcd_stats = Summarize(rcd);
    const Stats rpcd_stats = Summarize(rpcd);
    row.rho_rcd_emp = rcd_stats.mean;
    row.rho_rcd_emp_std = rcd_stats.std;
    row.rho_rpcd_emp = rpcd_stats.mean;
    row.rho_rpcd_emp_std = rpcd_stats.std;

    row.rho_C_sq = RhoCSquared(n, delta);
    row.rho_rcd_pred = ComputeRcdRates(n, delta).r_epoch;
    row.rho_M = RhoM(n, delta);
    rows.push_back(std::move(row));
  }
  return rows;
}

Table Table1ToTable(const std::vector<Table1Row>& rows) {
  Table t;
  t.columns = {"delta",       "rho_ccd_emp",  "rho_C_sq",     "rho_rcd_emp",
               "rho_rcd_emp_std", "rho_rcd_pred", "rho_rpcd_emp",
               "rho_rpcd_emp_std", "rho_M", "replicates", "ccd_epochs", "flag"};
  for (const auto& r : rows) {
    t.rows.push_back({r.delta, r.rho_ccd_emp, r.rho_C_sq, r.rho_rcd_emp,
                      r.rho_rcd_emp_std, r.rho_rcd_pred, r.rho_rpcd_emp,
                      r.rho_rpcd_emp_std, r.rho_M,
                      static_cast<std::int64_t>(r.replicates),
                      static_cast<std::int64_t>(r.ccd_epochs), r.flag});
  }
  return t;
}

Table FigureLogUniform(const ExperimentConfig& config) {
  if (config.rpcd_sequences < 1) throw std::invalid_argument("rpcd_sequences must be >= 1");
  const int n = config.n;
  const int epochs = config.epochs_budget.value_or(200);
  const DenseQuadratic model =
      BuildLogUniformSpectrum(n, config.condition, DeriveSeed(config.seed, 0));
  const Matrix& a = model.matrix();
  const double initial = 0.5 * a.trace();

  std::vector<double> ccd(static_cast<std::size_t>(epochs) + 1);
  {
    const Matrix c = ComputeEpochMatrix(model).values;
    Matrix g = Matrix::Identity(n, n);
    ccd[0] = ExpectedOverX0(a, g) / initial;
    for (int l = 1; l <= epochs; ++l) {
      g = c * g;
      ccd[static_cast<std::size_t>(l)] = ExpectedOverX0(a, g) / initial;
    }
  }

  const int sequences = config.rpcd_sequences;
  std::vector<std::vector<double>> rpcd(static_cast<std::size_t>(sequences));
  ParallelFor(sequences, config.threads, [&](int s) {
    SeededRng rng(DeriveSeed(DeriveSeed(config.seed, 1),
                             static_cast<std::uint64_t>(s)));
    auto& curve = rpcd[static_cast<std::size_t>(s)];
    curve.resize(static_cast<std::size_t>(epochs) + 1);
    Matrix g = Matrix::Identity(n, n);
    curve[0] = ExpectedOverX0(a, g) / initial;
    for (int l = 1; l <= epochs; ++l) {
      g = RpcdEpochMap(a, Permutation(rng.RandomPermutation(n))) * g;
      curve[static_cast<std::size_t>(l)] = ExpectedOverX0(a, g) / initial;
    }
  });

  Table t;
  t.columns = {"epoch", "ccd", "rpcd_mean", "rpcd_min", "rpcd_max"};
  for (int l = 0; l <= epochs; ++l) {
    const auto k = static_cast<std::size_t>(l);
    double sum = 0.0, lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& curve : rpcd) {
      sum += curve[k];
      lo = std::min(lo, curve[k]);
      hi = std::max(hi, curve[k]);
    }
    t.rows.push_back({static_cast<std::int64_t>(l), ccd[k], sum / sequences, lo, hi});
  }
  return t;
}

DifferentNResult FigureDifferentN(const ExperimentConfig& config) {
  const double delta = SingleDeltaOr(config, 0.001);
  const int budget = config.epochs_budget.value_or(5000);
  const std::vector<int> sizes = {10, 20, 40, 80};
  const std::vector<OrderingPolicy::Kind> kinds = {
      OrderingPolicy::Kind::kCyclic, OrderingPolicy::Kind::kRandomPermutation,
      OrderingPolicy::Kind::kRandomWithReplacement};
  const int reps = config.replicates;
  const int cells = static_cast<int>(sizes.size() * kinds.size());

  std::vector<std::vector<double>> rates(static_cast<std::size_t>(cells));
  std::vector<std::vector<double>> traces(static_cast<std::size_t>(cells));
  for (auto& r : rates) r.assign(static_cast<std::size_t>(reps), kNaN);

  ParallelFor(cells * reps, config.threads, [&](int job) {
    const int cell = job / reps;
    const int replicate = job % reps;
    const int size_index = cell / static_cast<int>(kinds.size());
    const OrderingPolicy::Kind kind = kinds[static_cast<std::size_t>(cell) % kinds.size()];
    // CCD is deterministic given x0; one replicate suffices.
    if (kind == OrderingPolicy::Kind::kCyclic && replicate > 0) return;
    const int n = sizes[static_cast<std::size_t>(size_index)];
    const QuadraticModel model = PermInvariantQuadratic(n, delta);
    const std::uint64_t cell_seed =
        DeriveSeed(config.seed, static_cast<std::uint64_t>(size_index));
    SeededRng x0_rng(X0Seed(cell_seed, replicate));
    RunOptions options;
    options.max_epochs = budget;
    options.tol = 0.0;
    options.seed = OrderingSeed(cell_seed, kind, replicate);
    const Trajectory traj = Run(model, PolicyFor(kind), x0_rng.NormalVector(n), options);
    try {
      rates[static_cast<std::size_t>(cell)][static_cast<std::size_t>(replicate)] =
          EmpiricalRate(traj, config.window);
    } catch (const EstimationError&) {
    }
    if (replicate == 0) traces[static_cast<std::size_t>(cell)] = traj.f_per_epoch;
  });

  DifferentNResult out;
  out.traces.columns = {"variant", "n", "epoch", "f"};
  out.rates.columns = {"variant", "n", "delta", "rate", "rate_std", "replicates"};
  for (int cell = 0; cell < cells; ++cell) {
    const auto c = static_cast<std::size_t>(cell);
    const OrderingPolicy::Kind kind = kinds[c % kinds.size()];
    const std::string name(PolicyName(kind));
    const auto n = static_cast<std::int64_t>(sizes[c / kinds.size()]);
    for (std::size_t l = 0; l < traces[c].size(); ++l) {
      out.traces.rows.push_back({name, n, static_cast<std::int64_t>(l), traces[c][l]});
    }
    std::vector<double> used = rates[c];
    if (kind == OrderingPolicy::Kind::kCyclic) used.resize(1);
    const Stats s = Summarize(used);
    out.rates.rows.push_back(
        {name, n, delta, s.mean, s.std, static_cast<std::int64_t>(s.count)});
  }
  return out;
}

Table FigureExpected(const ExperimentConfig& config) {
  const int n = config.n;
  const double delta = SingleDeltaOr(config, 0.05);
  const QuadraticModel model = PermInvariantQuadratic(n, delta);
  const std::uint64_t cell_seed = DeriveSeed(config.seed, 0);
  SeededRng x0_rng(X0Seed(cell_seed, 0));
  RunOptions options;
  options.max_epochs = config.epochs_budget.value_or(config.max_epochs);
  options.tol = config.tol;
  options.seed = OrderingSeed(cell_seed, OrderingPolicy::Kind::kRandomPermutation, 0);
  const Trajectory traj =
      Run(model, OrderingPolicy::RandomPermutation(), x0_rng.NormalVector(n), options);

  const RecurrenceMatrix m = RecurrenceCoefficients(n, delta);
  Table t;
  t.columns = {"epoch", "f_realized", "f_expected"};
  for (std::size_t l = 0; l < traj.f_per_epoch.size(); ++l) {
    const RecurrencePair p = Evolve(m, delta, static_cast<int>(l));
    t.rows.push_back({static_cast<std::int64_t>(l), traj.f_per_epoch[l],
                      0.5 * n * (p.eta + p.nu)});
  }
  return t;
}

std::string PredictReport(int n, double delta) {
  const PermInvariantQuadratic model(n, delta);
  const QuadraticConstants consts = ComputeQuadraticConstants(model);
  const RecurrenceMatrix m = RecurrenceCoefficients(n, delta);
  const CcdBounds ccd = ComputeCcdBounds(n, delta);
  const RcdRates rcd = ComputeRcdRates(n, delta);
  const GenericBounds at_inv_l = ComputeGenericBounds(consts, n, 1.0 / consts.L);
  const GenericBounds at_opt =
      ComputeGenericBounds(consts, n, 1.0 / (std::sqrt(static_cast<double>(n)) * consts.L));

  json doc;
  doc["config"] = {{"command", "predict"}, {"n", n}, {"delta", delta}};
  doc["rho_C_sq"] = RhoCSquared(n, delta);
  doc["rho_M"] = RhoM(m);
  doc["rpcd_asymptotic_rate"] = RpcdAsymptoticRate(n, delta);
  doc["ccd_upper"] = ccd.upper;
  doc["ccd_lower"] = ccd.lower;
  doc["rcd_q_epoch"] = rcd.q_epoch;
  doc["rcd_r_epoch"] = rcd.r_epoch;
  doc["sd_rate"] = SdRate(consts);
  doc["beck_tetruashvili_alpha_inv_L"] = at_inv_l.beck_tetruashvili;
  doc["beck_tetruashvili_alpha_inv_sqrtn_L"] = at_opt.beck_tetruashvili;
  doc["sun_ye"] = at_inv_l.sun_ye;
  doc["coefficients"] = {{"d1", m.d1}, {"d2", m.d2}, {"m1", m.m1}, {"m2", m.m2}};
  doc["constants"] = {{"L", consts.L},       {"Lmax", consts.Lmax},
                      {"Lmin", consts.Lmin}, {"Lavg", consts.Lavg},
                      {"mu", consts.mu}};
  return doc.dump(2) + "\n";
}

Table SolveTrajectory(const ExperimentConfig& config, double delta,
                      OrderingPolicy::Kind kind) {
  const int n = config.n;
  const QuadraticModel model = PermInvariantQuadratic(n, delta);
  const std::uint64_t cell_seed = DeriveSeed(config.seed, 0);
  Vector x0 = Vector::Zero(n);
  if (!config.zero_x0) {
    SeededRng x0_rng(X0Seed(cell_seed, 0));
    x0 = x0_rng.NormalVector(n);
  }
  RunOptions options;
  options.max_epochs = config.max_epochs;
  options.tol = config.tol;
  options.seed = OrderingSeed(cell_seed, kind, 0);
  const Trajectory traj = Run(model, PolicyFor(kind), x0, options);

  Table t;
  t.columns = {"epoch", "f", "f_over_f0"};
  const double f0 = traj.f_per_epoch.front();
  for (std::size_t l = 0; l < traj.f_per_epoch.size(); ++l) {
    const double f = traj.f_per_epoch[l];
    t.rows.push_back({static_cast<std::int64_t>(l), f, f0 > 0.0 ? f / f0 : 0.0});
  }
  return t;
}

std::string ConfigJson(const ExperimentConfig& config, std::string_view command) {
  json variants = json::array();
  for (auto k : config.variants) variants.push_back(std::string(PolicyName(k)));
  json doc = {{"command", std::string(command)},
              {"n", config.n},
              {"deltas", config.deltas},
              {"variants", variants},
              {"seed", config.seed},
              {"replicates", config.replicates},
              {"tol", config.tol},
              {"max_epochs", config.max_epochs},
              {"window", config.window},
              {"rpcd_sequences", config.rpcd_sequences},
              {"condition", config.condition},
              {"zero_x0", config.zero_x0}};
  doc["epochs_budget"] =
      config.epochs_budget ? json(*config.epochs_budget) : json(nullptr);
  return doc.dump();
}

std::string Render(const Table& table, const ExperimentConfig& config,
                   std::string_view command) {
  if (config.format == Format::kJson) return ToJson(table, ConfigJson(config, command));
  return ToCsv(table);
}

}  // namespace cdlab
