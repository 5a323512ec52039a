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


#include <benchmark/benchmark.h>

#include <vector>

#include "cdlab/cd_engine.h"
#include "cdlab/quadratic_model.h"
#include "cdlab/rate_predictors.h"
#include "cdlab/rpcd_recurrence.h"
#include "cdlab/seeded_rng.h"

namespace cdlab {
namespace {

RunOptions FixedEpochs(int epochs) {
  RunOptions o;
  o.max_epochs = epochs;
  o.tol = 0.0;
  o.seed = 1;
  return o;
}

void BM_InvariantEpochs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QuadraticModel model = PermInvariantQuadratic(n, 0.1);
  SeededRng rng(1);
  const Vector x0 = rng.NormalVector(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Run(model, OrderingPolicy::RandomPermutation(), x0, FixedEpochs(10)));
  }
  state.SetItemsProcessed(state.iterations() * 10 * n);
}
BENCHMARK(BM_InvariantEpochs)->Arg(100)->Arg(1000);

void BM_DenseEpochs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QuadraticModel model = BuildLogUniformSpectrum(n, 1e4, 3);
  SeededRng rng(1);
  const Vector x0 = rng.NormalVector(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Run(model, OrderingPolicy::Cyclic(), x0, FixedEpochs(10)));
  }
  state.SetItemsProcessed(state.iterations() * 10 * n);
}
BENCHMARK(BM_DenseEpochs)->Arg(100)->Arg(400);

void BM_SpectralRadiusOfC(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix c = ClosedFormEpochMatrix(n, 0.5).values;
  for (auto _ : state) benchmark::DoNotOptimize(SpectralRadius(c));
}
BENCHMARK(BM_SpectralRadiusOfC)->Arg(50)->Arg(100)->Arg(200);

void BM_RecurrenceCoefficients(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(RecurrenceCoefficients(n, 0.3));
}
BENCHMARK(BM_RecurrenceCoefficients)->Arg(100)->Arg(1000);

void BM_BruteForceAbar(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(BruteForceAbar(4, 0.5, t));
}
BENCHMARK(BM_BruteForceAbar)->Arg(1)->Arg(2)->Arg(3);

}  // namespace
}  // namespace cdlab

BENCHMARK_MAIN();
