// Copyright 2026 The FROT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "frot/emd.hpp"
#include "frot/frot.hpp"
#include "frot/rng.hpp"
#include "frot/sinkhorn.hpp"
#include "frot/synth.hpp"

namespace {

struct Instance {
  frot::SynthData data;
  frot::GroupedCost costs;
};

Instance make_instance(std::size_t n) {
  frot::SynthOptions o;
  o.n = n;
  o.m = n;
  auto data = frot::synth_generate(o);
  auto costs = frot::build_grouped_cost(data.src, data.dst,
                                        frot::CostKind::squared_euclidean);
  return {std::move(data), std::move(costs)};
}

void BM_Sinkhorn(benchmark::State& state) {
  const auto inst = make_instance(static_cast<std::size_t>(state.range(0)));
  const frot::Matrix c = inst.costs.total() / inst.costs.total().maxCoeff();
  frot::SinkhornConfig cfg;
  cfg.epsilon = 0.05;
  for (auto _ : state)
    benchmark::DoNotOptimize(frot::sinkhorn_solve(inst.data.src.weights(),
                                                  inst.data.dst.weights(), c, cfg));
}
BENCHMARK(BM_Sinkhorn)->Arg(20)->Arg(50)->Arg(100);

void BM_SinkhornLogDomain(benchmark::State& state) {
  const auto inst = make_instance(static_cast<std::size_t>(state.range(0)));
  frot::SinkhornConfig cfg;
  cfg.epsilon = 0.02;
  for (auto _ : state)
    benchmark::DoNotOptimize(frot::sinkhorn_solve(inst.data.src.weights(),
                                                  inst.data.dst.weights(),
                                                  inst.costs.total(), cfg));
}
BENCHMARK(BM_SinkhornLogDomain)->Arg(20)->Arg(50);

void BM_Emd(benchmark::State& state) {
  const auto inst = make_instance(static_cast<std::size_t>(state.range(0)));
  const frot::Matrix c = inst.costs.total();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        frot::emd_exact_solve(inst.data.src.weights(), inst.data.dst.weights(), c));
}
BENCHMARK(BM_Emd)->Arg(20)->Arg(50)->Arg(100)->Arg(200);

void BM_FrotFrankWolfe(benchmark::State& state) {
  const auto inst = make_instance(50);
  frot::FrotConfig cfg;
  cfg.subsolver = state.range(0) ? frot::Subsolver::entropic(0.02)
                                 : frot::Subsolver::exact();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        frot::frot_fw_solve(inst.data.src, inst.data.dst, inst.costs, cfg));
}
BENCHMARK(BM_FrotFrankWolfe)->Arg(0)->Arg(1);

void BM_FrotLp(benchmark::State& state) {
  const auto inst = make_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(frot::frot_lp_solve(
        inst.costs, inst.data.src.weights(), inst.data.dst.weights()));
}
BENCHMARK(BM_FrotLp)->Arg(10)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
