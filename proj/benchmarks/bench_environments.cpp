#include <benchmark/benchmark.h>

#include "snnrl/environments.hpp"

using namespace snnrl;

namespace {

void BM_EnvStep(benchmark::State& state, const char* name) {
  auto env = make_environment(name);
  Rng rng(1), actions(2);
  env->reset(rng);
  for (auto _ : state) {
    const auto& r = env->step(static_cast<int>(actions.uniform_index(env->spec().action_count)));
    benchmark::DoNotOptimize(r.reward);
    if (r.terminal || r.truncated) env->reset(rng);
  }
}

void BM_MountainCarStep(benchmark::State& state) { BM_EnvStep(state, "mountain_car"); }
void BM_CartPoleStep(benchmark::State& state) { BM_EnvStep(state, "cartpole"); }
void BM_AcrobotStep(benchmark::State& state) { BM_EnvStep(state, "acrobot"); }

BENCHMARK(BM_MountainCarStep);
BENCHMARK(BM_CartPoleStep);
BENCHMARK(BM_AcrobotStep);

}  // namespace
