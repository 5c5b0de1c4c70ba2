#include <benchmark/benchmark.h>

#include "snnrl/config.hpp"
#include "snnrl/environments.hpp"
#include "snnrl/harness.hpp"

using namespace snnrl;

namespace {

void BM_AgentStep(benchmark::State& state, const char* preset) {
  const auto cfg = preset_config(preset);
  auto env = make_environment(cfg.env);
  Rng init(Rng::derive(0, 1)), env_rng(Rng::derive(0, 2)), agent_rng(Rng::derive(0, 3));
  auto agent = make_agent(cfg, env->spec(), init);
  auto obs = env->reset(env_rng);
  int action = agent->step(obs, 0.0, false, false, agent_rng);
  for (auto _ : state) {
    const auto& r = env->step(action);
    action = agent->step(r.observation, r.reward, r.terminal, r.truncated, agent_rng);
    if (r.terminal || r.truncated) {
      agent->advance_episode();
      auto next = env->reset(env_rng);
      action = agent->step(next, 0.0, false, false, agent_rng);
    }
  }
}

void BM_AgentStepCartpole(benchmark::State& state) { BM_AgentStep(state, "b"); }
void BM_AgentStepAcrobotTwoLayer(benchmark::State& state) { BM_AgentStep(state, "c"); }
void BM_AgentStepTabular(benchmark::State& state) { BM_AgentStep(state, "tac-b"); }

BENCHMARK(BM_AgentStepCartpole);
BENCHMARK(BM_AgentStepAcrobotTwoLayer);
BENCHMARK(BM_AgentStepTabular);

}  // namespace
