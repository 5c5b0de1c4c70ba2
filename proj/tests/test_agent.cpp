#include <doctest.h>

#include <cmath>

#include "snnrl/agent.hpp"
#include "snnrl/config.hpp"
#include "snnrl/environments.hpp"
#include "snnrl/errors.hpp"
#include "snnrl/harness.hpp"
#include "support/tabular_oracle.hpp"

using namespace snnrl;

namespace {

std::vector<std::vector<double>> layer_weights(const ClusterLayer& layer) {
  std::vector<std::vector<double>> out;
  for (const auto& g : layer.groups()) {
    for (const auto& n : g.neurons) out.push_back(n.weights);
  }
  return out;
}

std::vector<double> layer_thresholds(const ClusterLayer& layer) {
  std::vector<double> out;
  for (const auto& g : layer.groups()) {
    for (const auto& n : g.neurons) out.push_back(n.threshold);
  }
  return out;
}

}  // namespace

TEST_CASE("first step of an episode performs no value update") {
  RunConfig cfg = preset_config("a");
  auto env = make_environment(cfg.env);
  Rng init(1), env_rng(2), agent_rng(3);
  ClusteringAgent agent(cfg.clustering, env->spec(), init);
  auto obs = env->reset(env_rng);
  const auto values_before =
      std::vector<double>(agent.actor_critic().value_weights().begin(),
                          agent.actor_critic().value_weights().end());
  const int action = agent.step(obs, 123.0, false, false, agent_rng);  // reward ignored
  CHECK(action >= 0);
  const auto values_after =
      std::vector<double>(agent.actor_critic().value_weights().begin(),
                          agent.actor_critic().value_weights().end());
  CHECK(values_before == values_after);
}

TEST_CASE("static clusters: layer state is bitwise identical after 100 steps") {
  RunConfig cfg = preset_config("b");
  cfg.clustering.ablation.static_clusters = true;
  cfg.clustering.ablation.disable_unsupervised = true;
  cfg.clustering.ablation.disable_td_modulation = true;
  auto env = make_environment(cfg.env);
  Rng init(4), env_rng(5), agent_rng(6);
  ClusteringAgent agent(cfg.clustering, env->spec(), init);

  const auto weights_before = layer_weights(agent.layer1());
  const auto thresholds_before = layer_thresholds(agent.layer1());
  // static initialization opens every receptive field to unit radius
  for (double th : thresholds_before) CHECK(th == 1.0);

  int steps = 0;
  while (steps < 100) {
    auto obs = env->reset(env_rng);
    int action = agent.step(obs, 0.0, false, false, agent_rng);
    while (steps < 100) {
      const auto& r = env->step(action);
      ++steps;
      action = agent.step(r.observation, r.reward, r.terminal, r.truncated, agent_rng);
      if (r.terminal || r.truncated) break;
    }
    agent.advance_episode();
  }
  CHECK(layer_weights(agent.layer1()) == weights_before);
  CHECK(layer_thresholds(agent.layer1()) == thresholds_before);
}

TEST_CASE("hidden state counts per preset") {
  Rng init(7);
  {
    RunConfig cfg = preset_config("a");
    auto env = make_environment(cfg.env);
    ClusteringAgent agent(cfg.clustering, env->spec(), init);
    CHECK(agent.hidden_state_count() == 100);
  }
  {
    RunConfig cfg = preset_config("b");
    auto env = make_environment(cfg.env);
    ClusteringAgent agent(cfg.clustering, env->spec(), init);
    CHECK(agent.hidden_state_count() == 100);
  }
  {
    RunConfig cfg = preset_config("c");
    auto env = make_environment(cfg.env);
    ClusteringAgent agent(cfg.clustering, env->spec(), init);
    CHECK(agent.hidden_state_count() == 20);
  }
}

TEST_CASE("per-dimension preset produces hidden indices under the layer-2 size") {
  RunConfig cfg = preset_config("c");
  auto env = make_environment(cfg.env);
  Rng init(8), env_rng(9), agent_rng(10);
  ClusteringAgent agent(cfg.clustering, env->spec(), init);
  auto obs = env->reset(env_rng);
  int action = agent.step(obs, 0.0, false, false, agent_rng);
  for (int i = 0; i < 200; ++i) {
    const auto& r = env->step(action);
    action = agent.step(r.observation, r.reward, r.terminal, r.truncated, agent_rng);
    if (r.terminal || r.truncated) break;
    REQUIRE(agent.last_hidden().has_value());
    REQUIRE(*agent.last_hidden() < 20);
  }
}

TEST_CASE("per-dimension encoding requires a second layer") {
  RunConfig cfg = preset_config("c");
  cfg.clustering.layer2.reset();
  auto env = make_environment(cfg.env);
  Rng init(11);
  CHECK_THROWS_AS(ClusteringAgent(cfg.clustering, env->spec(), init), ConfigError);
}

TEST_CASE("advance_episode drives the schedules monotonically") {
  RunConfig cfg = preset_config("a");
  auto env = make_environment(cfg.env);
  Rng init(12);
  ClusteringAgent agent(cfg.clustering, env->spec(), init);
  double last_eps = agent.epsilon();
  double last_eta = agent.layer1().eta();
  double last_open = agent.layer1().theta_open();
  CHECK(last_eps == doctest::Approx(1.0));
  for (int e = 1; e <= 1200; ++e) {
    agent.advance_episode();
    CHECK(agent.epsilon() <= last_eps);
    CHECK(agent.layer1().eta() <= last_eta);
    CHECK(agent.layer1().theta_open() <= last_open);
    last_eps = agent.epsilon();
    last_eta = agent.layer1().eta();
    last_open = agent.layer1().theta_open();
  }
  // schedule endpoint: factor 0.1 after the decay time
  CHECK(agent.layer1().eta() == doctest::Approx(1e-5 * 0.1));
  CHECK(agent.layer1().theta_open() == doctest::Approx(1e-2 * 0.1));
  CHECK(agent.epsilon() == doctest::Approx(0.01));
}

TEST_CASE("end-to-end determinism: same config and seed, same latency sequence") {
  RunConfig cfg = preset_config("b");
  cfg.episodes = 25;
  cfg.window = 10;
  const auto a = run_single(cfg, 17);
  const auto b = run_single(cfg, 17);
  CHECK_FALSE(a.failed);
  CHECK(a.latency == b.latency);
  CHECK(a.episode_return == b.episode_return);
  const auto c = run_single(cfg, 18);
  CHECK(a.latency != c.latency);  // different seed, different run
}

TEST_CASE("hidden indices stay below hidden_state_count across a run") {
  RunConfig cfg = preset_config("b");
  auto env = make_environment(cfg.env);
  Rng init(13), env_rng(14), agent_rng(15);
  ClusteringAgent agent(cfg.clustering, env->spec(), init);
  for (int e = 0; e < 5; ++e) {
    auto obs = env->reset(env_rng);
    int action = agent.step(obs, 0.0, false, false, agent_rng);
    while (true) {
      const auto& r = env->step(action);
      action = agent.step(r.observation, r.reward, r.terminal, r.truncated, agent_rng);
      if (r.terminal || r.truncated) break;
      REQUIRE(*agent.last_hidden() < agent.hidden_state_count());
    }
    agent.advance_episode();
  }
}

TEST_CASE("frozen partition reduces to the textbook tabular actor-critic") {
  // Static clusters on the linear track: the agent becomes a fixed random
  // partition in front of a plain tabular actor-critic. Replaying its
  // hidden/reward sequence through the independent oracle must reproduce
  // the value table to 1e-12.
  RunConfig cfg;
  cfg.env = "linear_track";
  cfg.agent = AgentKind::Clustering;
  cfg.clustering.encoding = Encoding::FullyConnected;
  cfg.clustering.layer1.neurons = 10;
  cfg.clustering.layer1.params.eta = {1e-2, 1.0, 1};
  cfg.clustering.layer1.params.eta_th = 1e-2;
  cfg.clustering.layer1.params.theta_open = {1e-2, 1.0, 1};
  cfg.clustering.layer1.params.eta_td = 1e-1;
  cfg.clustering.layer1.params.tau_trace = 10.0;
  cfg.clustering.ac = AcConfig{0.9, 0.05, 0.1, 5.0, 20.0, 0.0, EpsilonSchedule{0.01, 100}};
  cfg.clustering.ablation.static_clusters = true;
  cfg.clustering.ablation.disable_unsupervised = true;
  cfg.clustering.ablation.disable_td_modulation = true;

  LinearTrack env;
  Rng init(16), env_rng(17), agent_rng(18);
  ClusteringAgent agent(cfg.clustering, env.spec(), init);

  oracle::TabularActorCritic ref;
  ref.states = 10;
  ref.actions = 1;
  ref.gamma = 0.9;
  ref.alpha_critic = 0.1;
  ref.alpha_actor = 0.05;
  ref.critic_decay = 1.0 - 1.0 / 20.0;
  ref.actor_decay = 1.0 - 1.0 / 5.0;
  ref.reset();

  int steps = 0;
  while (steps < 1000) {
    auto obs = env.reset(env_rng);
    int action = agent.step(obs, 0.0, false, false, agent_rng);
    std::size_t prev_hidden = *agent.last_hidden();
    ref.visit(prev_hidden, 0);
    while (true) {
      const auto& r = env.step(action);
      ++steps;
      action = agent.step(r.observation, r.reward, r.terminal, r.truncated, agent_rng);
      if (r.terminal) {
        ref.learn(prev_hidden, r.reward, std::nullopt);
        ref.clear_traces();
        break;
      }
      const std::size_t hidden = *agent.last_hidden();
      ref.learn(prev_hidden, r.reward, hidden);
      ref.visit(hidden, 0);
      prev_hidden = hidden;
      if (r.truncated) {
        ref.clear_traces();
        break;
      }
    }
    agent.advance_episode();
    for (std::size_t s = 0; s < 10; ++s) {
      REQUIRE(std::abs(agent.actor_critic().value(s) - ref.values[s]) <= 1e-12);
    }
    if (steps >= 1000) break;
  }
}

TEST_CASE("normalizer clips cart-pole velocities to the documented ranges") {
  CartPole env;
  Normalizer norm(env.spec().observation_bounds);
  const double obs[4] = {0.0, 100.0, 0.0, -100.0};
  const auto unit = norm.normalize(obs);
  CHECK(unit[1] == 1.0);
  CHECK(unit[3] == 0.0);
  CHECK(norm.denormalize(1, unit[1]) == doctest::Approx(3.0));
}
