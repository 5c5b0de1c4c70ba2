#include <doctest.h>

#include <cmath>
#include <limits>

#include "snnrl/actor_critic.hpp"
#include "snnrl/environments.hpp"
#include "snnrl/errors.hpp"
#include "support/tabular_oracle.hpp"

using namespace snnrl;

namespace {

ActorCriticParams small_params() {
  ActorCriticParams p;
  p.hidden_count = 4;
  p.action_groups = {3};
  p.gamma = 0.95;
  p.eta_a = 0.1;
  p.eta_c = 0.1;
  p.tau_a = 5.0;
  p.tau_c = 20.0;
  return p;
}

}  // namespace

TEST_CASE("construction validates hyperparameters") {
  auto p = small_params();
  p.gamma = 1.5;
  CHECK_THROWS_AS(ActorCritic{p}, ConfigError);
  p = small_params();
  p.tau_a = 0.5;
  CHECK_THROWS_AS(ActorCritic{p}, ConfigError);
  p = small_params();
  p.tau_a = 1.0;  // boundary: allowed, trace dies every step
  CHECK_NOTHROW(ActorCritic{p});
  p = small_params();
  p.hidden_count = 0;
  CHECK_THROWS_AS(ActorCritic{p}, ConfigError);
}

TEST_CASE("select_action: greedy argmax with lowest-index ties") {
  ActorCritic ac(small_params());
  Rng rng(1);
  ac.action_weights()[0][2] = 0.1;
  ac.action_weights()[1][2] = 0.9;
  ac.action_weights()[2][2] = 0.3;
  CHECK(ac.select_action(2, 0.0, rng) == 1);
  // traces set for the chosen pair
  CHECK(ac.actor_traces()[1][2] == 1.0);
  CHECK(ac.critic_traces()[2] == 1.0);

  // all-zero column: lowest index wins
  CHECK(ac.select_action(0, 0.0, rng) == 0);

  CHECK_THROWS_AS(ac.select_action(0, 1.5, rng), ConfigError);
  CHECK_THROWS_AS(ac.select_action(99, 0.0, rng), InputError);
}

TEST_CASE("select_action: epsilon=1 explores uniformly") {
  ActorCritic ac(small_params());
  Rng rng(2);
  int counts[3] = {0, 0, 0};
  const int draws = 30000;
  for (int i = 0; i < draws; ++i) {
    counts[ac.select_action(0, 1.0, rng)]++;
  }
  for (int a = 0; a < 3; ++a) {
    CHECK(std::abs(counts[a] / static_cast<double>(draws) - 1.0 / 3.0) < 0.01);
  }
}

TEST_CASE("td_error: bootstrap arithmetic") {
  ActorCritic ac(small_params());
  CHECK(ac.td_error(-1.0, 0, 1, false) == doctest::Approx(-1.0));

  ac.value_weights()[1] = 1.0;
  ac.value_weights()[0] = 0.9;
  auto p = small_params();
  p.gamma = 0.9;
  ActorCritic ac2(p);
  ac2.value_weights()[1] = 1.0;
  ac2.value_weights()[0] = 0.9;
  CHECK(ac2.td_error(0.0, 0, 1, false) == doctest::Approx(0.0));  // self-consistent values

  ac2.value_weights()[2] = 0.5;
  CHECK(ac2.td_error(0.0, 2, std::nullopt, true) == doctest::Approx(-0.5));  // terminal

  CHECK_THROWS_AS(ac2.td_error(std::numeric_limits<double>::infinity(), 0, 1, false), InputError);
  CHECK_THROWS_AS(ac2.td_error(0.0, 0, std::nullopt, false), InputError);
  CHECK_THROWS_AS(ac2.td_error(0.0, 0, 1, true), InputError);
}

TEST_CASE("update: trace-gated weight changes") {
  ActorCritic ac(small_params());
  Rng rng(3);

  // all traces zero: no changes
  ac.update(2.0);
  for (double v : ac.value_weights()) CHECK(v == 0.0);

  ac.select_action(1, 0.0, rng);  // sets traces for (0, 1)
  ac.update(0.0);                 // delta = 0: still no changes
  for (double v : ac.value_weights()) CHECK(v == 0.0);

  ac.update(-1.0);
  CHECK(ac.value_weights()[1] == doctest::Approx(-0.1));
  CHECK(ac.value_weights()[0] == 0.0);
  CHECK(ac.action_weights()[0][1] == doctest::Approx(-0.1));

  CHECK_THROWS_AS(ac.update(std::numeric_limits<double>::quiet_NaN()), NumericalError);
}

TEST_CASE("decay_traces: both stores, boundary tau") {
  auto p = small_params();
  p.tau_a = 1.0;   // full decay: "no memory"
  p.tau_c = 20.0;
  ActorCritic ac(p);
  Rng rng(4);
  ac.select_action(0, 0.0, rng);
  ac.decay_traces();
  CHECK(ac.critic_traces()[0] == doctest::Approx(0.95));
  CHECK(ac.actor_traces()[0][0] == 0.0);
  ac.decay_traces();
  CHECK(ac.critic_traces()[0] == doctest::Approx(0.9025));
}

TEST_CASE("epsilon schedule: linear decay to the floor") {
  EpsilonSchedule s{0.01, 500};
  CHECK(s.at(0) == doctest::Approx(1.0));
  CHECK(s.at(500) == doctest::Approx(0.01));
  CHECK(s.at(5000) == doctest::Approx(0.01));
  EpsilonSchedule mid{0.01, 500};
  CHECK(mid.at(250) == doctest::Approx(0.505));
}

TEST_CASE("property: traces stay in [0,1] under any set/decay interleaving") {
  ActorCritic ac(small_params());
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    if (rng.uniform() < 0.5) {
      ac.select_action(rng.uniform_index(4), rng.uniform(), rng);
    } else {
      ac.decay_traces();
    }
    for (double c : ac.critic_traces()) {
      REQUIRE(c >= 0.0);
      REQUIRE(c <= 1.0);
    }
    for (const auto& row : ac.actor_traces()) {
      for (double c : row) {
        REQUIRE(c >= 0.0);
        REQUIRE(c <= 1.0);
      }
    }
  }
}

TEST_CASE("property: greedy choice is invariant to constant column shifts") {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    ActorCritic ac(small_params());
    const std::size_t hidden = rng.uniform_index(4);
    for (std::size_t a = 0; a < 3; ++a) {
      ac.action_weights()[a][hidden] = rng.uniform(-5.0, 5.0);
    }
    Rng probe1(trial);
    const auto before = ac.select_action(hidden, 0.0, probe1);
    const double shift = rng.uniform(-100.0, 100.0);
    for (std::size_t a = 0; a < 3; ++a) {
      ac.action_weights()[a][hidden] += shift;
    }
    Rng probe2(trial);
    const auto after = ac.select_action(hidden, 0.0, probe2);
    REQUIRE(before == after);
  }
}

TEST_CASE("multiple action groups share the critic but select independently") {
  auto p = small_params();
  p.action_groups = {2, 3};
  ActorCritic ac(p);
  Rng rng(7);
  ac.action_weights(0)[1][0] = 1.0;
  ac.action_weights(1)[2][0] = 1.0;
  CHECK(ac.select_action(0, 0, 0.0, rng) == 1);
  CHECK(ac.select_action(1, 0, 0.0, rng) == 2);
  CHECK(ac.critic_traces()[0] == 1.0);
  ac.update(1.0);
  CHECK(ac.action_weights(0)[1][0] == doctest::Approx(1.1));
  CHECK(ac.action_weights(1)[2][0] == doctest::Approx(1.1));
}

TEST_CASE("tabular-oracle equivalence on the linear track") {
  // Frozen one-hot encoding: hidden = position - 1. The engine must match
  // an independently coded textbook trace-based actor-critic state for
  // state to 1e-12 over 1000 steps.
  ActorCriticParams p;
  p.hidden_count = 100;
  p.action_groups = {1};
  p.gamma = 0.9;
  p.eta_a = 0.05;
  p.eta_c = 0.1;
  p.tau_a = 5.0;
  p.tau_c = 20.0;
  ActorCritic engine(p);

  oracle::TabularActorCritic ref;
  ref.states = 100;
  ref.actions = 1;
  ref.gamma = 0.9;
  ref.alpha_critic = 0.1;
  ref.alpha_actor = 0.05;
  ref.critic_decay = 1.0 - 1.0 / 20.0;
  ref.actor_decay = 1.0 - 1.0 / 5.0;
  ref.reset();

  LinearTrack env;
  Rng env_rng(8);
  Rng agent_rng(9);
  double max_diff = 0.0;
  int steps_done = 0;
  while (steps_done < 1000) {
    auto obs = env.reset(env_rng);
    std::size_t state = static_cast<std::size_t>(obs[0]) - 1;
    while (steps_done < 1000) {
      const auto action = engine.select_action(state, 0.0, agent_rng);
      ref.visit(state, action);
      const auto& result = env.step(static_cast<int>(action));
      ++steps_done;
      const std::size_t next = static_cast<std::size_t>(result.observation[0]) - 1;
      const auto maybe_next =
          result.terminal ? std::nullopt : std::optional<std::size_t>(next);
      const double delta = engine.td_error(result.reward, state, maybe_next, result.terminal);
      engine.update(delta);
      engine.decay_traces();
      const double ref_delta = ref.learn(state, result.reward, maybe_next);
      CHECK(delta == doctest::Approx(ref_delta).epsilon(1e-12));
      for (std::size_t s = 0; s < 100; ++s) {
        max_diff = std::max(max_diff, std::abs(engine.value(s) - ref.values[s]));
      }
      REQUIRE(max_diff <= 1e-12);
      state = next;
      if (result.terminal) {
        engine.reset_traces();
        ref.clear_traces();
        break;
      }
    }
  }
  CHECK(steps_done == 1000);
}
