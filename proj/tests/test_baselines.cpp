#include <doctest.h>

#include <cmath>

#include "snnrl/baselines.hpp"
#include "snnrl/config.hpp"
#include "snnrl/environments.hpp"
#include "snnrl/errors.hpp"
#include "snnrl/harness.hpp"

using namespace snnrl;

TEST_CASE("discretizer: composite state counts") {
  UniformDiscretizer d2(std::vector<std::size_t>(2, 20),
                        {{0.0, 1.0}, {0.0, 1.0}});
  CHECK(d2.state_count() == 400);

  UniformDiscretizer d6(std::vector<std::size_t>(6, 10),
                        std::vector<std::pair<double, double>>(6, {0.0, 1.0}));
  CHECK(d6.state_count() == 1000000);
}

TEST_CASE("discretizer: bounds map to the first and last composite index") {
  UniformDiscretizer d(std::vector<std::size_t>(3, 4),
                       {{0.0, 1.0}, {-1.0, 1.0}, {5.0, 9.0}});
  const double lo[3] = {0.0, -1.0, 5.0};
  CHECK(d.index(lo) == 0);
  const double hi[3] = {1.0, 1.0, 9.0};
  CHECK(d.index(hi) == d.state_count() - 1);
  const double clipped[3] = {-100.0, -100.0, -100.0};
  CHECK(d.index(clipped) == 0);
}

TEST_CASE("discretizer: index decodes to the bin containing the input") {
  UniformDiscretizer d(std::vector<std::size_t>{7, 5},
                       {{-2.0, 2.0}, {0.0, 10.0}});
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const double obs[2] = {rng.uniform(-2.5, 2.5), rng.uniform(-1.0, 11.0)};
    const auto idx = d.index(obs);
    const auto bounds = d.bin_bounds(idx);
    const double clipped0 = std::clamp(obs[0], -2.0, 2.0);
    const double clipped1 = std::clamp(obs[1], 0.0, 10.0);
    REQUIRE(clipped0 >= bounds[0].first - 1e-12);
    // the top bin's upper edge is closed
    REQUIRE((clipped0 < bounds[0].second || bounds[0].second == 2.0));
    REQUIRE(clipped1 >= bounds[1].first - 1e-12);
    REQUIRE((clipped1 < bounds[1].second || bounds[1].second == 10.0));
  }
  CHECK_THROWS_AS(d.bin_bounds(d.state_count()), InputError);
}

TEST_CASE("tabular agent matches the frozen-epsilon random agent's behaviour") {
  // With epsilon pinned at ~1 the tabular agent acts uniformly; on mountain
  // car both it and the random agent always truncate.
  RunConfig tac = preset_config("tac-a");
  tac.episodes = 20;
  tac.window = 10;
  tac.tabular.ac.epsilon.epsilon_min = 0.999999;
  auto record = run_single(tac, 3);
  for (int latency : record.latency) CHECK(latency == 200);

  RunConfig rnd = preset_config("random-mountain_car");
  rnd.episodes = 20;
  rnd.window = 10;
  auto random_record = run_single(rnd, 3);
  for (int latency : random_record.latency) CHECK(latency == 200);
}

TEST_CASE("tabular critic converges to the value-iteration oracle on the track") {
  // 100 bins over the 1-D track make an identity-like encoding.
  RunConfig cfg;
  cfg.id = "tac-track";
  cfg.env = "linear_track";
  cfg.episodes = 600;
  cfg.window = 100;
  cfg.agent = AgentKind::Tabular;
  cfg.tabular.bins = 100;
  cfg.tabular.ac = AcConfig{0.9, 0.1, 0.1, 1.0, 20.0, 0.0, EpsilonSchedule{0.01, 100}};

  auto outcome = run_single_with_agent(cfg, 5);
  REQUIRE_FALSE(outcome.record.failed);
  auto& agent = dynamic_cast<TabularAgent&>(*outcome.agent);

  // independent oracle: value iteration on the 100-state chain
  std::vector<double> oracle(101, 0.0);
  for (int sweep = 0; sweep < 500; ++sweep) {
    for (int p = 99; p >= 1; --p) {
      const double reward = (p + 1) == 90 ? 1.0 : 0.0;
      const double next = (p + 1) >= 100 ? 0.0 : oracle[p + 1];
      oracle[p] = reward + 0.9 * next;
    }
  }
  for (int p = 70; p <= 89; ++p) {
    const double obs[1] = {static_cast<double>(p)};
    const double learned = agent.actor_critic().value(agent.evaluate_hidden(obs));
    REQUIRE(learned == doctest::Approx(oracle[p]).epsilon(0.05));
  }
  // cross-check the oracle against the closed form
  CHECK(oracle[50] == doctest::Approx(0.0164).epsilon(1e-2));
  CHECK(oracle[50] == doctest::Approx(std::pow(0.9, 39)).epsilon(1e-12));
}

TEST_CASE("random agent: uniformity and determinism") {
  RandomAgent agent(3);
  Rng rng(6);
  int counts[3] = {0, 0, 0};
  const double obs[1] = {0.0};
  for (int i = 0; i < 10000; ++i) {
    counts[agent.step(obs, 0.0, false, false, rng)]++;
  }
  // chi-square against uniform, 2 dof; 13.8 is the 0.999 quantile
  double chi2 = 0.0;
  for (int a = 0; a < 3; ++a) {
    const double expected = 10000.0 / 3.0;
    chi2 += (counts[a] - expected) * (counts[a] - expected) / expected;
  }
  CHECK(chi2 < 13.8);

  RunConfig cfg = preset_config("random-cartpole");
  cfg.episodes = 10;
  cfg.window = 5;
  const auto a = run_single(cfg, 11);
  const auto b = run_single(cfg, 11);
  CHECK(a.latency == b.latency);
}

TEST_CASE("tabular cart-pole learns to beat the random baseline") {
  RunConfig tac = preset_config("tac-b");
  const std::uint64_t seeds[] = {0, 1, 2};
  const auto records = run_campaign(tac, seeds);
  const auto stats = summarize(records, 500, true);

  RunConfig rnd = preset_config("random-cartpole");
  const auto random_records = run_campaign(rnd, seeds);
  const auto random_stats = summarize(random_records, 500, true);

  CHECK(stats.mean > 3.0 * random_stats.mean);
}
