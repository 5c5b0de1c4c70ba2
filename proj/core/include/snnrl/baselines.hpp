#pragma once

#include <optional>
#include <span>
#include <vector>

#include "snnrl/agent.hpp"

namespace snnrl {

/// Uniform per-dimension binning into a row-major composite state index.
class UniformDiscretizer {
 public:
  UniformDiscretizer(std::vector<std::size_t> bins,
                     std::vector<std::pair<double, double>> bounds);

  std::size_t state_count() const { return state_count_; }

  /// Clips the observation to the bounds and returns the composite index.
  std::size_t index(std::span<const double> observation) const;

  /// Per-dimension [low, high) range of the bin addressed by an index.
  std::vector<std::pair<double, double>> bin_bounds(std::size_t index) const;

 private:
  std::vector<std::size_t> bins_;
  std::vector<std::pair<double, double>> bounds_;
  std::size_t state_count_ = 1;
};

struct TabularConfig {
  std::size_t bins = 0;  // same count for every dimension
  AcConfig ac;
};

/// Tabular actor-critic baseline: the same actor-critic core as the
/// clustering network, with the hidden index produced by a fixed uniform
/// discretization of the normalized observation.
class TabularAgent final : public Agent {
 public:
  TabularAgent(const TabularConfig& config, const EnvSpec& env);

  int step(std::span<const double> observation, double reward, bool terminal, bool truncated,
           Rng& rng) override;
  void advance_episode() override;
  std::size_t hidden_state_count() const override { return discretizer_.state_count(); }

  const UniformDiscretizer& discretizer() const { return discretizer_; }
  const ActorCritic& actor_critic() const { return ac_; }
  ActorCritic& actor_critic() { return ac_; }
  double epsilon() const { return epsilon_; }

  std::size_t evaluate_hidden(std::span<const double> observation) const;

 private:
  TabularConfig config_;
  Normalizer normalizer_;
  UniformDiscretizer discretizer_;
  ActorCritic ac_;
  double epsilon_ = 1.0;
  int episode_ = 0;
  std::optional<std::size_t> prev_hidden_;
  std::vector<double> normalized_;
};

/// Uniform random policy; behaviour of the network at epsilon = 1.
class RandomAgent final : public Agent {
 public:
  explicit RandomAgent(std::size_t action_count);

  int step(std::span<const double> observation, double reward, bool terminal, bool truncated,
           Rng& rng) override;
  void advance_episode() override {}
  std::size_t hidden_state_count() const override { return 1; }

 private:
  std::size_t action_count_;
};

}  // namespace snnrl
