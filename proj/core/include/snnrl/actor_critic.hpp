#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "snnrl/random.hpp"
#include "snnrl/schedule.hpp"

namespace snnrl {

struct ActorCriticParams {
  std::size_t hidden_count = 0;
  /// Action count per independent action group. Orthogonal action
  /// dimensions get one group each; the benchmark tasks use a single group.
  std::vector<std::size_t> action_groups;
  double gamma = 0.0;
  double eta_a = 0.0;
  double eta_c = 0.0;
  double tau_a = 0.0;  // >= 1; tau = 1 zeroes the trace every step
  double tau_c = 0.0;  // >= 1
  /// Initial state value. An optimistic ceiling (max reward / (1 - gamma))
  /// keeps early greedy choices exploratory on reward-per-step tasks.
  double value_init = 0.0;
};

/// Trace-based actor-critic over a discrete hidden state. Action
/// preferences and state values live in weight tables gated by replacing
/// eligibility traces; a broadcast TD error drives every update.
class ActorCritic {
 public:
  explicit ActorCritic(const ActorCriticParams& params);

  /// Epsilon-greedy selection for one action group. Greedy picks the
  /// highest preference for the hidden state (ties break to the lowest
  /// index). The chosen pair's actor trace and the hidden state's critic
  /// trace are set to 1.
  std::size_t select_action(std::size_t group, std::size_t hidden, double epsilon, Rng& rng);

  /// Single-group convenience overload.
  std::size_t select_action(std::size_t hidden, double epsilon, Rng& rng) {
    return select_action(0, hidden, epsilon, rng);
  }

  /// delta = r + gamma * V(next) - V(prev); V(next) is 0 on termination.
  /// hidden_next must be present exactly when the step is not terminal.
  double td_error(double reward, std::size_t hidden_prev, std::optional<std::size_t> hidden_next,
                  bool terminal) const;

  /// Applies the broadcast TD error through the traces.
  void update(double delta);

  /// Exponential decay of both trace stores, once per step after update.
  void decay_traces();

  /// Clears traces at an episode boundary.
  void reset_traces();

  double value(std::size_t hidden) const { return value_weights_[hidden]; }
  std::span<const double> value_weights() const { return value_weights_; }
  std::span<double> value_weights() { return value_weights_; }
  std::span<const double> critic_traces() const { return critic_traces_; }
  const std::vector<std::vector<double>>& action_weights(std::size_t group = 0) const {
    return actors_[group].weights;
  }
  std::vector<std::vector<double>>& action_weights(std::size_t group = 0) {
    return actors_[group].weights;
  }
  const std::vector<std::vector<double>>& actor_traces(std::size_t group = 0) const {
    return actors_[group].traces;
  }
  std::size_t hidden_count() const { return params_.hidden_count; }
  std::size_t group_count() const { return actors_.size(); }
  std::size_t action_count(std::size_t group = 0) const { return actors_[group].weights.size(); }
  const ActorCriticParams& params() const { return params_; }

 private:
  // Traces are stored dense for O(1) lookup, with active-entry lists so
  // update/decay cost scales with the trace support rather than the state
  // space (the tabular baseline reaches 1e6 states).
  struct ActorGroup {
    std::vector<std::vector<double>> weights;  // [action][hidden]
    std::vector<std::vector<double>> traces;   // [action][hidden]
    std::vector<std::pair<std::size_t, std::size_t>> active;
  };

  ActorCriticParams params_;
  std::vector<double> value_weights_;
  std::vector<double> critic_traces_;
  std::vector<std::size_t> critic_active_;
  std::vector<ActorGroup> actors_;
};

}  // namespace snnrl
