#pragma once

// Textbook tabular actor-critic with replacing eligibility traces, written
// directly from the update equations as an independent oracle. Trace decay
// uses the multiplicative factor (1 - 1/tau); the production code must
// match this trajectory without sharing any of its code.

#include <cstddef>
#include <optional>
#include <vector>

namespace oracle {

struct TabularActorCritic {
  std::size_t states = 0;
  std::size_t actions = 0;
  double gamma = 0.0;
  double alpha_critic = 0.0;
  double alpha_actor = 0.0;
  double critic_decay = 0.0;  // (1 - 1/tau_c)
  double actor_decay = 0.0;   // (1 - 1/tau_a)
  double value_init = 0.0;

  std::vector<double> values;
  std::vector<std::vector<double>> preferences;  // [action][state]
  std::vector<double> critic_trace;
  std::vector<std::vector<double>> actor_trace;

  void reset() {
    values.assign(states, value_init);
    preferences.assign(actions, std::vector<double>(states, 0.0));
    clear_traces();
  }

  void clear_traces() {
    critic_trace.assign(states, 0.0);
    actor_trace.assign(actions, std::vector<double>(states, 0.0));
  }

  // Marks the visit of (state, action); replacing traces are set to one.
  void visit(std::size_t state, std::size_t action) {
    critic_trace[state] = 1.0;
    actor_trace[action][state] = 1.0;
  }

  // Processes the transition out of `prev_state` and returns the TD error.
  double learn(std::size_t prev_state, double reward, std::optional<std::size_t> next_state) {
    const double bootstrap = next_state ? gamma * values[*next_state] : 0.0;
    const double delta = reward + bootstrap - values[prev_state];
    for (std::size_t s = 0; s < states; ++s) {
      values[s] += alpha_critic * delta * critic_trace[s];
    }
    for (std::size_t a = 0; a < actions; ++a) {
      for (std::size_t s = 0; s < states; ++s) {
        preferences[a][s] += alpha_actor * delta * actor_trace[a][s];
      }
    }
    for (auto& c : critic_trace) c *= critic_decay;
    for (auto& row : actor_trace) {
      for (auto& c : row) c *= actor_decay;
    }
    return delta;
  }
};

}  // namespace oracle
