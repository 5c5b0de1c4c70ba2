#include "snnrl/actor_critic.hpp"

#include <cmath>
#include <string>

#include "snnrl/errors.hpp"

namespace snnrl {

namespace {
// Trace entries below this are dropped from the active sets; their further
// contribution is orders of magnitude under every tolerance in use.
constexpr double kTraceFloor = 1e-14;
}  // namespace

ActorCritic::ActorCritic(const ActorCriticParams& params) : params_(params) {
  if (params_.hidden_count == 0) throw ConfigError("actor-critic: hidden_count must be >= 1");
  if (params_.action_groups.empty()) throw ConfigError("actor-critic: at least one action group");
  if (params_.gamma <= 0.0 || params_.gamma > 1.0) {
    throw ConfigError("actor-critic: gamma must be in (0, 1]");
  }
  if (params_.eta_a <= 0.0 || params_.eta_c <= 0.0) {
    throw ConfigError("actor-critic: learning rates must be > 0");
  }
  if (params_.tau_a < 1.0 || params_.tau_c < 1.0) {
    throw ConfigError("actor-critic: trace time constants must be >= 1");
  }
  if (!std::isfinite(params_.value_init)) {
    throw ConfigError("actor-critic: value_init must be finite");
  }
  value_weights_.assign(params_.hidden_count, params_.value_init);
  critic_traces_.assign(params_.hidden_count, 0.0);
  actors_.resize(params_.action_groups.size());
  for (std::size_t g = 0; g < actors_.size(); ++g) {
    const std::size_t actions = params_.action_groups[g];
    if (actions == 0) throw ConfigError("actor-critic: empty action group");
    actors_[g].weights.assign(actions, std::vector<double>(params_.hidden_count, 0.0));
    actors_[g].traces.assign(actions, std::vector<double>(params_.hidden_count, 0.0));
  }
}

std::size_t ActorCritic::select_action(std::size_t group, std::size_t hidden, double epsilon,
                                       Rng& rng) {
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw ConfigError("select_action: epsilon must be in [0, 1], got " + std::to_string(epsilon));
  }
  if (group >= actors_.size() || hidden >= params_.hidden_count) {
    throw InputError("select_action: group or hidden index out of range");
  }
  auto& actor = actors_[group];
  const std::size_t actions = actor.weights.size();
  std::size_t chosen;
  if (rng.uniform() < epsilon) {
    chosen = rng.uniform_index(actions);
  } else {
    chosen = 0;
    double best = actor.weights[0][hidden];
    for (std::size_t i = 1; i < actions; ++i) {
      if (actor.weights[i][hidden] > best) {
        best = actor.weights[i][hidden];
        chosen = i;
      }
    }
  }
  if (actor.traces[chosen][hidden] == 0.0) {
    actor.active.push_back({chosen, hidden});
  }
  actor.traces[chosen][hidden] = 1.0;
  if (critic_traces_[hidden] == 0.0) critic_active_.push_back(hidden);
  critic_traces_[hidden] = 1.0;
  return chosen;
}

double ActorCritic::td_error(double reward, std::size_t hidden_prev,
                             std::optional<std::size_t> hidden_next, bool terminal) const {
  if (!std::isfinite(reward)) throw InputError("td_error: non-finite reward");
  if (hidden_prev >= params_.hidden_count) throw InputError("td_error: hidden_prev out of range");
  if (terminal == hidden_next.has_value()) {
    throw InputError("td_error: hidden_next must be present exactly when not terminal");
  }
  double next_value = 0.0;
  if (!terminal) {
    if (*hidden_next >= params_.hidden_count) {
      throw InputError("td_error: hidden_next out of range");
    }
    next_value = value_weights_[*hidden_next];
  }
  return reward + params_.gamma * next_value - value_weights_[hidden_prev];
}

void ActorCritic::update(double delta) {
  if (!std::isfinite(delta)) throw NumericalError("actor-critic update: non-finite TD error");
  for (const auto j : critic_active_) {
    value_weights_[j] += critic_traces_[j] * params_.eta_c * delta;
  }
  for (auto& actor : actors_) {
    for (const auto& [action, hidden] : actor.active) {
      actor.weights[action][hidden] += actor.traces[action][hidden] * params_.eta_a * delta;
    }
  }
}

void ActorCritic::decay_traces() {
  std::size_t keep = 0;
  for (const auto j : critic_active_) {
    double& c = critic_traces_[j];
    c -= c / params_.tau_c;
    if (c > kTraceFloor) {
      critic_active_[keep++] = j;
    } else {
      c = 0.0;
    }
  }
  critic_active_.resize(keep);
  for (auto& actor : actors_) {
    keep = 0;
    for (const auto& entry : actor.active) {
      double& c = actor.traces[entry.first][entry.second];
      c -= c / params_.tau_a;
      if (c > kTraceFloor) {
        actor.active[keep++] = entry;
      } else {
        c = 0.0;
      }
    }
    actor.active.resize(keep);
  }
}

void ActorCritic::reset_traces() {
  for (const auto j : critic_active_) critic_traces_[j] = 0.0;
  critic_active_.clear();
  for (auto& actor : actors_) {
    for (const auto& [action, hidden] : actor.active) actor.traces[action][hidden] = 0.0;
    actor.active.clear();
  }
}

}  // namespace snnrl
