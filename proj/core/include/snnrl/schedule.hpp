#pragma once

#include <algorithm>

namespace snnrl {

/// Linearly interpolates from `initial` down to `initial * factor` over
/// `decay_episodes` episodes, constant afterwards. factor in (0, 1] keeps
/// the schedule positive and non-increasing.
struct DecaySchedule {
  double initial = 0.0;
  double factor = 1.0;
  int decay_episodes = 1;

  double at(int episode) const {
    if (episode >= decay_episodes) return initial * factor;
    const double f = static_cast<double>(episode) / static_cast<double>(decay_episodes);
    return initial * ((1.0 - f) + factor * f);
  }
};

/// Exploration schedule: starts at 1, decays linearly to epsilon_min over
/// decay_episodes episodes, then stays at the floor.
struct EpsilonSchedule {
  double epsilon_min = 0.01;
  int decay_episodes = 1;

  double at(int episode) const {
    const double eps =
        1.0 - (1.0 - epsilon_min) * static_cast<double>(episode) / static_cast<double>(decay_episodes);
    return std::max(epsilon_min, eps);
  }
};

}  // namespace snnrl
