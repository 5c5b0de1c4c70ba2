#include "snnrl/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "snnrl/errors.hpp"

namespace snnrl {

UniformDiscretizer::UniformDiscretizer(std::vector<std::size_t> bins,
                                       std::vector<std::pair<double, double>> bounds)
    : bins_(std::move(bins)), bounds_(std::move(bounds)) {
  if (bins_.empty() || bins_.size() != bounds_.size()) {
    throw ConfigError("discretizer: bins and bounds must have equal nonzero length");
  }
  for (std::size_t d = 0; d < bins_.size(); ++d) {
    if (bins_[d] == 0) throw ConfigError("discretizer: bin count must be >= 1");
    if (!(bounds_[d].second > bounds_[d].first)) {
      throw ConfigError("discretizer: bounds for dimension " + std::to_string(d) +
                        " must satisfy low < high");
    }
    if (state_count_ > (static_cast<std::size_t>(1) << 40) / bins_[d]) {
      throw ConfigError("discretizer: composite state space too large");
    }
    state_count_ *= bins_[d];
  }
}

std::size_t UniformDiscretizer::index(std::span<const double> observation) const {
  if (observation.size() != bins_.size()) {
    throw ConfigError("discretizer: observation dimension " + std::to_string(observation.size()) +
                      " does not match configured dimension " + std::to_string(bins_.size()));
  }
  std::size_t idx = 0;
  for (std::size_t d = 0; d < bins_.size(); ++d) {
    if (!std::isfinite(observation[d])) {
      throw InputError("discretizer: non-finite observation at dimension " + std::to_string(d));
    }
    const auto [lo, hi] = bounds_[d];
    const double x = std::clamp(observation[d], lo, hi);
    auto bin = static_cast<std::size_t>((x - lo) / (hi - lo) * static_cast<double>(bins_[d]));
    if (bin >= bins_[d]) bin = bins_[d] - 1;
    idx = idx * bins_[d] + bin;
  }
  return idx;
}

std::vector<std::pair<double, double>> UniformDiscretizer::bin_bounds(std::size_t index) const {
  if (index >= state_count_) throw InputError("discretizer: state index out of range");
  std::vector<std::size_t> per_dim(bins_.size());
  for (std::size_t d = bins_.size(); d-- > 0;) {
    per_dim[d] = index % bins_[d];
    index /= bins_[d];
  }
  std::vector<std::pair<double, double>> out(bins_.size());
  for (std::size_t d = 0; d < bins_.size(); ++d) {
    const auto [lo, hi] = bounds_[d];
    const double width = (hi - lo) / static_cast<double>(bins_[d]);
    out[d] = {lo + width * static_cast<double>(per_dim[d]),
              lo + width * static_cast<double>(per_dim[d] + 1)};
  }
  return out;
}

// ---------------------------------------------------------------------------

TabularAgent::TabularAgent(const TabularConfig& config, const EnvSpec& env)
    : config_(config),
      normalizer_(env.observation_bounds),
      discretizer_(std::vector<std::size_t>(env.observation_dim, config.bins),
                   std::vector<std::pair<double, double>>(env.observation_dim, {0.0, 1.0})),
      ac_(ActorCriticParams{discretizer_.state_count(),
                            {env.action_count},
                            config.ac.gamma,
                            config.ac.eta_a,
                            config.ac.eta_c,
                            config.ac.tau_a,
                            config.ac.tau_c,
                            config.ac.value_init}) {
  normalized_.resize(env.observation_dim);
  epsilon_ = config_.ac.epsilon.at(0);
}

std::size_t TabularAgent::evaluate_hidden(std::span<const double> observation) const {
  return discretizer_.index(normalizer_.normalize(observation));
}

int TabularAgent::step(std::span<const double> observation, double reward, bool terminal,
                       bool truncated, Rng& rng) {
  normalizer_.normalize(observation, normalized_);
  const std::size_t hidden = discretizer_.index(normalized_);
  if (prev_hidden_) {
    const auto next = terminal ? std::nullopt : std::optional<std::size_t>(hidden);
    const double delta = ac_.td_error(reward, *prev_hidden_, next, terminal);
    ac_.update(delta);
  }
  ac_.decay_traces();
  if (terminal || truncated) {
    ac_.reset_traces();
    prev_hidden_.reset();
    return kNoAction;
  }
  const std::size_t action = ac_.select_action(hidden, epsilon_, rng);
  prev_hidden_ = hidden;
  return static_cast<int>(action);
}

void TabularAgent::advance_episode() {
  ++episode_;
  epsilon_ = config_.ac.epsilon.at(episode_);
}

// ---------------------------------------------------------------------------

RandomAgent::RandomAgent(std::size_t action_count) : action_count_(action_count) {
  if (action_count_ < 1) throw ConfigError("random agent: action_count must be >= 1");
}

int RandomAgent::step(std::span<const double>, double, bool terminal, bool truncated, Rng& rng) {
  if (terminal || truncated) return kNoAction;
  return static_cast<int>(rng.uniform_index(action_count_));
}

}  // namespace snnrl
