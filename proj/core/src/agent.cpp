#include "snnrl/agent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "snnrl/errors.hpp"

namespace snnrl {

// ---------------------------------------------------------------------------
// Normalizer

Normalizer::Normalizer(std::vector<std::pair<double, double>> bounds) : bounds_(std::move(bounds)) {
  for (std::size_t d = 0; d < bounds_.size(); ++d) {
    if (!(bounds_[d].second > bounds_[d].first)) {
      throw ConfigError("normalizer: bounds for dimension " + std::to_string(d) +
                        " must satisfy low < high");
    }
  }
}

void Normalizer::normalize(std::span<const double> observation, std::span<double> out) const {
  if (observation.size() != bounds_.size() || out.size() != bounds_.size()) {
    throw ConfigError("normalizer: observation dimension " + std::to_string(observation.size()) +
                      " does not match configured dimension " + std::to_string(bounds_.size()));
  }
  for (std::size_t d = 0; d < bounds_.size(); ++d) {
    if (!std::isfinite(observation[d])) {
      throw InputError("normalizer: non-finite observation at dimension " + std::to_string(d));
    }
    const auto [lo, hi] = bounds_[d];
    const double clipped = std::clamp(observation[d], lo, hi);
    out[d] = (clipped - lo) / (hi - lo);
  }
}

std::vector<double> Normalizer::normalize(std::span<const double> observation) const {
  std::vector<double> out(bounds_.size());
  normalize(observation, out);
  return out;
}

double Normalizer::denormalize(std::size_t dim, double unit_value) const {
  const auto [lo, hi] = bounds_.at(dim);
  return lo + unit_value * (hi - lo);
}

// ---------------------------------------------------------------------------
// ClusteringAgent

namespace {

AblationFlags effective_flags(AblationFlags flags) {
  if (flags.static_clusters) {
    flags.disable_unsupervised = true;
    flags.disable_td_modulation = true;
  }
  return flags;
}

ClusterLayer build_layer1(const AgentConfig& cfg, const EnvSpec& env, double initial_threshold,
                          Rng& rng) {
  if (cfg.layer1.neurons == 0) throw ConfigError("agent: layer1 must have neurons");
  if (cfg.encoding == Encoding::FullyConnected) {
    return ClusterLayer::fully_connected(cfg.layer1.params, env.observation_dim,
                                         cfg.layer1.neurons, initial_threshold, rng);
  }
  return ClusterLayer::per_dimension(cfg.layer1.params, env.observation_dim, cfg.layer1.neurons,
                                     initial_threshold, rng);
}

std::size_t resolve_hidden_count(const AgentConfig& cfg) {
  if (cfg.layer2) return cfg.layer2->neurons;
  if (cfg.encoding == Encoding::PerDimensionGroups) {
    throw ConfigError("agent: per-dimension encoding requires a second clustering layer");
  }
  return cfg.layer1.neurons;
}

}  // namespace

ClusteringAgent::ClusteringAgent(const AgentConfig& config, const EnvSpec& env, Rng& init_rng)
    : config_(config),
      normalizer_(env.observation_bounds),
      layer1_(build_layer1(config, env,
                           config.ablation.static_clusters ? 1.0 : 0.0, init_rng)),
      ac_(ActorCriticParams{
          /*hidden_count=*/resolve_hidden_count(config),
          /*action_groups=*/{env.action_count},
          config.ac.gamma, config.ac.eta_a, config.ac.eta_c, config.ac.tau_a, config.ac.tau_c,
          config.ac.value_init}) {
  config_.ablation = effective_flags(config.ablation);
  if (config.layer2) {
    if (config.layer2->neurons == 0) throw ConfigError("agent: layer2 must have neurons");
    const double init_threshold = config_.ablation.static_clusters ? 1.0 : 0.0;
    layer2_.emplace(ClusterLayer::fully_connected(config.layer2->params, layer1_.neuron_count(),
                                                  config.layer2->neurons, init_threshold,
                                                  init_rng));
    // The second layer reads binary activation patterns, for which uniform
    // random weights start far outside the pattern cloud and nearly
    // equidistant from every input. Initialize each neuron to a random
    // valid pattern of the first layer instead (one active unit per group).
    for (auto& neuron : layer2_->groups()[0].neurons) {
      std::fill(neuron.weights.begin(), neuron.weights.end(), 0.0);
      std::size_t base = 0;
      for (const auto& group : layer1_.groups()) {
        neuron.weights[base + init_rng.uniform_index(group.neurons.size())] = 1.0;
        base += group.neurons.size();
      }
    }
  }
  normalized_.resize(env.observation_dim);
  epsilon_ = config_.ac.epsilon.at(0);
}

std::size_t ClusteringAgent::hidden_state_count() const {
  return layer2_ ? layer2_->neuron_count() : layer1_.neuron_count();
}

std::size_t ClusteringAgent::evaluate_hidden(std::span<const double> observation) {
  normalizer_.normalize(observation, normalized_);
  layer1_.forward(normalized_, /*learn=*/false, /*unsupervised=*/true, activation1_);
  if (!layer2_) return activation1_.winners[0];
  layer2_->forward(activation1_.one_hot, /*learn=*/false, /*unsupervised=*/true, activation2_);
  return activation2_.winners[0];
}

int ClusteringAgent::step(std::span<const double> observation, double reward, bool terminal,
                          bool truncated, Rng& rng) {
  try {
    // A terminal observation is outside the task's operating distribution
    // and its value is pinned to zero, so it never passes through the
    // network; the closing transition only settles the actor-critic.
    if (terminal) {
      if (prev_hidden_) {
        const double delta = ac_.td_error(reward, *prev_hidden_, std::nullopt, true);
        ac_.update(delta);
      }
      finalize_episode();
      return kNoAction;
    }

    normalizer_.normalize(observation, normalized_);
    const bool learn = !config_.ablation.static_clusters;
    const bool unsupervised = !config_.ablation.disable_unsupervised;
    layer1_.forward(normalized_, learn, unsupervised, activation1_);
    std::size_t hidden;
    if (layer2_) {
      layer2_->forward(activation1_.one_hot, learn, unsupervised, activation2_);
      hidden = activation2_.winners[0];
    } else {
      hidden = activation1_.winners[0];
    }

    if (prev_hidden_) {
      const double delta = ac_.td_error(reward, *prev_hidden_, hidden, false);
      ac_.update(delta);
      if (learn && !config_.ablation.disable_td_modulation) {
        // The modulation drive is the TD error normalized to the reward
        // scale, keeping the extra adaptation rate bounded across tasks
        // with different value magnitudes.
        const double drive = (1.0 - config_.ac.gamma) * delta;
        layer1_.modulate_td(drive);
        if (layer2_) layer2_->modulate_td(drive);
      }
    }
    ac_.decay_traces();
    layer1_.decay_traces();
    if (layer2_) layer2_->decay_traces();

    if (truncated) {
      finalize_episode();
      return kNoAction;
    }
    const std::size_t action = ac_.select_action(hidden, epsilon_, rng);
    prev_hidden_ = hidden;
    ++step_in_episode_;
    return static_cast<int>(action);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) + " (episode " + std::to_string(episode_) +
                         ", step " + std::to_string(step_in_episode_) + ")");
  } catch (const InputError& e) {
    throw InputError(std::string(e.what()) + " (episode " + std::to_string(episode_) + ", step " +
                     std::to_string(step_in_episode_) + ")");
  }
}

void ClusteringAgent::finalize_episode() {
  ac_.reset_traces();
  layer1_.reset_traces();
  if (layer2_) layer2_->reset_traces();
  prev_hidden_.reset();
  step_in_episode_ = 0;
}

void ClusteringAgent::advance_episode() {
  ++episode_;
  epsilon_ = config_.ac.epsilon.at(episode_);
  layer1_.set_episode(episode_);
  if (layer2_) layer2_->set_episode(episode_);
}

std::unique_ptr<ClusteringAgent> make_clustering_agent(const AgentConfig& config,
                                                       const EnvSpec& env, Rng& init_rng) {
  return std::make_unique<ClusteringAgent>(config, env, init_rng);
}

}  // namespace snnrl
