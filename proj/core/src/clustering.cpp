#include "snnrl/clustering.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "snnrl/errors.hpp"

namespace snnrl {

namespace {

void validate_params(const ClusterLayerParams& p) {
  if (p.eta.initial <= 0.0 || p.eta.factor <= 0.0 || p.eta.factor > 1.0 ||
      p.eta.decay_episodes < 1) {
    throw ConfigError("cluster layer: eta schedule must be positive and non-increasing");
  }
  if (p.theta_open.initial <= 0.0 || p.theta_open.factor <= 0.0 || p.theta_open.factor > 1.0 ||
      p.theta_open.decay_episodes < 1) {
    throw ConfigError("cluster layer: theta_open schedule must be positive and non-increasing");
  }
  if (p.eta_th <= 0.0) throw ConfigError("cluster layer: eta_th must be > 0");
  if (p.eta_td < 0.0) throw ConfigError("cluster layer: eta_td must be >= 0");
  if (p.tau_trace <= 1.0) throw ConfigError("cluster layer: tau_trace must be > 1");
}

}  // namespace

void compute_values(const ClusterGroup& group, std::span<const double> context,
                    std::vector<double>& out) {
  const std::size_t dim = group.input_slice.length;
  if (context.size() != dim) {
    throw ConfigError("compute_values: context dimension " + std::to_string(context.size()) +
                      " does not match group input slice length " + std::to_string(dim));
  }
  for (std::size_t d = 0; d < dim; ++d) {
    if (!std::isfinite(context[d])) {
      throw InputError("compute_values: non-finite input at dimension " + std::to_string(d));
    }
  }
  out.resize(group.neurons.size());
  for (std::size_t i = 0; i < group.neurons.size(); ++i) {
    const auto& w = group.neurons[i].weights;
    if (w.size() != dim) {
      throw ConfigError("compute_values: neuron " + std::to_string(i) + " has weight dimension " +
                        std::to_string(w.size()) + ", expected " + std::to_string(dim));
    }
    double sq = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double diff = w[d] - context[d];
      sq += diff * diff;
    }
    out[i] = std::sqrt(sq);
  }
}

std::vector<double> compute_values(const ClusterGroup& group, std::span<const double> context) {
  std::vector<double> out;
  compute_values(group, context, out);
  return out;
}

std::pair<std::size_t, bool> select_winner(std::span<const double> values,
                                           std::span<const double> thresholds) {
  if (values.empty() || values.size() != thresholds.size()) {
    throw ConfigError("select_winner: values and thresholds must have equal nonzero length");
  }
  std::size_t best_eligible = values.size();
  double best_eligible_value = std::numeric_limits<double>::infinity();
  std::size_t best_any = 0;
  double best_any_value = values[0];
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < best_any_value) {
      best_any_value = values[i];
      best_any = i;
    }
    if (values[i] <= thresholds[i] && values[i] < best_eligible_value) {
      best_eligible_value = values[i];
      best_eligible = i;
    }
  }
  if (best_eligible < values.size()) return {best_eligible, true};
  return {best_any, false};
}

void open_thresholds(ClusterGroup& group, double theta_open) {
  for (auto& n : group.neurons) n.threshold += theta_open;
}

void record_win(ClusterNeuron& neuron, std::span<const double> context, double value) {
  neuron.last_win_context.emplace(context.begin(), context.end());
  neuron.last_win_value = value;
  neuron.trace = 1.0;
}

void adapt_winner(ClusterNeuron& neuron, std::span<const double> context, double value,
                  double eta, double eta_th) {
  neuron.threshold += eta_th * (value - neuron.threshold);
  if (neuron.threshold < 0.0) neuron.threshold = 0.0;
  for (std::size_t d = 0; d < neuron.weights.size(); ++d) {
    neuron.weights[d] += eta * (context[d] - neuron.weights[d]);
  }
  record_win(neuron, context, value);
}

ClusterLayer::ClusterLayer(const ClusterLayerParams& params, std::vector<InputSlice> slices,
                           std::size_t neurons_per_group, double initial_threshold, Rng& rng)
    : params_(params) {
  validate_params(params_);
  if (slices.empty()) throw ConfigError("cluster layer: at least one group required");
  if (neurons_per_group == 0) throw ConfigError("cluster layer: groups must be non-empty");
  if (initial_threshold < 0.0) throw ConfigError("cluster layer: initial threshold must be >= 0");
  groups_.reserve(slices.size());
  for (const auto& slice : slices) {
    if (slice.length == 0) throw ConfigError("cluster layer: empty input slice");
    input_dim_ = std::max(input_dim_, slice.offset + slice.length);
    ClusterGroup g;
    g.input_slice = slice;
    g.neurons.resize(neurons_per_group);
    for (auto& n : g.neurons) {
      n.weights.resize(slice.length);
      for (auto& w : n.weights) w = rng.uniform();
      n.threshold = initial_threshold;
    }
    groups_.push_back(std::move(g));
  }
  neuron_count_ = slices.size() * neurons_per_group;
  set_episode(0);
}

ClusterLayer ClusterLayer::fully_connected(const ClusterLayerParams& params, std::size_t input_dim,
                                           std::size_t neuron_count, double initial_threshold,
                                           Rng& rng) {
  return ClusterLayer(params, {InputSlice{0, input_dim}}, neuron_count, initial_threshold, rng);
}

ClusterLayer ClusterLayer::per_dimension(const ClusterLayerParams& params, std::size_t input_dim,
                                         std::size_t neurons_per_group, double initial_threshold,
                                         Rng& rng) {
  std::vector<InputSlice> slices;
  slices.reserve(input_dim);
  for (std::size_t d = 0; d < input_dim; ++d) slices.push_back(InputSlice{d, 1});
  return ClusterLayer(params, std::move(slices), neurons_per_group, initial_threshold, rng);
}

void ClusterLayer::forward(std::span<const double> context, bool learn, bool unsupervised,
                           LayerActivation& out) {
  if (context.size() != input_dim_) {
    throw ConfigError("cluster layer forward: context dimension " +
                      std::to_string(context.size()) + " does not match layer input dimension " +
                      std::to_string(input_dim_));
  }
  out.winners.clear();
  out.eligible.clear();
  out.one_hot.assign(neuron_count_, 0.0);
  step_contexts_.resize(groups_.size());
  step_values_.resize(groups_.size());
  step_winners_.assign(groups_.size(), -1);
  std::size_t base = 0;
  bool any_miss = false;
  for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
    auto& g = groups_[gi];
    const auto ctx = context.subspan(g.input_slice.offset, g.input_slice.length);
    step_contexts_[gi].assign(ctx.begin(), ctx.end());
    compute_values(g, ctx, step_values_[gi]);
    const auto& values = step_values_[gi];
    thresholds_scratch_.resize(g.neurons.size());
    for (std::size_t i = 0; i < g.neurons.size(); ++i) {
      thresholds_scratch_[i] = g.neurons[i].threshold;
    }
    const auto [winner, eligible] = select_winner(values, thresholds_scratch_);
    if (learn) {
      if (eligible) {
        // Thresholds track the matched distances whether or not clustering
        // is enabled; the ablation disables only the weight movement.
        adapt_winner(g.neurons[winner], ctx, values[winner], unsupervised ? eta_ : 0.0,
                     params_.eta_th);
        step_winners_[gi] = static_cast<std::ptrdiff_t>(winner);
      } else if (params_.opening_scope == OpeningScope::Group) {
        open_thresholds(g, theta_open_);
      } else {
        any_miss = true;
      }
    }
    out.winners.push_back(winner);
    out.eligible.push_back(eligible);
    out.one_hot[base + winner] = 1.0;
    base += g.neurons.size();
  }
  if (learn && any_miss) {
    for (auto& g : groups_) open_thresholds(g, theta_open_);
  }
}

LayerActivation ClusterLayer::forward(std::span<const double> context, bool learn,
                                      bool unsupervised) {
  LayerActivation out;
  forward(context, learn, unsupervised, out);
  return out;
}

void ClusterLayer::modulate_td(double delta) {
  if (!std::isfinite(delta)) {
    throw NumericalError("modulate_td: non-finite TD error");
  }
  if (delta == 0.0) return;
  const double abs_delta = std::abs(delta);
  for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
    if (step_winners_.size() != groups_.size() || step_winners_[gi] < 0) continue;
    auto& g = groups_[gi];
    auto& n = g.neurons[static_cast<std::size_t>(step_winners_[gi])];
    if (n.trace <= kTraceCutoff) continue;
    const double scale = params_.eta_td * abs_delta * n.trace;
    n.threshold += scale * (step_values_[gi][static_cast<std::size_t>(step_winners_[gi])] -
                            n.threshold);
    if (n.threshold < 0.0) n.threshold = 0.0;
    const auto& ctx = step_contexts_[gi];
    for (std::size_t d = 0; d < n.weights.size(); ++d) {
      n.weights[d] += scale * (ctx[d] - n.weights[d]);
    }
  }
}

void ClusterLayer::decay_traces() {
  for (auto& g : groups_) {
    for (auto& n : g.neurons) n.trace -= n.trace / params_.tau_trace;
  }
}

void ClusterLayer::reset_traces() {
  for (auto& g : groups_) {
    for (auto& n : g.neurons) n.trace = 0.0;
  }
}

void ClusterLayer::set_episode(int episode) {
  eta_ = params_.eta.at(episode);
  theta_open_ = params_.theta_open.at(episode);
}

}  // namespace snnrl
