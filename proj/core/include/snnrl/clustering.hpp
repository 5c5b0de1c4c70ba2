#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "snnrl/random.hpp"
#include "snnrl/schedule.hpp"

namespace snnrl {

/// One clustering unit: a weight vector, a scalar selection threshold
/// (receptive-field radius), an activation trace, and a snapshot of the
/// most recent eligible win used by TD modulation.
struct ClusterNeuron {
  std::vector<double> weights;
  double threshold = 0.0;
  double trace = 0.0;
  std::optional<std::vector<double>> last_win_context;
  std::optional<double> last_win_value;
};

/// Contiguous range of the layer input read by one group.
struct InputSlice {
  std::size_t offset = 0;
  std::size_t length = 0;
};

/// Neurons sharing one winner-take-all domain.
struct ClusterGroup {
  std::vector<ClusterNeuron> neurons;
  InputSlice input_slice;
};

/// Result of one forward pass: one winner per group, eligibility flags,
/// and the layer-wide activation vector (one set bit per group).
struct LayerActivation {
  std::vector<std::size_t> winners;
  std::vector<bool> eligible;
  std::vector<double> one_hot;
};

/// How a group reacts when no neuron is eligible.
enum class OpeningScope { Group, Layer };

struct ClusterLayerParams {
  DecaySchedule eta;         // weight update rate, scheduled per episode
  double eta_th = 0.0;       // threshold update rate, fixed
  DecaySchedule theta_open;  // threshold-opening increment, scheduled
  double eta_td = 0.0;       // TD-modulation rate
  double tau_trace = 0.0;    // activation-trace time constant, > 1
  OpeningScope opening_scope = OpeningScope::Group;
};

/// Traces below this contribute nothing to modulation and are skipped.
inline constexpr double kTraceCutoff = 1e-6;

/// Euclidean distance of the context to every neuron weight vector in the
/// group. Context must match the group's input slice length.
std::vector<double> compute_values(const ClusterGroup& group, std::span<const double> context);
void compute_values(const ClusterGroup& group, std::span<const double> context,
                    std::vector<double>& out);

/// Winner-take-all selection. The winner is the minimum-value neuron among
/// those with value <= threshold; when none qualifies, the global minimum
/// wins but is marked ineligible. Ties break to the lowest index.
std::pair<std::size_t, bool> select_winner(std::span<const double> values,
                                           std::span<const double> thresholds);

/// Uniform additive threshold increase for a group whose step had no
/// eligible neuron.
void open_thresholds(ClusterGroup& group, double theta_open);

/// Records an eligible win: snapshot of context and value, trace set to 1.
void record_win(ClusterNeuron& neuron, std::span<const double> context, double value);

/// Unsupervised adaptation of an eligible winner: threshold moves toward
/// the observed value, weights move toward the context, win recorded.
/// The threshold is clamped at 0 from below.
void adapt_winner(ClusterNeuron& neuron, std::span<const double> context, double value,
                  double eta, double eta_th);

/// Online clustering layer: ordered groups of adaptive-threshold neurons
/// with grouped WTA activation, scheduled adaptation rates, and TD-error
/// modulation. Exclusive-access state machine; one layer per run.
class ClusterLayer {
 public:
  /// Builds a layer with `neurons_per_group` neurons on each of the given
  /// input slices. Weights initialize uniformly in [0, 1] per dimension;
  /// thresholds start at `initial_threshold` (0 for adaptive layers).
  ClusterLayer(const ClusterLayerParams& params, std::vector<InputSlice> slices,
               std::size_t neurons_per_group, double initial_threshold, Rng& rng);

  static ClusterLayer fully_connected(const ClusterLayerParams& params, std::size_t input_dim,
                                      std::size_t neuron_count, double initial_threshold,
                                      Rng& rng);
  static ClusterLayer per_dimension(const ClusterLayerParams& params, std::size_t input_dim,
                                    std::size_t neurons_per_group, double initial_threshold,
                                    Rng& rng);

  /// One step of the layer. With learn=true the eligible winner of each
  /// group adapts (threshold always tracks the matched distance; weights
  /// move only when unsupervised=true) and groups without an eligible
  /// neuron open their thresholds. learn=false evaluates without mutating
  /// any state.
  LayerActivation forward(std::span<const double> context, bool learn, bool unsupervised = true);
  void forward(std::span<const double> context, bool learn, bool unsupervised,
               LayerActivation& out);

  /// TD-error modulation: repeats the latest forward pass's winner
  /// adaptation at the extra rate eta_td * |delta| * trace, so receptive
  /// fields tighten onto the input faster wherever the broadcast surprise
  /// is high. delta is expected on the reward scale; zero is a no-op.
  /// Must run after forward and before decay_traces within a step.
  void modulate_td(double delta);

  /// Exponential trace decay, once per environment step after modulation.
  void decay_traces();

  /// Clears traces at an episode boundary. Win snapshots persist.
  void reset_traces();

  /// Refreshes the scheduled eta and theta_open values.
  void set_episode(int episode);

  std::size_t input_dim() const { return input_dim_; }
  std::size_t neuron_count() const { return neuron_count_; }
  std::size_t group_count() const { return groups_.size(); }
  const std::vector<ClusterGroup>& groups() const { return groups_; }
  std::vector<ClusterGroup>& groups() { return groups_; }
  const ClusterLayerParams& params() const { return params_; }
  double eta() const { return eta_; }
  double theta_open() const { return theta_open_; }

 private:
  ClusterLayerParams params_;
  std::vector<ClusterGroup> groups_;
  std::size_t input_dim_ = 0;
  std::size_t neuron_count_ = 0;
  double eta_ = 0.0;
  double theta_open_ = 0.0;
  std::vector<double> thresholds_scratch_;
  // Per-group context, neuron values, and eligible winner of the latest
  // forward pass. Modulation reuses the context/values as its adaptation
  // deltas and skips the step's own winners: their spike postdates the
  // transition the TD error scores, so only earlier activations carry it.
  std::vector<std::vector<double>> step_contexts_;
  std::vector<std::vector<double>> step_values_;
  std::vector<std::ptrdiff_t> step_winners_;
};

}  // namespace snnrl
