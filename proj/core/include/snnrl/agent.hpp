#pragma once

#include <memory>
#include <optional>
#include <span>

#include "snnrl/actor_critic.hpp"
#include "snnrl/clustering.hpp"
#include "snnrl/environments.hpp"
#include "snnrl/normalizer.hpp"

namespace snnrl {

/// Runtime contract shared by every learner the harness can drive.
class Agent {
 public:
  /// Returned instead of an action when the step closed the episode.
  static constexpr int kNoAction = -1;

  virtual ~Agent() = default;

  /// Consumes the environment's response to the previous action and returns
  /// the next action, or kNoAction when terminal/truncated ended the
  /// episode. The first call of an episode carries no previous transition;
  /// its reward is ignored.
  virtual int step(std::span<const double> observation, double reward, bool terminal,
                   bool truncated, Rng& rng) = 0;

  /// Advances episode-indexed schedules at the episode boundary.
  virtual void advance_episode() = 0;

  /// Number of distinct hidden states the decision layer can observe.
  virtual std::size_t hidden_state_count() const = 0;
};

/// First-layer wiring of the clustering network.
enum class Encoding { FullyConnected, PerDimensionGroups };

struct AblationFlags {
  bool disable_unsupervised = false;
  bool disable_td_modulation = false;
  bool static_clusters = false;  // implies both flags above
};

struct LayerConfig {
  /// Total neurons for a fully connected layer; neurons per input-dimension
  /// group for the grouped encoding.
  std::size_t neurons = 0;
  ClusterLayerParams params;
};

struct AcConfig {
  double gamma = 0.0;
  double eta_a = 0.0;
  double eta_c = 0.0;
  double tau_a = 0.0;
  double tau_c = 0.0;
  double value_init = 0.0;
  EpsilonSchedule epsilon;
};

struct AgentConfig {
  Encoding encoding = Encoding::FullyConnected;
  LayerConfig layer1;
  std::optional<LayerConfig> layer2;  // required for PerDimensionGroups
  AcConfig ac;
  AblationFlags ablation;
};

/// The full network: adaptive clustering layer(s) reduce the real-valued
/// observation to a single hidden index, and a trace-based actor-critic
/// learns over that index. One instance per run.
class ClusteringAgent final : public Agent {
 public:
  ClusteringAgent(const AgentConfig& config, const EnvSpec& env, Rng& init_rng);

  int step(std::span<const double> observation, double reward, bool terminal, bool truncated,
           Rng& rng) override;
  void advance_episode() override;
  std::size_t hidden_state_count() const override;

  const ClusterLayer& layer1() const { return layer1_; }
  ClusterLayer& layer1() { return layer1_; }
  const std::optional<ClusterLayer>& layer2() const { return layer2_; }
  std::optional<ClusterLayer>& layer2() { return layer2_; }
  const ActorCritic& actor_critic() const { return ac_; }
  ActorCritic& actor_critic() { return ac_; }
  const Normalizer& normalizer() const { return normalizer_; }
  double epsilon() const { return epsilon_; }
  int episode() const { return episode_; }
  std::optional<std::size_t> last_hidden() const { return prev_hidden_; }

  /// Evaluates the hidden index for an observation without learning.
  std::size_t evaluate_hidden(std::span<const double> observation);

 private:
  void finalize_episode();

  AgentConfig config_;
  Normalizer normalizer_;
  ClusterLayer layer1_;
  std::optional<ClusterLayer> layer2_;
  ActorCritic ac_;
  double epsilon_ = 1.0;
  int episode_ = 0;
  int step_in_episode_ = 0;
  std::optional<std::size_t> prev_hidden_;
  std::vector<double> normalized_;
  LayerActivation activation1_;
  LayerActivation activation2_;
};

std::unique_ptr<ClusteringAgent> make_clustering_agent(const AgentConfig& config,
                                                       const EnvSpec& env, Rng& init_rng);

}  // namespace snnrl
