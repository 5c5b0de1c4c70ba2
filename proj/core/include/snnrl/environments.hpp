#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "snnrl/random.hpp"

namespace snnrl {

/// Static environment metadata. The observation bounds feed the input
/// normalizer (unbounded dimensions carry documented clip ranges), and
/// higher_latency_better fixes the objective direction for summaries.
struct EnvSpec {
  std::string name;
  std::size_t observation_dim = 0;
  std::size_t action_count = 0;
  int time_limit = 0;
  std::vector<std::pair<double, double>> observation_bounds;
  bool higher_latency_better = false;
};

struct StepResult {
  std::vector<double> observation;
  double reward = 0.0;
  bool terminal = false;
  bool truncated = false;
};

/// Uniform reset/step contract. Instances are exclusive to one run.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual const EnvSpec& spec() const = 0;
  virtual std::span<const double> reset(Rng& rng) = 0;
  virtual const StepResult& step(int action) = 0;
};

/// Car in a valley; actions push left/none/right. Reward -1 per step,
/// 0 on the step that reaches the goal position. Truncates at 200 steps.
class MountainCar final : public Environment {
 public:
  MountainCar();
  const EnvSpec& spec() const override { return spec_; }
  std::span<const double> reset(Rng& rng) override;
  const StepResult& step(int action) override;
  void set_state(double position, double velocity);

 private:
  EnvSpec spec_;
  StepResult result_;
  double position_ = 0.0;
  double velocity_ = 0.0;
  int steps_ = 0;
  bool done_ = true;
};

/// Pole balancing on a cart; reward +1 per surviving step, 0 on the step
/// that drops the pole or leaves the track. Truncates at 500 steps.
class CartPole final : public Environment {
 public:
  CartPole();
  const EnvSpec& spec() const override { return spec_; }
  std::span<const double> reset(Rng& rng) override;
  const StepResult& step(int action) override;
  void set_state(double x, double x_dot, double theta, double theta_dot);

 private:
  EnvSpec spec_;
  StepResult result_;
  double x_ = 0.0, x_dot_ = 0.0, theta_ = 0.0, theta_dot_ = 0.0;
  int steps_ = 0;
  bool done_ = true;
};

/// Two-link underactuated pendulum, torque on the second joint. Reward -1
/// per step, 0 on the step that lifts the tip above the target height.
/// Observation is [cos t1, sin t1, cos t2, sin t2, w1, w2].
class Acrobot final : public Environment {
 public:
  Acrobot();
  const EnvSpec& spec() const override { return spec_; }
  std::span<const double> reset(Rng& rng) override;
  const StepResult& step(int action) override;
  void set_state(double theta1, double theta2, double omega1, double omega2);

 private:
  void fill_observation();

  EnvSpec spec_;
  StepResult result_;
  double theta1_ = 0.0, theta2_ = 0.0, omega1_ = 0.0, omega2_ = 0.0;
  int steps_ = 0;
  bool done_ = true;
};

/// Diagnostic chain of 100 positions traversed left to right by a single
/// action. Reward +1 on the step entering position 90; the episode ends at
/// position 100 and the next reset restarts at position 1.
class LinearTrack final : public Environment {
 public:
  LinearTrack();
  const EnvSpec& spec() const override { return spec_; }
  std::span<const double> reset(Rng& rng) override;
  const StepResult& step(int action) override;
  int position() const { return position_; }

 private:
  EnvSpec spec_;
  StepResult result_;
  int position_ = 1;
  bool done_ = true;
};

/// 1-D Gaussian mixture stream for clustering diagnostics. Samples clip
/// to [0, 1].
class GaussianMixture {
 public:
  GaussianMixture();  // means (0.2, 0.5, 0.8), std 0.03, equal weights
  GaussianMixture(std::vector<double> means, std::vector<double> stds,
                  std::vector<double> weights);
  double sample(Rng& rng) const;
  double mean() const;
  const std::vector<double>& means() const { return means_; }

 private:
  std::vector<double> means_;
  std::vector<double> stds_;
  std::vector<double> weights_;  // normalized
};

std::unique_ptr<Environment> make_environment(const std::string& name);

/// Every constant of the environment dynamics, exported into run manifests
/// so third parties can verify trajectories bit for bit.
std::map<std::string, double> physics_constants(const std::string& env_name);

}  // namespace snnrl
