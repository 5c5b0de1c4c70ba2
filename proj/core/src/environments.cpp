#include "snnrl/environments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "snnrl/errors.hpp"

namespace snnrl {

namespace {

constexpr double kPi = std::numbers::pi;

void check_action(int action, const EnvSpec& spec) {
  if (action < 0 || static_cast<std::size_t>(action) >= spec.action_count) {
    throw InputError(spec.name + ": invalid action index " + std::to_string(action));
  }
}

void check_live(bool done, const EnvSpec& spec) {
  if (done) throw InputError(spec.name + ": step called before reset or after episode end");
}

// Mountain car dynamics.
namespace mc {
constexpr double kForce = 0.001;
constexpr double kGravity = 0.0025;
constexpr double kMinPosition = -1.2;
constexpr double kMaxPosition = 0.6;
constexpr double kMaxSpeed = 0.07;
constexpr double kGoalPosition = 0.5;
constexpr double kStartLow = -0.6;
constexpr double kStartHigh = -0.4;
constexpr int kTimeLimit = 200;
}  // namespace mc

// Cart-pole dynamics (Euler integration).
namespace cp {
constexpr double kGravity = 9.8;
constexpr double kCartMass = 1.0;
constexpr double kPoleMass = 0.1;
constexpr double kTotalMass = kCartMass + kPoleMass;
constexpr double kHalfLength = 0.5;
constexpr double kPoleMassLength = kPoleMass * kHalfLength;
constexpr double kForceMag = 10.0;
constexpr double kDt = 0.02;
constexpr double kThetaLimit = 12.0 * kPi / 180.0;
constexpr double kXLimit = 2.4;
constexpr double kStartRange = 0.05;
constexpr int kTimeLimit = 500;
// Documented clip bounds for the unbounded velocity dimensions.
constexpr double kCartVelClip = 3.0;
constexpr double kPoleVelClip = 4.0;
}  // namespace cp

// Acrobot dynamics (single RK4 step per action).
namespace ab {
constexpr double kLinkLength1 = 1.0;
constexpr double kLinkMass1 = 1.0;
constexpr double kLinkMass2 = 1.0;
constexpr double kLinkCom1 = 0.5;
constexpr double kLinkCom2 = 0.5;
constexpr double kLinkInertia = 1.0;
constexpr double kGravity = 9.8;
constexpr double kDt = 0.2;
constexpr double kMaxVel1 = 4.0 * kPi;
constexpr double kMaxVel2 = 9.0 * kPi;
constexpr double kStartRange = 0.1;
constexpr double kGoalHeight = 1.0;
constexpr int kTimeLimit = 500;
}  // namespace ab

namespace track {
constexpr int kLength = 100;
constexpr int kRewardPosition = 90;
constexpr int kStart = 1;
}  // namespace track

double wrap_angle(double x) {
  while (x > kPi) x -= 2.0 * kPi;
  while (x < -kPi) x += 2.0 * kPi;
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------
// Mountain car

MountainCar::MountainCar() {
  spec_.name = "mountain_car";
  spec_.observation_dim = 2;
  spec_.action_count = 3;
  spec_.time_limit = mc::kTimeLimit;
  spec_.observation_bounds = {{mc::kMinPosition, mc::kMaxPosition}, {-mc::kMaxSpeed, mc::kMaxSpeed}};
  spec_.higher_latency_better = false;
  result_.observation.resize(2);
}

std::span<const double> MountainCar::reset(Rng& rng) {
  position_ = rng.uniform(mc::kStartLow, mc::kStartHigh);
  velocity_ = 0.0;
  steps_ = 0;
  done_ = false;
  result_.observation = {position_, velocity_};
  result_.reward = 0.0;
  result_.terminal = false;
  result_.truncated = false;
  return result_.observation;
}

void MountainCar::set_state(double position, double velocity) {
  position_ = position;
  velocity_ = velocity;
  steps_ = 0;
  done_ = false;
}

const StepResult& MountainCar::step(int action) {
  check_live(done_, spec_);
  check_action(action, spec_);
  velocity_ += mc::kForce * (action - 1) - mc::kGravity * std::cos(3.0 * position_);
  velocity_ = std::clamp(velocity_, -mc::kMaxSpeed, mc::kMaxSpeed);
  position_ += velocity_;
  position_ = std::clamp(position_, mc::kMinPosition, mc::kMaxPosition);
  if (position_ <= mc::kMinPosition && velocity_ < 0.0) velocity_ = 0.0;
  ++steps_;
  const bool terminal = position_ >= mc::kGoalPosition;
  result_.observation[0] = position_;
  result_.observation[1] = velocity_;
  result_.reward = terminal ? 0.0 : -1.0;
  result_.terminal = terminal;
  result_.truncated = !terminal && steps_ >= spec_.time_limit;
  done_ = result_.terminal || result_.truncated;
  return result_;
}

// ---------------------------------------------------------------------------
// Cart-pole

CartPole::CartPole() {
  spec_.name = "cartpole";
  spec_.observation_dim = 4;
  spec_.action_count = 2;
  spec_.time_limit = cp::kTimeLimit;
  spec_.observation_bounds = {{-cp::kXLimit, cp::kXLimit},
                              {-cp::kCartVelClip, cp::kCartVelClip},
                              {-cp::kThetaLimit, cp::kThetaLimit},
                              {-cp::kPoleVelClip, cp::kPoleVelClip}};
  spec_.higher_latency_better = true;
  result_.observation.resize(4);
}

std::span<const double> CartPole::reset(Rng& rng) {
  x_ = rng.uniform(-cp::kStartRange, cp::kStartRange);
  x_dot_ = rng.uniform(-cp::kStartRange, cp::kStartRange);
  theta_ = rng.uniform(-cp::kStartRange, cp::kStartRange);
  theta_dot_ = rng.uniform(-cp::kStartRange, cp::kStartRange);
  steps_ = 0;
  done_ = false;
  result_.observation = {x_, x_dot_, theta_, theta_dot_};
  result_.reward = 0.0;
  result_.terminal = false;
  result_.truncated = false;
  return result_.observation;
}

void CartPole::set_state(double x, double x_dot, double theta, double theta_dot) {
  x_ = x;
  x_dot_ = x_dot;
  theta_ = theta;
  theta_dot_ = theta_dot;
  steps_ = 0;
  done_ = false;
}

const StepResult& CartPole::step(int action) {
  check_live(done_, spec_);
  check_action(action, spec_);
  const double force = action == 1 ? cp::kForceMag : -cp::kForceMag;
  const double cos_theta = std::cos(theta_);
  const double sin_theta = std::sin(theta_);
  const double temp =
      (force + cp::kPoleMassLength * theta_dot_ * theta_dot_ * sin_theta) / cp::kTotalMass;
  const double theta_acc =
      (cp::kGravity * sin_theta - cos_theta * temp) /
      (cp::kHalfLength * (4.0 / 3.0 - cp::kPoleMass * cos_theta * cos_theta / cp::kTotalMass));
  const double x_acc = temp - cp::kPoleMassLength * theta_acc * cos_theta / cp::kTotalMass;
  x_ += cp::kDt * x_dot_;
  x_dot_ += cp::kDt * x_acc;
  theta_ += cp::kDt * theta_dot_;
  theta_dot_ += cp::kDt * theta_acc;
  ++steps_;
  const bool terminal = std::abs(x_) > cp::kXLimit || std::abs(theta_) > cp::kThetaLimit;
  result_.observation[0] = x_;
  result_.observation[1] = x_dot_;
  result_.observation[2] = theta_;
  result_.observation[3] = theta_dot_;
  result_.reward = terminal ? 0.0 : 1.0;
  result_.terminal = terminal;
  result_.truncated = !terminal && steps_ >= spec_.time_limit;
  done_ = result_.terminal || result_.truncated;
  return result_;
}

// ---------------------------------------------------------------------------
// Acrobot

namespace {

// State derivative for the two-link pendulum, torque applied at the joint
// between the links.
std::array<double, 4> acrobot_dsdt(const std::array<double, 4>& s, double torque) {
  const double theta1 = s[0], theta2 = s[1], dtheta1 = s[2], dtheta2 = s[3];
  const double m1 = ab::kLinkMass1, m2 = ab::kLinkMass2;
  const double l1 = ab::kLinkLength1;
  const double lc1 = ab::kLinkCom1, lc2 = ab::kLinkCom2;
  const double i1 = ab::kLinkInertia, i2 = ab::kLinkInertia;
  const double g = ab::kGravity;
  const double d1 =
      m1 * lc1 * lc1 + m2 * (l1 * l1 + lc2 * lc2 + 2.0 * l1 * lc2 * std::cos(theta2)) + i1 + i2;
  const double d2 = m2 * (lc2 * lc2 + l1 * lc2 * std::cos(theta2)) + i2;
  const double phi2 = m2 * lc2 * g * std::cos(theta1 + theta2 - kPi / 2.0);
  const double phi1 = -m2 * l1 * lc2 * dtheta2 * dtheta2 * std::sin(theta2) -
                      2.0 * m2 * l1 * lc2 * dtheta2 * dtheta1 * std::sin(theta2) +
                      (m1 * lc1 + m2 * l1) * g * std::cos(theta1 - kPi / 2.0) + phi2;
  const double ddtheta2 =
      (torque + d2 / d1 * phi1 - m2 * l1 * lc2 * dtheta1 * dtheta1 * std::sin(theta2) - phi2) /
      (m2 * lc2 * lc2 + i2 - d2 * d2 / d1);
  const double ddtheta1 = -(d2 * ddtheta2 + phi1) / d1;
  return {dtheta1, dtheta2, ddtheta1, ddtheta2};
}

std::array<double, 4> rk4_step(const std::array<double, 4>& s, double torque, double dt) {
  const auto k1 = acrobot_dsdt(s, torque);
  std::array<double, 4> tmp;
  for (int i = 0; i < 4; ++i) tmp[i] = s[i] + dt / 2.0 * k1[i];
  const auto k2 = acrobot_dsdt(tmp, torque);
  for (int i = 0; i < 4; ++i) tmp[i] = s[i] + dt / 2.0 * k2[i];
  const auto k3 = acrobot_dsdt(tmp, torque);
  for (int i = 0; i < 4; ++i) tmp[i] = s[i] + dt * k3[i];
  const auto k4 = acrobot_dsdt(tmp, torque);
  std::array<double, 4> out;
  for (int i = 0; i < 4; ++i) {
    out[i] = s[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

}  // namespace

Acrobot::Acrobot() {
  spec_.name = "acrobot";
  spec_.observation_dim = 6;
  spec_.action_count = 3;
  spec_.time_limit = ab::kTimeLimit;
  spec_.observation_bounds = {{-1.0, 1.0},          {-1.0, 1.0},          {-1.0, 1.0},
                              {-1.0, 1.0},          {-ab::kMaxVel1, ab::kMaxVel1},
                              {-ab::kMaxVel2, ab::kMaxVel2}};
  spec_.higher_latency_better = false;
  result_.observation.resize(6);
}

void Acrobot::fill_observation() {
  result_.observation[0] = std::cos(theta1_);
  result_.observation[1] = std::sin(theta1_);
  result_.observation[2] = std::cos(theta2_);
  result_.observation[3] = std::sin(theta2_);
  result_.observation[4] = omega1_;
  result_.observation[5] = omega2_;
}

std::span<const double> Acrobot::reset(Rng& rng) {
  theta1_ = rng.uniform(-ab::kStartRange, ab::kStartRange);
  theta2_ = rng.uniform(-ab::kStartRange, ab::kStartRange);
  omega1_ = rng.uniform(-ab::kStartRange, ab::kStartRange);
  omega2_ = rng.uniform(-ab::kStartRange, ab::kStartRange);
  steps_ = 0;
  done_ = false;
  fill_observation();
  result_.reward = 0.0;
  result_.terminal = false;
  result_.truncated = false;
  return result_.observation;
}

void Acrobot::set_state(double theta1, double theta2, double omega1, double omega2) {
  theta1_ = theta1;
  theta2_ = theta2;
  omega1_ = omega1;
  omega2_ = omega2;
  steps_ = 0;
  done_ = false;
}

const StepResult& Acrobot::step(int action) {
  check_live(done_, spec_);
  check_action(action, spec_);
  const double torque = static_cast<double>(action - 1);
  const auto next = rk4_step({theta1_, theta2_, omega1_, omega2_}, torque, ab::kDt);
  theta1_ = wrap_angle(next[0]);
  theta2_ = wrap_angle(next[1]);
  omega1_ = std::clamp(next[2], -ab::kMaxVel1, ab::kMaxVel1);
  omega2_ = std::clamp(next[3], -ab::kMaxVel2, ab::kMaxVel2);
  ++steps_;
  const bool terminal = -std::cos(theta1_) - std::cos(theta2_ + theta1_) > ab::kGoalHeight;
  fill_observation();
  result_.reward = terminal ? 0.0 : -1.0;
  result_.terminal = terminal;
  result_.truncated = !terminal && steps_ >= spec_.time_limit;
  done_ = result_.terminal || result_.truncated;
  return result_;
}

// ---------------------------------------------------------------------------
// Linear track

LinearTrack::LinearTrack() {
  spec_.name = "linear_track";
  spec_.observation_dim = 1;
  spec_.action_count = 1;
  spec_.time_limit = track::kLength - 1;
  spec_.observation_bounds = {{static_cast<double>(track::kStart), static_cast<double>(track::kLength)}};
  spec_.higher_latency_better = false;
  result_.observation.resize(1);
}

std::span<const double> LinearTrack::reset(Rng&) {
  position_ = track::kStart;
  done_ = false;
  result_.observation[0] = static_cast<double>(position_);
  result_.reward = 0.0;
  result_.terminal = false;
  result_.truncated = false;
  return result_.observation;
}

const StepResult& LinearTrack::step(int action) {
  check_live(done_, spec_);
  check_action(action, spec_);
  ++position_;
  result_.observation[0] = static_cast<double>(position_);
  result_.reward = position_ == track::kRewardPosition ? 1.0 : 0.0;
  result_.terminal = position_ >= track::kLength;
  result_.truncated = false;
  done_ = result_.terminal;
  return result_;
}

// ---------------------------------------------------------------------------
// Gaussian mixture stream

GaussianMixture::GaussianMixture()
    : GaussianMixture({0.2, 0.5, 0.8}, {0.03, 0.03, 0.03}, {1.0, 1.0, 1.0}) {}

GaussianMixture::GaussianMixture(std::vector<double> means, std::vector<double> stds,
                                 std::vector<double> weights)
    : means_(std::move(means)), stds_(std::move(stds)), weights_(std::move(weights)) {
  if (means_.empty() || means_.size() != stds_.size() || means_.size() != weights_.size()) {
    throw ConfigError("gaussian mixture: means/stds/weights must have equal nonzero length");
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (total <= 0.0) throw ConfigError("gaussian mixture: weights must sum to a positive value");
  for (auto& w : weights_) w /= total;
}

double GaussianMixture::sample(Rng& rng) const {
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t component = means_.size() - 1;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    cumulative += weights_[i];
    if (u < cumulative) {
      component = i;
      break;
    }
  }
  const double x = rng.normal(means_[component], stds_[component]);
  return std::clamp(x, 0.0, 1.0);
}

double GaussianMixture::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < means_.size(); ++i) m += weights_[i] * means_[i];
  return m;
}

// ---------------------------------------------------------------------------

std::unique_ptr<Environment> make_environment(const std::string& name) {
  if (name == "mountain_car") return std::make_unique<MountainCar>();
  if (name == "cartpole") return std::make_unique<CartPole>();
  if (name == "acrobot") return std::make_unique<Acrobot>();
  if (name == "linear_track") return std::make_unique<LinearTrack>();
  throw ConfigError("unknown environment '" + name + "'");
}

std::map<std::string, double> physics_constants(const std::string& env_name) {
  if (env_name == "mountain_car") {
    return {{"force", mc::kForce},
            {"gravity", mc::kGravity},
            {"min_position", mc::kMinPosition},
            {"max_position", mc::kMaxPosition},
            {"max_speed", mc::kMaxSpeed},
            {"goal_position", mc::kGoalPosition},
            {"start_low", mc::kStartLow},
            {"start_high", mc::kStartHigh},
            {"time_limit", static_cast<double>(mc::kTimeLimit)}};
  }
  if (env_name == "cartpole") {
    return {{"gravity", cp::kGravity},
            {"cart_mass", cp::kCartMass},
            {"pole_mass", cp::kPoleMass},
            {"half_length", cp::kHalfLength},
            {"force", cp::kForceMag},
            {"dt", cp::kDt},
            {"theta_limit", cp::kThetaLimit},
            {"x_limit", cp::kXLimit},
            {"start_range", cp::kStartRange},
            {"cart_velocity_clip", cp::kCartVelClip},
            {"pole_velocity_clip", cp::kPoleVelClip},
            {"time_limit", static_cast<double>(cp::kTimeLimit)}};
  }
  if (env_name == "acrobot") {
    return {{"link_length", ab::kLinkLength1},
            {"link_mass", ab::kLinkMass1},
            {"link_com", ab::kLinkCom1},
            {"link_inertia", ab::kLinkInertia},
            {"gravity", ab::kGravity},
            {"dt", ab::kDt},
            {"max_velocity_1", ab::kMaxVel1},
            {"max_velocity_2", ab::kMaxVel2},
            {"start_range", ab::kStartRange},
            {"goal_height", ab::kGoalHeight},
            {"time_limit", static_cast<double>(ab::kTimeLimit)}};
  }
  if (env_name == "linear_track") {
    return {{"length", static_cast<double>(track::kLength)},
            {"reward_position", static_cast<double>(track::kRewardPosition)},
            {"start", static_cast<double>(track::kStart)}};
  }
  throw ConfigError("unknown environment '" + env_name + "'");
}

}  // namespace snnrl
