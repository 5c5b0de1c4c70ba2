#pragma once

#include <span>
#include <vector>

namespace snnrl {

/// Maps raw observations into [0, 1] per dimension using the environment's
/// declared bounds. Out-of-range values (including the documented clip
/// ranges of unbounded dimensions) are clipped before scaling.
class Normalizer {
 public:
  explicit Normalizer(std::vector<std::pair<double, double>> bounds);

  void normalize(std::span<const double> observation, std::span<double> out) const;
  std::vector<double> normalize(std::span<const double> observation) const;

  /// Maps a normalized coordinate back into raw units.
  double denormalize(std::size_t dim, double unit_value) const;

  std::size_t dim() const { return bounds_.size(); }

 private:
  std::vector<std::pair<double, double>> bounds_;
};

}  // namespace snnrl
