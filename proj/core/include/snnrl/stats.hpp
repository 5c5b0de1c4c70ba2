#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace snnrl {

/// Windowed summary of a multi-seed campaign. The per-run sample for
/// statistics is the mean latency over the last `window` episodes; the best
/// run is the one with the highest (or lowest, per objective direction)
/// windowed mean.
struct SummaryStats {
  int window = 0;
  bool higher_better = false;
  std::vector<double> run_window_means;
  double mean = 0.0;    // grand mean of the per-run windowed means
  double stddev = 0.0;  // sample std over the per-run windowed means
  std::size_t n = 0;
  std::size_t best_run = 0;
  std::vector<double> episode_mean;  // across runs, per episode
  std::vector<double> episode_std;
  std::vector<double> best_series;
};

struct WelchResult {
  double t = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
  bool significant = false;
  /// Set when the pooled standard error is zero and the test degenerates.
  bool degenerate = false;
};

double sample_mean(std::span<const double> xs);
double sample_stddev(std::span<const double> xs);

/// Two-sided unpaired Welch t-test at significance level alpha, with
/// Welch-Satterthwaite degrees of freedom. Requires >= 2 samples per side.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b,
                         double alpha = 0.05);

/// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// Two-sided tail probability of Student's t distribution.
double student_t_two_sided_p(double t, double dof);

}  // namespace snnrl
