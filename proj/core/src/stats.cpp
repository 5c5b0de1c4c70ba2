#include "snnrl/stats.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "snnrl/errors.hpp"

namespace snnrl {

double sample_mean(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_stddev(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = sample_mean(xs);
  double sq = 0.0;
  for (double x : xs) sq += (x - m) * (x - m);
  return std::sqrt(sq / static_cast<double>(xs.size() - 1));
}

namespace {

// Continued-fraction evaluation of the incomplete beta function
// (modified Lentz method).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIterations = 300;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double dof) {
  if (!std::isfinite(t)) return 0.0;
  const double x = dof / (dof + t * t);
  return incomplete_beta(dof / 2.0, 0.5, x);
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.size() < 2 || b.size() < 2) {
    throw InputError("welch_t_test: each side needs at least 2 samples, got " +
                     std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  const double mean_a = sample_mean(a);
  const double mean_b = sample_mean(b);
  const double sd_a = sample_stddev(a);
  const double sd_b = sample_stddev(b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = sd_a * sd_a / na;
  const double vb = sd_b * sd_b / nb;
  const double se2 = va + vb;

  WelchResult result;
  if (se2 == 0.0) {
    result.degenerate = true;
    if (mean_a == mean_b) {
      result.t = 0.0;
      result.dof = na + nb - 2.0;
      result.p_value = 1.0;
      result.significant = false;
    } else {
      result.t = mean_a > mean_b ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
      result.dof = na + nb - 2.0;
      result.p_value = 0.0;
      result.significant = true;
    }
    return result;
  }
  result.t = (mean_a - mean_b) / std::sqrt(se2);
  result.dof = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  result.p_value = student_t_two_sided_p(result.t, result.dof);
  result.significant = result.p_value < alpha;
  return result;
}

}  // namespace snnrl
