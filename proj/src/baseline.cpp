#include "nomauth/baseline.hpp"

#include <algorithm>
#include <cmath>

#include "nomauth/errors.hpp"

namespace nomauth {

double bht_statistic(const Eigen::VectorXcd& cir_prev,
                     const Eigen::VectorXcd& cir_now, CostCounters* counters) {
  if (cir_prev.size() != cir_now.size())
    throw DimensionMismatch("CIR vectors differ in length");
  const double np = cir_prev.norm();
  const double nn = cir_now.norm();
  if (np == 0.0 || nn == 0.0)
    throw ZeroVector("CIR correlation undefined for a zero vector");
  if (counters)
    counters->statistic_ops +=
        static_cast<std::uint64_t>(cir_prev.size());
  return std::abs(cir_prev.dot(cir_now)) / (np * nn);
}

double calibrate_threshold(const std::vector<double>& h0_stats,
                           const std::vector<double>& h1_stats,
                           CostCounters* counters, int grid_points) {
  if (h0_stats.size() < 100)
    throw InsufficientCalibration("need at least 100 H0 statistics, got " +
                                  std::to_string(h0_stats.size()));
  if (grid_points < 1)
    throw ValidationError("grid must have at least one point");

  double lo = h0_stats.front(), hi = h0_stats.front();
  for (double v : h0_stats) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (double v : h1_stats) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo == hi) return lo;  // degenerate single-point range

  const double n0 = static_cast<double>(h0_stats.size());
  const double n1 = static_cast<double>(std::max<std::size_t>(1, h1_stats.size()));

  double best_tau = lo, best_err = 2.0;
  for (int g = 0; g < grid_points; ++g) {
    const double tau =
        lo + (hi - lo) * static_cast<double>(g) /
                 static_cast<double>(std::max(1, grid_points - 1));
    std::size_t fa = 0, md = 0;
    for (double v : h0_stats)
      if (v < tau) ++fa;
    for (double v : h1_stats)
      if (v >= tau) ++md;
    if (counters)
      counters->threshold_steps += h0_stats.size() + h1_stats.size();
    const double err = static_cast<double>(fa) / n0 +
                       (h1_stats.empty() ? 0.0 : static_cast<double>(md) / n1);
    if (err < best_err) {
      best_err = err;
      best_tau = tau;
    }
  }
  return best_tau;
}

bool bht_authenticate(const Eigen::VectorXcd& cir_prev,
                      const Eigen::VectorXcd& cir_now, double threshold,
                      CostCounters* counters) {
  const double stat = bht_statistic(cir_prev, cir_now, counters);
  if (counters) {
    counters->statistic_ops += 1;  // the threshold comparison itself
    counters->baseline_auth_events += 1;
  }
  return stat >= threshold;
}

}  // namespace nomauth
