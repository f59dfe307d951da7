#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nomauth/counters.hpp"

namespace nomauth {

// Normalized CIR correlation statistic |<a,b>| / (||a|| ||b||) in [0, 1].
// Scale-invariant in both arguments. Throws ZeroVector.
double bht_statistic(const Eigen::VectorXcd& cir_prev,
                     const Eigen::VectorXcd& cir_now,
                     CostCounters* counters = nullptr);

// Exhaustive grid search (1000 candidate thresholds over the statistic
// range) minimizing empirical false alarm + misdetection on calibration
// statistics drawn under H0 (legitimate) and H1 (illegitimate). Requires at
// least 100 H0 statistics. Every grid-sample comparison lands in the
// threshold_steps counter; this is exactly the recurring cost the proposed
// scheme avoids.
double calibrate_threshold(const std::vector<double>& h0_stats,
                           const std::vector<double>& h1_stats,
                           CostCounters* counters = nullptr,
                           int grid_points = 1000);

// Legitimate iff the correlation statistic reaches the threshold.
bool bht_authenticate(const Eigen::VectorXcd& cir_prev,
                      const Eigen::VectorXcd& cir_now, double threshold,
                      CostCounters* counters = nullptr);

}  // namespace nomauth
