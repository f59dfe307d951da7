#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace nomauth {

struct DetectStats {
  std::uint64_t support_too_large = 0;  // |support| > N occurrences
};

// Oracle least squares (Algorithm line: x_hat = G_support^+ y). Returns the
// full K-vector with zeros off the support; the support solution is the
// minimum-norm LS solution via a complete orthogonal decomposition. A
// support larger than N is solved anyway (still minimum-norm) and counted.
Eigen::VectorXcd ls_detect(const Eigen::VectorXcd& y,
                           const Eigen::MatrixXcd& G,
                           const std::vector<int>& support,
                           DetectStats* stats = nullptr);

// Hadamard-division result with erasure marks where |H| was too small to
// divide. Erased entries carry no evidence either way in the authenticator.
struct Extracted {
  Eigen::MatrixXcd values;
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> erased;
};

constexpr double kErasureEps = 1e-9;

Extracted extract_codebook(const Eigen::MatrixXcd& G,
                           const Eigen::MatrixXcd& H,
                           double eps = kErasureEps);

}  // namespace nomauth
