#include "nomauth/detect.hpp"

#include "nomauth/errors.hpp"

namespace nomauth {

Eigen::VectorXcd ls_detect(const Eigen::VectorXcd& y,
                           const Eigen::MatrixXcd& G,
                           const std::vector<int>& support,
                           DetectStats* stats) {
  if (y.size() != G.rows())
    throw DimensionMismatch("y length must equal rows of G");

  Eigen::VectorXcd x_hat = Eigen::VectorXcd::Zero(G.cols());
  if (support.empty()) return x_hat;

  for (int k : support)
    if (k < 0 || k >= G.cols())
      throw DimensionMismatch("support index out of range");

  if (static_cast<Eigen::Index>(support.size()) > G.rows() && stats)
    stats->support_too_large += 1;

  Eigen::MatrixXcd sub(G.rows(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t i = 0; i < support.size(); ++i)
    sub.col(static_cast<Eigen::Index>(i)) = G.col(support[i]);

  const Eigen::VectorXcd sol =
      sub.completeOrthogonalDecomposition().solve(y);
  for (std::size_t i = 0; i < support.size(); ++i)
    x_hat(support[i]) = sol(static_cast<Eigen::Index>(i));
  return x_hat;
}

Extracted extract_codebook(const Eigen::MatrixXcd& G,
                           const Eigen::MatrixXcd& H, double eps) {
  if (G.rows() != H.rows() || G.cols() != H.cols())
    throw DimensionMismatch("G and H must have equal shapes");

  Extracted ex;
  ex.values = Eigen::MatrixXcd::Zero(G.rows(), G.cols());
  ex.erased.setZero(G.rows(), G.cols());
  for (Eigen::Index k = 0; k < G.cols(); ++k) {
    for (Eigen::Index n = 0; n < G.rows(); ++n) {
      if (std::abs(H(n, k)) > eps) {
        ex.values(n, k) = G(n, k) / H(n, k);
      } else {
        ex.erased(n, k) = 1;
      }
    }
  }
  return ex;
}

}  // namespace nomauth
