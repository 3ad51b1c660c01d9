#include "depmod/linalg.hpp"

#include <cmath>

#include "depmod/errors.hpp"

namespace depmod {

Eigen::MatrixXd cholesky(const Eigen::MatrixXd& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() < 1)
    throw InvalidParams("cholesky: matrix must be square and nonempty");
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("cholesky: factorization failed");
  Eigen::MatrixXd l = llt.matrixL();
  if ((l.diagonal().array() <= 0.0).any())
    throw NotPositiveDefinite("cholesky: nonpositive pivot");
  return l;
}

CovarianceMatrix CovarianceMatrix::from(const Eigen::MatrixXd& sigma) {
  const auto d = sigma.rows();
  if (sigma.cols() != d || d < 1)
    throw InvalidParams("covariance: matrix must be square and nonempty");
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const double tol = 1e-12 * std::max(1.0, std::abs(sigma(i, j)));
      if (std::abs(sigma(i, j) - sigma(j, i)) > tol)
        throw InvalidParams("covariance: matrix is not symmetric");
    }
  }
  CovarianceMatrix out;
  out.sigma = 0.5 * (sigma + sigma.transpose());
  out.chol = cholesky(out.sigma);
  return out;
}

Eigen::MatrixXd permute_sym(const Eigen::MatrixXd& m,
                            const std::vector<int>& order) {
  const int d = static_cast<int>(order.size());
  Eigen::MatrixXd out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(i, j) = m(order[i], order[j]);
  return out;
}

Eigen::MatrixXd covariance_from_correlations(const Eigen::VectorXd& sd,
                                             const Eigen::MatrixXd& corr) {
  const auto d = sd.size();
  if (corr.rows() != d || corr.cols() != d)
    throw InvalidParams("covariance: correlation matrix size mismatch");
  Eigen::MatrixXd out(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      out(i, j) = corr(i, j) * sd(i) * sd(j);
  return out;
}

}  // namespace depmod
