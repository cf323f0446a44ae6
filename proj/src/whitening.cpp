#include "bmforge/whitening.hpp"

#include "bmforge/quadrature.hpp"

namespace bmforge {

WhiteningResult whiten(const LogConcaveMeasure& mu, const ConvexBody& K) {
  const auto cov = covariance_restriction(mu, K);
  Eigen::SelfAdjointEigenSolver<Mat> es(cov.cov);
  const Vec ev = es.eigenvalues();
  if (!(ev.minCoeff() > 1e-12 * std::max(1.0, ev.maxCoeff())))
    fail(ErrorKind::SingularCovariance, "covariance of the restriction is singular");
  const Mat T = es.eigenvectors() * ev.cwiseInverse().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
  WhiteningResult out{T, LogConcaveMeasure::pushforward(mu, T), ConvexBody::linear_image(T, K), cov.cov, {}, 0.0};
  out.whitened_covariance = covariance_restriction(out.measure, out.body).cov;
  Eigen::SelfAdjointEigenSolver<Mat> dev(out.whitened_covariance - Mat::Identity(K.dim(), K.dim()));
  out.deviation = dev.eigenvalues().cwiseAbs().maxCoeff();
  return out;
}

}  // namespace bmforge
