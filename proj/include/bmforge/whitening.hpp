#pragma once

#include "bmforge/bodies.hpp"
#include "bmforge/measures.hpp"

namespace bmforge {

struct WhiteningResult {
  Mat T;  // Cov^{-1/2}, symmetric
  LogConcaveMeasure measure;
  ConvexBody body;
  Mat covariance;        // of mu restricted to K
  Mat whitened_covariance;  // re-estimated after the map
  double deviation = 0.0;   // ||whitened_covariance - Id||_op
};

/// Pushes mu|_K to isotropic position. Throws SingularCovariance when the
/// estimated covariance is not positive definite.
WhiteningResult whiten(const LogConcaveMeasure& mu, const ConvexBody& K);

}  // namespace bmforge
