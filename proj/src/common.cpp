#include "bmforge/common.hpp"

#include <cmath>

namespace bmforge {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::InfiniteSupport: return "infinite support";
    case ErrorKind::InfiniteRadius: return "infinite radius";
    case ErrorKind::OutsideRange: return "point outside representable range";
    case ErrorKind::Unnormalized: return "unnormalized";
    case ErrorKind::SingularCovariance: return "singular covariance";
    case ErrorKind::NoFiniteBall: return "no finite ball";
    case ErrorKind::MaximizerAtInfinity: return "maximizer at infinity";
    case ErrorKind::GridTooCoarse: return "grid too coarse";
    case ErrorKind::SolverFailed: return "solver failed";
    case ErrorKind::SingularHessian: return "singular hessian";
    case ErrorKind::MalformedSpec: return "malformed spec";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

double log_unit_ball_volume(int n) {
  const double half = 0.5 * n;
  return half * std::log(kPi) - std::lgamma(half + 1.0);
}

double log_unit_sphere_area(int n) {
  return std::log(static_cast<double>(n)) + log_unit_ball_volume(n);
}

}  // namespace bmforge
