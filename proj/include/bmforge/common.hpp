#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bmforge {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.141592653589793238462643383279502884;

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  InfiniteSupport,
  InfiniteRadius,
  OutsideRange,
  Unnormalized,
  SingularCovariance,
  NoFiniteBall,
  MaximizerAtInfinity,
  GridTooCoarse,
  SolverFailed,
  SingularHessian,
  MalformedSpec,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

/// log of the volume of the unit Euclidean ball in R^n.
double log_unit_ball_volume(int n);
/// log of the surface area of the unit sphere S^{n-1}.
double log_unit_sphere_area(int n);

}  // namespace bmforge
