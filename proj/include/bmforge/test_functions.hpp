#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "bmforge/common.hpp"
#include "bmforge/potential.hpp"

namespace bmforge {

/// Analytic function R^n -> R with derivatives, used as f in variance
/// inequalities and as u in the certificate checks.
class TestFunction {
 public:
  virtual ~TestFunction() = default;
  virtual int dim() const = 0;
  virtual double value(const Vec& x) const = 0;
  virtual Vec gradient(const Vec& x) const = 0;
  virtual Mat hessian(const Vec& x) const = 0;
  virtual bool even() const = 0;
  virtual std::string describe() const = 0;
};

using TestFunctionPtr = std::shared_ptr<const TestFunction>;

struct Monomial {
  double coef = 0.0;
  std::vector<int> exponents;
};

class Polynomial final : public TestFunction {
 public:
  Polynomial(int n, std::vector<Monomial> terms);
  int dim() const override { return n_; }
  double value(const Vec& x) const override;
  Vec gradient(const Vec& x) const override;
  Mat hessian(const Vec& x) const override;
  bool even() const override;
  std::string describe() const override;
  const std::vector<Monomial>& terms() const { return terms_; }
  int degree() const;

 private:
  int n_;
  std::vector<Monomial> terms_;
};

enum class Parity { Any, Even, Odd };

/// Every monomial of total degree in [min_degree, max_degree] (respecting the
/// parity) with a coefficient uniform in [-1, 1].
TestFunctionPtr random_polynomial(std::mt19937_64& rng, int n, int max_degree, Parity parity = Parity::Any,
                                  int min_degree = 1);
/// <theta, x>
TestFunctionPtr linear_function(const Vec& theta);
/// c |x|^2 / 2
TestFunctionPtr half_square_norm(int n, double c = 1.0);
/// u = V
TestFunctionPtr potential_function(PotentialPtr V);
/// a f + b g
TestFunctionPtr combine(double a, TestFunctionPtr f, double b, TestFunctionPtr g);

}  // namespace bmforge
