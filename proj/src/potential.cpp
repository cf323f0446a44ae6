#include "bmforge/potential.hpp"

#include <cmath>

namespace bmforge {

namespace {

class GaussianPotential final : public Potential {
 public:
  explicit GaussianPotential(int n) : n_(n) {}
  int dim() const override { return n_; }
  double value(const Vec& x) const override { return 0.5 * x.squaredNorm(); }
  Vec gradient(const Vec& x) const override { return x; }
  Mat hessian(const Vec&) const override { return Mat::Identity(n_, n_); }
  double laplacian(const Vec&) const override { return n_; }

 private:
  int n_;
};

class ProductPotential final : public Potential {
 public:
  ProductPotential(int n, double p) : n_(n), p_(p) {}
  int dim() const override { return n_; }
  double value(const Vec& x) const override {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += std::pow(std::abs(x[i]), p_);
    return s / p_;
  }
  Vec gradient(const Vec& x) const override {
    Vec g(n_);
    for (int i = 0; i < n_; ++i) {
      const double a = std::abs(x[i]);
      g[i] = a == 0.0 ? 0.0 : std::copysign(std::pow(a, p_ - 1.0), x[i]);
    }
    return g;
  }
  Mat hessian(const Vec& x) const override {
    Mat h = Mat::Zero(n_, n_);
    for (int i = 0; i < n_; ++i) h(i, i) = diag(x[i]);
    return h;
  }
  double laplacian(const Vec& x) const override {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += diag(x[i]);
    return s;
  }
  bool smooth_at(const Vec& x) const override {
    if (p_ >= 2.0) return true;
    for (int i = 0; i < n_; ++i)
      if (x[i] == 0.0) return false;
    return true;
  }
  std::vector<Vec> kink_directions() const override {
    if (n_ != 2 || p_ >= 2.0) return {};
    return {Vec::Unit(2, 0), Vec::Unit(2, 1), -Vec::Unit(2, 0), -Vec::Unit(2, 1)};
  }
  HessianDegeneracy degeneracy() const override {
    if (p_ == 1.0) return HessianDegeneracy::Everywhere;
    if (p_ > 2.0) return HessianDegeneracy::Hyperplanes;
    return HessianDegeneracy::None;
  }
  double degeneracy_order() const override { return p_ > 2.0 ? p_ - 2.0 : 0.0; }

 private:
  double diag(double xi) const {
    if (p_ == 1.0) return 0.0;
    if (p_ == 2.0) return 1.0;
    const double a = std::abs(xi);
    if (a == 0.0) return p_ < 2.0 ? kInf : 0.0;
    return (p_ - 1.0) * std::pow(a, p_ - 2.0);
  }
  int n_;
  double p_;
};

class RadialPotential final : public Potential {
 public:
  RadialPotential(int n, double p) : n_(n), p_(p) {}
  int dim() const override { return n_; }
  double value(const Vec& x) const override { return std::pow(x.norm(), p_) / p_; }
  Vec gradient(const Vec& x) const override {
    const double r = x.norm();
    if (r == 0.0) return Vec::Zero(n_);
    return std::pow(r, p_ - 2.0) * x;
  }
  Mat hessian(const Vec& x) const override {
    const double r = x.norm();
    if (r == 0.0) {
      if (p_ == 2.0) return Mat::Identity(n_, n_);
      if (p_ > 2.0) return Mat::Zero(n_, n_);
      return Mat::Identity(n_, n_) * kInf;
    }
    const Vec th = x / r;
    return std::pow(r, p_ - 2.0) *
           (Mat::Identity(n_, n_) + (p_ - 2.0) * th * th.transpose());
  }
  double laplacian(const Vec& x) const override {
    const double r = x.norm();
    if (r == 0.0) return p_ == 2.0 ? n_ : (p_ > 2.0 ? 0.0 : kInf);
    return std::pow(r, p_ - 2.0) * (n_ + p_ - 2.0);
  }
  bool smooth_at(const Vec& x) const override { return p_ >= 2.0 || x.squaredNorm() > 0.0; }
  HessianDegeneracy degeneracy() const override {
    if (p_ == 1.0) return HessianDegeneracy::Everywhere;
    if (p_ > 2.0) return HessianDegeneracy::Origin;
    return HessianDegeneracy::None;
  }
  double degeneracy_order() const override { return p_ > 2.0 ? p_ - 2.0 : 0.0; }

 private:
  int n_;
  double p_;
};

class ZeroPotential final : public Potential {
 public:
  explicit ZeroPotential(int n) : n_(n) {}
  int dim() const override { return n_; }
  double value(const Vec&) const override { return 0.0; }
  Vec gradient(const Vec&) const override { return Vec::Zero(n_); }
  Mat hessian(const Vec&) const override { return Mat::Zero(n_, n_); }
  double laplacian(const Vec&) const override { return 0.0; }
  HessianDegeneracy degeneracy() const override { return HessianDegeneracy::Everywhere; }

 private:
  int n_;
};

class SmoothedL1Potential final : public Potential {
 public:
  SmoothedL1Potential(int n, double eps) : n_(n), eps_(eps) {}
  int dim() const override { return n_; }
  double value(const Vec& x) const override {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += std::hypot(x[i], eps_) - eps_;
    return s;
  }
  Vec gradient(const Vec& x) const override {
    Vec g(n_);
    for (int i = 0; i < n_; ++i) g[i] = x[i] / std::hypot(x[i], eps_);
    return g;
  }
  Mat hessian(const Vec& x) const override {
    Mat h = Mat::Zero(n_, n_);
    for (int i = 0; i < n_; ++i) {
      const double r = std::hypot(x[i], eps_);
      h(i, i) = eps_ * eps_ / (r * r * r);
    }
    return h;
  }
  double length_scale() const override { return 1.0; }

 private:
  int n_;
  double eps_;
};

class PushforwardPotential final : public Potential {
 public:
  PushforwardPotential(PotentialPtr base, const Mat& T)
      : base_(std::move(base)), T_(T), Tinv_(T.inverse()) {}
  int dim() const override { return base_->dim(); }
  double value(const Vec& y) const override { return base_->value(Tinv_ * y); }
  Vec gradient(const Vec& y) const override {
    return Tinv_.transpose() * base_->gradient(Tinv_ * y);
  }
  Mat hessian(const Vec& y) const override {
    return Tinv_.transpose() * base_->hessian(Tinv_ * y) * Tinv_;
  }
  bool smooth_at(const Vec& y) const override { return base_->smooth_at(Tinv_ * y); }
  std::vector<Vec> kink_directions() const override {
    std::vector<Vec> out;
    for (const Vec& d : base_->kink_directions()) out.push_back((T_ * d).normalized());
    return out;
  }
  HessianDegeneracy degeneracy() const override { return base_->degeneracy(); }
  double degeneracy_order() const override { return base_->degeneracy_order(); }
  double length_scale() const override {
    Eigen::JacobiSVD<Mat> svd(T_);
    return base_->length_scale() * svd.singularValues()(0);
  }

 private:
  PotentialPtr base_;
  Mat T_;
  Mat Tinv_;
};

}  // namespace

PotentialPtr make_gaussian_potential(int n) { return std::make_shared<GaussianPotential>(n); }

PotentialPtr make_product_potential(int n, double p) {
  require(p >= 1.0, ErrorKind::InvalidArgument, "product potential needs p >= 1");
  return std::make_shared<ProductPotential>(n, p);
}

PotentialPtr make_radial_potential(int n, double p) {
  require(p >= 1.0, ErrorKind::InvalidArgument, "radial potential needs p >= 1");
  return std::make_shared<RadialPotential>(n, p);
}

PotentialPtr make_zero_potential(int n) { return std::make_shared<ZeroPotential>(n); }

PotentialPtr make_smoothed_l1_potential(int n, double eps) {
  require(eps > 0.0, ErrorKind::InvalidArgument, "smoothing parameter must be positive");
  return std::make_shared<SmoothedL1Potential>(n, eps);
}

PotentialPtr make_pushforward_potential(PotentialPtr base, const Mat& T) {
  require(T.rows() == base->dim() && T.cols() == base->dim(), ErrorKind::DimensionMismatch,
          "pushforward map has wrong shape");
  require(std::abs(T.determinant()) > 0.0, ErrorKind::InvalidArgument,
          "pushforward map is singular");
  return std::make_shared<PushforwardPotential>(std::move(base), T);
}

double radial_derivative(const Potential& V, const Vec& theta, double t) {
  return V.gradient(t * theta).dot(theta);
}

double radial_cutoff(const Potential& V, const Vec& theta, double drop, double k) {
  const double v0 = V.value(Vec::Zero(V.dim()));
  auto excess = [&](double t) { return V.value(t * theta) - v0 - k * std::log(t); };
  double lo = 0.0;
  double hi = V.length_scale();
  int guard = 0;
  while (excess(hi) < drop) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 200) return kInf;
  }
  // When k > 0 the excess dips below zero near the origin; keep lo past the dip.
  for (int it = 0; it < 100 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) >= drop)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace bmforge
