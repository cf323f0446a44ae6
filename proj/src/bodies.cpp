#include "bmforge/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <variant>

namespace bmforge {

struct ConvexBody::Rep {
  std::variant<rep::HPolytope, rep::VPolygon, rep::LpBall, rep::Ellipsoid, rep::Sublevel,
               rep::SupportInterp, rep::LinearImage, rep::WholeSpace>
      v;
};

template <class R>
const R* ConvexBody::as() const {
  return std::get_if<R>(&rep_->v);
}

template const rep::HPolytope* ConvexBody::as<rep::HPolytope>() const;
template const rep::VPolygon* ConvexBody::as<rep::VPolygon>() const;
template const rep::LpBall* ConvexBody::as<rep::LpBall>() const;
template const rep::Ellipsoid* ConvexBody::as<rep::Ellipsoid>() const;
template const rep::Sublevel* ConvexBody::as<rep::Sublevel>() const;
template const rep::SupportInterp* ConvexBody::as<rep::SupportInterp>() const;
template const rep::LinearImage* ConvexBody::as<rep::LinearImage>() const;
template const rep::WholeSpace* ConvexBody::as<rep::WholeSpace>() const;

namespace {

constexpr double kFeasTol = 1e-9;

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

double lp_norm(const Vec& x, double p) {
  if (std::isinf(p)) return x.cwiseAbs().maxCoeff();
  if (p == 1.0) return x.cwiseAbs().sum();
  if (p == 2.0) return x.norm();
  const double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double dual_exponent(double p) {
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

// Orthonormal basis of the orthogonal complement of a unit vector.
Mat complement_basis(const Vec& theta) {
  const int n = static_cast<int>(theta.size());
  Mat Q = Eigen::HouseholderQR<Mat>(theta).householderQ();
  return Q.rightCols(n - 1);
}

void for_each_subset(int m, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  if (k > m) return;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

void push_unique(std::vector<Vec>& list, const Vec& v, double tol) {
  for (const auto& w : list)
    if ((w - v).norm() <= tol * (1.0 + v.norm())) return;
  list.push_back(v);
}

rep::HPolytope build_hpolytope(const Mat& A, const Vec& b) {
  const int n = static_cast<int>(A.cols());
  const int m = static_cast<int>(A.rows());
  rep::HPolytope h;
  h.A = A;
  h.b = b;
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > 1e-12 * std::max(smax, 1.0)) ++rank;
  const Mat& V = svd.matrixV();
  const Mat Q = V.leftCols(rank);
  h.lineality = V.rightCols(n - rank);
  if (rank == 0) return h;
  const Mat Ar = A * Q;

  for_each_subset(m, rank, [&](const std::vector<int>& S) {
    Mat As(rank, rank);
    Vec bs(rank);
    for (int i = 0; i < rank; ++i) {
      As.row(i) = Ar.row(S[static_cast<std::size_t>(i)]);
      bs[i] = b[S[static_cast<std::size_t>(i)]];
    }
    Eigen::FullPivLU<Mat> lu(As);
    if (lu.rank() < rank) return;
    const Vec z = lu.solve(bs);
    if (((Ar * z) - b).maxCoeff() > kFeasTol * (1.0 + b.cwiseAbs().maxCoeff())) return;
    push_unique(h.vertices, Q * z, 1e-9);
  });

  auto try_ray = [&](const Vec& d) {
    if (d.norm() == 0.0) return;
    const Vec dn = d.normalized();
    if ((Ar * dn).maxCoeff() <= 1e-10) push_unique(h.rays, Q * dn, 1e-9);
  };
  if (rank == 1) {
    try_ray(Vec::Ones(1));
    try_ray(-Vec::Ones(1));
  } else {
    for_each_subset(m, rank - 1, [&](const std::vector<int>& S) {
      Mat As(rank - 1, rank);
      for (int i = 0; i < rank - 1; ++i) As.row(i) = Ar.row(S[static_cast<std::size_t>(i)]);
      Eigen::FullPivLU<Mat> lu(As);
      if (lu.rank() < rank - 1) return;
      const Mat ker = lu.kernel();
      if (ker.cols() != 1) return;
      try_ray(ker.col(0));
      try_ray(-ker.col(0));
    });
  }
  return h;
}

bool symmetric_points(const PointList& P) {
  double scale = 0.0;
  for (const auto& v : P) scale = std::max(scale, v.norm());
  for (const auto& v : P) {
    bool found = false;
    for (const auto& w : P)
      if ((v + w).norm() <= 1e-9 * scale) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

struct PlaneMin {
  double value;
  double error;
};

// Minimizes a convex function F over the affine plane theta + theta^perp
// (Lipschitz constant lip), by dense seeding and local refinement.
PlaneMin minimize_on_plane(const std::function<double(const Vec&)>& F, const Vec& theta,
                           double lip) {
  const int n = static_cast<int>(theta.size());
  if (n == 1) return {F(theta), 0.0};
  const Mat B = complement_basis(theta);
  if (n == 2) {
    const Vec perp = B.col(0);
    auto G = [&](double phi) { return F(theta + std::tan(phi) * perp); };
    constexpr int kSeeds = 64;
    const double half = 0.5 * kPi;
    double best = kInf;
    int best_i = 0;
    for (int i = 0; i < kSeeds; ++i) {
      const double phi = -half + kPi * (i + 0.5) / kSeeds;
      const double g = G(phi);
      if (g < best) {
        best = g;
        best_i = i;
      }
    }
    double lo = -half + kPi * std::max(best_i - 0.5, 1e-9) / kSeeds;
    double hi = -half + kPi * std::min(best_i + 1.5, kSeeds - 1e-9) / kSeeds;
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
    double g1 = G(x1), g2 = G(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
      if (g1 <= g2) {
        hi = x2;
        x2 = x1;
        g2 = g1;
        x1 = hi - invphi * (hi - lo);
        g1 = G(x1);
      } else {
        lo = x1;
        x1 = x2;
        g1 = g2;
        x2 = lo + invphi * (hi - lo);
        g2 = G(x2);
      }
    }
    const double value = std::min({best, g1, g2});
    return {value, lip * std::abs(std::tan(hi) - std::tan(lo))};
  }

  // n >= 3: Nelder-Mead in plane coordinates.
  const int d = n - 1;
  auto Fy = [&](const Vec& y) { return F(theta + B * y); };
  Vec y0 = Vec::Zero(d);
  double f0 = Fy(y0);
  for (const Vec& u : probe_directions(n, 512)) {
    const double c = u.dot(theta);
    if (c < 0.05) continue;
    const Vec y = B.transpose() * (u / c);
    const double f = Fy(y);
    if (f < f0) {
      f0 = f;
      y0 = y;
    }
  }
  std::vector<Vec> simplex;
  std::vector<double> fv;
  auto diameter = [&] {
    double dm = 0.0;
    for (std::size_t i = 1; i < simplex.size(); ++i)
      dm = std::max(dm, (simplex[i] - simplex[0]).norm());
    return dm;
  };
  auto nelder_mead = [&](const Vec& start, double fstart, double step) {
    simplex.assign(1, start);
    fv.assign(1, fstart);
    for (int i = 0; i < d; ++i) {
      Vec y = start;
      y[i] += step;
      simplex.push_back(y);
      fv.push_back(Fy(y));
    }
    for (int it = 0; it < 5000; ++it) {
      std::vector<std::size_t> order(simplex.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
      std::vector<Vec> s2;
      std::vector<double> f2;
      for (auto i : order) {
        s2.push_back(simplex[i]);
        f2.push_back(fv[i]);
      }
      simplex = std::move(s2);
      fv = std::move(f2);
      if (diameter() < 1e-11) break;
      Vec centroid = Vec::Zero(d);
      for (int i = 0; i < d; ++i) centroid += simplex[static_cast<std::size_t>(i)];
      centroid /= d;
      const Vec& worst = simplex.back();
      const Vec xr = centroid + (centroid - worst);
      const double fr = Fy(xr);
      if (fr < fv.front()) {
        const Vec xe = centroid + 2.0 * (centroid - worst);
        const double fe = Fy(xe);
        if (fe < fr) {
          simplex.back() = xe;
          fv.back() = fe;
        } else {
          simplex.back() = xr;
          fv.back() = fr;
        }
      } else if (fr < fv[fv.size() - 2]) {
        simplex.back() = xr;
        fv.back() = fr;
      } else {
        const Vec xc = centroid + 0.5 * (worst - centroid);
        const double fc = Fy(xc);
        if (fc < fv.back()) {
          simplex.back() = xc;
          fv.back() = fc;
        } else {
          for (std::size_t i = 1; i < simplex.size(); ++i) {
            simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0]);
            fv[i] = Fy(simplex[i]);
          }
        }
      }
    }
    const auto it = std::min_element(fv.begin(), fv.end());
    return std::pair<Vec, double>{simplex[static_cast<std::size_t>(it - fv.begin())], *it};
  };
  // Restarts from the best vertex unstick the simplex on kinks.
  auto [y, best] = nelder_mead(y0, f0, 0.05 * (1.0 + y0.norm()));
  double gain = kInf;
  for (int restart = 0; restart < 6 && gain > 1e-15 * std::abs(best); ++restart) {
    auto [y2, f2] = nelder_mead(y, best, 1e-3 * (1.0 + y.norm()));
    gain = best - f2;
    y = y2;
    best = f2;
  }
  return {best, lip * diameter() + 2.0 * std::max(gain, 0.0)};
}

}  // namespace

Direction Direction::from(const Vec& v) {
  const double nv = v.norm();
  require(nv > 0.0 && std::isfinite(nv), ErrorKind::InvalidArgument,
          "direction must be a finite nonzero vector");
  return Direction(v / nv);
}

ConvexBody::Kind ConvexBody::kind() const { return static_cast<Kind>(rep_->v.index()); }

ConvexBody ConvexBody::hpolytope(const Mat& A, const Vec& b) {
  require(A.rows() == b.size() && A.rows() >= 1 && A.cols() >= 1, ErrorKind::DimensionMismatch,
          "halfspace matrix and offsets disagree");
  require(A.allFinite() && b.allFinite(), ErrorKind::InvalidArgument, "non-finite halfspace");
  require(b.minCoeff() > 0.0, ErrorKind::InvalidArgument,
          "every offset must be positive so that 0 is interior");
  auto h = build_hpolytope(A, b);
  // Symmetric when every constraint has its mirror.
  bool sym = true;
  for (Eigen::Index i = 0; i < A.rows() && sym; ++i) {
    const Vec ai = A.row(i).transpose() / b[i];
    bool found = false;
    for (Eigen::Index j = 0; j < A.rows(); ++j)
      if ((A.row(j).transpose() / b[j] + ai).norm() <= 1e-9 * ai.norm()) {
        found = true;
        break;
      }
    sym = found;
  }
  const int n = static_cast<int>(A.cols());
  return ConvexBody(n, sym, std::make_shared<Rep>(Rep{std::move(h)}));
}

ConvexBody ConvexBody::vpolygon(const PointList& points) {
  PointList hull = convex_hull(points);
  require(hull.size() >= 3, ErrorKind::InvalidArgument, "polygon needs three affinely independent points");
  rep::VPolygon poly;
  poly.vertices = hull;
  polygon_halfspaces(hull, poly.A, poly.b);
  require(poly.b.minCoeff() > 0.0, ErrorKind::InvalidArgument, "polygon must contain 0 in its interior");
  const bool sym = symmetric_points(hull);
  return ConvexBody(2, sym, std::make_shared<Rep>(Rep{std::move(poly)}));
}

ConvexBody ConvexBody::box(const Vec& w) {
  require(w.size() >= 1 && w.minCoeff() > 0.0, ErrorKind::InvalidArgument,
          "box half-widths must be positive");
  const int n = static_cast<int>(w.size());
  if (n == 2) {
    return vpolygon({Point2(-w[0], -w[1]), Point2(w[0], -w[1]), Point2(w[0], w[1]),
                     Point2(-w[0], w[1])});
  }
  Mat A = Mat::Zero(2 * n, n);
  Vec b(2 * n);
  for (int i = 0; i < n; ++i) {
    A(2 * i, i) = 1.0;
    A(2 * i + 1, i) = -1.0;
    b[2 * i] = b[2 * i + 1] = w[i];
  }
  return hpolytope(A, b);
}

ConvexBody ConvexBody::lp_ball(int n, double p, double r) {
  require(n >= 1, ErrorKind::InvalidArgument, "dimension must be positive");
  require(p >= 1.0, ErrorKind::InvalidArgument, "lp ball needs p >= 1");
  require(r > 0.0 && std::isfinite(r), ErrorKind::InvalidArgument, "radius must be positive");
  return ConvexBody(n, true, std::make_shared<Rep>(Rep{rep::LpBall{p, r}}));
}

ConvexBody ConvexBody::ellipsoid(const Mat& M) {
  require(M.rows() == M.cols() && M.rows() >= 1, ErrorKind::DimensionMismatch,
          "shape matrix must be square");
  require((M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + M.cwiseAbs().maxCoeff()),
          ErrorKind::InvalidArgument, "shape matrix must be symmetric");
  Eigen::LLT<Mat> llt(M);
  require(llt.info() == Eigen::Success, ErrorKind::InvalidArgument,
          "shape matrix must be positive definite");
  const int n = static_cast<int>(M.rows());
  return ConvexBody(n, true, std::make_shared<Rep>(Rep{rep::Ellipsoid{M, M.inverse()}}));
}

ConvexBody ConvexBody::sublevel(PotentialPtr W, double q) {
  require(W != nullptr, ErrorKind::InvalidArgument, "missing potential");
  const int n = W->dim();
  require(W->value(Vec::Zero(n)) < q, ErrorKind::InvalidArgument,
          "threshold must exceed W(0) so that 0 is interior");
  return ConvexBody(n, true, std::make_shared<Rep>(Rep{rep::Sublevel{std::move(W), q}}));
}

ConvexBody ConvexBody::support_interp(const std::vector<std::pair<double, ConvexBody>>& terms) {
  require(!terms.empty(), ErrorKind::InvalidArgument, "empty interpolation");
  const int n = terms.front().second.dim();
  rep::SupportInterp s;
  bool sym = true;
  for (const auto& [w, K] : terms) {
    require(K.dim() == n, ErrorKind::DimensionMismatch, "interpolated bodies differ in dimension");
    require(w >= 0.0, ErrorKind::InvalidArgument, "interpolation weights must be nonnegative");
    if (w == 0.0) continue;
    sym = sym && K.symmetric();
    if (const auto* inner = K.as<rep::SupportInterp>()) {
      for (const auto& [w2, K2] : inner->terms) s.terms.emplace_back(w * w2, K2);
    } else {
      s.terms.emplace_back(w, K);
    }
  }
  require(!s.terms.empty(), ErrorKind::InvalidArgument, "all interpolation weights vanish");
  for (const auto& [w, K] : s.terms) s.lipschitz += w * K.circumradius();
  return ConvexBody(n, sym, std::make_shared<Rep>(Rep{std::move(s)}));
}

ConvexBody ConvexBody::linear_image(const Mat& T, const ConvexBody& base) {
  require(T.rows() == base.dim() && T.cols() == base.dim(), ErrorKind::DimensionMismatch,
          "linear map has wrong shape");
  const double det = T.determinant();
  require(std::isfinite(det) && std::abs(det) > 0.0, ErrorKind::InvalidArgument,
          "linear map is singular");
  if (const auto* li = base.as<rep::LinearImage>()) return linear_image(T * li->T, *li->base);
  rep::LinearImage img{T, T.inverse(), std::make_shared<const ConvexBody>(base)};
  return ConvexBody(base.dim(), base.symmetric(), std::make_shared<Rep>(Rep{std::move(img)}));
}

ConvexBody ConvexBody::whole_space(int n) {
  require(n >= 1, ErrorKind::InvalidArgument, "dimension must be positive");
  return ConvexBody(n, true, std::make_shared<Rep>(Rep{rep::WholeSpace{}}));
}

double ConvexBody::support(const Vec& theta) const {
  require(theta.size() == dim_, ErrorKind::DimensionMismatch, "direction has wrong dimension");
  return std::visit(
      Overloaded{
          [&](const rep::HPolytope& h) {
            const double tn = theta.norm();
            if (h.lineality.cols() > 0 && (h.lineality.transpose() * theta).norm() > 1e-12 * tn)
              fail(ErrorKind::InfiniteSupport, "polytope contains a line along this direction");
            for (const auto& r : h.rays)
              if (r.dot(theta) > 1e-12 * tn)
                fail(ErrorKind::InfiniteSupport, "polytope is unbounded along this direction");
            double best = 0.0;
            for (const auto& v : h.vertices) best = std::max(best, v.dot(theta));
            return best;
          },
          [&](const rep::VPolygon& P) {
            double best = -kInf;
            for (const auto& v : P.vertices) best = std::max(best, v.x() * theta[0] + v.y() * theta[1]);
            return best;
          },
          [&](const rep::LpBall& B) { return B.r * lp_norm(theta, dual_exponent(B.p)); },
          [&](const rep::Ellipsoid& E) { return std::sqrt(theta.dot(E.M * theta)); },
          [&](const rep::Sublevel& S) { return sublevel_support(S, theta); },
          [&](const rep::SupportInterp& S) {
            double s = 0.0;
            for (const auto& [w, K] : S.terms) s += w * K.support(theta);
            return s;
          },
          [&](const rep::LinearImage& L) -> double {
            return L.base->support(L.T.transpose() * theta);
          },
          [&](const rep::WholeSpace&) -> double {
            if (theta.norm() == 0.0) return 0.0;
            fail(ErrorKind::InfiniteSupport, "whole space has no finite support");
          }},
      rep_->v);
}

double ConvexBody::gauge(const Vec& x) const {
  require(x.size() == dim_, ErrorKind::DimensionMismatch, "point has wrong dimension");
  if (x.squaredNorm() == 0.0) return 0.0;
  return std::visit(
      Overloaded{
          [&](const rep::HPolytope& h) {
            double g = 0.0;
            for (Eigen::Index i = 0; i < h.A.rows(); ++i)
              g = std::max(g, h.A.row(i).dot(x) / h.b[i]);
            return g;
          },
          [&](const rep::VPolygon& P) {
            double g = 0.0;
            for (Eigen::Index i = 0; i < P.A.rows(); ++i)
              g = std::max(g, (P.A(i, 0) * x[0] + P.A(i, 1) * x[1]) / P.b[i]);
            return g;
          },
          [&](const rep::LpBall& B) { return lp_norm(x, B.p) / B.r; },
          [&](const rep::Ellipsoid& E) { return std::sqrt(std::max(0.0, x.dot(E.M_inv * x))); },
          [&](const rep::Sublevel& S) {
            auto excess = [&](double s) { return S.W->value(x / s) - S.q; };
            double lo = 1e-8, hi = 1e8;
            if (excess(lo) <= 0.0 || excess(hi) > 0.0)
              fail(ErrorKind::OutsideRange, "sublevel gauge root is outside [1e-8, 1e8]");
            while (hi / lo - 1.0 > 1e-11) {
              const double mid = std::sqrt(lo * hi);
              if (excess(mid) > 0.0)
                lo = mid;
              else
                hi = mid;
            }
            return std::sqrt(lo * hi);
          },
          [&](const rep::SupportInterp& S) {
            const double r = x.norm();
            return r / interp_radial(S, x / r).value;
          },
          [&](const rep::LinearImage& L) { return L.base->gauge(L.T_inv * x); },
          [&](const rep::WholeSpace&) { return 0.0; }},
      rep_->v);
}

RadialValue ConvexBody::radial(const Vec& u) const {
  require(u.size() == dim_, ErrorKind::DimensionMismatch, "direction has wrong dimension");
  const double un = u.norm();
  require(un > 0.0, ErrorKind::InvalidArgument, "radial function needs a nonzero direction");
  if (const auto* S = as<rep::SupportInterp>()) {
    RadialValue r = interp_radial(*S, u / un);
    return {r.value / un, r.error / un};
  }
  if (const auto* L = as<rep::LinearImage>()) return L->base->radial(L->T_inv * u);
  const double g = gauge(u);
  if (!(g > 0.0)) fail(ErrorKind::InfiniteRadius, "body is unbounded along this direction");
  return {1.0 / g, 0.0};
}

RadialValue ConvexBody::interp_radial(const rep::SupportInterp& S, const Vec& theta) const {
  auto h = [&](const Vec& y) {
    double s = 0.0;
    for (const auto& [w, K] : S.terms) s += w * K.support(y);
    return s;
  };
  const auto m = minimize_on_plane(h, theta, S.lipschitz);
  return {m.value, m.error};
}

double ConvexBody::sublevel_support(const rep::Sublevel& S, const Vec& theta) const {
  const double tn = theta.norm();
  if (tn == 0.0) return 0.0;
  const Vec th = theta / tn;
  const ConvexBody self(dim_, true, std::make_shared<Rep>(Rep{S}));
  const auto m = minimize_on_plane([&](const Vec& y) { return self.gauge(y); }, th, 1.0);
  return tn / m.value;
}

bool ConvexBody::bounded() const {
  return std::visit(Overloaded{[](const rep::HPolytope& h) {
                                 return h.rays.empty() && h.lineality.cols() == 0;
                               },
                               [](const rep::SupportInterp& S) {
                                 for (const auto& t : S.terms)
                                   if (!t.second.bounded()) return false;
                                 return true;
                               },
                               [](const rep::LinearImage& L) { return L.base->bounded(); },
                               [](const rep::WholeSpace&) { return false; },
                               [](const auto&) { return true; }},
                    rep_->v);
}

double ConvexBody::circumradius() const {
  return std::visit(
      Overloaded{
          [&](const rep::HPolytope& h) {
            if (!bounded()) return kInf;
            double r = 0.0;
            for (const auto& v : h.vertices) r = std::max(r, v.norm());
            return r;
          },
          [](const rep::VPolygon& P) {
            double r = 0.0;
            for (const auto& v : P.vertices) r = std::max(r, v.norm());
            return r;
          },
          [&](const rep::LpBall& B) {
            const double e = std::isinf(B.p) ? 0.5 : 0.5 - 1.0 / B.p;
            return B.r * std::max(1.0, std::pow(static_cast<double>(dim_), e));
          },
          [](const rep::Ellipsoid& E) {
            Eigen::SelfAdjointEigenSolver<Mat> es(E.M);
            return std::sqrt(es.eigenvalues().maxCoeff());
          },
          [&](const rep::Sublevel&) {
            double r = 0.0;
            for (const Vec& u : probe_directions(dim_, 256)) r = std::max(r, radial_function(u));
            return 1.05 * r;
          },
          [](const rep::SupportInterp& S) { return S.lipschitz; },
          [](const rep::LinearImage& L) {
            Eigen::JacobiSVD<Mat> svd(L.T);
            return svd.singularValues()(0) * L.base->circumradius();
          },
          [](const rep::WholeSpace&) { return kInf; }},
      rep_->v);
}

double ConvexBody::inradius() const {
  return std::visit(
      Overloaded{
          [](const rep::HPolytope& h) {
            double r = kInf;
            for (Eigen::Index i = 0; i < h.A.rows(); ++i) r = std::min(r, h.b[i] / h.A.row(i).norm());
            return r;
          },
          [](const rep::VPolygon& P) { return P.b.minCoeff(); },
          [&](const rep::LpBall& B) {
            const double e = std::isinf(B.p) ? 0.5 : 0.5 - 1.0 / B.p;
            return B.r * std::min(1.0, std::pow(static_cast<double>(dim_), e));
          },
          [](const rep::Ellipsoid& E) {
            Eigen::SelfAdjointEigenSolver<Mat> es(E.M);
            return std::sqrt(es.eigenvalues().minCoeff());
          },
          [&](const rep::Sublevel&) {
            double r = kInf;
            for (const Vec& u : probe_directions(dim_, 256)) r = std::min(r, radial_function(u));
            return 0.95 * r;
          },
          [](const rep::SupportInterp& S) {
            double r = 0.0;
            for (const auto& [w, K] : S.terms) r += w * K.inradius();
            return r;
          },
          [](const rep::LinearImage& L) {
            Eigen::JacobiSVD<Mat> svd(L.T);
            const auto& s = svd.singularValues();
            return s(s.size() - 1) * L.base->inradius();
          },
          [](const rep::WholeSpace&) { return kInf; }},
      rep_->v);
}

Vec ConvexBody::bounding_half_widths() const {
  Vec w(dim_);
  for (int i = 0; i < dim_; ++i) {
    const Vec e = Vec::Unit(dim_, i);
    w[i] = std::max(support(e), support(-e));
  }
  return w;
}

std::optional<PointList> ConvexBody::polygon_vertices() const {
  if (dim_ != 2) return std::nullopt;
  return std::visit(
      Overloaded{
          [&](const rep::HPolytope& h) -> std::optional<PointList> {
            if (!bounded()) return std::nullopt;
            PointList pts;
            for (const auto& v : h.vertices) pts.emplace_back(v[0], v[1]);
            return convex_hull(pts);
          },
          [](const rep::VPolygon& P) -> std::optional<PointList> { return P.vertices; },
          [](const rep::LpBall& B) -> std::optional<PointList> {
            const double r = B.r;
            if (B.p == 1.0)
              return convex_hull({Point2(r, 0), Point2(0, r), Point2(-r, 0), Point2(0, -r)});
            if (std::isinf(B.p))
              return convex_hull({Point2(r, r), Point2(-r, r), Point2(-r, -r), Point2(r, -r)});
            return std::nullopt;
          },
          [](const rep::SupportInterp& S) -> std::optional<PointList> {
            std::optional<PointList> acc;
            for (const auto& [w, K] : S.terms) {
              auto P = K.polygon_vertices();
              if (!P) return std::nullopt;
              PointList Ps = scale_polygon(*P, w);
              acc = acc ? minkowski_sum(*acc, Ps) : Ps;
            }
            return acc;
          },
          [](const rep::LinearImage& L) -> std::optional<PointList> {
            auto P = L.base->polygon_vertices();
            if (!P) return std::nullopt;
            PointList out;
            for (const auto& v : *P) out.push_back(L.T * v);
            return convex_hull(out);
          },
          [](const auto&) -> std::optional<PointList> { return std::nullopt; }},
      rep_->v);
}

std::optional<Vec> ConvexBody::box_half_widths() const {
  if (!bounded()) return std::nullopt;
  if (dim_ == 1) return Vec::Constant(1, radial_function(Vec::Ones(1)));
  if (const auto* B = as<rep::LpBall>(); B && std::isinf(B->p)) return Vec::Constant(dim_, B->r);
  std::vector<Vec> verts;
  if (auto P = polygon_vertices()) {
    for (const auto& v : *P) verts.emplace_back(Vec(v));
  } else if (const auto* h = as<rep::HPolytope>()) {
    verts = h->vertices;
  } else {
    return std::nullopt;
  }
  if (verts.size() != (std::size_t{1} << dim_)) return std::nullopt;
  Vec w = verts.front().cwiseAbs();
  for (const auto& v : verts)
    if ((v.cwiseAbs() - w).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + w.maxCoeff())) return std::nullopt;
  if (w.minCoeff() <= 0.0) return std::nullopt;
  return w;
}

std::optional<Mat> ConvexBody::gauge_halfspaces_2d() const {
  if (dim_ != 2) return std::nullopt;
  if (const auto* L = as<rep::LinearImage>()) {
    auto base = L->base->gauge_halfspaces_2d();
    if (!base) return std::nullopt;
    return Mat(*base * L->T_inv);
  }
  auto P = polygon_vertices();
  if (!P) return std::nullopt;
  Mat A;
  Vec b;
  polygon_halfspaces(*P, A, b);
  for (Eigen::Index i = 0; i < A.rows(); ++i) A.row(i) /= b[i];
  return A;
}

std::vector<double> ConvexBody::kink_angles() const {
  std::vector<double> out;
  if (dim_ != 2) return out;
  auto angle = [](double x, double y) {
    double a = std::atan2(y, x);
    if (a < 0) a += 2.0 * kPi;
    return a;
  };
  if (auto P = polygon_vertices()) {
    for (const auto& v : *P) out.push_back(angle(v.x(), v.y()));
  } else if (const auto* S = as<rep::Sublevel>()) {
    for (const Vec& d : S->W->kink_directions()) out.push_back(angle(d[0], d[1]));
  } else if (const auto* L = as<rep::LinearImage>()) {
    for (double a : L->base->kink_angles()) {
      const Vec d = L->T * Vec(Eigen::Vector2d(std::cos(a), std::sin(a)));
      out.push_back(angle(d[0], d[1]));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string ConvexBody::describe() const {
  char buf[128];
  return std::visit(
      Overloaded{
          [&](const rep::HPolytope& h) {
            std::snprintf(buf, sizeof buf, "hpolytope[n=%d,m=%d]", dim_, static_cast<int>(h.A.rows()));
            return std::string(buf);
          },
          [&](const rep::VPolygon& P) {
            std::snprintf(buf, sizeof buf, "vpolygon[%d]", static_cast<int>(P.vertices.size()));
            return std::string(buf);
          },
          [&](const rep::LpBall& B) {
            std::snprintf(buf, sizeof buf, "lp_ball[n=%d,p=%g,r=%g]", dim_, B.p, B.r);
            return std::string(buf);
          },
          [&](const rep::Ellipsoid&) {
            std::snprintf(buf, sizeof buf, "ellipsoid[n=%d]", dim_);
            return std::string(buf);
          },
          [&](const rep::Sublevel& S) {
            std::snprintf(buf, sizeof buf, "sublevel[n=%d,q=%g]", dim_, S.q);
            return std::string(buf);
          },
          [&](const rep::SupportInterp& S) {
            std::snprintf(buf, sizeof buf, "interp[%d]", static_cast<int>(S.terms.size()));
            return std::string(buf);
          },
          [&](const rep::LinearImage& L) { return "image(" + L.base->describe() + ")"; },
          [&](const rep::WholeSpace&) {
            std::snprintf(buf, sizeof buf, "R^%d", dim_);
            return std::string(buf);
          }},
      rep_->v);
}

double support(const ConvexBody& K, const Direction& theta) { return K.support(theta.coords()); }
double gauge(const ConvexBody& K, const Vec& x) { return K.gauge(x); }
RadialValue radial_function(const ConvexBody& K, const Direction& theta) {
  return K.radial(theta.coords());
}

ConvexBody scaled(const ConvexBody& K, double c) {
  require(c > 0.0 && std::isfinite(c), ErrorKind::InvalidArgument, "scale must be positive");
  if (c == 1.0) return K;
  if (const auto* h = K.as<rep::HPolytope>()) return ConvexBody::hpolytope(h->A, c * h->b);
  if (const auto* P = K.as<rep::VPolygon>()) return ConvexBody::vpolygon(scale_polygon(P->vertices, c));
  if (const auto* B = K.as<rep::LpBall>()) return ConvexBody::lp_ball(K.dim(), B->p, c * B->r);
  if (const auto* E = K.as<rep::Ellipsoid>()) return ConvexBody::ellipsoid(c * c * E->M);
  if (const auto* S = K.as<rep::SupportInterp>()) {
    auto terms = S->terms;
    for (auto& t : terms) t.first *= c;
    return ConvexBody::support_interp(terms);
  }
  if (K.as<rep::WholeSpace>()) return K;
  return ConvexBody::linear_image(c * Mat::Identity(K.dim(), K.dim()), K);
}

std::vector<Vec> probe_directions(int n, int count) {
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(count));
  if (n == 1) {
    for (int i = 0; i < count; ++i) out.push_back(Vec::Constant(1, i % 2 == 0 ? 1.0 : -1.0));
    return out;
  }
  if (n == 2) {
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * kPi * (i + 0.3183098861837907) / count;
      out.push_back(Vec(Eigen::Vector2d(std::cos(a), std::sin(a))));
    }
    return out;
  }
  if (n == 3) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * i;
      out.push_back(Vec(Eigen::Vector3d(r * std::cos(a), r * std::sin(a), z)));
    }
    return out;
  }
  static constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  auto halton = [](int i, int base) {
    double f = 1.0, r = 0.0;
    for (int k = i; k > 0; k /= base) {
      f /= base;
      r += f * (k % base);
    }
    return r;
  };
  for (int i = 1; i <= count; ++i) {
    Vec g(n);
    for (int j = 0; j < n; j += 2) {
      const double u1 = std::max(halton(i, kPrimes[j % 16]), 1e-12);
      const double u2 = halton(i, kPrimes[(j + 1) % 16]);
      const double rad = std::sqrt(-2.0 * std::log(u1));
      g[j] = rad * std::cos(2.0 * kPi * u2);
      if (j + 1 < n) g[j + 1] = rad * std::sin(2.0 * kPi * u2);
    }
    out.push_back(g.normalized());
  }
  return out;
}

std::optional<double> homothety_ratio(const ConvexBody& K, const ConvexBody& L) {
  if (K.dim() != L.dim()) return std::nullopt;
  try {
    double c = 0.0;
    for (const Vec& u : probe_directions(K.dim(), 64)) {
      const double hk = K.support(u), hl = L.support(u);
      if (!(hk > 0.0)) return std::nullopt;
      const double ratio = hl / hk;
      if (c == 0.0)
        c = ratio;
      else if (std::abs(ratio - c) > 1e-9 * c)
        return std::nullopt;
    }
    if (!(c > 0.0)) return std::nullopt;
    return c;
  } catch (const Error&) {
    return std::nullopt;
  }
}

ConvexBody interpolate(const ConvexBody& K, const ConvexBody& L, double lambda) {
  require(K.dim() == L.dim(), ErrorKind::DimensionMismatch, "interpolated bodies differ in dimension");
  require(lambda >= 0.0 && lambda <= 1.0, ErrorKind::InvalidArgument, "lambda must lie in [0, 1]");
  if (lambda == 0.0) return K;
  if (lambda == 1.0) return L;
  if (K.dim() == 2) {
    auto P = K.polygon_vertices();
    auto Q = L.polygon_vertices();
    if (P && Q) {
      return ConvexBody::vpolygon(
          minkowski_sum(scale_polygon(*P, 1.0 - lambda), scale_polygon(*Q, lambda)));
    }
  }
  if (auto c = homothety_ratio(K, L)) return scaled(K, (1.0 - lambda) + lambda * *c);
  return ConvexBody::support_interp({{1.0 - lambda, K}, {lambda, L}});
}

}  // namespace bmforge
