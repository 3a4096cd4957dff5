#include "cdno/geometry.hpp"

#include <cmath>

#include "cdno/errors.hpp"

namespace cdno {

SurfaceFunction SurfaceFunction::closed_form(Fn eta, Fn deta, Fn d2eta,
                                             Fn d3eta, int smoothness) {
  if (!eta || !deta || !d2eta)
    throw ValidationError("SurfaceFunction: eta, eta', eta'' required");
  SurfaceFunction s;
  s.eta_ = std::move(eta);
  s.deta_ = std::move(deta);
  s.d2eta_ = std::move(d2eta);
  s.d3eta_ = std::move(d3eta);
  s.smoothness_ = smoothness;
  if (std::abs(s.eta_(0.0)) > 1e-12)
    throw ValidationError("SurfaceFunction: eta(0) must vanish");
  return s;
}

SurfaceFunction SurfaceFunction::from_samples(const std::vector<double>& x,
                                              const std::vector<double>& y) {
  auto spline = std::make_shared<CubicSpline>(x, y);
  SurfaceFunction s;
  s.eta_ = [spline](double t) { return spline->value(t); };
  s.deta_ = [spline](double t) { return spline->deriv(t); };
  s.d2eta_ = [spline](double t) { return spline->deriv2(t); };
  s.d3eta_ = [spline](double t) { return spline->deriv3(t); };
  s.smoothness_ = 2;
  if (std::abs(s.eta_(0.0)) > 1e-10)
    throw ValidationError("SurfaceFunction: tabulated eta(0) must vanish");
  return s;
}

SurfaceFunction SurfaceFunction::linear(double slope) {
  return closed_form([slope](double x) { return slope * x; },
                     [slope](double) { return slope; },
                     [](double) { return 0.0; }, [](double) { return 0.0; }, 6);
}

double SurfaceFunction::d3eta(double x) const {
  if (d3eta_) return d3eta_(x);
  const double h = 1e-4 * std::max(1.0, std::abs(x));
  double lo = std::max(0.0, x - h);
  return (d2eta_(x + h) - d2eta_(lo)) / (x + h - lo);
}

Angles contact_angles(double gamma, double deta0) {
  if (!(gamma > 0.0))
    throw AngleOutOfRange("slope gamma must be positive");
  Angles a;
  a.omega1 = std::atan(deta0);
  a.omega2 = std::atan(gamma);
  a.omega = a.omega1 + a.omega2;
  if (!(a.omega > 0.0) || !(a.omega < 0.5 * kPi) || a.omega1 <= -a.omega2)
    throw AngleOutOfRange("contact angle must lie strictly in (0, pi/2)");
  return a;
}

Angles contact_angles(const CornerDomain& dom) { return dom.angles(); }

CornerDomain::CornerDomain(Params p)
    : gamma_(p.gamma),
      x0_(p.x0),
      L_(p.L),
      surface_(std::move(p.surface)),
      bottom_(std::move(p.bottom)),
      dbottom_(std::move(p.dbottom)) {
  angles_ = contact_angles(gamma_, surface_.deta(0.0));
  if (!(x0_ > 0.0) || !(L_ > x0_))
    throw ValidationError("CornerDomain: need L > x0 > 0");
  const double a0 = etabar_prime(0.0);
  k_ = p.k.value_or(a0);
  if (!(k_ > 0.0)) throw ValidationError("CornerDomain: sector slope k <= 0");

  if (p.delta) {
    delta_ = *p.delta;
    if (!(delta_ > 0.0) || delta_ >= x0_)
      throw ValidationError("CornerDomain: need 0 < delta < x0");
  } else {
    // Largest delta <= x0/4 with etabar' >= a0/2 on [0, 2 delta].
    double t = x0_ / 2.0;
    auto ok = [&](double tt) {
      for (int i = 0; i <= 64; ++i)
        if (etabar_prime(tt * i / 64.0) < 0.5 * a0) return false;
      return true;
    };
    while (t > 1e-8 * x0_ && !ok(t)) t *= 0.5;
    delta_ = 0.5 * t;
  }

  // Surface above bottom away from the corner, monotone etabar near it.
  for (int i = 1; i <= 200; ++i) {
    double x = L_ * i / 200.0;
    if (!(eta(x) - bottom(x) > 0.0))
      throw ValidationError("CornerDomain: surface must stay above bottom");
  }
  for (int i = 0; i <= 100; ++i) {
    double x = delta_ * i / 100.0;
    if (!(etabar_prime(x) > 0.0))
      throw NotMonotone("CornerDomain: etabar' <= 0 inside corner region");
  }
}

double CornerDomain::bottom(double x) const {
  if (x <= x0_ || !bottom_) return -gamma_ * x;
  return bottom_(x);
}

double CornerDomain::dbottom(double x) const {
  if (x <= x0_ || !dbottom_) return -gamma_;
  return dbottom_(x);
}

double etabar_inverse(const CornerDomain& dom, double z) {
  if (z < 0.0) throw OutOfRange("etabar_inverse: z < 0");
  if (z == 0.0) return 0.0;
  const double zmax = dom.etabar(dom.L());
  if (z > zmax * (1.0 + 1e-12))
    throw OutOfRange("etabar_inverse: z beyond etabar(L)");
  auto f = [&](double x) { return dom.etabar(x) - z; };
  auto df = [&](double x) {
    double d = dom.etabar_prime(x);
    if (d <= 0.0) throw NotMonotone("etabar_inverse: etabar' <= 0");
    return d;
  };
  double x = newton_bisection(f, df, 0.0, dom.L(), 1e-15);
  // Contract: |etabar(x) - z| <= 1e-12 max(1, z).
  if (std::abs(dom.etabar(x) - z) > 1e-12 * std::max(1.0, z))
    throw SolverDiverged("etabar_inverse: tolerance not met");
  return x;
}

double d_profile(const CornerDomain& dom, double z) {
  double x = etabar_inverse(dom, z);
  return 1.0 / dom.k() - 1.0 / dom.etabar_prime(x);
}

double d_profile_prime(const CornerDomain& dom, double z) {
  double x = etabar_inverse(dom, z);
  double a = dom.etabar_prime(x);
  return dom.surface().d2eta(x) / (a * a * a);
}

double d_profile_second(const CornerDomain& dom, double z) {
  double x = etabar_inverse(dom, z);
  double a = dom.etabar_prime(x);
  double e2 = dom.surface().d2eta(x), e3 = dom.surface().d3eta(x);
  return (e3 * a - 3.0 * e2 * e2) / std::pow(a, 5);
}

double d_prime0(const CornerDomain& dom) {
  double a = dom.etabar_prime(0.0);
  return dom.surface().d2eta(0.0) / (a * a * a);
}

namespace {

Eigen::Matrix2d p0_matrix(const CornerDomain& dom) {
  double d0 = d_profile(dom, 0.0);
  Eigen::Matrix2d P0;
  P0 << 1.0 + dom.gamma() * d0, dom.gamma(), d0, 1.0;
  return P0;
}

}  // namespace

Vec2 transform(const CornerDomain& dom, TransformKind kind, Direction dir,
               const Vec2& p) {
  const double g = dom.gamma();
  switch (kind) {
    case TransformKind::TS: {
      if (dir == Direction::Fwd) {
        if (p.z < -1e-12 || p.z > dom.k() * p.x + 1e-12)
          throw OutOfRegion("TS: point outside sector {0<=z<=kx}");
        double xb = p.x + etabar_inverse(dom, std::max(0.0, p.z)) - p.z / dom.k();
        return {xb, p.z - g * xb};
      }
      double z = g * p.x + p.z;
      if (z < -1e-12) throw OutOfRegion("TS inverse: point below the beach");
      z = std::max(0.0, z);
      double x = p.x - etabar_inverse(dom, z) + z / dom.k();
      return {x, z};
    }
    case TransformKind::TR: {
      if (dir == Direction::Fwd) {
        if (p.z < -1e-12 || p.z > 1.0 + 1e-12 || p.x <= 0.0)
          throw OutOfRegion("TR: point outside strip {x>0, 0<=z<=1}");
        double h = dom.eta(p.x), l = dom.bottom(p.x);
        return {p.x, h * p.z + l * (1.0 - p.z)};
      }
      double h = dom.eta(p.x), l = dom.bottom(p.x);
      if (!(h - l > 0.0)) throw OutOfRegion("TR inverse: degenerate column");
      return {p.x, (p.z - l) / (h - l)};
    }
    case TransformKind::T0: {
      Eigen::Matrix2d P0t = p0_matrix(dom).transpose();
      Eigen::Vector2d v(p.x, p.z);
      Eigen::Vector2d w = (dir == Direction::Fwd) ? Eigen::Vector2d(P0t * v)
                                                  : Eigen::Vector2d(P0t.inverse() * v);
      return {w[0], w[1]};
    }
  }
  throw OutOfRegion("transform: unknown kind");
}

Eigen::Matrix2d transform_jacobian(const CornerDomain& dom, TransformKind kind,
                                   const Vec2& p) {
  Eigen::Matrix2d J;
  switch (kind) {
    case TransformKind::TS: {
      double d = d_profile(dom, std::max(0.0, p.z));
      J << 1.0, -d, -dom.gamma(), 1.0 + dom.gamma() * d;
      return J;
    }
    case TransformKind::TR: {
      double h = dom.eta(p.x), l = dom.bottom(p.x);
      double dh = dom.deta(p.x), dl = dom.dbottom(p.x);
      J << 1.0, 0.0, dh * p.z + dl * (1.0 - p.z), h - l;
      return J;
    }
    case TransformKind::T0:
      return p0_matrix(dom).transpose();
  }
  throw OutOfRegion("transform_jacobian: unknown kind");
}

StraighteningMatrices straightening_matrices(const CornerDomain& dom, double z,
                                             std::optional<Vec2> strip_point) {
  StraighteningMatrices m;
  const double g = dom.gamma();
  m.d = d_profile(dom, z);
  m.d0 = d_profile(dom, 0.0);
  m.P_S << 1.0 + g * m.d, g, m.d, 1.0;
  m.P_S_inv << 1.0, -g, -m.d, 1.0 + g * m.d;
  m.calP_S = m.P_S.transpose() * m.P_S;
  m.P0 = p0_matrix(dom);
  m.calP0 = m.P0.transpose() * m.P0;
  if (strip_point) {
    double x = strip_point->x, s = strip_point->z;
    double h = dom.eta(x), l = dom.bottom(x);
    double dh = dom.deta(x), dl = dom.dbottom(x);
    if (!(h - l > 0.0)) throw OutOfRegion("P_R: degenerate column");
    m.P_R << 1.0, -((dh - dl) * s + dl) / (h - l), 0.0, 1.0 / (h - l);
    m.calP_R = m.P_R.transpose() * m.P_R;
  } else {
    m.P_R.setIdentity();
    m.calP_R.setIdentity();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m.calP_S);
  m.coercivity = es.eigenvalues().minCoeff();
  if (!(m.coercivity > 0.0))
    throw CoercivityLost("calP_S lost positive definiteness");
  return m;
}

// ---------------------------------------------------------------------------
// WedgeCoeffs
// ---------------------------------------------------------------------------

WedgeCoeffs::WedgeCoeffs(const CornerDomain& dom)
    : dom_(&dom),
      beta_(1.0 + dom.gamma() * dom.gamma()),
      omega_(dom.angles().omega) {}

double WedgeCoeffs::e(double zhat) const {
  return d_profile(*dom_, std::sqrt(beta_) * zhat) - d_profile(*dom_, 0.0);
}

double WedgeCoeffs::de(double zhat) const {
  return std::sqrt(beta_) * d_profile_prime(*dom_, std::sqrt(beta_) * zhat);
}

double WedgeCoeffs::d2e(double zhat) const {
  return beta_ * d_profile_second(*dom_, std::sqrt(beta_) * zhat);
}

Eigen::Matrix2d WedgeCoeffs::P(const Vec2& p) const {
  double ee = e(std::max(0.0, p.z));
  Eigen::Matrix2d M;
  M << 1.0 + beta_ * beta_ * ee * ee, beta_ * ee, beta_ * ee, 1.0;
  return M;
}

Eigen::Matrix2d WedgeCoeffs::dPdz(const Vec2& p) const {
  double zh = std::max(0.0, p.z);
  double ee = e(zh), dee = de(zh);
  Eigen::Matrix2d M;
  M << 2.0 * beta_ * beta_ * ee * dee, beta_ * dee, beta_ * dee, 0.0;
  return M;
}

Vec2 WedgeCoeffs::divP(const Vec2& p) const {
  double dee = de(std::max(0.0, p.z));
  return {beta_ * dee, 0.0};
}

double WedgeCoeffs::q2() const {
  return std::pow(beta_, 1.5) * d_prime0(*dom_);
}

// ---------------------------------------------------------------------------
// CornerChart
// ---------------------------------------------------------------------------

CornerChart::CornerChart(const CornerDomain& dom) : dom_(&dom) {
  const Angles& a = dom.angles();
  omega_ = a.omega;
  double c = std::cos(a.omega2), s = std::sin(a.omega2);
  R_ << c, -s, s, c;
  Rt_ = R_.transpose();
  P0t_ = p0_matrix(dom).transpose();
  P0t_inv_ = P0t_.inverse();
}

Vec2 CornerChart::to_physical(const Vec2& w) const {
  Eigen::Vector2d xs0 = Rt_ * Eigen::Vector2d(w.x, w.z);
  Eigen::Vector2d xs = P0t_ * xs0;
  return transform(*dom_, TransformKind::TS, Direction::Fwd, {xs[0], xs[1]});
}

Vec2 CornerChart::to_wedge(const Vec2& p) const {
  Vec2 xs = transform(*dom_, TransformKind::TS, Direction::Inv, p);
  Eigen::Vector2d xs0 = P0t_inv_ * Eigen::Vector2d(xs.x, xs.z);
  Eigen::Vector2d w = R_ * xs0;
  return {w[0], w[1]};
}

Eigen::Matrix2d CornerChart::jacobian(const Vec2& w) const {
  Eigen::Vector2d xs0 = Rt_ * Eigen::Vector2d(w.x, w.z);
  Eigen::Vector2d xs = P0t_ * xs0;
  Eigen::Matrix2d Jts =
      transform_jacobian(*dom_, TransformKind::TS, {xs[0], xs[1]});
  return Jts * P0t_ * Rt_;
}

double CornerChart::top_r_to_xbar(double r) const {
  Vec2 p = to_physical({r * std::cos(omega_), r * std::sin(omega_)});
  return p.x;
}

double CornerChart::top_xbar_to_r(double xbar) const {
  Vec2 w = to_wedge({xbar, dom_->eta(xbar)});
  return std::hypot(w.x, w.z);
}

// ---------------------------------------------------------------------------
// RegularizedTS
// ---------------------------------------------------------------------------

RegularizedTS::RegularizedTS(const CornerDomain& dom, Field p, Field dp_dx,
                             Field dp_dz, double eps_user, double sup_dpdx)
    : dom_(&dom), p_(std::move(p)), dpx_(std::move(dp_dx)), dpz_(std::move(dp_dz)) {
  double cap = (sup_dpdx > 0.0) ? 1.0 / (2.0 * sup_dpdx) : eps_user;
  eps_ = std::min(eps_user, cap);
  if (!(eps_ > 0.0)) throw LiftFailed("RegularizedTS: epsilon <= 0");
}

Vec2 RegularizedTS::forward(const Vec2& s) const {
  const double g = dom_->gamma(), k = dom_->k();
  Vec2 arg{eps_ * s.x + (1.0 - eps_) * s.z / k, s.z};
  double xb = s.x + p_(arg) - s.z / k;
  return {xb, s.z - g * xb};
}

Eigen::Matrix2d RegularizedTS::jacobian(const Vec2& s) const {
  const double g = dom_->gamma(), k = dom_->k();
  Vec2 arg{eps_ * s.x + (1.0 - eps_) * s.z / k, s.z};
  double px = dpx_(arg), pz = dpz_(arg);
  double dxb_dx = 1.0 + eps_ * px;
  double dxb_dz = (1.0 - eps_) * px / k + pz - 1.0 / k;
  Eigen::Matrix2d J;
  J << dxb_dx, dxb_dz, -g * dxb_dx, 1.0 - g * dxb_dz;
  return J;
}

Vec2 RegularizedTS::inverse(const Vec2& pb) const {
  // z is preserved: z = gamma*xbar + zbar; solve the x-equation by Newton.
  double z = dom_->gamma() * pb.x + pb.z;
  if (z < -1e-12) throw OutOfRegion("RegularizedTS inverse: below the beach");
  z = std::max(0.0, z);
  const double k = dom_->k();
  auto f = [&](double x) {
    Vec2 arg{eps_ * x + (1.0 - eps_) * z / k, z};
    return x + p_(arg) - z / k - pb.x;
  };
  auto df = [&](double x) {
    Vec2 arg{eps_ * x + (1.0 - eps_) * z / k, z};
    return 1.0 + eps_ * dpx_(arg);
  };
  double lo = -dom_->L(), hi = 2.0 * dom_->L();
  double x = newton_bisection(f, df, lo, hi, 1e-14);
  return {x, z};
}

}  // namespace cdno
