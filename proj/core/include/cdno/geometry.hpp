#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cdno/numerics.hpp"

namespace cdno {

// Free-surface deviation eta: R+ -> R with eta(0) = 0.  Either closed-form
// callables or a cubic spline through tabulated samples.
class SurfaceFunction {
 public:
  using Fn = std::function<double(double)>;

  static SurfaceFunction closed_form(Fn eta, Fn deta, Fn d2eta,
                                     Fn d3eta = nullptr, int smoothness = 4);
  // Two-column table (x, eta(x)); spline is C^2, smoothness order >= 2.
  static SurfaceFunction from_samples(const std::vector<double>& x,
                                      const std::vector<double>& y);
  static SurfaceFunction linear(double slope);

  double eta(double x) const { return eta_(x); }
  double deta(double x) const { return deta_(x); }
  double d2eta(double x) const { return d2eta_(x); }
  // Third derivative; finite-difference fallback when not supplied.
  double d3eta(double x) const;
  int smoothness() const { return smoothness_; }

 private:
  SurfaceFunction() = default;
  Fn eta_, deta_, d2eta_, d3eta_;
  int smoothness_ = 2;
};

struct Angles {
  double omega1 = 0.0;  // atan(eta'(0))
  double omega2 = 0.0;  // atan(gamma)
  double omega = 0.0;   // contact angle, in (0, pi/2)
};

// The corner domain between the free surface z = eta(x) and the beach
// z = l(x), with l(x) = -gamma x for x <= x0.  Immutable after construction.
class CornerDomain {
 public:
  struct Params {
    double gamma = 1.0;
    SurfaceFunction surface = SurfaceFunction::linear(0.0);
    double x0 = 1.0;  // bottom is exactly -gamma x on [0, x0]
    double L = 4.0;   // far truncation abscissa
    std::optional<double> delta;  // corner-neighborhood radius
    std::optional<double> k;      // straightened-sector slope
    SurfaceFunction::Fn bottom;   // optional beach profile beyond x0
    SurfaceFunction::Fn dbottom;
  };

  explicit CornerDomain(Params p);

  double gamma() const { return gamma_; }
  double x0() const { return x0_; }
  double delta() const { return delta_; }
  double L() const { return L_; }
  double k() const { return k_; }
  const SurfaceFunction& surface() const { return surface_; }

  double eta(double x) const { return surface_.eta(x); }
  double deta(double x) const { return surface_.deta(x); }
  double etabar(double x) const { return surface_.eta(x) + gamma_ * x; }
  double etabar_prime(double x) const { return surface_.deta(x) + gamma_; }
  double bottom(double x) const;
  double dbottom(double x) const;

  const Angles& angles() const { return angles_; }

 private:
  double gamma_, x0_, delta_, L_, k_;
  SurfaceFunction surface_;
  SurfaceFunction::Fn bottom_, dbottom_;
  Angles angles_;
};

// tan(omega1) = eta'(0), tan(omega2) = gamma; throws AngleOutOfRange outside
// the admissible range omega in (0, pi/2), omega1 > -omega2.
Angles contact_angles(double gamma, double deta0);
Angles contact_angles(const CornerDomain& dom);

// Inverse of etabar by safeguarded Newton on [0, L].
double etabar_inverse(const CornerDomain& dom, double z);

// d(z) = 1/k - 1/(gamma + eta'(etabar^{-1}(z))) and derivatives.
double d_profile(const CornerDomain& dom, double z);
double d_profile_prime(const CornerDomain& dom, double z);
double d_profile_second(const CornerDomain& dom, double z);
double d_prime0(const CornerDomain& dom);  // eta''(0)/(gamma+eta'(0))^3

enum class TransformKind { TS, TR, T0 };
enum class Direction { Fwd, Inv };

// Straightening maps.  TS: sector {0<=z<=kx} <-> corner neighborhood of the
// physical domain.  TR: strip {x>=x_delta, 0<=z<=1} <-> far part.  T0: linear
// sector-to-sector map X -> P0^t X.
Vec2 transform(const CornerDomain& dom, TransformKind kind, Direction dir,
               const Vec2& p);

// Jacobian d(output)/d(input) of the forward maps, rows = output components.
Eigen::Matrix2d transform_jacobian(const CornerDomain& dom, TransformKind kind,
                                   const Vec2& p);

struct StraighteningMatrices {
  Eigen::Matrix2d P_S, P_S_inv, calP_S;  // calP_S = P_S^t P_S
  Eigen::Matrix2d P_R, calP_R;
  Eigen::Matrix2d P0, calP0;
  double d = 0.0, d0 = 0.0;
  double coercivity = 0.0;  // min eigenvalue of calP_S over the z-samples
};

// Matrices at height z (P_R needs a strip point; pass x via strip_point).
StraighteningMatrices straightening_matrices(
    const CornerDomain& dom, double z,
    std::optional<Vec2> strip_point = std::nullopt);

// Coefficient field of the corner problem written on the rotated wedge
// {0 <= psi <= omega}: Phat(zhat) = [[1 + b^2 e^2, b e], [b e, 1]] with
// b = 1 + gamma^2 and e(zhat) = d(sqrt(b) zhat) - d0.  Obtained by
// conjugating calP_S with P0^{-1} and the rotation that lays the beach on
// the x-axis; det Phat = 1 identically.
class WedgeCoeffs {
 public:
  explicit WedgeCoeffs(const CornerDomain& dom);

  double beta() const { return beta_; }
  double omega() const { return omega_; }
  double e(double zhat) const;
  double de(double zhat) const;
  double d2e(double zhat) const;

  Eigen::Matrix2d P(const Vec2& p) const;        // Phat at a wedge point
  Eigen::Matrix2d dPdz(const Vec2& p) const;     // d/dzhat of Phat
  Vec2 divP(const Vec2& p) const;                // (sum_j d_j P_ij)_i
  double q2() const;  // d/dzhat of offdiagonal at the corner: b^{3/2} d'(0)

  const CornerDomain& domain() const { return *dom_; }

 private:
  const CornerDomain* dom_;
  double beta_, omega_;
};

// Chart between the rotated wedge and the physical corner neighborhood:
// X_phys = TS(P0^t R^t Xhat).  Valid while etabar stays monotone.
class CornerChart {
 public:
  explicit CornerChart(const CornerDomain& dom);

  Vec2 to_physical(const Vec2& wedge_pt) const;
  Vec2 to_wedge(const Vec2& phys_pt) const;
  // d(X_phys)/d(Xhat), rows = physical components.
  Eigen::Matrix2d jacobian(const Vec2& wedge_pt) const;
  // Arclength parameter r on the wedge top edge -> physical abscissa xbar.
  double top_r_to_xbar(double r) const;
  double top_xbar_to_r(double xbar) const;

  const CornerDomain& domain() const { return *dom_; }
  double omega() const { return omega_; }

 private:
  const CornerDomain* dom_;
  Eigen::Matrix2d P0t_, P0t_inv_, Rt_, R_;
  double omega_;
};

// Regularized corner map (smoothed TS): the top-trace lift p is supplied by
// the caller (value and gradient); epsilon is clamped to 1/(2 sup|dp/dx|) so
// det(grad TS) = 1 + eps dp/dx >= 1/2.
class RegularizedTS {
 public:
  using Field = std::function<double(const Vec2&)>;
  RegularizedTS(const CornerDomain& dom, Field p, Field dp_dx, Field dp_dz,
                double eps_user, double sup_dpdx);

  Vec2 forward(const Vec2& sector_pt) const;
  Vec2 inverse(const Vec2& phys_pt) const;
  Eigen::Matrix2d jacobian(const Vec2& sector_pt) const;
  double epsilon() const { return eps_; }

 private:
  const CornerDomain* dom_;
  Field p_, dpx_, dpz_;
  double eps_;
};

}  // namespace cdno
