#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cdno/errors.hpp"

namespace cdno {

constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
  double x = 0.0;
  double z = 0.0;

  Vec2() = default;
  Vec2(double x_, double z_) : x(x_), z(z_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, z + o.z}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, z - o.z}; }
  Vec2 operator*(double s) const { return {x * s, z * s}; }
  double dot(const Vec2& o) const { return x * o.x + z * o.z; }
  double norm() const { return std::hypot(x, z); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// ---------------------------------------------------------------------------
// 1-D Gauss-Legendre rules on [-1, 1], computed once per order by Newton
// iteration on the Legendre polynomial.  Deterministic.
// ---------------------------------------------------------------------------
struct GaussRule1d {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule1d& gauss_legendre(int n);

// Integrate f over [a, b] with an n-point Gauss rule.
double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    int n = 12);

// Composite rule: split [a, b] into m equal cells.
double integrate_1d_composite(const std::function<double(double)>& f, double a,
                              double b, int cells, int n = 12);

// Adaptive Gauss-Kronrod (G7/K15) with interval bisection.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-12,
                          double abs_tol = 1e-14, int max_depth = 30);

// Geometric subdivision of (0, r1] toward 0 with a per-cell Gauss rule; made
// for integrands behaving like a power of r at the origin.
double integrate_graded_radial(const std::function<double(double)>& f,
                               double r1, int cells_per_decade = 4,
                               int decades = 14, int n = 10);

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

// Safeguarded Newton on [lo, hi]: Newton step when it stays inside the
// current bracket, bisection otherwise.  f(lo) and f(hi) must bracket a root.
double newton_bisection(const std::function<double(double)>& f,
                        const std::function<double(double)>& df, double lo,
                        double hi, double rel_tol = 1e-14, int max_iter = 200);

// ---------------------------------------------------------------------------
// Natural cubic spline through (x_i, y_i); x strictly increasing.
// Evaluates value and first/second derivative; constant extrapolation of the
// end-interval polynomial outside the data range.
// ---------------------------------------------------------------------------
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double value(double x) const;
  double deriv(double x) const;
  double deriv2(double x) const;
  double deriv3(double x) const;
  double x_min() const { return x_.empty() ? 0.0 : x_.front(); }
  double x_max() const { return x_.empty() ? 0.0 : x_.back(); }
  bool empty() const { return x_.empty(); }

 private:
  int interval(double x) const;
  std::vector<double> x_, a_, b_, c_, d_;  // y = a + b t + c t^2 + d t^3, t = x - x_i
};

// FNV-1a hash of a byte string; used for config provenance.
std::uint64_t fnv1a(const std::string& bytes);

// Least-squares slope of log|y| vs log|x| (entries with y == 0 skipped).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Deterministic xorshift-based RNG helpers (uniform in [0,1)).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  double uniform() {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return static_cast<double>(state_ >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace cdno
