#include "cdno/numerics.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace cdno {

namespace {

GaussRule1d compute_gauss(int n) {
  GaussRule1d rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

// Kronrod 15 / Gauss 7 nodes and weights (symmetric half listed).
const double kK15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
const double kK15Weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
const double kG7Weights[4] = {0.129484966168870, 0.279705391489277,
                              0.381830050505119, 0.417959183673469};

struct GkResult {
  double value;
  double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double val_k = 0.0, val_g = 0.0;
  for (int i = 0; i < 8; ++i) {
    double fx1 = f(c - h * kK15Nodes[i]);
    double fx2 = (i < 7) ? f(c + h * kK15Nodes[i]) : 0.0;
    double sum = (i < 7) ? fx1 + fx2 : fx1;
    val_k += kK15Weights[i] * sum;
    if (i % 2 == 1) val_g += kG7Weights[i / 2] * sum;
  }
  return {val_k * h, std::abs(val_k - val_g) * h};
}

double adaptive_rec(const std::function<double(double)>& f, double a, double b,
                    double tol, int depth, int max_depth) {
  GkResult r = gk15(f, a, b);
  if (r.error <= tol || depth >= max_depth) return r.value;
  double m = 0.5 * (a + b);
  return adaptive_rec(f, a, m, 0.5 * tol, depth + 1, max_depth) +
         adaptive_rec(f, m, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

const GaussRule1d& gauss_legendre(int n) {
  static std::map<int, GaussRule1d> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
  return it->second;
}

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    int n) {
  const GaussRule1d& rule = gauss_legendre(n);
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(c + h * rule.nodes[i]);
  return sum * h;
}

double integrate_1d_composite(const std::function<double(double)>& f, double a,
                              double b, int cells, int n) {
  double sum = 0.0;
  double h = (b - a) / cells;
  for (int k = 0; k < cells; ++k)
    sum += integrate_1d(f, a + k * h, a + (k + 1) * h, n);
  return sum;
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, double abs_tol,
                          int max_depth) {
  GkResult first = gk15(f, a, b);
  double tol = std::max(abs_tol, rel_tol * std::abs(first.value));
  if (first.error <= tol) return first.value;
  double m = 0.5 * (a + b);
  return adaptive_rec(f, a, m, 0.5 * tol, 1, max_depth) +
         adaptive_rec(f, m, b, 0.5 * tol, 1, max_depth);
}

double integrate_graded_radial(const std::function<double(double)>& f,
                               double r1, int cells_per_decade, int decades,
                               int n) {
  double sum = 0.0;
  double hi = r1;
  double q = std::pow(0.1, 1.0 / cells_per_decade);
  for (int k = 0; k < cells_per_decade * decades; ++k) {
    double lo = hi * q;
    sum += integrate_1d(f, lo, hi, n);
    hi = lo;
  }
  return sum;
}

double newton_bisection(const std::function<double(double)>& f,
                        const std::function<double(double)>& df, double lo,
                        double hi, double rel_tol, int max_iter) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0)
    throw OutOfRange("newton_bisection: endpoints do not bracket a root");
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0) == (fhi > 0)) {
      hi = x;
      fhi = fx;
    } else {
      lo = x;
      flo = fx;
    }
    double d = df(x);
    double x_new = (d != 0.0) ? x - fx / d : x;
    if (!(x_new > lo && x_new < hi)) x_new = 0.5 * (lo + hi);
    double scale = std::max(1.0, std::abs(x_new));
    if (std::abs(x_new - x) <= rel_tol * scale) return x_new;
    x = x_new;
  }
  return x;
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y) {
  const int n = static_cast<int>(x.size());
  if (n < 3 || y.size() != x.size())
    throw ValidationError("CubicSpline: need at least 3 samples");
  for (int i = 1; i < n; ++i)
    if (!(x[i] > x[i - 1]))
      throw ValidationError("CubicSpline: abscissae must strictly increase");
  x_ = std::move(x);
  a_ = y;
  // Natural spline: solve the tridiagonal system for second derivatives.
  std::vector<double> h(n - 1), alpha(n, 0.0), l(n), mu(n), zv(n);
  for (int i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];
  for (int i = 1; i + 1 < n; ++i)
    alpha[i] = 3.0 * ((a_[i + 1] - a_[i]) / h[i] - (a_[i] - a_[i - 1]) / h[i - 1]);
  l[0] = 1.0;
  mu[0] = zv[0] = 0.0;
  for (int i = 1; i + 1 < n; ++i) {
    l[i] = 2.0 * (x_[i + 1] - x_[i - 1]) - h[i - 1] * mu[i - 1];
    mu[i] = h[i] / l[i];
    zv[i] = (alpha[i] - h[i - 1] * zv[i - 1]) / l[i];
  }
  b_.resize(n);
  c_.assign(n, 0.0);
  d_.resize(n);
  for (int j = n - 2; j >= 0; --j) {
    c_[j] = zv[j] - mu[j] * c_[j + 1];
    b_[j] = (a_[j + 1] - a_[j]) / h[j] - h[j] * (c_[j + 1] + 2.0 * c_[j]) / 3.0;
    d_[j] = (c_[j + 1] - c_[j]) / (3.0 * h[j]);
  }
}

int CubicSpline::interval(double x) const {
  int n = static_cast<int>(x_.size());
  if (x <= x_.front()) return 0;
  if (x >= x_.back()) return n - 2;
  int i = static_cast<int>(std::upper_bound(x_.begin(), x_.end(), x) -
                           x_.begin()) - 1;
  return std::clamp(i, 0, n - 2);
}

double CubicSpline::value(double x) const {
  int i = interval(x);
  double t = x - x_[i];
  return a_[i] + t * (b_[i] + t * (c_[i] + t * d_[i]));
}

double CubicSpline::deriv(double x) const {
  int i = interval(x);
  double t = x - x_[i];
  return b_[i] + t * (2.0 * c_[i] + 3.0 * t * d_[i]);
}

double CubicSpline::deriv2(double x) const {
  int i = interval(x);
  double t = x - x_[i];
  return 2.0 * c_[i] + 6.0 * t * d_[i];
}

double CubicSpline::deriv3(double x) const {
  int i = interval(x);
  return 6.0 * d_[i];
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (y[i] == 0.0 || x[i] <= 0.0) continue;
    double lx = std::log(std::abs(x[i])), ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return 0.0;
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (n * sxy - sx * sy) / denom;
}

}  // namespace cdno
