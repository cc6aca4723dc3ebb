#include "graded/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "graded/errors.hpp"

namespace graded {

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0) || !(rel_tol > 0)) throw DomainError("quadrature tolerances must be positive");
  if (!(t_min > 0) || !(t_min < t_max)) throw DomainError("require 0 < t_min < t_max");
  if (eps_singular < 0) throw DomainError("eps_singular must be nonnegative");
  if (r_levels < 1 || t_per_decade < 2 || pad_factor < 1 || radial_nodes < 2 || angular_nodes < 1)
    throw DomainError("node counts out of range");
  if (max_nodes == 0) throw DomainError("max_nodes must be positive");
}

Rule1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre: n < 1");
  Rule1D r;
  r.x.resize(n);
  r.w.resize(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = 0;
      for (int k = 1; k <= n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1);
      double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute derivative at converged node
    double p0 = 1, p1 = 0;
    for (int k = 1; k <= n; ++k) {
      double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (z * p0 - p1) / (z * z - 1);
    double w = 2.0 / ((1 - z * z) * dp * dp);
    r.x[i] = mid - half * z;
    r.x[n - 1 - i] = mid + half * z;
    r.w[i] = r.w[n - 1 - i] = half * w;
  }
  if (n % 2 == 1) r.x[n / 2] = mid;
  return r;
}

Rule1D log_trapezoid(double t0, double t1, int per_decade) {
  if (!(t0 > 0) || !(t1 > t0)) throw DomainError("log_trapezoid: need 0 < t0 < t1");
  const double span = std::log10(t1 / t0);
  const int m = std::max(1, static_cast<int>(std::ceil(span * per_decade - 1e-9)));
  const double ds = std::log(t1 / t0) / m;
  Rule1D r;
  r.x.resize(m + 1);
  r.w.assign(m + 1, ds);
  for (int i = 0; i <= m; ++i) r.x[i] = t0 * std::exp(ds * i);
  r.w.front() *= 0.5;
  r.w.back() *= 0.5;
  return r;
}

namespace {
// The adaptive error estimates are differences of successive levels and
// overstate the true error by orders of magnitude, hence the slack factor.
void check(double err, double val, double abs_tol, double rel_tol, const char* what) {
  if (!std::isfinite(val)) throw NonConvergence(std::string(what) + ": non-finite result");
  if (err > std::max(abs_tol, 1e3 * rel_tol * std::abs(val)))
    throw NonConvergence(std::string(what) + ": error estimate above tolerance");
}
}  // namespace

double integrate_finite(const std::function<double(double)>& f, double a, double b, double abs_tol,
                        double rel_tol) {
  double err = 0;
  double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 25, rel_tol,
                                                                             &err);
  check(err, v, abs_tol, rel_tol, "gauss_kronrod");
  return v;
}

double integrate_endpoint_singular(const std::function<double(double)>& f, double a, double b,
                                   double abs_tol, double rel_tol) {
  thread_local boost::math::quadrature::tanh_sinh<double> ts(15);
  double err = 0, l1 = 0;
  double v = ts.integrate(f, a, b, rel_tol, &err,
                          &l1);
  check(err, v, abs_tol + 1e-15 * l1, rel_tol, "tanh_sinh");
  return v;
}

double integrate_to_infinity(const std::function<double(double)>& f, double a, double abs_tol,
                             double rel_tol) {
  thread_local boost::math::quadrature::exp_sinh<double> es(12);
  double err = 0, l1 = 0;
  auto g = [&](double s) { return f(a + s); };
  double v = es.integrate(g, 0.0, std::numeric_limits<double>::infinity(),
                          rel_tol, &err, &l1);
  check(err, v, abs_tol + 1e-15 * l1, rel_tol, "exp_sinh");
  return v;
}

}  // namespace graded
