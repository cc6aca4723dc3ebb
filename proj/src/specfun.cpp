#include "graded/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "graded/errors.hpp"
#include "graded/quadrature.hpp"

namespace graded {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kLanczos[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool nonpositive_integer(double x) { return x <= 0 && x == std::floor(x); }

// Gamma for x >= 1/2.
double gamma_pos(double x) {
  x -= 1;
  double a = kLanczos[0];
  const double t = x + 7.5;
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i);
  // split the power to delay overflow
  double p = std::pow(t, 0.5 * (x + 0.5));
  return std::sqrt(2 * kPi) * p * (p * std::exp(-t)) * a;
}

double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0) r += 2.0;
  if (r == 0.0 || r == 1.0) return 0.0;
  return std::sin(kPi * r);
}
}  // namespace

double gamma_fn(double x) {
  if (nonpositive_integer(x)) throw DomainError("gamma_fn: pole at a nonpositive integer");
  if (x < 0.5) return kPi / (sin_pi(x) * gamma_pos(1 - x));
  return gamma_pos(x);
}

double rgamma(double x) {
  if (nonpositive_integer(x)) return 0.0;
  if (x < 0.5) return sin_pi(x) * gamma_pos(1 - x) / kPi;
  if (x > 171.6) return 0.0;
  return 1.0 / gamma_pos(x);
}

// ---------------------------------------------------------------------------

namespace {

struct SeriesResult {
  double sum;
  double last;   // magnitude of the last term added
  double peak;   // largest term magnitude
};

SeriesResult taylor(double a, double b, double z, std::size_t max_terms) {
  std::size_t k = 0;
  double t;
  if (nonpositive_integer(b)) {
    // terms with b + k <= 0 vanish; the first survivor has b + k = 1
    k = static_cast<std::size_t>(1 - b);
    t = 1.0;
    for (std::size_t i = 0; i < k; ++i) t *= (a + static_cast<double>(i)) * z / static_cast<double>(i + 1);
  } else {
    t = rgamma(b);
  }
  SeriesResult r{t, std::abs(t), std::abs(t)};
  if (max_terms == 0) return {0, 0, 0};
  for (std::size_t used = 1; used < max_terms; ++k, ++used) {
    const double kk = static_cast<double>(k);
    t *= (a + kk) * z / ((kk + 1) * (b + kk));
    r.sum += t;
    r.last = std::abs(t);
    r.peak = std::max(r.peak, r.last);
    if (t == 0.0) break;
    if (r.last <= 1e-17 * std::abs(r.sum) && kk > std::abs(z)) break;
  }
  return r;
}

double taylor_checked(double a, double b, double z) {
  SeriesResult r = taylor(a, b, z, 20000);
  if (!std::isfinite(r.sum)) throw OverflowError("kummer_reg: series overflow");
  if (r.last > 1e-14 * std::abs(r.sum) && r.sum != 0.0)
    throw NonConvergence("kummer_reg: Taylor series did not converge");
  return r.sum;
}

double asymptotic_negative(double a, double b, double x) {
  // x = -z > 0
  double s = 1.0, t = 1.0, prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 500; ++k) {
    double nt = t * (a + k) * (a - b + 1 + k) / ((k + 1.0) * x);
    if (std::abs(nt) >= std::abs(prev) && k > 1) break;  // optimal truncation
    prev = t;
    t = nt;
    s += t;
    if (std::abs(t) < 1e-17 * std::abs(s)) break;
  }
  return std::pow(x, -a) * rgamma(b - a) * s;
}

}  // namespace

double kummer_reg_series(double a, double b, double z, std::size_t max_terms) {
  return taylor(a, b, z, max_terms).sum;
}

double kummer_reg(double a, double b, double z) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(z)) throw DomainError("kummer_reg: non-finite input");
  double v;
  if (z >= -2.0) {
    v = taylor_checked(a, b, z);
  } else if (nonpositive_integer(b - a) || z >= -50.0) {
    if (-z > 700) throw OverflowError("kummer_reg: Kummer transformation overflows");
    v = std::exp(z) * taylor_checked(b - a, b, -z);
  } else if (nonpositive_integer(a)) {
    v = taylor_checked(a, b, z);
  } else {
    v = asymptotic_negative(a, b, -z);
  }
  if (!std::isfinite(v)) throw OverflowError("kummer_reg: result overflows");
  return v;
}

// ---------------------------------------------------------------------------

void PsiParams::validate() const {
  if (!(alpha > 0 && alpha < 1)) throw DomainError("psi: alpha must lie in (0,1)");
  if (!(alpha + beta - 1 > 0)) throw DomainError("psi: need alpha + beta - 1 > 0");
  if (!(nu >= 2)) throw DomainError("psi: nu must be >= 2");
  if (!(c > 0)) throw DomainError("psi: c must be positive");
}

namespace {
constexpr double kTol = 1e-14;
constexpr double kAbs = 1e-300;
}  // namespace

double psi(const PsiParams& p, double r) {
  p.validate();
  if (r < 0) throw DomainError("psi: r must be nonnegative");
  const double a = p.alpha, b = p.beta, nu = p.nu;
  const double q = 1.0 / (nu - 1);
  const double A = p.c * std::pow(r, nu * q);
  // upper piece, u in [1/2, 1], written in w = 1 - u
  auto upper = [&](double w) {
    return std::pow(1 - w, a + b - 2) * std::exp(-A * std::pow(1 - w, q)) * std::pow(w, -a);
  };
  double hi = integrate_endpoint_singular(upper, 0.0, 0.5, kAbs, kTol);
  double lo;
  if (A <= 1.0) {
    auto f = [&](double u) { return std::pow(u, a + b - 2) * std::exp(-A * std::pow(u, q)) * std::pow(1 - u, -a); };
    lo = integrate_endpoint_singular(f, 0.0, 0.5, kAbs, kTol);
  } else {
    // v = A u^{1/(nu-1)}
    const double e = (nu - 1) * (a + b - 1);
    const double vmax = A * std::pow(0.5, q);
    auto g = [&](double v) {
      return std::pow(v, e - 1) * std::exp(-v) * std::pow(1 - std::pow(v / A, nu - 1), -a);
    };
    double s = integrate_endpoint_singular(g, 0.0, std::min(1.0, vmax), kAbs, kTol);
    if (vmax > 1.0 + 1e-9) s += integrate_finite(g, 1.0, std::min(vmax, 800.0), kAbs, kTol);
    lo = (nu - 1) * std::pow(A, -e) * s;
  }
  return lo + hi;
}

double psi_direct(const PsiParams& p, double r) {
  p.validate();
  if (r < 0) throw DomainError("psi_direct: r must be nonnegative");
  const double q = 1.0 / (p.nu - 1);
  const double A = p.c * std::pow(r, p.nu * q);
  auto f = [&](double t) { return std::pow(t, -p.beta) * std::exp(-A / std::pow(t, q)); };
  double s1 = integrate_endpoint_singular([&](double s) { return f(1 + s) * std::pow(s, -p.alpha); }, 0.0, 1.0,
                                          kAbs, kTol);
  double s2 = integrate_to_infinity([&](double t) { return f(t) * std::pow(t - 1, -p.alpha); }, 2.0, kAbs, kTol);
  return s1 + s2;
}

// ---------------------------------------------------------------------------

static void check_alpha(double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw DomainError("phi_alpha: alpha must lie in (0,1)");
}

double phi_alpha_euclidean(int n, double alpha, double r) {
  check_alpha(alpha);
  if (n < 1) throw DomainError("phi_alpha: n must be positive");
  if (r < 0) throw DomainError("phi_alpha: r must be nonnegative");
  const double h = 0.5 * n, z = -0.25 * r * r;
  double v = h * gamma_fn(alpha + h) * kummer_reg(alpha + h, h + 1, z) -
             gamma_fn(alpha + 1 + h) * (-z) * kummer_reg(alpha + h + 1, h + 2, z);
  return std::pow(4 * kPi, -h) * v;
}

double phi_alpha_euclidean_time_route(int n, double alpha, double r) {
  check_alpha(alpha);
  const double h = 0.5 * n;
  auto dth = [&](double t) {
    return std::pow(4 * kPi * t, -h) * std::exp(-r * r / (4 * t)) * (r * r / (4 * t * t) - h / t);
  };
  double s1 = integrate_endpoint_singular([&](double s) { return dth(1 + s) * std::pow(s, -alpha); }, 0.0, 1.0,
                                          1e-300, 1e-13);
  double s2 = integrate_to_infinity([&](double t) { return dth(t) * std::pow(t - 1, -alpha); }, 2.0, 1e-300, 1e-13);
  return -(s1 + s2) * rgamma(1 - alpha);
}

double euclidean_k_constant(int n, double alpha) {
  return std::pow(4.0, alpha) * gamma_fn(0.5 * n + alpha) * rgamma(-alpha) / std::pow(kPi, 0.5 * n);
}

double phi_alpha_euclidean_asymptotic(int n, double alpha, double r, int terms) {
  double s = 0, fact = 1;
  for (int k = 0; k < terms; ++k) {
    if (k) fact *= k;
    double sg = (k % 2) ? -1.0 : 1.0;
    s += sg / fact * euclidean_k_constant(n, alpha + k) * std::pow(r, -n - 2 * alpha - 2 * k);
  }
  return s;
}

double phi_alpha_euclidean_tail_mass(int n, double alpha, double R, int terms) {
  const double sphere = 2 * std::pow(kPi, 0.5 * n) / gamma_fn(0.5 * n);
  double s = 0, fact = 1;
  for (int k = 0; k < terms; ++k) {
    if (k) fact *= k;
    double sg = (k % 2) ? -1.0 : 1.0;
    double b = alpha + k;
    s += sg / fact * euclidean_k_constant(n, b) * std::pow(R, -2 * b) / (2 * b);
  }
  return sphere * s;
}

}  // namespace graded
