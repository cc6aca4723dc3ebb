#include "graded/fracops.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "graded/errors.hpp"
#include "graded/specfun.hpp"
#include "graded/spectral.hpp"

namespace graded {

namespace {
constexpr double kPi = std::numbers::pi;

void check_frac_alpha(double alpha, double hi, const char* what) {
  if (!(alpha > 0 && alpha < hi)) throw DomainError(std::string(what) + ": alpha out of range");
}

double heat1(const HeatModel& m, const Point& x) {
  switch (m.kind) {
    case HeatKind::euclidean_explicit: {
      double r2 = 0;
      for (std::size_t i = 0; i < x.size(); ++i) r2 += x[i] * x[i];
      return std::pow(4 * kPi, -0.5 * static_cast<double>(x.size())) * std::exp(-0.25 * r2);
    }
    case HeatKind::h1_quadrature:
      return h1_kernel_quadrature(1.0, x[0], x[1], x[2]);
    case HeatKind::h1_pde:
      return h1_pde_kernel(m, 1.0).interpolate(x);
  }
  return 0;
}

}  // namespace

void FracParams::validate() const {
  if (!(alpha > 0)) throw DomainError("alpha must be positive");
  if (nu < 2 || nu % 2) throw DomainError("nu must be even and >= 2");
  if (!(p >= 1)) throw DomainError("p must be >= 1");
}

double k_alpha(const HeatModel& m, double alpha, const Point& y) {
  if (!(alpha > 0)) throw DomainError("k_alpha: alpha must be positive");
  const GroupSpec& g = *m.group;
  if (y.size() != g.n) throw DimensionMismatch("k_alpha: point dimension");
  const double r = quasi_norm(g, y);
  if (r == 0) throw DomainError("k_alpha: singular at the identity");
  const Point w = dilate(g, 1.0 / r, y);
  const double Q = static_cast<double>(g.Q), nu = m.nu;
  // h_t(w) = t^{-Q/nu} h_1(D_{t^{-1/nu}} w); trapezoid in s = log t
  const double rate = Q / nu + alpha;
  const double s_lo = -12.0, s_hi = 38.0 / rate, ds = 0.04;
  const int steps = static_cast<int>(std::ceil((s_hi - s_lo) / ds));
  const double h = (s_hi - s_lo) / steps;
  double sum = 0;
  for (int i = 0; i <= steps; ++i) {
    const double s = s_lo + h * i;
    double v = heat1(m, dilate(g, std::exp(-s / nu), w)) * std::exp(-rate * s);
    sum += (i == 0 || i == steps) ? 0.5 * v : v;
  }
  sum *= h;
  sum += heat1(m, identity(g)) * std::exp(-rate * s_hi) / rate;
  return rgamma(-alpha) * sum * std::pow(r, -Q - alpha * nu);
}

double frac_power_pointwise(const HeatModel& m, const SampledField& f, double alpha, const Point& x,
                            const QuadratureConfig& cfg, PointwiseDiagnostics* diag) {
  const GroupSpec& g = *m.group;
  const double an = alpha * m.nu;
  check_frac_alpha(alpha, 2.0 / m.nu, "frac_power_pointwise");
  cfg.validate();
  if (x.size() != g.n) throw DimensionMismatch("frac_power_pointwise: point dimension");
  double hmax = 0;
  for (const Axis& a : f.grid.axes) {
    hmax = std::max(hmax, a.spacing);
  }
  for (std::size_t a = 0; a < g.n; ++a)
    if (x[a] < f.grid.axes[a].origin + 2 * f.grid.axes[a].spacing ||
        x[a] > f.grid.axes[a].end() - 2 * f.grid.axes[a].spacing)
      throw DomainError("frac_power_pointwise: x too near the boundary");
  const double eps = cfg.eps_singular > 0 ? cfg.eps_singular : 2 * hmax;
  const double R = g.rho_for(NormVariant::max) * (quasi_norm(g, x) + grid_quasi_radius(g, f.grid));
  const AngularRule ang = angular_rule(g, cfg.angular_nodes);
  const double fx = f.interpolate(x);
  // log-spaced Gauss panels on [eps, R]
  const int per_octave = std::max(2, cfg.r_levels / 2);
  const int panels = std::max(1, static_cast<int>(std::ceil(std::log2(R / eps) * per_octave)));
  const Rule1D gl = gauss_legendre(8, 0.0, 1.0);
  const double lr = std::log(R / eps) / panels;
  auto d2 = [&](const Point& y) {
    return f.interpolate(multiply(g, x, y)) + f.interpolate(multiply(g, x, inverse(g, y))) - 2 * fx;
  };
  double inner = 0, outer = 0, tail = 0;
  for (std::size_t i = 0; i < ang.dirs.size(); ++i) {
    const Point& w = ang.dirs[i];
    const double k = k_alpha(m, alpha, w);
    const double wk = ang.w[i] * k;
    inner += wk * d2(dilate(g, eps, w)) * std::pow(eps, -an) / (2 - an);
    double o = 0;
    for (int p = 0; p < panels; ++p)
      for (std::size_t q = 0; q < gl.x.size(); ++q) {
        double r = eps * std::exp(lr * (p + gl.x[q]));
        // dr / r^{1+an} = r^{-an} d(log r)
        o += gl.w[q] * lr * d2(dilate(g, r, w)) * std::pow(r, -an);
      }
    outer += wk * o;
    tail += wk * (-2 * fx) * std::pow(R, -an) / an;
  }
  if (diag) *diag = {eps, 0.5 * inner, 0.5 * outer, 0.5 * tail, R};
  return 0.5 * (inner + outer + tail);
}

SampledField frac_power_pointwise_grid(const SampledField& f, double alpha, const QuadratureConfig& cfg) {
  check_frac_alpha(alpha, 1.0, "frac_power_pointwise_grid");
  if (f.grid.dim() != 1 || !f.group->abelian) throw DimensionMismatch("grid pointwise route needs a 1-d abelian grid");
  const std::size_t N = f.values.size();
  const double h = f.grid.axes[0].spacing;
  const double c = euclidean_k_constant(1, alpha);
  const double a2 = 2 * alpha;
  const std::size_t J = N + 1;  // beyond J*h both translates leave the grid
  (void)cfg;
  // product-integration weights: int_{2h}^{Jh} cubic(g) y^{-1-2alpha} dy = sum_m W[m] g_m
  std::vector<double> W(J + 2, 0.0);
  const Rule1D gl = gauss_legendre(8, 0.0, 1.0);
  for (std::size_t j = 2; j < J; ++j) {
    for (std::size_t q = 0; q < gl.x.size(); ++q) {
      const double s = gl.x[q];
      const double wt = gl.w[q] * h * std::pow(h * (static_cast<double>(j) + s), -1 - a2);
      W[j - 1] += wt * (-s * (s - 1) * (s - 2) / 6);
      W[j] += wt * ((s + 1) * (s - 1) * (s - 2) / 2);
      W[j + 1] += wt * (-(s + 1) * s * (s - 2) / 2);
      W[j + 2] += wt * ((s + 1) * s * (s - 1) / 6);
    }
  }
  const double eps = 2 * h, R = static_cast<double>(J) * h;
  double Wsum = 0;
  for (double w : W) Wsum += w;
  auto at = [&](long long i) { return (i < 0 || i >= static_cast<long long>(N)) ? 0.0 : f.values[i]; };
  SampledField out = f;
  out.support_margin = 0;
  for (std::size_t i = 0; i < N; ++i) {
    const long long I = static_cast<long long>(i);
    const double f0 = f.values[i];
    const double d2 = (-at(I - 2) + 16 * at(I - 1) - 30 * f0 + 16 * at(I + 1) - at(I + 2)) / (12 * h * h);
    const double d4 = (at(I - 2) - 4 * at(I - 1) + 6 * f0 - 4 * at(I + 1) + at(I + 2)) / (h * h * h * h);
    double inner = d2 * std::pow(eps, 2 - a2) / (2 - a2) + d4 * std::pow(eps, 4 - a2) / (12 * (4 - a2));
    double outer = -2 * f0 * Wsum;
    for (std::size_t m = 1; m < W.size(); ++m) outer += W[m] * (at(I + static_cast<long long>(m)) + at(I - static_cast<long long>(m)));
    double tail = -2 * f0 * std::pow(R, -a2) / a2;
    out.values[i] = c * (inner + outer + tail);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Extrapolation weights c with sum c = 1 and sum c e^{p} = 0 for each p.
std::vector<double> richardson_weights(const std::vector<double>& e, const std::vector<double>& pw) {
  const std::size_t k = e.size();
  std::vector<std::vector<double>> A(k, std::vector<double>(k + 1, 0.0));
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t i = 0; i < k; ++i) A[r][i] = r == 0 ? 1.0 : std::pow(e[i], pw[r - 1]);
  A[0][k] = 1.0;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    std::swap(A[col], A[piv]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      double fct = A[r][col] / A[col][col];
      for (std::size_t c = col; c <= k; ++c) A[r][c] -= fct * A[col][c];
    }
  }
  std::vector<double> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = A[i][k] / A[i][i];
  return c;
}

// int_T^inf t^{-alpha-1} d^k/dx^k h_t(x) dt on R^1 for k = 0, 1, 2, from
// H(x) = sum_j c_j (-x^2/(4T))^j with c_j = T^{-a}/(j! (a + j)), a = alpha + 1/2.
void tail_heat_1d(double alpha, double T, double x, double out[3]) {
  const double a = alpha + 0.5, v = -0.25 * x * x / T, dv = -0.5 * x / T, d2v = -0.5 / T;
  double s0 = 0, s1 = 0, s2 = 0;
  double p = 1;  // v^j / j!
  for (int j = 0; j < 400; ++j) {
    if (j) p *= v / j;
    s0 += p / (a + j);
    if (std::abs(p) < 1e-20 && j > std::abs(v) + 4) break;
  }
  // first and second derivatives in v: sum_j v^{j-1}/(j-1)!/(a+j), sum_j v^{j-2}/(j-2)!/(a+j)
  p = 1;
  for (int j = 0; j < 400; ++j) {
    if (j) p *= v / j;
    s1 += p / (a + j + 1);
    s2 += p / (a + j + 2);
    if (std::abs(p) < 1e-20 && j > std::abs(v) + 4) break;
  }
  const double norm = std::pow(T, -a) / std::sqrt(4 * kPi);
  out[0] = norm * s0;
  out[1] = norm * s1 * dv;
  out[2] = norm * (s2 * dv * dv + s1 * d2v);
}

}  // namespace

SampledField frac_power_balakrishnan(const HeatModel& m, const SampledField& f, double alpha,
                                     const QuadratureConfig& cfg, BalakrishnanDiagnostics* diag) {
  check_frac_alpha(alpha, 1.0, "frac_power_balakrishnan");
  cfg.validate();
  m.validate();
  const std::size_t N = f.values.size();
  const bool euclid = m.kind == HeatKind::euclidean_explicit;
  double T;
  std::unique_ptr<PaddedSpectrum> sp;
  if (euclid) {
    sp = std::make_unique<PaddedSpectrum>(f, cfg.pad_factor);
    // keep the periodic images of T_t f below 1e-16
    double gap = 1e300;
    for (std::size_t a = 0; a < f.grid.dim(); ++a) {
      double Lw = f.grid.axes[a].spacing * static_cast<double>(f.grid.axes[a].count);
      double Lp = f.grid.axes[a].spacing * static_cast<double>(sp->padded_grid().axes[a].count);
      gap = std::min(gap, Lp - Lw);
    }
    T = std::min({cfg.t_max, 100.0, gap * gap / 148.0});
  } else {
    T = std::min(cfg.t_max, 4.0);
  }
  if (!(T > cfg.t_min * 1e3)) throw DomainError("frac_power_balakrishnan: time window too short");
  const Rule1D tr = log_trapezoid(cfg.t_min, T, cfg.t_per_decade);
  const std::size_t K = tr.x.size();
  const double ds = tr.w[1];
  const std::size_t shift = static_cast<std::size_t>(cfg.t_per_decade / 4);
  // g_k(x) = t_k^{-alpha} (f - T_{t_k} f)
  std::vector<std::vector<double>> g(K);
  if (euclid) {
    for (std::size_t k = 0; k < K; ++k) {
      const double t = tr.x[k];
      g[k] = sp->window(sp->apply([t](double x2) { return std::exp(-t * x2); }));
    }
  } else {
    PdeSettings s = m.pde;
    std::vector<double> v = f.values;
    double now = 0;
    for (std::size_t k = 0; k < K; ++k) {
      const double dt = tr.x[k] - now;
      s.dt = std::min(m.pde.dt, dt);
      H1HeatSolver solver(f.grid, s);
      solver.evolve(v, dt);
      now = tr.x[k];
      g[k] = v;
    }
  }
  for (std::size_t k = 0; k < K; ++k) {
    const double tw = std::pow(tr.x[k], -alpha);
    for (std::size_t i = 0; i < N; ++i) g[k][i] = tw * (f.values[i] - g[k][i]);
  }
  // large-t tail: f T^{-alpha}/alpha - int_T^inf t^{-alpha-1} T_t f dt
  std::vector<double> tail(N);
  if (euclid && f.grid.dim() == 1) {
    double M[3] = {0, 0, 0};
    const double h = f.grid.axes[0].spacing;
    for (std::size_t i = 0; i < N; ++i) {
      double z = f.grid.axes[0].coord(i);
      M[0] += f.values[i] * h;
      M[1] += f.values[i] * z * h;
      M[2] += f.values[i] * z * z * h;
    }
    for (std::size_t i = 0; i < N; ++i) {
      double H[3];
      tail_heat_1d(alpha, T, f.grid.axes[0].coord(i), H);
      tail[i] = f.values[i] * std::pow(T, -alpha) / alpha - (M[0] * H[0] - M[1] * H[1] + 0.5 * M[2] * H[2]);
    }
  } else {
    // leading monopole term: T_t f(x) ~ M0 h_t(0) = M0 h_1(0) t^{-Q/nu}
    const double M0 = integral(f);
    const double Qn = static_cast<double>(m.group->Q) / m.nu;
    const double h10 = euclid ? std::pow(4 * kPi, -0.5 * static_cast<double>(f.grid.dim()))
                              : h1_kernel_quadrature(1.0, 0, 0, 0);
    for (std::size_t i = 0; i < N; ++i)
      tail[i] = f.values[i] * std::pow(T, -alpha) / alpha - M0 * h10 * std::pow(T, -alpha - Qn) / (alpha + Qn);
  }
  // trapezoid from node e to K-1 with an end correction at T
  auto trap = [&](std::size_t e, std::size_t i) {
    double s = 0.5 * (g[e][i] + g[K - 1][i]);
    for (std::size_t k = e + 1; k + 1 < K; ++k) s += g[k][i];
    s *= ds;
    double gp = (3 * g[K - 1][i] - 4 * g[K - 2][i] + g[K - 3][i]) / (2 * ds);
    return s - ds * ds / 12 * gp;
  };
  const std::vector<double> eps{tr.x[0], tr.x[shift], tr.x[2 * shift]};
  const std::vector<double> c3 = richardson_weights(eps, {1 - alpha, 2 - alpha});
  const std::vector<double> c2 = richardson_weights({eps[0], eps[1]}, {1 - alpha});
  const double pref = -rgamma(-alpha);
  SampledField out = f;
  out.support_margin = 0;
  double num = 0, den = 0;
  for (std::size_t i = 0; i < N; ++i) {
    double I[3];
    for (int e = 0; e < 3; ++e) I[e] = trap(static_cast<std::size_t>(e) * shift, i) + tail[i];
    double v3 = c3[0] * I[0] + c3[1] * I[1] + c3[2] * I[2];
    double v2 = c2[0] * I[0] + c2[1] * I[1];
    out.values[i] = pref * v3;
    num += (v3 - v2) * (v3 - v2);
    den += v3 * v3;
  }
  if (diag) {
    diag->eps = eps;
    diag->extrapolation_residual = den > 0 ? std::sqrt(num / den) : 0.0;
    diag->t_max = T;
    diag->t_nodes = K;
  }
  if (den > 0 && std::sqrt(num / den) > std::max(cfg.rel_tol, 1e-6))
    throw NonConvergence("frac_power_balakrishnan: extrapolation residual above tolerance");
  return out;
}

// ---------------------------------------------------------------------------

SampledField frac_power_spectral(const SampledField& f, double alpha, int pad_factor, bool keep_padding) {
  if (!(alpha > 0)) throw DomainError("frac_power_spectral: alpha must be positive");
  PaddedSpectrum sp(f, pad_factor);
  const std::vector<double>& padded = sp.apply([alpha](double x2) { return std::pow(x2, alpha); });
  SampledField out = f;
  out.support_margin = 0;
  if (keep_padding) {
    out.grid = sp.padded_grid();
    out.values = padded;
    return out;
  }
  out.values = sp.window(padded);
  if (f.grid.dim() == 1 && alpha < 1) {
    // far field ~ M0 C |x|^{-1-2 alpha}; remove its periodic images
    const double h = f.grid.axes[0].spacing;
    const double L = h * static_cast<double>(sp.padded_grid().axes[0].count);
    const double M0 = integral(f), C = euclidean_k_constant(1, alpha), p = 1 + 2 * alpha;
    const int K = 2000;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
      const double x = f.grid.axes[0].coord(i);
      double s = 0;
      for (int k = K; k >= 1; --k) s += std::pow(k * L + x, -p) + std::pow(k * L - x, -p);
      s += 2 * std::pow(L, -p) * std::pow(K + 0.5, 1 - p) / (p - 1);
      out.values[i] -= M0 * C * s;
    }
  }
  return out;
}

double sobolev_norm(const HeatModel& m, const SampledField& f, double s, double p) {
  if (!(p > 1)) throw DomainError("sobolev_norm: p must exceed 1");
  if (!(s > 0)) throw DomainError("sobolev_norm: s must be positive");
  if (m.kind == HeatKind::euclidean_explicit) {
    PaddedSpectrum sp(f, m.cfg.pad_factor);
    SampledField g = f;
    g.values = sp.window(sp.apply([s](double x2) { return std::pow(1 + x2, 0.5 * s); }));
    return lp_norm(g, p);
  }
  SampledField r = frac_power_balakrishnan(m, f, s / m.nu, m.cfg);
  return lp_norm(f, p) + lp_norm(r, p);
}

}  // namespace graded
