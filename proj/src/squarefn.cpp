#include "graded/squarefn.hpp"

#include <cmath>
#include <memory>

#include "graded/errors.hpp"
#include "graded/specfun.hpp"
#include "graded/spectral.hpp"

namespace graded {

namespace {

// Share of the integrated square per decade of t.
std::vector<double> decade_shares(const Rule1D& tr, const std::vector<double>& mass) {
  std::vector<double> out;
  const double l0 = std::log10(tr.x.front());
  double total = 0;
  for (double m : mass) total += m;
  for (std::size_t k = 0; k < tr.x.size(); ++k) {
    std::size_t d = static_cast<std::size_t>(std::floor(std::log10(tr.x[k]) - l0 + 1e-9));
    if (d >= out.size()) out.resize(d + 1, 0.0);
    out[d] += mass[k];
  }
  if (total > 0)
    for (double& v : out) v /= total;
  return out;
}

// int_0^inf |m(t, |xi|^2) fhat|^2 dt/t on the padded box, where for small t
// m = t^kappa (a(|xi|^2) - t b(|xi|^2) + ...).
SquareFnResult spectral_square(const SampledField& f, const QuadratureConfig& cfg, double p,
                               const std::function<double(double, double)>& mult, double kappa,
                               const std::function<double(double)>& a, const std::function<double(double)>& b) {
  cfg.validate();
  PaddedSpectrum sp(f, cfg.pad_factor);
  const std::size_t P = sp.padded_size();
  const Rule1D tr = log_trapezoid(cfg.t_min, cfg.t_max, cfg.t_per_decade);
  std::vector<double> sum(P, 0.0), mass(tr.x.size(), 0.0);
  for (std::size_t k = 0; k < tr.x.size(); ++k) {
    const double t = tr.x[k];
    const std::vector<double>& u = sp.apply([&](double x2) { return mult(t, x2); });
    double mk = 0;
    for (std::size_t i = 0; i < P; ++i) {
      const double v = tr.w[k] * u[i] * u[i];
      sum[i] += v;
      mk += v;
    }
    mass[k] = mk;
  }
  std::vector<double> A = sp.apply(a);
  const std::vector<double>& B = sp.apply(b);
  const double t0 = cfg.t_min;
  for (std::size_t i = 0; i < P; ++i)
    sum[i] += A[i] * A[i] * std::pow(t0, 2 * kappa) / (2 * kappa) -
              2 * A[i] * B[i] * std::pow(t0, 2 * kappa + 1) / (2 * kappa + 1);
  SquareFnResult r;
  r.field = f;
  r.field.grid = sp.padded_grid();
  r.field.support_margin = 0;
  r.field.values.resize(P);
  for (std::size_t i = 0; i < P; ++i) r.field.values[i] = std::sqrt(std::max(0.0, sum[i]));
  r.p = p;
  r.lp = lp_norm(r.field, p);
  r.t_grid = tr.x;
  r.decade_mass = decade_shares(tr, mass);
  return r;
}

// Same integral on H1 with u_t = t^kappa L^k T_t f along a Crank-Nicolson run.
SquareFnResult h1_square(const HeatModel& m, const SampledField& f, const QuadratureConfig& cfg, double p,
                         double kappa, int k) {
  cfg.validate();
  const double T = std::min(cfg.t_max, 4.0);
  const Rule1D tr = log_trapezoid(cfg.t_min, T, cfg.t_per_decade);
  const std::size_t N = f.values.size();
  std::vector<double> sum(N, 0.0), mass(tr.x.size(), 0.0), v = f.values;
  PdeSettings s = m.pde;
  H1HeatSolver probe(f.grid, s);
  auto Lk = [&](std::vector<double> w) {
    for (int j = 0; j < k; ++j) w = probe.apply_L(w);
    return w;
  };
  const std::vector<double> L0 = Lk(f.values);
  double now = 0;
  for (std::size_t q = 0; q < tr.x.size(); ++q) {
    const double dt = tr.x[q] - now;
    s.dt = std::min(m.pde.dt, dt);
    H1HeatSolver solver(f.grid, s);
    solver.evolve(v, dt);
    now = tr.x[q];
    std::vector<double> u = Lk(v);
    const double tk = std::pow(tr.x[q], kappa);
    double mk = 0;
    for (std::size_t i = 0; i < N; ++i) {
      double val = tr.w[q] * tk * tk * u[i] * u[i];
      sum[i] += val;
      mk += val;
    }
    mass[q] = mk;
  }
  for (std::size_t i = 0; i < N; ++i) sum[i] += L0[i] * L0[i] * std::pow(cfg.t_min, 2 * kappa) / (2 * kappa);
  SquareFnResult r;
  r.field = f;
  r.field.support_margin = 0;
  for (std::size_t i = 0; i < N; ++i) r.field.values[i] = std::sqrt(sum[i]);
  r.p = p;
  r.lp = lp_norm(r.field, p);
  r.t_grid = tr.x;
  r.decade_mass = decade_shares(tr, mass);
  return r;
}

}  // namespace

SampledField restrict_to(const SampledField& f, const Grid& grid) {
  if (grid.dim() != f.grid.dim()) throw DimensionMismatch("restrict_to: dimension");
  const std::size_t n = grid.dim();
  std::vector<long long> off(n);
  for (std::size_t a = 0; a < n; ++a) {
    const Axis &g = grid.axes[a], &h = f.grid.axes[a];
    if (std::abs(g.spacing - h.spacing) > 1e-12 * h.spacing) throw DomainError("restrict_to: spacing mismatch");
    double o = (g.origin - h.origin) / h.spacing;
    off[a] = std::llround(o);
    if (std::abs(o - static_cast<double>(off[a])) > 1e-6 || off[a] < 0 ||
        static_cast<std::size_t>(off[a]) + g.count > h.count)
      throw DomainError("restrict_to: grid not contained");
  }
  SampledField out = f;
  out.grid = grid;
  out.values.assign(grid.size(), 0.0);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    auto mi = grid.multi_index(i);
    std::size_t flat = 0;
    for (std::size_t a = 0; a < n; ++a) flat = flat * f.grid.axes[a].count + (mi[a] + static_cast<std::size_t>(off[a]));
    out.values[i] = f.values[flat];
  }
  out.support_margin = 0;
  return out;
}

SquareFnResult g_alpha(const HeatModel& m, const SampledField& f, double alpha, const QuadratureConfig& cfg,
                       double p) {
  if (!(alpha > 0)) throw DomainError("g_alpha: alpha must be positive");
  if (!(p >= 1)) throw DomainError("g_alpha: p must be >= 1");
  if (m.kind == HeatKind::euclidean_explicit) {
    return spectral_square(
        f, cfg, p, [alpha](double t, double x2) { return std::pow(t * x2, alpha) * std::exp(-t * x2); }, alpha,
        [alpha](double x2) { return std::pow(x2, alpha); }, [alpha](double x2) { return std::pow(x2, alpha + 1); });
  }
  const int k = static_cast<int>(std::lround(alpha));
  if (std::abs(alpha - k) > 1e-12)
    throw DomainError("g_alpha on H1: only positive integer orders are implemented");
  return h1_square(m, f, cfg, p, alpha, k);
}

SquareFnResult G_s(const HeatModel& m, const SampledField& f, double s, const QuadratureConfig& cfg, double p) {
  if (!(s > 0 && s < m.nu)) throw DomainError("G_s: s must lie in (0, nu)");
  const double kappa = 1 - s / m.nu;
  if (m.kind == HeatKind::euclidean_explicit) {
    return spectral_square(
        f, cfg, p, [kappa](double t, double x2) { return std::pow(t, kappa) * x2 * std::exp(-t * x2); }, kappa,
        [](double x2) { return x2; }, [](double x2) { return x2 * x2; });
  }
  return h1_square(m, f, cfg, p, kappa, 1);
}

// ---------------------------------------------------------------------------

namespace {
double phi_zero(const ScalarFn& phi, std::size_t n) { return phi(Point(n)); }
}  // namespace

SquareFnResult g_phi(const SampledField& f, const ScalarFn& phi, const GPhiOptions& opt, double p) {
  const GroupSpec& g = *f.group;
  if (!g.abelian) throw DomainError("g_phi: field version needs an abelian group; use g_phi_at");
  const std::size_t n = f.grid.dim();
  double hmax = 0;
  for (const Axis& a : f.grid.axes) hmax = std::max(hmax, a.spacing);
  const double tau0 = opt.tau_min > 0 ? opt.tau_min : 3 * hmax;
  if (!(opt.tau_max > tau0)) throw DomainError("g_phi: tau_max must exceed tau_min");
  const Rule1D tr = log_trapezoid(tau0, opt.tau_max, opt.per_decade);
  const double Q = static_cast<double>(g.Q);
  std::vector<std::size_t> da(n), db(n);
  std::size_t kn = 1;
  for (std::size_t a = 0; a < n; ++a) {
    da[a] = f.grid.axes[a].count;
    db[a] = 2 * da[a] - 1;
    kn *= db[a];
  }
  const std::size_t N = f.values.size();
  const double vol = f.grid.cell_volume();
  std::vector<double> sum(N, 0.0), mass(tr.x.size(), 0.0), ker(kn);
  for (std::size_t k = 0; k < tr.x.size(); ++k) {
    const double tau = tr.x[k];
    const double sc = std::pow(tau, -Q) * vol;
    for (std::size_t j = 0; j < kn; ++j) {
      std::size_t rem = j;
      Point z(n);
      for (std::size_t a = n; a-- > 0;) {
        long long q = static_cast<long long>(rem % db[a]) - static_cast<long long>(da[a] - 1);
        rem /= db[a];
        z[a] = static_cast<double>(q) * f.grid.axes[a].spacing / tau;
      }
      ker[j] = sc * phi(z);
    }
    std::vector<double> c = fft_convolve_nd(f.values, da, ker, db);
    double mk = 0;
    for (std::size_t i = 0; i < N; ++i) {
      auto mi = f.grid.multi_index(i);
      std::size_t flat = 0;
      for (std::size_t a = 0; a < n; ++a) flat = flat * (da[a] + db[a] - 1) + (mi[a] + da[a] - 1);
      double v = tr.w[k] * c[flat] * c[flat];
      sum[i] += v;
      mk += v;
    }
    mass[k] = mk;
  }
  const double M0 = integral(f), p0 = phi_zero(phi, n);
  for (std::size_t i = 0; i < N; ++i) {
    if (opt.small_scale) {
      double a = (*opt.small_scale)[i];
      sum[i] += a * a * std::pow(tau0, 2 * opt.kappa) / (2 * opt.kappa);
    }
    sum[i] += M0 * M0 * p0 * p0 * std::pow(opt.tau_max, -2 * Q) / (2 * Q);
  }
  SquareFnResult r;
  r.field = f;
  r.field.support_margin = 0;
  for (std::size_t i = 0; i < N; ++i) r.field.values[i] = std::sqrt(std::max(0.0, sum[i]));
  r.p = p;
  r.lp = lp_norm(r.field, p);
  r.t_grid = tr.x;
  r.decade_mass = decade_shares(tr, mass);
  return r;
}

std::vector<double> g_phi_at(const SampledField& f, const ScalarFn& phi, const std::vector<Point>& xs,
                             const GPhiOptions& opt) {
  const GroupSpec& g = *f.group;
  double hmax = 0;
  for (const Axis& a : f.grid.axes) hmax = std::max(hmax, a.spacing);
  const double tau0 = opt.tau_min > 0 ? opt.tau_min : 3 * hmax;
  const Rule1D tr = log_trapezoid(tau0, opt.tau_max, opt.per_decade);
  const double Q = static_cast<double>(g.Q), vol = f.grid.cell_volume();
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < f.values.size(); ++j)
    if (f.values[j] != 0.0) support.push_back(j);
  std::vector<Point> yinv(support.size());
  for (std::size_t j = 0; j < support.size(); ++j) yinv[j] = inverse(g, f.grid.node(support[j]));
  const double M0 = integral(f), p0 = phi_zero(phi, g.n);
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double s = 0;
    for (std::size_t k = 0; k < tr.x.size(); ++k) {
      const double tau = tr.x[k];
      double c = 0;
      for (std::size_t j = 0; j < support.size(); ++j)
        c += f.values[support[j]] * phi(dilate(g, 1.0 / tau, multiply(g, yinv[j], xs[i])));
      c *= std::pow(tau, -Q) * vol;
      s += tr.w[k] * c * c;
    }
    if (opt.small_scale) {
      double a = (*opt.small_scale)[i];
      s += a * a * std::pow(tau0, 2 * opt.kappa) / (2 * opt.kappa);
    }
    s += M0 * M0 * p0 * p0 * std::pow(opt.tau_max, -2 * Q) / (2 * Q);
    out[i] = std::sqrt(s);
  }
  return out;
}

ScalarFn phi_alpha_table(int n, double alpha) {
  const double step = 0.01, rmax = 30.0;
  const std::size_t cnt = static_cast<std::size_t>(rmax / step) + 3;
  auto tab = std::make_shared<std::vector<double>>(cnt);
  for (std::size_t i = 0; i < cnt; ++i) (*tab)[i] = phi_alpha_euclidean(n, alpha, step * static_cast<double>(i));
  return [tab, step, rmax, n, alpha](const Point& x) {
    double r2 = 0;
    for (std::size_t a = 0; a < x.size(); ++a) r2 += x[a] * x[a];
    const double r = std::sqrt(r2);
    if (r >= rmax) return phi_alpha_euclidean_asymptotic(n, alpha, r, 6);
    const double pr = r / step;
    const long long i0 = static_cast<long long>(std::floor(pr)) - 1;
    const double s = pr - std::floor(pr);
    const double w[4] = {-s * (s - 1) * (s - 2) / 6, (s + 1) * (s - 1) * (s - 2) / 2, -(s + 1) * s * (s - 2) / 2,
                         (s + 1) * s * (s - 1) / 6};
    double v = 0;
    for (int a = 0; a < 4; ++a) v += w[a] * (*tab)[static_cast<std::size_t>(std::llabs(i0 + a))];
    return v;
  };
}

}  // namespace graded
