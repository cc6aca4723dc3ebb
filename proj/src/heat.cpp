#include "graded/heat.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>

#include "graded/spectral.hpp"

namespace graded {

namespace {
constexpr double kPi = std::numbers::pi;

bool is_h1(const GroupSpec& g) {
  return g.n == 3 && g.weights == std::vector<int>{1, 1, 2} && !g.abelian;
}
}  // namespace

HeatKind parse_heat_kind(const std::string& s) {
  if (s == "euclidean_explicit") return HeatKind::euclidean_explicit;
  if (s == "h1_pde") return HeatKind::h1_pde;
  if (s == "h1_quadrature") return HeatKind::h1_quadrature;
  throw ParseError("unknown heat model kind '" + s + "'");
}

const char* to_string(HeatKind k) {
  switch (k) {
    case HeatKind::euclidean_explicit: return "euclidean_explicit";
    case HeatKind::h1_pde: return "h1_pde";
    case HeatKind::h1_quadrature: return "h1_quadrature";
  }
  return "?";
}

HeatModel HeatModel::euclidean(std::size_t n, const QuadratureConfig& cfg) {
  HeatModel m;
  m.group = std::make_shared<const GroupSpec>(GroupSpec::euclidean(n));
  m.kind = HeatKind::euclidean_explicit;
  m.cfg = cfg;
  return m;
}

HeatModel HeatModel::h1(HeatKind kind, const QuadratureConfig& cfg) {
  HeatModel m;
  m.group = std::make_shared<const GroupSpec>(GroupSpec::heisenberg());
  m.kind = kind;
  m.cfg = cfg;
  return m;
}

void HeatModel::validate() const {
  if (!group) throw DomainError("heat model without group");
  if (nu < 2 || nu % 2 != 0) throw DomainError("nu must be even and >= 2");
  if (nu != 2) throw DomainError("only the second-order Rockland operators are implemented");
  if (kind == HeatKind::euclidean_explicit && !group->abelian)
    throw DomainError("explicit Euclidean kernel needs an abelian group");
  if (kind != HeatKind::euclidean_explicit && !is_h1(*group))
    throw DomainError("H1 heat kernels need the Heisenberg group");
  cfg.validate();
}

// ---------------------------------------------------------------------------
// H1 kernel from h_t = (1/pi) int_0^inf cos(lambda u) g(lambda) dlambda,
// g = lambda / (4 pi sinh(lambda t)) exp(-(lambda rho^2/4) coth(lambda t)).

namespace {

struct LambdaRule {
  std::vector<double> lam, w;  // w already includes g(lambda)/pi
};

LambdaRule lambda_rule(double t, double rho, double u_max, bool dt) {
  const double decay = t + 0.25 * rho * rho;
  const double Lmax = 50.0 / decay;
  double width = Lmax / 8;
  if (u_max > 0) width = std::min(width, kPi / u_max);
  const int panels = static_cast<int>(std::ceil(Lmax / width));
  static const Rule1D gl = gauss_legendre(16, 0.0, 1.0);
  LambdaRule r;
  r.lam.reserve(panels * 16);
  r.w.reserve(panels * 16);
  const double pw = Lmax / panels;
  for (int p = 0; p < panels; ++p) {
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      double l = (p + gl.x[i]) * pw;
      double lt = l * t;
      double sh = std::sinh(lt);
      double cth = std::cosh(lt) / sh;
      double g = l / (4 * kPi * sh) * std::exp(-0.25 * l * rho * rho * cth);
      if (dt) g *= -l * cth + 0.25 * l * rho * rho * l / (sh * sh);
      r.lam.push_back(l);
      r.w.push_back(gl.w[i] * pw * g / kPi);
    }
  }
  return r;
}

}  // namespace

std::vector<double> h1_kernel_profile(double t, double rho, const std::vector<double>& us, bool dt) {
  if (!(t > 0)) throw DomainError("heat kernel: t must be positive");
  double umax = 0;
  for (double u : us) umax = std::max(umax, std::abs(u));
  LambdaRule r = lambda_rule(t, rho, umax, dt);
  std::vector<double> out(us.size());
  for (std::size_t k = 0; k < us.size(); ++k) {
    double s = 0;
    for (std::size_t i = 0; i < r.lam.size(); ++i) s += r.w[i] * std::cos(r.lam[i] * us[k]);
    out[k] = s;
  }
  return out;
}

double h1_kernel_quadrature(double t, double x, double y, double u) {
  return h1_kernel_profile(t, std::hypot(x, y), {u})[0];
}

double h1_kernel_dt_quadrature(double t, double x, double y, double u) {
  return h1_kernel_profile(t, std::hypot(x, y), {u}, true)[0];
}

H1KernelTable::H1KernelTable(double t, double rho_max, double u_max, double step, bool dt)
    : t_(t), step_(step) {
  if (!(t > 0) || !(step > 0)) throw DomainError("H1KernelTable: bad parameters");
  // beyond |u| ~ 14 t the kernel is below 1e-18 of its peak
  u_max = std::min(u_max, 14.0 * t + 4 * step);
  nr_ = static_cast<std::size_t>(std::ceil(rho_max / step)) + 3;
  nu_ = static_cast<std::size_t>(std::ceil(u_max / step)) + 3;
  v_.assign(nr_ * nu_, 0.0);
  for (std::size_t i = 0; i < nr_; ++i) {
    LambdaRule r = lambda_rule(t, step * static_cast<double>(i), step * static_cast<double>(nu_), dt);
    // cos(l k step) by the three-term recurrence
    for (std::size_t q = 0; q < r.lam.size(); ++q) {
      const double c1 = std::cos(r.lam[q] * step);
      double cm = c1, c0 = 1.0;  // cos(-step l) = cos(step l)
      for (std::size_t k = 0; k < nu_; ++k) {
        v_[i * nu_ + k] += r.w[q] * c0;
        double cn = 2 * c1 * c0 - cm;
        cm = c0;
        c0 = cn;
      }
    }
  }
}

double H1KernelTable::at(long long i, long long k) const {
  if (i < 0) i = -i;
  if (k < 0) k = -k;
  if (i >= static_cast<long long>(nr_) || k >= static_cast<long long>(nu_)) return 0.0;
  return v_[static_cast<std::size_t>(i) * nu_ + static_cast<std::size_t>(k)];
}

double H1KernelTable::operator()(double x, double y, double u) const {
  const double pr = std::hypot(x, y) / step_, pu = std::abs(u) / step_;
  if (pr >= static_cast<double>(nr_) || pu >= static_cast<double>(nu_)) return 0.0;
  const double fr = std::floor(pr), fu = std::floor(pu);
  const double sr = pr - fr, su = pu - fu;
  auto w = [](double s, double* o) {
    o[0] = -s * (s - 1) * (s - 2) / 6;
    o[1] = (s + 1) * (s - 1) * (s - 2) / 2;
    o[2] = -(s + 1) * s * (s - 2) / 2;
    o[3] = (s + 1) * s * (s - 1) / 6;
  };
  double wr[4], wu[4];
  w(sr, wr);
  w(su, wu);
  const long long ir = static_cast<long long>(fr) - 1, iu = static_cast<long long>(fu) - 1;
  double s = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) s += wr[a] * wu[b] * at(ir + a, iu + b);
  return s;
}

// ---------------------------------------------------------------------------
// stencil solver

H1HeatSolver::H1HeatSolver(const Grid& grid, const PdeSettings& s) : grid_(grid), s_(s) {
  if (grid.dim() != 3) throw DimensionMismatch("H1HeatSolver needs a 3-d grid");
  for (const Axis& a : grid.axes)
    if (a.count < 8) throw DomainError("H1HeatSolver: need at least 8 nodes per axis");
}

std::vector<double> H1HeatSolver::apply_L(const std::vector<double>& v) const {
  const std::size_t nx = grid_.axes[0].count, ny = grid_.axes[1].count, nu = grid_.axes[2].count;
  const double hx = grid_.axes[0].spacing, hy = grid_.axes[1].spacing, hu = grid_.axes[2].spacing;
  const std::size_t sx = ny * nu, sy = nu;
  auto idx = [&](std::size_t i, std::size_t j, std::size_t k) { return (i * ny + j) * nu + k; };
  auto get = [&](const std::vector<double>& a, long long i, long long j, long long k) {
    if (i < 0 || j < 0 || k < 0 || i >= static_cast<long long>(nx) || j >= static_cast<long long>(ny) ||
        k >= static_cast<long long>(nu))
      return 0.0;
    return a[idx(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(k))];
  };
  (void)sx;
  (void)sy;
  std::vector<double> du(v.size()), out(v.size());
  // first u-derivative
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t k = 0; k < nu; ++k) {
        long long I = i, J = j, K = k;
        du[idx(i, j, k)] = (get(v, I, J, K - 2) - 8 * get(v, I, J, K - 1) + 8 * get(v, I, J, K + 1) -
                            get(v, I, J, K + 2)) /
                           (12 * hu);
      }
  for (std::size_t i = 0; i < nx; ++i) {
    const double x = grid_.axes[0].coord(i);
    for (std::size_t j = 0; j < ny; ++j) {
      const double y = grid_.axes[1].coord(j);
      const double q = 0.25 * (x * x + y * y);
      for (std::size_t k = 0; k < nu; ++k) {
        long long I = i, J = j, K = k;
        double c = get(v, I, J, K);
        auto d2 = [&](double m2, double m1, double p1, double p2, double h) {
          return (-m2 + 16 * m1 - 30 * c + 16 * p1 - p2) / (12 * h * h);
        };
        double lxx = d2(get(v, I - 2, J, K), get(v, I - 1, J, K), get(v, I + 1, J, K), get(v, I + 2, J, K), hx);
        double lyy = d2(get(v, I, J - 2, K), get(v, I, J - 1, K), get(v, I, J + 1, K), get(v, I, J + 2, K), hy);
        double luu = d2(get(v, I, J, K - 2), get(v, I, J, K - 1), get(v, I, J, K + 1), get(v, I, J, K + 2), hu);
        double dyu = (get(du, I, J - 2, K) - 8 * get(du, I, J - 1, K) + 8 * get(du, I, J + 1, K) -
                      get(du, I, J + 2, K)) /
                     (12 * hy);
        double dxu = (get(du, I - 2, J, K) - 8 * get(du, I - 1, J, K) + 8 * get(du, I + 1, J, K) -
                      get(du, I + 2, J, K)) /
                     (12 * hx);
        out[idx(i, j, k)] = lxx + lyy + q * luu + x * dyu - y * dxu;
      }
    }
  }
  return out;
}

std::size_t H1HeatSolver::solve(std::vector<double>& x, const std::vector<double>& b, double c) const {
  // (I - c L) x = b by conjugate gradients
  auto A = [&](const std::vector<double>& v) {
    std::vector<double> r = apply_L(v);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = v[i] - c * r[i];
    return r;
  };
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b2) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b2[i];
    return s;
  };
  std::vector<double> Ax = A(x), r(b.size()), p;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - Ax[i];
  p = r;
  double rr = dot(r, r);
  const double bb = dot(b, b);
  if (bb == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return 0;
  }
  for (std::size_t it = 1; it <= 5000; ++it) {
    if (rr <= s_.cg_tol * s_.cg_tol * bb) return it - 1;
    std::vector<double> Ap = A(p);
    double alpha = rr / dot(p, Ap);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
    }
    double rr2 = dot(r, r);
    double beta = rr2 / rr;
    rr = rr2;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + beta * p[i];
  }
  throw NonConvergence("H1HeatSolver: conjugate gradients did not converge");
}

std::size_t H1HeatSolver::evolve(std::vector<double>& v, double t) const {
  return evolve_steps(v, t, 0);
}

std::size_t H1HeatSolver::evolve_steps(std::vector<double>& v, double t, int euler_half_steps) const {
  if (!(t > 0)) throw DomainError("evolve: t must be positive");
  const std::size_t n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(t / s_.dt - 1e-9)));
  const double dt = t / static_cast<double>(n);
  std::size_t iters = 0;
  double done = 0;
  std::vector<double> x;
  for (int h = 0; h < euler_half_steps && done + 0.5 * dt <= t + 1e-14; ++h) {
    x = v;
    iters += solve(x, v, 0.5 * dt);
    v.swap(x);
    done += 0.5 * dt;
  }
  const std::size_t rest = static_cast<std::size_t>(std::llround((t - done) / dt));
  const double step = rest ? (t - done) / static_cast<double>(rest) : 0.0;
  for (std::size_t s = 0; s < rest; ++s) {
    std::vector<double> Lv = apply_L(v);
    std::vector<double> b(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) b[i] = v[i] + 0.5 * step * Lv[i];
    x = v;
    iters += solve(x, b, 0.5 * step);
    v.swap(x);
  }
  return iters;
}

Grid h1_pde_grid(const PdeSettings& s) {
  Grid g;
  const double n = static_cast<double>(s.count);
  g.axes.push_back({-s.half_xy, 2 * s.half_xy / n, s.count});
  g.axes.push_back({-s.half_xy, 2 * s.half_xy / n, s.count});
  g.axes.push_back({-s.half_u, 2 * s.half_u / n, s.count});
  return g;
}

SampledField h1_delta(GroupPtr g, const PdeSettings& s) {
  Grid grid = h1_pde_grid(s);
  SampledField f = SampledField::zeros(g, grid, 0);
  const double vol = grid.cell_volume();
  if (s.mollifier <= 0) {
    std::size_t c = s.count / 2;
    f.values[(c * s.count + c) * s.count + c] = 1.0 / vol;
    return f;
  }
  // homogeneous Gaussian: width sigma in (x, y), sigma^2 in u
  const double sig = s.mollifier * grid.axes[0].spacing;
  double sum = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    Point p = grid.node(i);
    double e = (p[0] * p[0] + p[1] * p[1]) / (2 * sig * sig) + p[2] * p[2] / (2 * sig * sig * sig * sig);
    f.values[i] = std::exp(-e);
    sum += f.values[i];
  }
  for (double& v : f.values) v /= sum * vol;
  return f;
}

namespace {
std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}
std::map<std::string, SampledField>& kernel_cache() {
  static std::map<std::string, SampledField> c;
  return c;
}
}  // namespace

SampledField h1_pde_kernel(const HeatModel& m, double t) {
  if (!(t > 0)) throw DomainError("heat kernel: t must be positive");
  const PdeSettings& s = m.pde;
  Grid grid = h1_pde_grid(s);
  std::string key = fmt17(t) + "|" + grid.describe() + "|" + fmt17(s.dt) + "|" + fmt17(s.mollifier) + "|" +
                    std::to_string(s.rannacher_steps) + "|" + fmt17(s.cg_tol);
  {
    std::lock_guard<std::mutex> lk(cache_mutex());
    auto it = kernel_cache().find(key);
    if (it != kernel_cache().end()) return it->second;
  }
  std::string path;
  if (!s.cache_dir.empty()) {
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016zx", std::hash<std::string>{}(key));
    path = s.cache_dir + "/h1kernel_" + hex + ".bin";
    if (std::filesystem::exists(path)) {
      SampledField f = load_field(path);
      std::lock_guard<std::mutex> lk(cache_mutex());
      kernel_cache()[key] = f;
      return f;
    }
  }
  SampledField f = h1_delta(m.group, s);
  H1HeatSolver solver(grid, s);
  // the (x, y)-marginal of the mollifier is the planar heat kernel at sigma^2/2
  const double sig = s.mollifier * grid.axes[0].spacing;
  const double t0 = 0.5 * sig * sig;
  if (!(t > t0)) throw DomainError("h1_pde_kernel: t below the mollifier time");
  solver.evolve_steps(f.values, t - t0, s.rannacher_steps);
  if (!path.empty()) {
    std::filesystem::create_directories(s.cache_dir);
    save_field(path, f);
  }
  std::lock_guard<std::mutex> lk(cache_mutex());
  kernel_cache()[key] = f;
  return f;
}

// ---------------------------------------------------------------------------

double heat_kernel(const HeatModel& m, double t, const Point& x) {
  if (!(t > 0)) throw DomainError("heat kernel: t must be positive");
  if (x.size() != m.group->n) throw DimensionMismatch("heat kernel: point dimension");
  switch (m.kind) {
    case HeatKind::euclidean_explicit: {
      double r2 = 0;
      for (std::size_t i = 0; i < x.size(); ++i) r2 += x[i] * x[i];
      return std::pow(4 * kPi * t, -0.5 * static_cast<double>(x.size())) * std::exp(-r2 / (4 * t));
    }
    case HeatKind::h1_quadrature:
      return h1_kernel_quadrature(t, x[0], x[1], x[2]);
    case HeatKind::h1_pde:
      return h1_pde_kernel(m, t).interpolate(x);
  }
  return 0;
}

double heat_kernel_dt(const HeatModel& m, double t, const Point& x) {
  if (!(t > 0)) throw DomainError("heat kernel: t must be positive");
  if (x.size() != m.group->n) throw DimensionMismatch("heat kernel: point dimension");
  switch (m.kind) {
    case HeatKind::euclidean_explicit: {
      double r2 = 0;
      const double n = static_cast<double>(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) r2 += x[i] * x[i];
      return std::pow(4 * kPi * t, -0.5 * n) * std::exp(-r2 / (4 * t)) * (r2 / (4 * t * t) - 0.5 * n / t);
    }
    case HeatKind::h1_quadrature:
      return h1_kernel_dt_quadrature(t, x[0], x[1], x[2]);
    case HeatKind::h1_pde: {
      const double d = t / 100;
      SampledField a = h1_pde_kernel(m, t + d), b = h1_pde_kernel(m, t - d);
      return (a.interpolate(x) - b.interpolate(x)) / (2 * d);
    }
  }
  return 0;
}

SampledField semigroup_apply(const HeatModel& m, double t, const SampledField& f) {
  if (!(t > 0)) throw DomainError("semigroup_apply: t must be positive");
  m.validate();
  if (m.kind == HeatKind::euclidean_explicit) {
    PaddedSpectrum sp(f, m.cfg.pad_factor);
    SampledField r = f;
    r.support_margin = 0;
    r.values = sp.window(sp.apply([t](double x2) { return std::exp(-t * x2); }));
    return r;
  }
  PdeSettings s = m.pde;
  s.dt = std::min(s.dt, t / 4);
  H1HeatSolver solver(f.grid, s);
  SampledField r = f;
  r.support_margin = 0;
  solver.evolve_steps(r.values, t, 0);
  return r;
}

SampledField semigroup_dt(const HeatModel& m, double t, const SampledField& f) {
  if (!(t > 0)) throw DomainError("semigroup_dt: t must be positive");
  m.validate();
  if (m.kind == HeatKind::euclidean_explicit) {
    PaddedSpectrum sp(f, m.cfg.pad_factor);
    SampledField r = f;
    r.support_margin = 0;
    r.values = sp.window(sp.apply([t](double x2) { return -x2 * std::exp(-t * x2); }));
    return r;
  }
  // centered differences with step t/100 and one Richardson extrapolation
  const double d = t / 100;
  PdeSettings s = m.pde;
  s.dt = std::min(s.dt, t / 8);
  H1HeatSolver coarse(f.grid, s);
  std::vector<double> base = f.values;
  coarse.evolve_steps(base, t - d, 0);
  PdeSettings fs = s;
  fs.dt = d / 4;
  H1HeatSolver fine(f.grid, fs);
  std::vector<double> a = base;  // t - d/2
  fine.evolve_steps(a, 0.5 * d, 0);
  std::vector<double> b = a;     // t + d/2
  fine.evolve_steps(b, d, 0);
  std::vector<double> c = b;     // t + d
  fine.evolve_steps(c, 0.5 * d, 0);
  SampledField r = f;
  r.support_margin = 0;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    double D1 = (c[i] - base[i]) / (2 * d);
    double D2 = (b[i] - a[i]) / d;
    r.values[i] = (4 * D2 - D1) / 3;
  }
  return r;
}

}  // namespace graded
