#include "graded/strichartz.hpp"

#include <cmath>
#include <cstdio>

#include "graded/errors.hpp"
#include "graded/fracops.hpp"

namespace graded {

void StrichartzParams::validate(bool second) const {
  const double hi = second ? 2.0 : 1.0;
  if (!(s > 0 && s < hi)) throw DomainError(second ? "S2_s: s must lie in (0,2)" : "S_s: s must lie in (0,1)");
  if (!(p >= 1)) throw DomainError("Strichartz: p must be >= 1");
  if (r_levels < 1 || shell_nodes < 2 || r_min < 0) throw DomainError("Strichartz: bad radial parameters");
  ball_cfg.validate();
}

StrichartzRoute parse_route(const std::string& s) {
  if (s == "first") return StrichartzRoute::first;
  if (s == "second") return StrichartzRoute::second;
  throw ParseError("unknown Strichartz route '" + s + "'");
}

namespace {

double functional(const GroupSpec& g, const SampledField& f, const StrichartzParams& prm, const Point& x,
                  bool second, StrichartzDiagnostics* diag) {
  prm.validate(second);
  if (x.size() != g.n) throw DimensionMismatch("Strichartz: point dimension");
  const double Q = static_cast<double>(g.Q), s = prm.s;
  double hmax = 0;
  for (const Axis& a : f.grid.axes) hmax = std::max(hmax, a.spacing);
  const double rmin = prm.r_min > 0 ? prm.r_min : 2 * hmax;
  const double R0 = g.rho_for(NormVariant::max) * (quasi_norm(g, x) + grid_quasi_radius(g, f.grid));
  const AngularRule ang = angular_rule(g, prm.ball_cfg.angular_nodes);
  double cB = 0;  // vol B(r) = cB r^Q
  for (double w : ang.w) cB += w;
  cB /= Q;
  const double fx = f.interpolate(x);
  auto e = [&](const Point& y) {
    if (second) return std::abs(f.interpolate(multiply(g, x, y)) + f.interpolate(multiply(g, x, inverse(g, y))) - 2 * fx);
    return std::abs(f.interpolate(multiply(g, x, y)) - fx);
  };
  const Rule1D gl = gauss_legendre(prm.shell_nodes, 0.0, 1.0);
  auto shell = [&](double a, double b) {
    double acc = 0;
    for (std::size_t q = 0; q < gl.x.size(); ++q) {
      const double r = a + (b - a) * gl.x[q];
      double v = 0;
      for (std::size_t i = 0; i < ang.dirs.size(); ++i) v += ang.w[i] * e(dilate(g, r, ang.dirs[i]));
      acc += gl.w[q] * (b - a) * v * std::pow(r, Q - 1);
    }
    return acc;
  };
  const int K = std::max(1, static_cast<int>(std::ceil(prm.r_levels * std::log2(std::max(R0, 2 * rmin) / rmin))));
  const double dl = std::log(2.0) / prm.r_levels;
  std::vector<double> G(K + 1);
  double A = shell(0.0, rmin), rprev = rmin;
  G[0] = std::pow(std::pow(rmin, -s - Q) * A, 2);
  for (int k = 1; k <= K; ++k) {
    const double r = rmin * std::exp(dl * k);
    A += shell(rprev, r);
    rprev = r;
    G[k] = std::pow(std::pow(r, -s - Q) * A, 2);
  }
  double body = 0.5 * (G[0] + G[K]);
  for (int k = 1; k < K; ++k) body += G[k];
  body *= dl;
  // A(r) ~ r^{Q+1} (first) or r^{Q+2} (second) below r_min
  const double core = G[0] / (second ? 4 - 2 * s : 2 - 2 * s);
  // beyond R every translate leaves the support: A(r) = A(R) + b cB (r^Q - R^Q)
  const double R = rprev;
  const double b = (second ? 2 : 1) * std::abs(fx) * cB;
  const double a = A - b * std::pow(R, Q);
  const double tail = a * a * std::pow(R, -2 * s - 2 * Q) / (2 * s + 2 * Q) +
                      2 * a * b * std::pow(R, -2 * s - Q) / (2 * s + Q) + b * b * std::pow(R, -2 * s) / (2 * s);
  if (diag) *diag = {core, body, tail, R};
  return std::sqrt(std::max(0.0, core + body + tail));
}

}  // namespace

double S_s(const GroupSpec& g, const SampledField& f, const StrichartzParams& prm, const Point& x,
           StrichartzDiagnostics* diag) {
  return functional(g, f, prm, x, false, diag);
}

double S2_s(const GroupSpec& g, const SampledField& f, const StrichartzParams& prm, const Point& x,
            StrichartzDiagnostics* diag) {
  return functional(g, f, prm, x, true, diag);
}

SampledField strichartz_field(const GroupSpec& g, const SampledField& f, const StrichartzParams& prm, bool second,
                              std::size_t stride) {
  if (stride == 0) throw DomainError("strichartz_field: stride must be positive");
  Grid sg = f.grid;
  for (Axis& a : sg.axes) {
    a.count = (a.count + stride - 1) / stride;
    a.spacing *= static_cast<double>(stride);
  }
  SampledField out = SampledField::zeros(f.group, sg, 0);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = functional(g, f, prm, sg.node(i), second, nullptr);
  return out;
}

VerificationReport equivalence_report(const HeatModel& m, const std::vector<SampledField>& family, double s, double p,
                                      StrichartzRoute route, double spread_bound, const StrichartzParams* prm_in) {
  VerificationReport rep;
  const bool second = route == StrichartzRoute::second;
  rep.check_name = second ? "strichartz_equivalence_second" : "strichartz_equivalence_first";
  char buf[160];
  std::snprintf(buf, sizeof buf, "s=%g p=%g members=%zu", s, p, family.size());
  rep.family = buf;
  std::snprintf(buf, sizeof buf, "max/min of (||f||+||S f||)/||f||_{L^p_s} < %g", spread_bound);
  rep.criterion = buf;
  StrichartzParams prm = prm_in ? *prm_in : StrichartzParams{};
  prm.s = s;
  prm.p = p;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const SampledField& f = family[i];
    const double fn = lp_norm(f, p);
    if (fn == 0) {
      rep.notes += "member " + std::to_string(i) + " is zero and excluded; ";
      continue;
    }
    std::size_t stride = 1;
    while (f.grid.size() / std::pow(static_cast<double>(stride), static_cast<double>(f.grid.dim())) > 1024) ++stride;
    SampledField Sf = strichartz_field(*m.group, f, prm, second, stride);
    const double lhs = fn + lp_norm(Sf, p);
    const double rhs = sobolev_norm(m, f, s, p);
    rep.add("member" + std::to_string(i), lhs / rhs);
  }
  if (rep.ratios.empty()) {
    rep.pass = true;
    rep.notes += "no nonzero members";
    return rep;
  }
  rep.empirical_constant = rep.max_ratio();
  rep.pass = rep.max_ratio() / rep.min_ratio() < spread_bound;
  return rep;
}

// ---------------------------------------------------------------------------

namespace {
// smooth window equal to 1 on [-1,1] and 0 outside (-2,2)
double window(double x) {
  const double t = std::abs(x) - 1;
  if (t <= 0) return 1;
  if (t >= 1) return 0;
  const double a = std::exp(-1 / t), b = std::exp(-1 / (1 - t));
  return b / (a + b);
}
}  // namespace

CounterexampleResult counterexample_exponent(StrichartzRoute which, double s, const std::vector<double>& eps_list) {
  const bool second = which == StrichartzRoute::second;
  if (!second && !(s > 1)) throw DomainError("counterexample: first-order functional converges for s <= 1");
  if (second && !(s > 2)) throw DomainError("counterexample: second-order functional converges for s <= 2");
  if (eps_list.size() < 2) throw DomainError("counterexample: need at least two cut-offs");
  const double x0 = 0.5, delta = 0.5;
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0 && eps_list[i] < delta)) throw DomainError("counterexample: cut-offs must lie in (0, 1/2)");
    if (i && !(eps_list[i] < eps_list[i - 1])) throw DomainError("counterexample: cut-offs must be decreasing");
  }
  auto f = [&](double x) { return (second ? x * x : x) * window(x); };
  auto D = [&](double y) {
    return second ? f(x0 + y) + f(x0 - y) - 2 * f(x0) : f(x0 + y) - f(x0);
  };
  // far part: r in [delta, infinity); A(r) = int_{-r}^{r} |D|
  const double rfar = 2.5;  // D is constant in |y| beyond this
  const int M = 200000;
  const double hy = (rfar - delta) / M;
  // A(delta) from the plateau: int |y| = delta^2, or int 2 y^2 = 4 delta^3 / 3
  double A = second ? 4 * std::pow(delta, 3) / 3 : delta * delta;
  const double e1 = second ? 2 : 1;
  auto G = [&](double r, double a) { return std::pow(std::pow(r, -s - 1) * a, 2) / r; };
  double far = 0, gprev = G(delta, A);
  for (int i = 0; i < M; ++i) {
    const double y0 = delta + hy * i, y1 = y0 + hy;
    // Simpson for the shell int_{y0<|y|<y1} |D|
    auto both = [&](double y) { return std::abs(D(y)) + std::abs(D(-y)); };
    A += hy / 6 * (both(y0) + 4 * both(0.5 * (y0 + y1)) + both(y1));
    const double g1 = G(y1, A);
    far += 0.5 * hy * (gprev + g1);
    gprev = g1;
  }
  {
    const double b = e1 * std::abs(f(x0)) * 2;  // beyond rfar: A(r) = A + b (r - rfar)
    const double a = A - b * rfar, R = rfar;
    far += a * a * std::pow(R, -2 * s - 4) / (2 * s + 4) + 2 * a * b * std::pow(R, -2 * s - 3) / (2 * s + 3) +
           b * b * std::pow(R, -2 * s - 2) / (2 * s + 2);
  }
  CounterexampleResult res;
  for (double eps : eps_list) {
    double near = second ? (16.0 / 9.0) * (std::pow(eps, 4 - 2 * s) - std::pow(delta, 4 - 2 * s)) / (2 * s - 4)
                         : (std::pow(eps, 2 - 2 * s) - std::pow(delta, 2 - 2 * s)) / (2 * s - 2);
    res.eps.push_back(eps);
    res.values.push_back(std::sqrt(near + far));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(eps_list.size());
  for (std::size_t i = 0; i < res.eps.size(); ++i) {
    const double lx = std::log(res.eps[i]), ly = std::log(res.values[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  res.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return res;
}

}  // namespace graded
