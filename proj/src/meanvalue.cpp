#include "graded/meanvalue.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "graded/errors.hpp"

namespace graded {

Grid half_resolution(const Grid& grid) {
  Grid h = grid;
  for (Axis& a : h.axes) {
    const double len = a.spacing * static_cast<double>(a.count - 1);
    a.count = (a.count + 1) / 2;
    a.spacing = len / static_cast<double>(a.count - 1);
  }
  return h;
}

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

SampledField tabulate(const GroupPtr& g, const Grid& grid, const ScalarFn& fn) {
  SampledField f = SampledField::zeros(g, grid, 0);
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = fn(grid.node(i));
  return f;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void require(const MeanValueSetup& s) {
  if (!s.group) throw DomainError("mean value check: missing group");
  if (s.family.empty()) throw DomainError("mean value check: empty family");
  if (!(s.p >= 1)) throw DomainError("mean value check: p must be >= 1");
  if (s.grid.dim() != s.group->n) throw DimensionMismatch("mean value check: grid dimension");
}

std::string family_descriptor(const MeanValueSetup& s) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "%s members=%zu shifts=%zu p=%g grid=%s", s.group->name.c_str(), s.family.size(),
                s.shifts.size(), s.p, s.grid.describe().c_str());
  return buf;
}

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

bool stable(double st) { return st >= 0.75 && st <= 1.25; }

// ratios of the first-order L^p inequality on one grid
std::vector<double> first_ratios(const MeanValueSetup& s, const Grid& grid, std::vector<std::string>* labels) {
  const GroupSpec& g = *s.group;
  std::vector<double> out;
  for (std::size_t m = 0; m < s.family.size(); ++m) {
    const BumpField& F = s.family[m];
    std::vector<double> dn(g.n);
    for (std::size_t j = 0; j < g.n; ++j)
      dn[j] = lp_norm(tabulate(s.group, grid, [&](const Point& x) { return vf_apply(F, x, j); }), s.p);
    for (std::size_t k = 0; k < s.shifts.size(); ++k) {
      const Point& y = s.shifts[k];
      const double ny = quasi_norm(g, y);
      double rhs = 0;
      for (std::size_t j = 0; j < g.n; ++j) rhs += std::pow(ny, g.weights[j]) * dn[j];
      const double lhs =
          lp_norm(tabulate(s.group, grid, [&](const Point& x) { return F(multiply(g, x, y)) - F(x); }), s.p);
      if (rhs <= 0) continue;
      out.push_back(lhs / rhs);
      if (labels) labels->push_back("f" + std::to_string(m) + "_y" + std::to_string(k));
    }
  }
  return out;
}

std::vector<SampledField> second_derivatives(const MeanValueSetup& s, const BumpField& F, const Grid& grid) {
  const GroupSpec& g = *s.group;
  std::vector<SampledField> out;
  for (std::size_t k = 0; k < g.n; ++k) {
    const ScalarFn xk = [&F, k](const Point& z) { return vf_apply(F, z, k); };
    for (std::size_t j = 0; j < g.n; ++j)
      out.push_back(tabulate(s.group, grid, [&](const Point& x) { return field_derivative(g, xk, x, j); }));
  }
  return out;
}

std::vector<double> second_ratios(const MeanValueSetup& s, const Grid& grid, std::vector<std::string>* labels) {
  const GroupSpec& g = *s.group;
  const int sn = g.weights.back();
  std::vector<double> out;
  for (std::size_t m = 0; m < s.family.size(); ++m) {
    const BumpField& F = s.family[m];
    double dsum = 0;
    for (const SampledField& d : second_derivatives(s, F, grid)) dsum += lp_norm(d, s.p);
    for (std::size_t k = 0; k < s.shifts.size(); ++k) {
      const Point& y = s.shifts[k];
      const Point yi = inverse(g, y);
      const double ny = quasi_norm(g, y);
      const double rhs = std::max(ny * ny, std::pow(ny, 2 * sn)) * dsum;
      const double lhs = lp_norm(tabulate(s.group, grid,
                                          [&](const Point& x) {
                                            return F(multiply(g, x, y)) + F(multiply(g, x, yi)) - 2 * F(x);
                                          }),
                                 s.p);
      if (rhs <= 0) continue;
      out.push_back(lhs / rhs);
      if (labels) labels->push_back("f" + std::to_string(m) + "_y" + std::to_string(k));
    }
  }
  return out;
}

}  // namespace

std::vector<Point> shift_samples(const GroupSpec& g, std::size_t count, double max_norm, std::uint64_t seed) {
  if (!(max_norm > 0)) throw DomainError("shift_samples: max_norm must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  while (out.size() < count) {
    Point v(g.n);
    for (std::size_t k = 0; k < g.n; ++k) v[k] = 2 * uniform01(rng) - 1;
    const double nv = quasi_norm(g, v);
    if (nv < 1e-3) continue;
    const double r = max_norm * std::exp(std::log(0.05) * uniform01(rng));
    out.push_back(dilate(g, r / nv, v));
  }
  return out;
}

double field_derivative(const GroupSpec& g, const ScalarFn& fn, const Point& x, std::size_t j, bool right,
                        double step) {
  Point e(g.n);
  e[j] = step;
  const Point em = inverse(g, e);
  const Point a = right ? multiply(g, e, x) : multiply(g, x, e);
  const Point b = right ? multiply(g, em, x) : multiply(g, x, em);
  return (fn(a) - fn(b)) / (2 * step);
}

double vf_apply(const BumpField& f, const Point& x, std::size_t j) {
  const std::vector<double> grad = f.gradient(x);
  const std::vector<double> a = vf_coeffs(*f.group, j, x);
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * grad[k];
  return s;
}

VerificationReport check_mv_first_Lp(const MeanValueSetup& s) {
  require(s);
  VerificationReport rep;
  rep.check_name = "mv_first_Lp_" + s.group->name;
  rep.family = family_descriptor(s);
  rep.criterion = "ratios finite and stability in [0.75, 1.25]";
  rep.ratios = first_ratios(s, s.grid, &rep.labels);
  const std::vector<double> coarse = first_ratios(s, half_resolution(s.grid), nullptr);
  rep.empirical_constant = rep.max_ratio();
  rep.stability = rep.empirical_constant > 0 ? max_of(coarse) / rep.empirical_constant : 1.0;
  rep.pass = std::isfinite(rep.empirical_constant) && stable(rep.stability);
  return rep;
}

VerificationReport check_mv_second_Lp(const MeanValueSetup& s) {
  require(s);
  VerificationReport rep;
  rep.check_name = "mv_second_Lp_" + s.group->name;
  rep.family = family_descriptor(s);
  rep.ratios = second_ratios(s, s.grid, &rep.labels);
  const std::vector<double> coarse = second_ratios(s, half_resolution(s.grid), nullptr);
  double grid_err = 0;
  for (std::size_t i = 0; i < rep.ratios.size() && i < coarse.size(); ++i)
    grid_err = std::max(grid_err, std::abs(rep.ratios[i] - coarse[i]));
  rep.empirical_constant = rep.max_ratio();
  rep.stability = rep.empirical_constant > 0 ? max_of(coarse) / rep.empirical_constant : 1.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "max ratio <= 1 + 5*grid_error (grid_error=%.3g) and stability in [0.75, 1.25]",
                grid_err);
  rep.criterion = buf;
  rep.pass = std::isfinite(rep.empirical_constant) && rep.empirical_constant <= 1 + 5 * grid_err &&
             stable(rep.stability);
  return rep;
}

VerificationReport check_mv_second_pointwise(const MeanValueSetup& s, std::size_t points_per_member,
                                             std::uint64_t seed, EtaEstimate* est) {
  require(s);
  const GroupSpec& g = *s.group;
  std::vector<double> etas;
  for (int i = 0; i <= 12; ++i) etas.push_back(1.0 + 0.25 * i);
  const double eta_top = etas.back();
  // c1(eta) per sample, for a fine and a coarse sampling of the ball
  auto run = [&](int angular, int radii, std::vector<std::vector<double>>* per_sample,
                 std::vector<std::string>* labels) {
    const AngularRule ang = angular_rule(g, angular);
    std::vector<double> c1(etas.size(), 0.0);
    std::mt19937_64 rng(seed);
    for (std::size_t m = 0; m < s.family.size(); ++m) {
      const BumpField& F = s.family[m];
      double w_min = 1e300;  // radial resolution follows the narrowest bump
      for (const Bump& b : F.bumps) w_min = std::min(w_min, b.width[0]);
      std::vector<ScalarFn> first(g.n);
      for (std::size_t k = 0; k < g.n; ++k) first[k] = [&F, k](const Point& z) { return vf_apply(F, z, k); };
      auto hess_max = [&](const Point& z) {
        double h = 0;
        for (std::size_t k = 0; k < g.n; ++k)
          for (std::size_t j = 0; j < g.n; ++j) h = std::max(h, std::abs(field_derivative(g, first[k], z, j)));
        return h;
      };
      for (std::size_t q = 0; q < points_per_member; ++q) {
        const Bump& b = F.bumps[rng() % F.bumps.size()];
        Point x(g.n);
        for (std::size_t k = 0; k < g.n; ++k) x[k] = b.center[k] + (uniform01(rng) - 0.5) * b.width[k];
        for (std::size_t k = 0; k < s.shifts.size(); ++k) {
          const Point& y = s.shifts[k];
          const double ny = quasi_norm(g, y);
          const double lhs =
              std::abs(F(multiply(g, x, y)) + F(multiply(g, x, inverse(g, y))) - 2 * F(x));
          // running sup over shells r_i = eta_top^2 |y| i / nr
          const int nr = std::max(radii, static_cast<int>(std::ceil(eta_top * eta_top * ny / (w_min / (radii / 2.0)))));
          std::vector<double> shell(nr + 1, 0.0);
          shell[0] = hess_max(x);
          for (int i = 1; i <= nr; ++i) {
            const double r = eta_top * eta_top * ny * i / nr;
            for (const Point& d : ang.dirs) shell[i] = std::max(shell[i], hess_max(multiply(g, x, dilate(g, r, d))));
          }
          std::vector<double> row;
          for (std::size_t e = 0; e < etas.size(); ++e) {
            const double rmax = etas[e] * etas[e] * ny;
            double sup = 0;
            for (int i = 0; i <= nr; ++i)
              if (eta_top * eta_top * ny * i / nr <= rmax * (1 + 1e-12)) sup = std::max(sup, shell[i]);
            const double ratio = sup > 0 ? lhs / (ny * ny * sup) : 0.0;
            c1[e] = std::max(c1[e], ratio);
            row.push_back(ratio);
          }
          if (per_sample) per_sample->push_back(row);
          if (labels) labels->push_back("f" + std::to_string(m) + "_x" + std::to_string(q) + "_y" + std::to_string(k));
        }
      }
    }
    return c1;
  };
  std::vector<std::vector<double>> rows;
  VerificationReport rep;
  rep.check_name = "mv_second_pointwise_" + g.name;
  rep.family = family_descriptor(s);
  // the sup is sampled more finely where directions are cheap
  const int radii = g.n == 1 ? 128 : 32;
  const std::vector<double> c1 = run(3, radii, &rows, &rep.labels);
  const std::vector<double> c1c = run(2, radii / 2, nullptr, nullptr);
  std::size_t pick = etas.size() - 1;
  for (std::size_t e = 0; e < etas.size(); ++e)
    if (c1[e] <= 1.05 * c1.back()) {
      pick = e;
      break;
    }
  for (const auto& row : rows) rep.ratios.push_back(row[pick]);
  rep.empirical_constant = c1[pick];
  rep.stability = c1[pick] > 0 ? c1c[pick] / c1[pick] : 1.0;
  char buf[200];
  std::snprintf(buf, sizeof buf, "eta_est=%g c1_est=%.6g", etas[pick], c1[pick]);
  rep.notes = buf;
  rep.criterion = "c1 finite at the selected eta and stability in [0.75, 1.25]";
  rep.pass = std::isfinite(c1[pick]) && stable(rep.stability);
  if (est) *est = {etas[pick], c1[pick]};
  return rep;
}

VerificationReport check_w1p_characterization(const MeanValueSetup& s) {
  require(s);
  if (!(s.p > 1)) throw DomainError("W^{1,p} characterization: p must exceed 1");
  const GroupSpec& g = *s.group;
  VerificationReport rep;
  rep.check_name = "w1p_characterization_" + g.name;
  rep.family = family_descriptor(s);
  rep.criterion = "forward and converse spreads < 4, converse error slope >= 0.5, stability in [0.75, 1.25]";
  auto forward = [&](const Grid& grid, std::size_t m) {
    const BumpField& F = s.family[m];
    double rhs = 0;
    for (std::size_t j = 0; j < g.n; ++j)
      rhs += lp_norm(tabulate(s.group, grid, [&](const Point& x) { return vf_apply(F, x, j); }), s.p);
    double sup = 0;
    for (const Point& y : s.shifts) {
      const double ny = quasi_norm(g, y);
      if (ny > 1) continue;
      sup = std::max(sup, lp_norm(tabulate(s.group, grid, [&](const Point& x) { return F(multiply(g, x, y)) - F(x); }),
                                  s.p) / ny);
    }
    return rhs > 0 ? sup / rhs : 0.0;
  };
  std::vector<double> fwd, fwd_coarse, conv;
  double worst_slope = 1e300;
  const Grid coarse = half_resolution(s.grid);
  for (std::size_t m = 0; m < s.family.size(); ++m) {
    fwd.push_back(forward(s.grid, m));
    fwd_coarse.push_back(forward(coarse, m));
    rep.add("forward_f" + std::to_string(m), fwd.back());
    const BumpField& F = s.family[m];
    for (std::size_t i = 0; i < g.n; ++i) {
      const double xn = lp_norm(tabulate(s.group, s.grid, [&](const Point& x) { return vf_apply(F, x, i); }), s.p);
      if (xn <= 0) continue;
      std::vector<double> lt, le;
      double last = 0;
      for (int k = 1; k <= 10; ++k) {
        const double t = std::ldexp(1.0, -k);
        Point e(g.n);
        e[i] = t;
        const double dq =
            lp_norm(tabulate(s.group, s.grid, [&](const Point& x) { return (F(multiply(g, x, e)) - F(x)) / t; }), s.p);
        last = dq / xn;
        const double err = std::abs(last - 1);
        if (err > 1e-9) {
          lt.push_back(std::log(t));
          le.push_back(std::log(err));
        }
      }
      conv.push_back(last);
      rep.add("converse_f" + std::to_string(m) + "_X" + std::to_string(i + 1), last);
      if (lt.size() >= 3) worst_slope = std::min(worst_slope, slope(lt, le));
    }
  }
  auto spread = [](const std::vector<double>& v) {
    const double lo = *std::min_element(v.begin(), v.end()), hi = *std::max_element(v.begin(), v.end());
    return lo > 0 ? hi / lo : INFINITY;
  };
  const double sf = spread(fwd), sc = conv.empty() ? 1.0 : spread(conv);
  rep.empirical_constant = max_of(fwd);
  rep.stability = rep.empirical_constant > 0 ? max_of(fwd_coarse) / rep.empirical_constant : 1.0;
  if (worst_slope == 1e300) worst_slope = 1;
  char buf[200];
  std::snprintf(buf, sizeof buf, "forward_spread=%.4g converse_spread=%.4g converse_slope=%.4g", sf, sc, worst_slope);
  rep.notes = buf;
  rep.pass = sf < 4 && sc < 4 && worst_slope >= 0.5 && stable(rep.stability);
  return rep;
}

VerificationReport check_inversion(const MeanValueSetup& s, std::size_t points_per_member, std::uint64_t seed) {
  require(s);
  const GroupSpec& g = *s.group;
  VerificationReport rep;
  rep.check_name = "inversion_" + g.name;
  rep.family = family_descriptor(s);
  rep.criterion = "|X_j(f o inv)(x) + (X~_j f)(x^{-1})| <= 1e-6 * max |X f|";
  std::mt19937_64 rng(seed);
  double worst = 0, worst_left = 0;
  for (std::size_t m = 0; m < s.family.size(); ++m) {
    const BumpField& F = s.family[m];
    const ScalarFn Fi = [&](const Point& z) { return F(inverse(g, z)); };
    const ScalarFn Fv = [&](const Point& z) { return F(z); };
    for (std::size_t q = 0; q < points_per_member; ++q) {
      const Bump& b = F.bumps[rng() % F.bumps.size()];
      Point x(g.n);
      // f o inv lives near the inverted centers
      for (std::size_t k = 0; k < g.n; ++k) x[k] = b.center[k] + (uniform01(rng) - 0.5) * b.width[k];
      x = inverse(g, x);
      double scale = 0, res = 0, res_left = 0;
      for (std::size_t j = 0; j < g.n; ++j) {
        const double lhs = field_derivative(g, Fi, x, j);
        const double right = -field_derivative(g, Fv, inverse(g, x), j, true);
        const double left = -vf_apply(F, x, j);
        scale = std::max({scale, std::abs(lhs), std::abs(right)});
        res = std::max(res, std::abs(lhs - right));
        res_left = std::max(res_left, std::abs(lhs - left));
      }
      const double r = scale > 0 ? res / scale : 0.0;
      rep.add("f" + std::to_string(m) + "_x" + std::to_string(q), r);
      worst = std::max(worst, r);
      if (scale > 0) worst_left = std::max(worst_left, res_left / scale);
    }
  }
  rep.empirical_constant = worst;
  char buf[160];
  std::snprintf(buf, sizeof buf, "left-invariant form -X_j f(x): max relative residual %.3g", worst_left);
  rep.notes = buf;
  rep.pass = worst <= 1e-6;
  return rep;
}

VerificationReport check_pseudo_poincare(const HeatModel& m, const MeanValueSetup& s) {
  require(s);
  if (!s.group->abelian || s.group->n != 1) throw DomainError("pseudo-Poincare check runs on R^1");
  VerificationReport rep;
  rep.check_name = "pseudo_poincare_" + s.group->name;
  rep.family = family_descriptor(s);
  rep.criterion = "single C over t = 2^-k (k = 1..10) and log-log slope >= 0.45, stability in [0.75, 1.25]";
  double worst_slope = 1e300;
  auto ratios = [&](const Grid& grid, std::vector<std::string>* labels, bool track) {
    std::vector<double> out;
    for (std::size_t mi = 0; mi < s.family.size(); ++mi) {
      const BumpField& F = s.family[mi];
      const SampledField f = F.sample(grid, 0);
      const double w = lp_norm(f, 2) + lp_norm(tabulate(s.group, grid, [&](const Point& x) { return vf_apply(F, x, 0); }), 2);
      std::vector<double> lt, ld;
      for (int k = 1; k <= 10; ++k) {
        const double t = std::ldexp(1.0, -k);
        const double d = lp_norm(axpy(-1.0, semigroup_apply(m, t, f), f), 2);
        out.push_back(d / (std::sqrt(t) * w));
        if (labels) labels->push_back("f" + std::to_string(mi) + "_k" + std::to_string(k));
        lt.push_back(std::log(t));
        ld.push_back(std::log(d));
      }
      if (track) worst_slope = std::min(worst_slope, slope(lt, ld));
    }
    return out;
  };
  rep.ratios = ratios(s.grid, &rep.labels, true);
  const std::vector<double> coarse = ratios(half_resolution(s.grid), nullptr, false);
  rep.empirical_constant = rep.max_ratio();
  rep.stability = rep.empirical_constant > 0 ? max_of(coarse) / rep.empirical_constant : 1.0;
  char buf[120];
  std::snprintf(buf, sizeof buf, "C=%.6g min_slope=%.4g", rep.empirical_constant, worst_slope);
  rep.notes = buf;
  rep.pass = std::isfinite(rep.empirical_constant) && worst_slope >= 0.45 && stable(rep.stability);
  return rep;
}

}  // namespace graded
