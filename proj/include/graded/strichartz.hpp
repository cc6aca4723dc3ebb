#pragma once

#include <string>
#include <vector>

#include "graded/field.hpp"
#include "graded/heat.hpp"
#include "graded/quadrature.hpp"
#include "graded/report.hpp"

namespace graded {

struct StrichartzParams {
  double s = 0.5;
  double p = 2.0;
  int r_levels = 8;     // radial nodes per octave
  double r_min = 0;     // 0 selects two grid spacings
  int shell_nodes = 32;  // Gauss nodes per radial shell
  QuadratureConfig ball_cfg;
  void validate(bool second) const;
};

struct StrichartzDiagnostics {
  double core = 0;  // (0, r_min) contribution to the squared integral
  double body = 0;  // [r_min, R]
  double tail = 0;  // (R, infinity), analytic
  double radius = 0;
};

// (int_0^inf [r^{-s-Q} int_{|y|<=r} |f(x.y) - f(x)| dy]^2 dr/r)^{1/2}
double S_s(const GroupSpec& g, const SampledField& f, const StrichartzParams& prm, const Point& x,
           StrichartzDiagnostics* diag = nullptr);
// Same with |Delta^2_y f(x)| in the inner integral.
double S2_s(const GroupSpec& g, const SampledField& f, const StrichartzParams& prm, const Point& x,
            StrichartzDiagnostics* diag = nullptr);
// Functional at every stride-th node along each axis (others zero; margin
// nodes excluded).  The returned field lives on the strided grid.
SampledField strichartz_field(const GroupSpec& g, const SampledField& f, const StrichartzParams& prm,
                              bool second, std::size_t stride = 1);

enum class StrichartzRoute { first, second };
StrichartzRoute parse_route(const std::string& s);

// Ratios (||f||_p + ||S f||_p) / ||f||_{L^p_s} over a family.
VerificationReport equivalence_report(const HeatModel& m, const std::vector<SampledField>& family, double s,
                                      double p, StrichartzRoute route, double spread_bound = 10.0,
                                      const StrichartzParams* prm = nullptr);

// Least-squares slope of log S(eps) against log eps for the truncated
// functionals of x phi(x) (first) or x^2 phi(x) (second) at x0 = 1/2.
struct CounterexampleResult {
  double slope = 0;
  std::vector<double> eps, values;
};
CounterexampleResult counterexample_exponent(StrichartzRoute which, double s, const std::vector<double>& eps_list);

}  // namespace graded
