#pragma once

#include <string>
#include <vector>

#include "graded/field.hpp"
#include "graded/heat.hpp"
#include "graded/quadrature.hpp"

namespace graded {

struct FracParams {
  double alpha = 0.5;
  int nu = 2;
  double p = 2.0;
  double s() const { return alpha * nu; }
  void validate() const;
};

// k_alpha(y) = (1/Gamma(-alpha)) int_0^inf h_t(y) t^{-1-alpha} dt, reduced by
// scaling to the value on the unit quasi-sphere and a single heat kernel h_1.
double k_alpha(const HeatModel& m, double alpha, const Point& y);

// R^alpha f(x) = (1/2) int Delta^2_y f(x) k_alpha(y) dy.  Diagnostics describe
// the inner Taylor piece and the far-field tail.
struct PointwiseDiagnostics {
  double eps = 0;         // inner radius
  double inner = 0;       // inner contribution
  double outer = 0;       // quadrature over [eps, R]
  double tail = 0;        // analytic part beyond R
  double radius = 0;      // R
};
double frac_power_pointwise(const HeatModel& m, const SampledField& f, double alpha, const Point& x,
                            const QuadratureConfig& cfg, PointwiseDiagnostics* diag = nullptr);
// Whole-field pointwise route on a 1-d grid (grid-aligned second differences,
// cubic product integration, Taylor inner piece).
SampledField frac_power_pointwise_grid(const SampledField& f, double alpha, const QuadratureConfig& cfg);

struct BalakrishnanDiagnostics {
  std::vector<double> eps;        // lower cut-offs used for extrapolation
  double extrapolation_residual = 0;  // relative change from the last term
  double t_max = 0;
  std::size_t t_nodes = 0;
};
// (-1/Gamma(-alpha)) int_0^inf t^{-alpha-1} (f - T_t f) dt with Richardson
// extrapolation in the lower cut-off and an analytic large-t tail.
SampledField frac_power_balakrishnan(const HeatModel& m, const SampledField& f, double alpha,
                                     const QuadratureConfig& cfg, BalakrishnanDiagnostics* diag = nullptr);

// Fourier multiplier |xi|^{2 alpha} (abelian groups).  With keep_padding the
// periodic padded array is returned; otherwise the window, corrected in 1-d
// for the periodic images of the |x|^{-1-2 alpha} far field.
SampledField frac_power_spectral(const SampledField& f, double alpha, int pad_factor, bool keep_padding = false);

// ||(I+R)^{s/nu} f||_p on R^n (spectral); ||f||_p + ||R^{s/nu} f||_p on H1.
double sobolev_norm(const HeatModel& m, const SampledField& f, double s, double p);

}  // namespace graded
