#pragma once

#include <functional>
#include <vector>

#include "graded/field.hpp"
#include "graded/heat.hpp"
#include "graded/quadrature.hpp"

namespace graded {

struct SquareFnResult {
  SampledField field;               // pointwise values (periodic padded box on the spectral routes)
  double lp = 0;                    // L^p norm of field
  double p = 2;
  std::vector<double> t_grid;
  std::vector<double> decade_mass;  // share of the integrated square per decade of t
};

// Restriction of a field on a larger aligned grid to `grid`.
SampledField restrict_to(const SampledField& f, const Grid& grid);

// g_alpha f = (int_0^inf |(tR)^alpha T_t f|^2 dt/t)^{1/2}.  Abelian groups:
// multiplier (t|xi|^2)^alpha e^{-t|xi|^2} on a periodic box padded by
// cfg.pad_factor.  H1: positive integer alpha via the stencil sublaplacian
// along a Crank-Nicolson evolution.
SquareFnResult g_alpha(const HeatModel& m, const SampledField& f, double alpha, const QuadratureConfig& cfg,
                       double p = 2);

struct GPhiOptions {
  double tau_min = 0;                          // 0 selects three grid spacings
  double tau_max = 1e4;
  int per_decade = 24;
  // lim_{tau->0} tau^{-kappa} (phi_(tau) * f), used for (0, tau_min)
  const std::vector<double>* small_scale = nullptr;
  double kappa = 0;
};
// g_phi f = (int_0^inf |phi_(tau) * f|^2 dtau/tau)^{1/2} with
// phi_(tau) = tau^{-Q} phi o D_{1/tau}, on abelian groups by linear FFT
// convolution over f's window.
SquareFnResult g_phi(const SampledField& f, const ScalarFn& phi, const GPhiOptions& opt, double p = 2);
// Same at selected points by direct group convolution (any group).
std::vector<double> g_phi_at(const SampledField& f, const ScalarFn& phi, const std::vector<Point>& xs,
                             const GPhiOptions& opt);

// Tabulated Euclidean phi_alpha on R^n (cubic in r, asymptotic beyond r = 30).
ScalarFn phi_alpha_table(int n, double alpha);

// G_s f = (int_0^inf t^{1-2s/nu} |d_t T_t f|^2 dt)^{1/2}.
SquareFnResult G_s(const HeatModel& m, const SampledField& f, double s, const QuadratureConfig& cfg, double p = 2);

}  // namespace graded
