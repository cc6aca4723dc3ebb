#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace graded {

// Truncation radii, node counts and tolerances for every improper or
// singular integral in the library.
struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-9;
  std::size_t max_nodes = 100'000'000;
  double t_min = 1e-5;
  double t_max = 1e6;
  int r_levels = 8;            // radial sub-nodes per octave
  double eps_singular = 0.0;   // 0 selects two grid spacings
  int t_per_decade = 24;
  int pad_factor = 8;
  int radial_nodes = 24;
  int angular_nodes = 12;      // Gauss nodes per half edge of a cube face

  void validate() const;
};

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre rule with n nodes on [a, b].
Rule1D gauss_legendre(int n, double a = -1.0, double b = 1.0);

// Geometric grid on [t0, t1] with `per_decade` nodes per decade; weights are
// trapezoid weights for the measure dt/t (uniform in log t).
Rule1D log_trapezoid(double t0, double t1, int per_decade);

// Adaptive integrators.  Each throws NonConvergence when the error estimate
// exceeds max(abs_tol, rel_tol*|I|).
double integrate_finite(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol);
// Endpoint-singular integrand on [a, b] (tanh-sinh).
double integrate_endpoint_singular(const std::function<double(double)>& f, double a, double b,
                                   double abs_tol, double rel_tol);
// Integral over [a, infinity).
double integrate_to_infinity(const std::function<double(double)>& f, double a, double abs_tol,
                             double rel_tol);

}  // namespace graded
