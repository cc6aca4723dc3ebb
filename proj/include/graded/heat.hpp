#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "graded/field.hpp"
#include "graded/quadrature.hpp"

namespace graded {

enum class HeatKind { euclidean_explicit, h1_pde, h1_quadrature };
HeatKind parse_heat_kind(const std::string& s);
const char* to_string(HeatKind k);

// Discretisation of the sublaplacian heat equation on a box in H1.
struct PdeSettings {
  std::size_t count = 64;   // nodes per axis
  double half_xy = 8.0;     // box [-half_xy, half_xy)^2 in (x, y)
  double half_u = 8.0;      // [-half_u, half_u) in u
  double dt = 0.02;
  int rannacher_steps = 4;  // implicit Euler half steps before Crank-Nicolson
  double cg_tol = 1e-11;
  double mollifier = 1.0;   // homogeneous Gaussian delta width in (x, y) grid spacings; 0 gives a grid delta
  std::string cache_dir;    // kernel cache directory, empty disables
};

struct HeatModel {
  GroupPtr group;
  int nu = 2;
  HeatKind kind = HeatKind::euclidean_explicit;
  QuadratureConfig cfg;
  PdeSettings pde;

  static HeatModel euclidean(std::size_t n, const QuadratureConfig& cfg = {});
  static HeatModel h1(HeatKind kind = HeatKind::h1_quadrature, const QuadratureConfig& cfg = {});
  void validate() const;
};

double heat_kernel(const HeatModel& m, double t, const Point& x);
double heat_kernel_dt(const HeatModel& m, double t, const Point& x);

// T_t f and d/dt T_t f.  Euclidean: Fourier multipliers on a padded box.
// H1: Crank-Nicolson evolution of the stencil sublaplacian on f's grid.
SampledField semigroup_apply(const HeatModel& m, double t, const SampledField& f);
SampledField semigroup_dt(const HeatModel& m, double t, const SampledField& f);

// H1 kernel at (x, y, u) from the oscillatory lambda-integral.
double h1_kernel_quadrature(double t, double x, double y, double u);
double h1_kernel_dt_quadrature(double t, double x, double y, double u);
// Values at one radius |z| = rho for many u, sharing the lambda rule.
std::vector<double> h1_kernel_profile(double t, double rho, const std::vector<double>& us, bool dt = false);

// Tabulated H1 kernel on (rho, |u|) with bicubic interpolation.
class H1KernelTable {
 public:
  H1KernelTable(double t, double rho_max, double u_max, double step, bool dt = false);
  double operator()(double x, double y, double u) const;
  double t() const { return t_; }

 private:
  double t_, step_;
  std::size_t nr_, nu_;
  std::vector<double> v_;
  double at(long long i, long long k) const;
};

// Stencil sublaplacian L = X1^2 + X2^2 with Dirichlet boundaries (fourth
// order; symmetric negative semidefinite).
class H1HeatSolver {
 public:
  explicit H1HeatSolver(const Grid& grid, const PdeSettings& s = {});
  std::vector<double> apply_L(const std::vector<double>& v) const;
  // Evolves v over duration t; returns the number of CG iterations used.
  std::size_t evolve(std::vector<double>& v, double t) const;
  // As evolve, starting with implicit Euler half steps (for rough data).
  std::size_t evolve_steps(std::vector<double>& v, double t, int euler_half_steps) const;
  const Grid& grid() const { return grid_; }

 private:
  Grid grid_;
  PdeSettings s_;
  std::size_t solve(std::vector<double>& x, const std::vector<double>& b, double c) const;
};

Grid h1_pde_grid(const PdeSettings& s);
// Normalized initial datum approximating the identity (Gaussian mollified
// delta, or a grid delta when mollifier == 0).
SampledField h1_delta(GroupPtr g, const PdeSettings& s);
// PDE heat kernel at time t (cached in memory and optionally on disk).
SampledField h1_pde_kernel(const HeatModel& m, double t);

}  // namespace graded
