#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "graded/group.hpp"

namespace graded {

struct Axis {
  double origin = 0;
  double spacing = 1;
  std::size_t count = 0;
  double coord(std::size_t i) const { return origin + spacing * static_cast<double>(i); }
  double end() const { return coord(count - 1); }
};

// Tensor grid, row-major with the last axis fastest.
struct Grid {
  std::vector<Axis> axes;

  static Grid uniform(std::size_t n, double lo, double hi, std::size_t count);
  static Grid box(const std::vector<double>& lo, const std::vector<double>& hi,
                  const std::vector<std::size_t>& count);

  std::size_t dim() const { return axes.size(); }
  std::size_t size() const;
  double cell_volume() const;
  std::size_t stride(std::size_t axis) const;
  Point node(std::size_t flat) const;
  std::array<std::size_t, kMaxDim> multi_index(std::size_t flat) const;
  bool operator==(const Grid& o) const;
  std::string describe() const;
};

using GroupPtr = std::shared_ptr<const GroupSpec>;
using ScalarFn = std::function<double(const Point&)>;

// Compactly supported real field sampled on a uniform grid.  Nodes within
// `support_margin` layers of the boundary hold exact zeros.
struct SampledField {
  GroupPtr group;
  Grid grid;
  std::vector<double> values;
  int support_margin = 0;

  // Samples fn on the grid.  Values in the margin must be below trunc_tol
  // relative to the maximum and are then zeroed; otherwise SupportOverflow.
  static SampledField sample(GroupPtr g, const Grid& grid, const ScalarFn& fn, int margin = 2,
                             double trunc_tol = 1e-10);
  static SampledField zeros(GroupPtr g, const Grid& grid, int margin = 0);

  void validate() const;
  std::size_t size() const { return values.size(); }
  // Separable 4-point Lagrange interpolation, zero outside the grid.
  double interpolate(const Point& x) const;
  double max_abs() const;
  // Largest margin that is currently all zeros.
  int zero_layers() const;
};

double lp_norm(const SampledField& f, double p);
// Largest quasi-norm over the grid box (attained at a corner for the max variant).
double grid_quasi_radius(const GroupSpec& g, const Grid& grid);

SampledField translate_sample(const SampledField& f, const Point& y, bool check_support = true);
SampledField second_difference(const SampledField& f, const Point& y, bool check_support = true);
// X_j f with 4th-order central stencils (0-based j).
SampledField apply_vf(const SampledField& f, std::size_t j);
// (f*k)(x) = int f(y) k(y^{-1} x) dy on f's grid.  FFT path on abelian
// groups with matching spacing, direct quadrature otherwise.
SampledField group_convolve(const SampledField& f, const SampledField& k);

SampledField axpy(double a, const SampledField& x, const SampledField& y);  // a*x + y
double integral(const SampledField& f);

void write_field_csv(std::ostream& out, const SampledField& f);
void write_field_binary(std::ostream& out, const SampledField& f);
SampledField read_field(std::istream& in);  // detects CSV or binary
void save_field(const std::string& path, const SampledField& f);
SampledField load_field(const std::string& path);

// %.17g formatting used by every CSV writer.
std::string fmt17(double v);

}  // namespace graded
