#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

#include "graded/errors.hpp"
#include "graded/quadrature.hpp"

namespace graded {

inline constexpr std::size_t kMaxDim = 6;

// Coordinates of a group element in the global exponential chart.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t n);
  Point(std::initializer_list<double> v);
  explicit Point(const std::vector<double>& v);

  std::size_t size() const { return n_; }
  double& operator[](std::size_t i) { return c_[i]; }
  double operator[](std::size_t i) const { return c_[i]; }
  const double* data() const { return c_.data(); }
  std::vector<double> to_vector() const { return {c_.begin(), c_.begin() + n_}; }
  bool operator==(const Point& o) const;

 private:
  std::array<double, kMaxDim> c_{};
  std::size_t n_ = 0;
};

// One monomial coeff * prod x_i^{e_i} * prod y_i^{e_{n+i}}.
struct Term {
  double coeff = 0;
  std::array<unsigned char, 2 * kMaxDim> exps{};
};
using Polynomial = std::vector<Term>;

double eval_poly(const Polynomial& p, const double* x, const double* y, std::size_t n);

enum class NormVariant { max, sum, smooth };
NormVariant parse_norm_variant(const std::string& s);
const char* to_string(NormVariant v);

struct GroupSpec {
  std::string name;
  std::size_t n = 0;
  std::vector<int> weights;           // ascending dilation weights
  int Q = 0;                          // homogeneous dimension
  int nu_default = 2;
  std::vector<Polynomial> law;        // component k of x.y in variables (x, y)
  std::vector<Polynomial> inv;        // component k of x^{-1} in variables x
  std::vector<std::vector<Polynomial>> jac;  // jac[j][k] = a_k^{(j)}(x)
  std::array<double, 3> rho{1, 1, 1};        // quasi-triangle constant per NormVariant
  bool abelian = false;

  static GroupSpec euclidean(std::size_t n);
  static GroupSpec heisenberg();

  // Structural checks: weights, Q, law degree bounds, a_j^{(j)} = 1 and
  // consistency of jac with the derivative of the law.
  void validate() const;
  double rho_for(NormVariant v) const { return rho[static_cast<int>(v)]; }
};

GroupSpec builtin_group(const std::string& name);

// Plain-text grammar, see docs/formats.md.
GroupSpec parse_group(std::istream& in);
GroupSpec parse_group_string(const std::string& text);
std::string emit_group(const GroupSpec& g);

Point identity(const GroupSpec& g);
Point multiply(const GroupSpec& g, const Point& x, const Point& y);
Point inverse(const GroupSpec& g, const Point& x);
Point dilate(const GroupSpec& g, double lambda, const Point& x);
double quasi_norm(const GroupSpec& g, const Point& x, NormVariant v = NormVariant::max);

// Coefficients (a_1^{(j)}, ..., a_n^{(j)}) of the left-invariant field X_j at
// x (0-based j; entries below j are zero, entry j is one).
std::vector<double> vf_coeffs(const GroupSpec& g, std::size_t j, const Point& x);
// Same for the right-invariant field generated by the j-th basis vector.
std::vector<double> right_vf_coeffs(const GroupSpec& g, std::size_t j, const Point& x);

// Angular rule on the unit quasi-sphere: for integrable f,
//   int_{|y|<R} f(y) dy = sum_i w_i int_0^R f(D_r omega_i) r^{Q-1} dr.
// Directions come from dilation rays through the surface of the cube
// [-1,1]^n; each face is split at the coordinate planes.
struct AngularRule {
  std::vector<Point> dirs;
  std::vector<double> w;
};
AngularRule angular_rule(const GroupSpec& g, int nodes_per_half_edge,
                         NormVariant v = NormVariant::max);

struct NodeSet {
  std::vector<Point> x;
  std::vector<double> w;
};
NodeSet polar_quadrature(const GroupSpec& g, double r_max, const QuadratureConfig& cfg,
                         NormVariant v = NormVariant::max);

}  // namespace graded
