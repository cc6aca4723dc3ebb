#pragma once

#include <cstdint>
#include <vector>

#include "graded/field.hpp"

namespace graded {

// One smooth compactly supported bump a * b(q), q = sum ((z_k - c_k)/w_k)^2,
// b(q) = exp(1 - 1/(1 - q)) for q < 1.
struct Bump {
  double amp = 1;
  Point center;
  std::vector<double> width;
};

// Finite superposition of bumps, evaluated in closed form.
struct BumpField {
  GroupPtr group;
  std::vector<Bump> bumps;

  double operator()(const Point& z) const;
  // Coordinate partial derivatives.
  std::vector<double> gradient(const Point& z) const;
  SampledField sample(const Grid& grid, int margin = 2) const;
  std::string describe() const;
};

// `count` members, each a superposition of 3 to 6 anisotropic bumps, drawn
// from a seeded generator.  Centers lie in the box scaled by `spread` along
// the dilation weights; widths scale the same way.
std::vector<BumpField> bump_family(GroupPtr g, std::size_t count, std::uint64_t seed, double spread = 1.0,
                                   double width_lo = 1.5, double width_hi = 2.5);

}  // namespace graded
