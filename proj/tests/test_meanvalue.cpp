#include <cmath>

#include "doctest.h"
#include "graded/meanvalue.hpp"

using namespace graded;

namespace {

GroupPtr h1() { return std::make_shared<const GroupSpec>(GroupSpec::heisenberg()); }

MeanValueSetup r1_setup() {
  MeanValueSetup s;
  s.group = std::make_shared<const GroupSpec>(GroupSpec::euclidean(1));
  s.family = bump_family(s.group, 3, 42);
  s.grid = Grid::uniform(1, -20, 20, 2048);
  s.shifts = shift_samples(*s.group, 8, 2.0, 9);
  return s;
}

}  // namespace

TEST_CASE("shift samples respect the norm range and the seed") {
  const GroupSpec g = GroupSpec::heisenberg();
  const auto a = shift_samples(g, 30, 1.5, 4), b = shift_samples(g, 30, 1.5, 4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    const double r = quasi_norm(g, a[i]);
    CHECK(r > 0);
    CHECK(r <= 1.5 * (1 + 1e-12));
  }
}

TEST_CASE("half resolution keeps the box") {
  const Grid g = Grid::uniform(3, -4, 4, 65);
  const Grid h = half_resolution(g);
  CHECK(h.axes[0].count == 33);
  CHECK(h.axes[2].origin == g.axes[2].origin);
  CHECK(h.axes[2].end() == doctest::Approx(g.axes[2].end()));
}

TEST_CASE("field derivative matches the closed-form gradient") {
  const auto fam = bump_family(h1(), 2, 5);
  const BumpField& f = fam[1];
  const Point x = f.bumps[0].center;
  for (std::size_t j = 0; j < 3; ++j)
    CHECK(field_derivative(*f.group, f, x, j) == doctest::Approx(vf_apply(f, x, j)).epsilon(1e-6));
}

TEST_CASE("bump families are reproducible and compactly supported") {
  const auto a = bump_family(h1(), 4, 77), b = bump_family(h1(), 4, 77);
  CHECK(a[3].describe() == b[3].describe());
  CHECK(a[0](Point{50, 50, 50}) == 0);
}

TEST_CASE("euclidean mean value checks pass on a small family") {
  const MeanValueSetup s = r1_setup();
  const VerificationReport first = check_mv_first_Lp(s);
  CHECK(first.pass);
  CHECK(first.max_ratio() <= 1 + 1e-6);
  CHECK(check_mv_second_Lp(s).pass);
}

TEST_CASE("inversion identity with right-invariant fields") {
  MeanValueSetup s;
  s.group = h1();
  s.family = bump_family(s.group, 2, 3);
  s.grid = Grid::uniform(3, -6, 6, 17);
  const VerificationReport r = check_inversion(s, 4, 11);
  CHECK(r.pass);
  CHECK(r.max_ratio() < 1e-6);
}

TEST_CASE("pseudo-Poincare on the line") {
  MeanValueSetup s = r1_setup();
  const VerificationReport r = check_pseudo_poincare(HeatModel::euclidean(1), s);
  CHECK(r.pass);
}
