#include <cmath>

#include "doctest.h"
#include "graded/strichartz.hpp"

using namespace graded;

namespace {

SampledField bump(double scale) {
  auto g = std::make_shared<const GroupSpec>(GroupSpec::euclidean(1));
  return SampledField::sample(g, Grid::uniform(1, -8, 8, 2049), [scale](const Point& x) {
    const double q = scale * scale * x[0] * x[0];
    return q < 1 ? std::exp(1 - 1 / (1 - q)) : 0.0;
  });
}

}  // namespace

TEST_CASE("functionals vanish on the zero field") {
  const SampledField z = SampledField::zeros(std::make_shared<const GroupSpec>(GroupSpec::euclidean(1)),
                                             Grid::uniform(1, -4, 4, 257), 2);
  StrichartzParams prm;
  CHECK(S_s(*z.group, z, prm, Point{0.3}) == 0);
  CHECK(S2_s(*z.group, z, prm, Point{0.3}) == 0);
}

// f_l(x) = f(l x) gives S f_l(x / l) = l^s S f(x).
TEST_CASE("functionals scale with the dilation") {
  const SampledField f = bump(0.5), f2 = bump(1.0);
  StrichartzParams prm;
  prm.s = 0.5;
  const double a = S_s(*f.group, f, prm, Point{0.8});
  const double b = S_s(*f.group, f2, prm, Point{0.4});
  CHECK(b == doctest::Approx(std::sqrt(2.0) * a).epsilon(1e-2));
  prm.s = 1.5;
  const double c = S2_s(*f.group, f, prm, Point{0.8});
  const double d = S2_s(*f.group, f2, prm, Point{0.4});
  CHECK(d == doctest::Approx(std::pow(2.0, 1.5) * c).epsilon(1e-2));
}

TEST_CASE("parameter ranges") {
  StrichartzParams prm;
  prm.s = 1.2;
  CHECK_THROWS_AS(prm.validate(false), DomainError);
  CHECK_NOTHROW(prm.validate(true));
  prm.s = 2.0;
  CHECK_THROWS_AS(prm.validate(true), DomainError);
  CHECK_THROWS_AS(parse_route("third"), ParseError);
}

TEST_CASE("truncated functionals of the counterexamples diverge like eps^{-1/2}") {
  std::vector<double> eps;
  for (int i = 0; i <= 6; ++i) eps.push_back(std::pow(10.0, -2 - 0.5 * i));
  CHECK(counterexample_exponent(StrichartzRoute::first, 1.5, eps).slope == doctest::Approx(-0.5).epsilon(0.05));
  CHECK(counterexample_exponent(StrichartzRoute::second, 2.5, eps).slope == doctest::Approx(-0.5).epsilon(0.05));
}

TEST_CASE("strided functional field") {
  const SampledField f = bump(0.5);
  StrichartzParams prm;
  const SampledField s = strichartz_field(*f.group, f, prm, false, 64);
  CHECK(s.grid.axes[0].count == (2049 + 63) / 64);
  CHECK(s.grid.axes[0].spacing == doctest::Approx(64 * f.grid.axes[0].spacing));
  CHECK(s.max_abs() > 0);
}
