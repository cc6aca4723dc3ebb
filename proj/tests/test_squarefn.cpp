#include <cmath>

#include "doctest.h"
#include "graded/fracops.hpp"
#include "graded/squarefn.hpp"

using namespace graded;

namespace {

SampledField gaussian_field() {
  auto g = std::make_shared<const GroupSpec>(GroupSpec::euclidean(1));
  return SampledField::sample(g, Grid::uniform(1, -20, 20, 2048), [](const Point& x) { return std::exp(-x[0] * x[0] / 2); });
}

}  // namespace

// On L^2(R^n): int_0^inf (t xi^2)^{2a} e^{-2 t xi^2} dt/t = Gamma(2a) 4^{-a}.
TEST_CASE("g_alpha is a multiple of an isometry on L2") {
  const SampledField f = gaussian_field();
  const HeatModel m = HeatModel::euclidean(1);
  QuadratureConfig cfg;
  cfg.pad_factor = 16;
  for (double a : {0.5, 1.0}) {
    const SquareFnResult r = g_alpha(m, f, a, cfg);
    CHECK(r.lp / lp_norm(f, 2) == doctest::Approx(std::pow(2, -a) * std::sqrt(std::tgamma(2 * a))).epsilon(5e-3));
    double mass = 0;
    for (double d : r.decade_mass) mass += d;
    CHECK(mass == doctest::Approx(1).epsilon(1e-6));
  }
}

// ||G_s f||_2^2 = Gamma(2-s) 2^{s-2} ||R^{s/2} f||_2^2 and, for e^{-x^2/2},
// ||R^{s/2} f||_2^2 = Gamma(s + 1/2).
TEST_CASE("G_s norm of a Gaussian") {
  const SampledField f = gaussian_field();
  const HeatModel m = HeatModel::euclidean(1);
  QuadratureConfig cfg;
  cfg.pad_factor = 16;
  for (double s : {0.5, 1.5}) {
    const SquareFnResult r = G_s(m, f, s, cfg);
    const double expect = std::sqrt(std::tgamma(2 - s) * std::pow(2, s - 2) * std::tgamma(s + 0.5));
    CHECK(r.lp == doctest::Approx(expect).epsilon(5e-3));
  }
}

TEST_CASE("phi_alpha table and restriction") {
  const ScalarFn phi = phi_alpha_table(1, 0.5);
  CHECK(phi(Point{0.0}) == doctest::Approx(1 / (2 * M_PI)).epsilon(1e-6));
  CHECK(phi(Point{1.0}) == doctest::Approx(0.0916037946295011129).epsilon(1e-6));
  const SampledField f = gaussian_field();
  const SampledField r = restrict_to(f, Grid{{Axis{f.grid.axes[0].coord(512), f.grid.axes[0].spacing, 1024}}});
  CHECK(r.values.front() == f.values[512]);
  CHECK(r.values.back() == f.values[1535]);
}
