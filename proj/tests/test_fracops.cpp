#include <cmath>

#include "doctest.h"
#include "graded/fracops.hpp"
#include "graded/specfun.hpp"

using namespace graded;

// References: sqrt(2 pi) I / pi with I = int_0^inf xi^{2 alpha} e^{-xi^2/2} cos(xi x) dxi to 30 digits.

namespace {

SampledField gaussian_field(std::size_t count) {
  auto g = std::make_shared<const GroupSpec>(GroupSpec::euclidean(1));
  return SampledField::sample(g, Grid::uniform(1, -20, 20, count), [](const Point& x) { return std::exp(-x[0] * x[0] / 2); });
}

double at(const SampledField& f, double x) { return f.interpolate(Point{x}); }

const double kFhat = std::sqrt(2 * M_PI);

}  // namespace

TEST_CASE("spectral fractional powers of a Gaussian") {
  const SampledField f = gaussian_field(4001);
  const SampledField a = frac_power_spectral(f, 0.5, 8);
  CHECK(at(a, 0) == doctest::Approx(kFhat * (1 / M_PI)).epsilon(1e-7));
  CHECK(at(a, 1) == doctest::Approx(kFhat * 0.0876057373887850115).epsilon(1e-6));
  const SampledField b = frac_power_spectral(f, 0.25, 8);
  CHECK(at(b, 0) == doctest::Approx(kFhat * 0.328001948666876466).epsilon(1e-7));
  CHECK(at(b, 2) == doctest::Approx(kFhat * -0.0384951719049265687).epsilon(1e-5));
}

TEST_CASE("pointwise and Balakrishnan routes agree with the spectral route") {
  const SampledField f = gaussian_field(4096);
  const HeatModel m = HeatModel::euclidean(1);
  QuadratureConfig cfg;
  const SampledField sp = frac_power_spectral(f, 0.25, 8);
  const SampledField pw = frac_power_pointwise_grid(f, 0.25, cfg);
  const SampledField bk = frac_power_balakrishnan(m, f, 0.25, cfg);
  double e1 = 0, e2 = 0, mx = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    e1 = std::max(e1, std::abs(pw.values[i] - sp.values[i]));
    e2 = std::max(e2, std::abs(bk.values[i] - sp.values[i]));
    mx = std::max(mx, std::abs(sp.values[i]));
  }
  CHECK(e1 / mx < 1e-5);
  CHECK(e2 / mx < 1e-5);
  CHECK(frac_power_pointwise(m, f, 0.25, Point{0.5}, cfg) == doctest::Approx(at(sp, 0.5)).epsilon(1e-5));
}

TEST_CASE("euclidean k_alpha is the Riesz kernel") {
  const HeatModel m = HeatModel::euclidean(1);
  for (double y : {0.5, 1.0, 3.0})
    CHECK(k_alpha(m, 0.3, Point{y}) == doctest::Approx(euclidean_k_constant(1, 0.3) * std::pow(y, -1.6)).epsilon(1e-7));
}

TEST_CASE("fractional parameters are validated") {
  FracParams p;
  p.alpha = -0.2;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.alpha = 0.5;
  p.p = 0.5;
  CHECK_THROWS_AS(p.validate(), DomainError);
}
