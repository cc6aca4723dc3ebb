#include <cmath>
#include <sstream>

#include "doctest.h"
#include "graded/field.hpp"

using namespace graded;

namespace {

GroupPtr r1() { return std::make_shared<const GroupSpec>(GroupSpec::euclidean(1)); }
GroupPtr h1() { return std::make_shared<const GroupSpec>(GroupSpec::heisenberg()); }

double gauss(const Point& x) { return std::exp(-x[0] * x[0] / 2); }

}  // namespace

TEST_CASE("Lp norms of a Gaussian") {
  const SampledField f = SampledField::sample(r1(), Grid::uniform(1, -20, 20, 2048), gauss);
  CHECK(lp_norm(f, 2) == doctest::Approx(std::pow(M_PI, 0.25)).epsilon(1e-10));
  CHECK(lp_norm(f, 1) == doctest::Approx(std::sqrt(2 * M_PI)).epsilon(1e-10));
  CHECK(integral(f) == doctest::Approx(std::sqrt(2 * M_PI)).epsilon(1e-10));
}

TEST_CASE("translation and second differences") {
  const Grid grid = Grid::uniform(1, -20, 20, 4001);
  const SampledField f = SampledField::sample(r1(), grid, gauss);
  const SampledField t = translate_sample(f, Point{0.37});
  const SampledField d = second_difference(f, Point{0.37});
  for (std::size_t i = 1000; i < 3000; i += 97) {
    const double x = grid.node(i)[0];
    CHECK(t.values[i] == doctest::Approx(std::exp(-(x + 0.37) * (x + 0.37) / 2)).epsilon(1e-6));
    const double expect = std::exp(-(x + 0.37) * (x + 0.37) / 2) + std::exp(-(x - 0.37) * (x - 0.37) / 2) - 2 * gauss(Point{x});
    CHECK(std::abs(d.values[i] - expect) < 1e-6);
  }
  CHECK_THROWS_AS(translate_sample(f, Point{19.0}), SupportOverflow);
}

TEST_CASE("sampling refuses fields that do not vanish at the margin") {
  CHECK_THROWS_AS(SampledField::sample(r1(), Grid::uniform(1, -2, 2, 64), gauss), SupportOverflow);
}

TEST_CASE("H1 vector field stencils") {
  const Grid grid = Grid::uniform(3, -6, 6, 49);
  auto fn = [](const Point& z) { return std::exp(-(z[0] * z[0] + z[1] * z[1] + z[2] * z[2])); };
  const SampledField f = SampledField::sample(h1(), grid, fn);
  const SampledField x1 = apply_vf(f, 0);
  // X_1 = d_x - (y/2) d_u
  const std::size_t i = grid.size() / 2 + 3 * grid.stride(0) + 2 * grid.stride(1) + grid.stride(2);
  const Point z = grid.node(i);
  const double exact = (-2 * z[0] + z[1] * z[2]) * fn(z);
  CHECK(x1.values[i] == doctest::Approx(exact).epsilon(2e-3));
}

TEST_CASE("abelian convolution of Gaussians") {
  const Grid grid = Grid::uniform(1, -20, 20, 801);
  const SampledField f = SampledField::sample(r1(), grid, gauss);
  const SampledField c = group_convolve(f, f);
  const std::size_t mid = 400;
  // (g*g)(x) = sqrt(pi) e^{-x^2/4}
  CHECK(c.values[mid] == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-9));
  CHECK(c.values[mid + 40] == doctest::Approx(std::sqrt(M_PI) * std::exp(-4.0 / 4)).epsilon(1e-9));
}

TEST_CASE("field files round-trip") {
  const SampledField f = SampledField::sample(r1(), Grid::uniform(1, -20, 20, 64), gauss);
  std::stringstream csv, bin;
  write_field_csv(csv, f);
  write_field_binary(bin, f);
  const SampledField a = read_field(csv), b = read_field(bin);
  CHECK(a.grid == f.grid);
  CHECK(b.values == f.values);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(a.values[i] == f.values[i]);
  std::stringstream junk("not a field");
  CHECK_THROWS_AS(read_field(junk), ParseError);
}
