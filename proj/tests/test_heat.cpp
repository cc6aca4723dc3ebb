#include <cmath>
#include <random>

#include "doctest.h"
#include "graded/heat.hpp"

using namespace graded;

// H1 references: 30-digit quadrature of
//   (1/pi) int_0^inf lambda / (4 pi sinh lambda) exp(-lambda |z|^2 coth(lambda) / 4) cos(lambda u) dlambda.

TEST_CASE("euclidean kernel closed form and scaling") {
  const HeatModel m = HeatModel::euclidean(1);
  CHECK(heat_kernel(m, 1, Point{0.}) == doctest::Approx(1 / std::sqrt(4 * M_PI)).epsilon(1e-14));
  CHECK(heat_kernel(m, 2, Point{1.5}) == doctest::Approx(std::exp(-1.5 * 1.5 / 8) / std::sqrt(8 * M_PI)).epsilon(1e-14));
  const double h = 1e-5;
  CHECK(heat_kernel_dt(m, 1, Point{0.7}) ==
        doctest::Approx((heat_kernel(m, 1 + h, Point{0.7}) - heat_kernel(m, 1 - h, Point{0.7})) / (2 * h)).epsilon(1e-7));
}

TEST_CASE("H1 kernel against independent quadrature") {
  CHECK(h1_kernel_quadrature(1, 0, 0, 0) == doctest::Approx(0.0625).epsilon(1e-12));
  CHECK(h1_kernel_quadrature(1, 1, 0, 0) == doctest::Approx(0.0393769279740307808).epsilon(1e-10));
  CHECK(h1_kernel_quadrature(1, 0, 0, 1) == doctest::Approx(0.00992697457375395780).epsilon(1e-10));
  CHECK(h1_kernel_quadrature(1, 0.5, -0.3, 0.7) == doctest::Approx(0.0217674130659055847).epsilon(1e-10));
  // h_t(D_lambda x) = lambda^{-4} h_{t/lambda^2}(x)
  CHECK(h1_kernel_quadrature(4, 2, 0, 4) == doctest::Approx(h1_kernel_quadrature(1, 1, 0, 1) / 16).epsilon(1e-10));
  const double h = 1e-4;
  CHECK(h1_kernel_dt_quadrature(1, 0.5, 0.2, 0.3) ==
        doctest::Approx((h1_kernel_quadrature(1 + h, 0.5, 0.2, 0.3) - h1_kernel_quadrature(1 - h, 0.5, 0.2, 0.3)) / (2 * h))
            .epsilon(1e-6));
}

TEST_CASE("H1 kernel table interpolates the quadrature") {
  const H1KernelTable tab(1.0, 6.0, 8.0, 0.05);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 20; ++k) {
    const double x = u(rng), y = u(rng), w = 2 * u(rng);
    CHECK(tab(x, y, w) == doctest::Approx(h1_kernel_quadrature(1, x, y, w)).epsilon(1e-5));
  }
}

TEST_CASE("euclidean semigroup on a Gaussian") {
  const HeatModel m = HeatModel::euclidean(1);
  const Grid grid = Grid::uniform(1, -20, 20, 1024);
  const SampledField f = SampledField::sample(m.group, grid, [](const Point& x) { return std::exp(-x[0] * x[0] / 2); });
  const double t = 0.7;
  const SampledField g = semigroup_apply(m, t, f);
  double err = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = grid.node(i)[0];
    err = std::max(err, std::abs(g.values[i] - std::exp(-x * x / (2 * (1 + 2 * t))) / std::sqrt(1 + 2 * t)));
  }
  CHECK(err < 1e-10);
}

TEST_CASE("H1 stencil sublaplacian is symmetric and nonpositive") {
  PdeSettings s;
  s.count = 12;
  const H1HeatSolver solver(h1_pde_grid(s), s);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> nd;
  std::vector<double> a(12 * 12 * 12), b(a.size());
  for (auto& v : a) v = nd(rng);
  for (auto& v : b) v = nd(rng);
  const auto La = solver.apply_L(a), Lb = solver.apply_L(b);
  double ab = 0, ba = 0, aa = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += La[i] * b[i];
    ba += Lb[i] * a[i];
    aa += La[i] * a[i];
  }
  CHECK(ab == doctest::Approx(ba).epsilon(1e-10));
  CHECK(aa <= 0);
}

TEST_CASE("heat model parsing") {
  CHECK(parse_heat_kind("h1_pde") == HeatKind::h1_pde);
  CHECK(std::string(to_string(HeatKind::h1_quadrature)) == "h1_quadrature");
  CHECK_THROWS(parse_heat_kind("bogus"));
}
