#include <cmath>
#include <random>

#include "doctest.h"
#include "graded/group.hpp"

using namespace graded;

namespace {

Point random_point(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-2, 2);
  Point p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = u(rng);
  return p;
}

double dist(const Point& a, const Point& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("heisenberg law matches the closed form") {
  const GroupSpec g = GroupSpec::heisenberg();
  g.validate();
  CHECK(g.Q == 4);
  const Point z = multiply(g, Point{1, 2, 3}, Point{4, 5, 6});
  CHECK(z[0] == doctest::Approx(5));
  CHECK(z[1] == doctest::Approx(7));
  CHECK(z[2] == doctest::Approx(3 + 6 + 0.5 * (1 * 5 - 2 * 4)));
}

TEST_CASE("group axioms hold on random points") {
  std::mt19937_64 rng(3);
  for (const GroupSpec& g : {GroupSpec::euclidean(2), GroupSpec::heisenberg()}) {
    for (int k = 0; k < 50; ++k) {
      const Point x = random_point(rng, g.n), y = random_point(rng, g.n), z = random_point(rng, g.n);
      CHECK(dist(multiply(g, multiply(g, x, y), z), multiply(g, x, multiply(g, y, z))) < 1e-12);
      CHECK(dist(multiply(g, x, inverse(g, x)), identity(g)) < 1e-12);
      const double lam = 0.3 + 0.1 * k;
      CHECK(dist(dilate(g, lam, multiply(g, x, y)), multiply(g, dilate(g, lam, x), dilate(g, lam, y))) < 1e-10);
    }
  }
}

TEST_CASE("quasi-norms are homogeneous and satisfy the quasi-triangle inequality") {
  const GroupSpec g = GroupSpec::heisenberg();
  std::mt19937_64 rng(5);
  for (NormVariant v : {NormVariant::max, NormVariant::sum, NormVariant::smooth}) {
    double worst = 0;
    for (int k = 0; k < 2000; ++k) {
      const Point x = random_point(rng, 3), y = random_point(rng, 3);
      CHECK(quasi_norm(g, dilate(g, 2.5, x), v) == doctest::Approx(2.5 * quasi_norm(g, x, v)));
      CHECK(quasi_norm(g, inverse(g, x), v) == doctest::Approx(quasi_norm(g, x, v)));
      worst = std::max(worst, quasi_norm(g, multiply(g, x, y), v) / (quasi_norm(g, x, v) + quasi_norm(g, y, v)));
    }
    CHECK(worst <= g.rho_for(v) + 1e-12);
  }
  CHECK(quasi_norm(g, Point{1, 2, 3}) == doctest::Approx(2));
  CHECK(quasi_norm(g, Point{1, 2, 3}, NormVariant::sum) == doctest::Approx(3 + std::sqrt(3)));
}

TEST_CASE("left-invariant fields differentiate left translations") {
  const GroupSpec g = GroupSpec::heisenberg();
  const Point x{0.4, -1.1, 0.7};
  for (std::size_t j = 0; j < 3; ++j) {
    Point e(3);
    const double h = 1e-6;
    e[j] = h;
    const Point plus = multiply(g, x, e), minus = multiply(g, x, inverse(g, e));
    const std::vector<double> a = vf_coeffs(g, j, x);
    for (std::size_t k = 0; k < 3; ++k) CHECK((plus[k] - minus[k]) / (2 * h) == doctest::Approx(a[k]).epsilon(1e-8));
  }
}

TEST_CASE("angular rule integrates the unit ball volume") {
  const GroupSpec g = GroupSpec::heisenberg();
  const AngularRule rule = angular_rule(g, 8);
  double s = 0;
  for (double w : rule.w) s += w;
  // |{max(|x|, |y|, sqrt|u|) < 1}| = 2 * 2 * 2 = 8 = sum w / Q
  CHECK(s / g.Q == doctest::Approx(8.0).epsilon(1e-10));
}

TEST_CASE("group text format round-trips and rejects malformed input") {
  const GroupSpec g = GroupSpec::heisenberg();
  const GroupSpec back = parse_group_string(emit_group(g));
  CHECK(back.Q == g.Q);
  CHECK(back.weights == g.weights);
  const Point z = multiply(back, Point{1, 2, 3}, Point{-1, 0.5, 2});
  const Point w = multiply(g, Point{1, 2, 3}, Point{-1, 0.5, 2});
  CHECK(dist(z, w) < 1e-14);
  CHECK_THROWS_AS(parse_group_string("nonsense"), ParseError);
  CHECK_THROWS_AS(builtin_group("H7"), ParseError);
}
