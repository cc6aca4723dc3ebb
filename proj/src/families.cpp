#include "graded/families.hpp"

#include <cmath>
#include <cstdio>
#include <random>

namespace graded {

namespace {
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit(rng); }
}  // namespace

double BumpField::operator()(const Point& z) const {
  double s = 0;
  for (const Bump& b : bumps) {
    double q = 0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      double d = (z[k] - b.center[k]) / b.width[k];
      q += d * d;
    }
    if (q < 1) s += b.amp * std::exp(1 - 1 / (1 - q));
  }
  return s;
}

std::vector<double> BumpField::gradient(const Point& z) const {
  std::vector<double> g(z.size(), 0.0);
  for (const Bump& b : bumps) {
    double q = 0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      double d = (z[k] - b.center[k]) / b.width[k];
      q += d * d;
    }
    if (q >= 1) continue;
    // d/dq exp(1 - 1/(1-q)) = -exp(...)/(1-q)^2
    const double dq = -b.amp * std::exp(1 - 1 / (1 - q)) / ((1 - q) * (1 - q));
    for (std::size_t k = 0; k < z.size(); ++k)
      g[k] += dq * 2 * (z[k] - b.center[k]) / (b.width[k] * b.width[k]);
  }
  return g;
}

SampledField BumpField::sample(const Grid& grid, int margin) const {
  return SampledField::sample(group, grid, [this](const Point& z) { return (*this)(z); }, margin, 0.0);
}

std::string BumpField::describe() const {
  std::string s;
  char buf[64];
  for (const Bump& b : bumps) {
    std::snprintf(buf, sizeof buf, "%s%.3g@(", s.empty() ? "" : "+", b.amp);
    s += buf;
    for (std::size_t k = 0; k < b.center.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%s%.3g", k ? "," : "", b.center[k]);
      s += buf;
    }
    s += ")";
  }
  return s;
}

std::vector<BumpField> bump_family(GroupPtr g, std::size_t count, std::uint64_t seed, double spread,
                                   double width_lo, double width_hi) {
  std::mt19937_64 rng(seed);
  std::vector<BumpField> fam;
  for (std::size_t m = 0; m < count; ++m) {
    BumpField f;
    f.group = g;
    const int nb = 3 + static_cast<int>(rng() % 4);
    for (int i = 0; i < nb; ++i) {
      Bump b;
      b.amp = uniform(rng, 0.3, 1.0) * ((rng() & 1) ? 1.0 : -1.0);
      b.center = Point(g->n);
      b.width.resize(g->n);
      for (std::size_t k = 0; k < g->n; ++k) {
        const double sg = g->weights[k];
        b.center[k] = uniform(rng, -1.0, 1.0) * std::pow(spread, sg);
        b.width[k] = std::pow(uniform(rng, width_lo, width_hi), sg);
      }
      f.bumps.push_back(b);
    }
    fam.push_back(std::move(f));
  }
  return fam;
}

}  // namespace graded
