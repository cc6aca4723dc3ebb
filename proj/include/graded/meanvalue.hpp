#pragma once

#include <cstdint>
#include <vector>

#include "graded/families.hpp"
#include "graded/field.hpp"
#include "graded/heat.hpp"
#include "graded/report.hpp"

namespace graded {

// Shared inputs of the mean value checks.  Every norm is evaluated on `grid`
// and again on its half-resolution counterpart for the stability metric.
struct MeanValueSetup {
  GroupPtr group;
  std::vector<BumpField> family;
  Grid grid;
  std::vector<Point> shifts;
  double p = 2;
};

// Same box with (count + 1) / 2 nodes per axis.
Grid half_resolution(const Grid& grid);
// Seeded shifts with quasi-norm in (0, max_norm], log-uniform in the norm.
std::vector<Point> shift_samples(const GroupSpec& g, std::size_t count, double max_norm, std::uint64_t seed);

// Derivative of fn along the left-invariant field X_j (right-invariant when
// `right`) by a central difference along exp(t e_j).
double field_derivative(const GroupSpec& g, const ScalarFn& fn, const Point& x, std::size_t j, bool right = false,
                        double step = 1e-5);
// X_j F from the closed-form gradient.
double vf_apply(const BumpField& f, const Point& x, std::size_t j);

// ||f(. y) - f||_p / sum_j |y|^{sigma_j} ||X_j f||_p.
VerificationReport check_mv_first_Lp(const MeanValueSetup& s);
// |Delta^2_y f(x)| / (|y|^2 sup_{|z| <= eta^2 |y|} max_{j,k} |X_j X_k f(x.z)|) at
// seeded points; eta_est is the smallest eta on {1, 1.25, ..., 4} whose
// constant is within 5% of the eta = 4 constant.
struct EtaEstimate {
  double eta = 0;
  double c1 = 0;
};
VerificationReport check_mv_second_pointwise(const MeanValueSetup& s, std::size_t points_per_member = 6,
                                             std::uint64_t seed = 7, EtaEstimate* est = nullptr);
// ||Delta^2_y f||_p / (max(|y|^2, |y|^{2 sigma_n}) sum_{j,k} ||X_j X_k f||_p).
VerificationReport check_mv_second_Lp(const MeanValueSetup& s);
// Forward bound sup_y ||f(. y) - f||_p / |y| against sum_j ||X_j f||_p and the
// converse difference quotients along exp(t X_i), t = 2^{-k}.
VerificationReport check_w1p_characterization(const MeanValueSetup& s);
// X_j (f o inv)(x) against -(X~_j f)(x^{-1}) (right-invariant X~_j) at seeded
// points; the residual of the left-invariant form -X_j f(x) goes to notes.
VerificationReport check_inversion(const MeanValueSetup& s, std::size_t points_per_member = 8,
                                   std::uint64_t seed = 11);
// ||f - T_t f||_2 <= C t^{1/2} (||f||_2 + ||f'||_2) for t = 2^{-k}, k = 1..10.
VerificationReport check_pseudo_poincare(const HeatModel& m, const MeanValueSetup& s);

}  // namespace graded
