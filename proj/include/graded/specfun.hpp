#pragma once

#include <cstddef>

namespace graded {

// Lanczos Gamma (g = 7, 9 terms) with reflection below 1/2.
double gamma_fn(double x);
// 1/Gamma(x), entire: zero at the nonpositive integers.
double rgamma(double x);

// Regularized confluent hypergeometric function
//   phi(a, b; z) = sum_k (a)_k / Gamma(b + k) z^k / k!.
// Branches: Taylor series for z >= -2, Kummer transformation
// e^z phi(b-a, b; -z) for -50 <= z < -2 (and whenever b-a is a nonpositive
// integer), large-|z| asymptotic series below -50.
double kummer_reg(double a, double b, double z);
// Taylor series truncated after max_terms terms (remainder diagnostics).
double kummer_reg_series(double a, double b, double z, std::size_t max_terms);

struct PsiParams {
  double alpha = 0.5;
  double beta = 1.0;
  double nu = 2.0;
  double c = 1.0;
  void validate() const;
};

// psi_{alpha,beta,nu,c}(r) from the (0,1) representation, split at u = 1/2.
double psi(const PsiParams& p, double r);
// psi from the t-integral over [1, infinity).
double psi_direct(const PsiParams& p, double r);

// phi_alpha = R^alpha h_1 on R^n for 0 < alpha < 1 via Kummer functions.
double phi_alpha_euclidean(int n, double alpha, double r);
// Same function from -1/Gamma(1-alpha) int_1^inf d_t h_t(r) (t-1)^{-alpha} dt.
double phi_alpha_euclidean_time_route(int n, double alpha, double r);
// Large-r expansion sum_{k<terms} (-1)^k/k! C(n, alpha+k) r^{-n-2alpha-2k},
// C(n,b) = 4^b Gamma(n/2+b) / (pi^{n/2} Gamma(-b)).
double phi_alpha_euclidean_asymptotic(int n, double alpha, double r, int terms = 6);
// Radial integral int_{|x|>R} of the asymptotic expansion on R^n.
double phi_alpha_euclidean_tail_mass(int n, double alpha, double R, int terms = 6);

// Euclidean constant of k_alpha: k_alpha(y) = C(n, alpha) |y|^{-n-2 alpha}.
double euclidean_k_constant(int n, double alpha);

}  // namespace graded
