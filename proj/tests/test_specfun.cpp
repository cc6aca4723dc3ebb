#include <cmath>
#include <initializer_list>

#include "doctest.h"
#include "graded/errors.hpp"
#include "graded/specfun.hpp"

using namespace graded;

// Reference values from 30-digit evaluations of 1F1(a; b; z) / Gamma(b),
// Gamma, and the Fourier integral of |xi|^{2 alpha} e^{-|xi|^2}.

TEST_CASE("gamma and reciprocal gamma") {
  CHECK(gamma_fn(0.3) == doctest::Approx(2.99156898768759074).epsilon(1e-13));
  CHECK(gamma_fn(-1.5) == doctest::Approx(2.36327180120735470).epsilon(1e-13));
  CHECK(gamma_fn(5) == doctest::Approx(24).epsilon(1e-14));
  CHECK(rgamma(-2) == 0);
  CHECK(rgamma(0) == 0);
}

TEST_CASE("regularized Kummer function on every branch") {
  CHECK(kummer_reg(0.5, 1.5, -10) == doctest::Approx(0.316225317080576393).epsilon(1e-11));
  CHECK(kummer_reg(1.2, 0.7, 3) == doctest::Approx(39.3180868907968381).epsilon(1e-11));
  CHECK(kummer_reg(-0.5, 2, -80) == doctest::Approx(6.79133283354951020).epsilon(1e-9));
  // Taylor and Kummer-transformed branches agree at the switch point
  CHECK(kummer_reg(0.7, 1.3, -2.0) == doctest::Approx(kummer_reg_series(0.7, 1.3, -2.0, 200)).epsilon(1e-12));
}

TEST_CASE("phi_alpha against Fourier integrals") {
  CHECK(phi_alpha_euclidean(1, 0.5, 0) == doctest::Approx(0.159154943091895336).epsilon(1e-10));
  CHECK(phi_alpha_euclidean(1, 0.5, 1) == doctest::Approx(0.0916037946295011129).epsilon(1e-10));
  CHECK(phi_alpha_euclidean(1, 0.5, 3) == doctest::Approx(-0.0453189265213656399).epsilon(1e-10));
  CHECK(phi_alpha_euclidean(3, 0.25, 2) == doctest::Approx(0.00688081145452681966).epsilon(1e-10));
}

TEST_CASE("phi_alpha routes and asymptotics agree") {
  for (double r : {0.3, 1.0, 2.5, 5.0})
    CHECK(phi_alpha_euclidean_time_route(1, 0.3, r) == doctest::Approx(phi_alpha_euclidean(1, 0.3, r)).epsilon(1e-7));
  CHECK(phi_alpha_euclidean_asymptotic(1, 0.3, 25) == doctest::Approx(phi_alpha_euclidean(1, 0.3, 25)).epsilon(1e-6));
}

TEST_CASE("euclidean kernel constant") {
  const double b = 0.5, n = 1;
  const double expected = std::pow(4, b) * std::tgamma(n / 2 + b) / (std::pow(M_PI, n / 2) * std::tgamma(-b));
  CHECK(euclidean_k_constant(1, 0.5) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("psi representations agree and parameters are validated") {
  for (double r : {0.0, 0.5, 1.0, 4.0}) {
    PsiParams p{0.4, 1.2, 2.0, 1.0};
    CHECK(psi(p, r) == doctest::Approx(psi_direct(p, r)).epsilon(1e-7));
  }
  PsiParams bad{1.5, 1.0, 2.0, 1.0};
  CHECK_THROWS_AS(bad.validate(), DomainError);
}
