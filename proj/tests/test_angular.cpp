#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "casimir/angular.hpp"

using namespace casimir;

namespace {

// Independent oracle for small l: Legendre coefficient arrays, derivatives
// taken on the coefficients, Condon-Shortley continuation assembled from the
// explicit definition.  No shared code with the production recurrence.
std::vector<double> legendre_coeffs(int ell) {
  // c[k] = coefficient of x^k in P_ell
  std::vector<double> pm1{1.0}, p{0.0, 1.0};
  if (ell == 0) return pm1;
  for (int l = 2; l <= ell; ++l) {
    std::vector<double> next(l + 1, 0.0);
    for (size_t k = 0; k < p.size(); ++k) next[k + 1] += (2.0 * l - 1.0) * p[k] / l;
    for (size_t k = 0; k < pm1.size(); ++k) next[k] -= (l - 1.0) * pm1[k] / l;
    pm1 = p;
    p = next;
  }
  return p;
}

double poly_deriv_eval(std::vector<double> c, int order, double x) {
  for (int d = 0; d < order; ++d) {
    std::vector<double> dc(c.size() > 1 ? c.size() - 1 : 1, 0.0);
    for (size_t k = 1; k < c.size(); ++k) dc[k - 1] = k * c[k];
    c = dc;
  }
  double v = 0.0;
  for (size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

// P_l^m(x) = (-1)^m (x^2-1)^{m/2} d^m P_l / dx^m  (x > 1 continuation)
double assoc_p(int ell, int m, double x) {
  double cs = (m % 2 == 0) ? 1.0 : -1.0;
  return cs * std::pow(x * x - 1.0, 0.5 * m) * poly_deriv_eval(legendre_coeffs(ell), m, x);
}

double assoc_p_deriv(int ell, int m, double x) {
  double cs = (m % 2 == 0) ? 1.0 : -1.0;
  double u2 = x * x - 1.0;
  double dm = poly_deriv_eval(legendre_coeffs(ell), m, x);
  double dm1 = poly_deriv_eval(legendre_coeffs(ell), m + 1, x);
  return cs * (0.5 * m * 2.0 * x * std::pow(u2, 0.5 * m - 1.0) * dm + std::pow(u2, 0.5 * m) * dm1);
}

double lambda_lm(int ell, int m) {
  double num = (2.0 * ell + 1.0) * std::tgamma(ell - m + 1.0);
  double den = ell * (ell + 1.0) * std::tgamma(ell + m + 1.0);
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("pi~ vanishes for m = 0 and tau~_{10} is proportional to sqrt(x^2-1)") {
  for (double x : {1.01, 2.0, 10.0}) {
    auto f = angular_functions(1, 0, x);
    CHECK(f.pi_tilde == 0.0);
    // tau~_{10} = Lambda_{10} sqrt(x^2-1), Lambda_{10} = sqrt(3/2)
    CHECK(f.tau_tilde / std::sqrt(x * x - 1.0) == Catch::Approx(std::sqrt(1.5)).epsilon(1e-12));
  }
}

TEST_CASE("l = m = 1: pi~ constant, tau~ linear in x (P_1^1 = -sqrt(x^2-1))") {
  double lam = std::sqrt(0.75);
  for (double x : {1.05, 3.0, 40.0}) {
    auto f = angular_functions(1, 1, x);
    CHECK(f.pi_tilde == Catch::Approx(-lam).epsilon(1e-12));
    CHECK(f.tau_tilde == Catch::Approx(-lam * x).epsilon(1e-12));
  }
}

TEST_CASE("x = 1 limits") {
  for (int ell : {2, 5, 9}) {
    for (int m : {2, 3}) {
      if (m > ell) continue;
      auto f = angular_functions(ell, m, 1.0);
      CHECK(f.pi_tilde == 0.0);
      CHECK(f.tau_tilde == 0.0);
    }
    auto f1 = angular_functions(ell, 1, 1.0);
    double expected = -lambda_lm(ell, 1) * 0.5 * ell * (ell + 1.0);
    CHECK(f1.pi_tilde == Catch::Approx(expected).epsilon(1e-12));
    CHECK(f1.tau_tilde == Catch::Approx(expected).epsilon(1e-12));
    // continuity: tiny x-1 approaches the limit
    auto f1n = angular_functions(ell, 1, 1.0 + 1e-9);
    CHECK(f1n.pi_tilde == Catch::Approx(expected).epsilon(1e-5));
  }
  auto f0 = angular_functions(3, 0, 1.0);
  CHECK(f0.tau_tilde == 0.0);
}

TEST_CASE("recurrence machinery matches the coefficient-derivative oracle") {
  for (int ell : {1, 2, 3, 4, 6}) {
    for (int m = 0; m <= ell; ++m) {
      for (double x : {1.1, 3.7}) {
        auto f = angular_functions(ell, m, x);
        double u = std::sqrt(x * x - 1.0);
        double lam = lambda_lm(ell, m);
        double pi_ref = (m == 0) ? 0.0 : lam * m * assoc_p(ell, m, x) / u;
        double tau_ref = lam * u * assoc_p_deriv(ell, m, x);
        CHECK(f.pi_tilde == Catch::Approx(pi_ref).margin(1e-12).epsilon(1e-11));
        CHECK(f.tau_tilde == Catch::Approx(tau_ref).margin(1e-12).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("log tables stay finite at high order and large argument") {
  for (int m : {0, 1, 100}) {
    auto t = angular_tables(m, 200, 1000.0);
    for (double v : t.log_tau) CHECK(!std::isnan(v));
    CHECK(std::isfinite(t.log_tau[200 - t.lmin]));
    CHECK(t.log_tau[200 - t.lmin] > 700.0);  // raw value would overflow
  }
  // public evaluator signals instead of overflowing
  CHECK_THROWS_AS(angular_functions(200, 0, 1000.0), NumericalError);
}

TEST_CASE("angular input validation") {
  CHECK_THROWS_AS(angular_functions(1, 2, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(angular_functions(0, 0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(angular_functions(1, 0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(angular_tables(0, 5, 1.0), std::invalid_argument);
}
