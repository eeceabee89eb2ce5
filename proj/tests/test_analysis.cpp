#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "casimir/analysis.hpp"

using namespace casimir;

namespace {

Curve power_law_curve(double amplitude, double exponent, double lo, double hi, int n) {
  Curve c;
  for (int i = 0; i < n; ++i) {
    double L = lo * std::pow(hi / lo, double(i) / (n - 1));
    c.points.push_back({L, -amplitude / std::pow(L, exponent), true});
  }
  return c;
}

}  // namespace

TEST_CASE("slope operator is exact on synthetic power laws") {
  for (double exponent : {3.0, 4.0}) {
    SlopeCurve s = slope_nu(power_law_curve(2.5, exponent, 1.0, 500.0, 25));
    CHECK(s.monotonic);
    for (const auto& p : s.points) CHECK(p.slope == Catch::Approx(exponent).margin(1e-10));
  }
}

TEST_CASE("radius slope operator is exact on cubic scaling") {
  auto cubic = [](double R, double L) { return -0.7 * R * R * R / (L * L * L * L); };
  CHECK(slope_mu(cubic, 10.0, 100.0) == Catch::Approx(3.0).margin(1e-10));
}

TEST_CASE("non-monotonic |E| is flagged") {
  Curve c = power_law_curve(1.0, 3.0, 1.0, 100.0, 12);
  c.points[5].energy_ev = c.points[4].energy_ev * 1.5;  // dip upward in |E|
  SlopeCurve s = slope_nu(c);
  CHECK_FALSE(s.monotonic);
}

TEST_CASE("grid refinement stability of the slope operator") {
  // smooth non-power-law curve: |E| = A exp(-(ln L)^2/8) / L^3
  auto make = [](int n) {
    Curve c;
    for (int i = 0; i < n; ++i) {
      double L = std::pow(500.0, double(i) / (n - 1));
      double ll = std::log(L);
      c.points.push_back({L, -std::exp(-ll * ll / 8.0) / (L * L * L), true});
    }
    return c;
  };
  SlopeCurve coarse = slope_nu(make(31));
  SlopeCurve fine = slope_nu(make(61));
  for (size_t i = 0; i < coarse.points.size(); ++i) {
    // every coarse point is an even-index fine point
    CHECK(coarse.points[i].slope == Catch::Approx(fine.points[2 * i].slope).margin(0.02));
  }
}

TEST_CASE("ratio of identical quantities is one") {
  Coefficients c{0.1, 3.0, 0.08, 30.0};
  Curve ham;
  for (int i = 0; i < 10; ++i) {
    double L = std::pow(10.0, double(i) / 3.0);
    ham.points.push_back({L, hamaker_energies(c, 10.0, L).e_cp_bar_ev, true});
  }
  auto r = ratio_curves(ham, c, 10.0);
  for (const auto& p : r) CHECK(p.e_over_cp_bar == Catch::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("curve validation") {
  Curve c;
  c.points = {{1.0, -1.0, true}, {2.0, -0.5, true}};
  CHECK_THROWS_AS(slope_nu(c), std::invalid_argument);  // too few points
  c.points = {{1.0, -1.0, true}, {2.0, -0.5, true}, {1.5, -0.7, true}};
  CHECK_THROWS_AS(slope_nu(c), std::invalid_argument);  // not increasing
  c.points = {{1.0, -1.0, true}, {2.0, 0.5, true}, {3.0, -0.2, true}};
  CHECK_THROWS_AS(slope_nu(c), std::invalid_argument);  // positive energy
}

TEST_CASE("slope_mu rejects nonnegative energies and bad steps") {
  auto bad = [](double, double) { return 1.0; };
  CHECK_THROWS_AS(slope_mu(bad, 1.0, 1.0), NumericalError);
  auto fine = [](double R, double) { return -R; };
  CHECK_THROWS_AS(slope_mu(fine, 1.0, 1.0, 0.0), std::invalid_argument);
}
