#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "chamber/errors.hpp"
#include "chamber/selberg.hpp"

using namespace chamber;

namespace {
const Rational kHalf(1, 2);
}

TEST_CASE("rising factorial", "[selberg]") {
  CHECK(rising_factorial(Rational(7, 3), 0) == 1);
  CHECK(rising_factorial(Rational(2), 3) == 24);
  CHECK(rising_factorial(Rational(5, 2), 2) == Rational(35, 4));
}

TEST_CASE("exponential Selberg integral values", "[selberg]") {
  for (const Rational g : {kHalf, Rational(1), Rational(3, 2)}) {
    CHECK(selberg_exponential(1, Rational(2), g) == PiScaledRational(1));
  }
  CHECK(selberg_exponential(2, Rational(2), kHalf) == PiScaledRational(Rational(3, 2)));
  const PiScaledRational m3 = gamma_half(3) * gamma_half(4) * gamma_half(4) * gamma_half(5) * gamma_half(5) *
                              gamma_half(6) / (gamma_half(3) * gamma_half(3) * gamma_half(3));
  CHECK(selberg_exponential(3, Rational(2), kHalf) == m3);
  CHECK(selberg_exponential(3, Rational(2), kHalf) == PiScaledRational(Rational(9, 2)));
}

TEST_CASE("moment examples", "[selberg]") {
  CHECK(selberg_moment({2, Rational(2), kHalf, 0, 0}) == selberg_exponential(2, Rational(2), kHalf));
  CHECK(selberg_moment({2, Rational(2), kHalf, 0, 1}) == PiScaledRational(Rational(15, 4)));
  CHECK(selberg_moment({2, Rational(2), kHalf, 1, 1}) == PiScaledRational(Rational(15)));
}

TEST_CASE("moments equal sector integration", "[selberg][oracle]") {
  for (int m = 1; m <= 3; ++m) {
    for (int alpha = 1; alpha <= 3; ++alpha) {
      for (int ell = 0; ell < m; ++ell) {
        for (int k = 0; k <= ell; ++k) {
          const SelbergParams p{m, Rational(alpha), kHalf, k, ell};
          INFO("m=" << m << " alpha=" << alpha << " k=" << k << " ell=" << ell);
          CHECK(selberg_moment(p) == selberg_brute_force(p));
        }
      }
    }
  }
}

TEST_CASE("gamma = 1 and 3/2 against sector integration", "[selberg][oracle]") {
  for (int m = 1; m <= 3; ++m) {
    for (const Rational g : {Rational(1), Rational(3, 2)}) {
      const SelbergParams p{m, Rational(2), g, 0, 0};
      CHECK(selberg_moment(p) == selberg_brute_force(p));
    }
  }
}

TEST_CASE("moment recurrences", "[selberg][property]") {
  for (int m = 1; m <= 6; ++m) {
    for (const Rational alpha : {Rational(1), Rational(3, 2), Rational(2), Rational(3)}) {
      for (const Rational g : {kHalf, Rational(1), Rational(3, 2)}) {
        for (int ell = 1; ell < m; ++ell) {
          const auto I = [&](int k, int l) { return selberg_moment({m, alpha, g, k, l}); };
          CHECK(I(0, ell) == PiScaledRational(g * (alpha / g + m - ell)) * I(0, ell - 1));
          for (int k = 1; k <= ell; ++k) {
            CHECK(I(k, ell) == PiScaledRational(g * ((alpha + 1) / g + 2 * m - ell - k)) * I(k - 1, ell));
          }
        }
      }
    }
  }
}

TEST_CASE("parameter validation", "[selberg]") {
  CHECK_THROWS_AS(selberg_moment({2, Rational(2), Rational(1, 3), 0, 0}), UnsupportedParameters);
  CHECK_THROWS_AS(selberg_moment({2, Rational(2), kHalf, 1, 0}), UnsupportedParameters);
  CHECK_THROWS_AS(selberg_moment({2, Rational(2), kHalf, 0, 2}), UnsupportedParameters);
  CHECK_THROWS_AS(selberg_moment({2, Rational(1, 3), kHalf, 0, 0}), UnsupportedParameters);
  CHECK_THROWS_AS(selberg_moment({2, Rational(-1), kHalf, 0, 0}), UnsupportedParameters);
  CHECK_NOTHROW(selberg_moment({1, Rational(2), kHalf, 0, 0}));
}

TEST_CASE("floating values match lgamma", "[selberg]") {
  for (int m = 1; m <= 8; ++m) {
    double log_z = 0.0;
    for (int j = 0; j < m; ++j) log_z += std::lgamma(1.5 + j / 2.0) + std::lgamma(2.0 + j / 2.0) - std::lgamma(1.5);
    CHECK(selberg_exponential(m, Rational(2), kHalf).to_double() == Catch::Approx(std::exp(log_z)).epsilon(1e-12));
  }
}
