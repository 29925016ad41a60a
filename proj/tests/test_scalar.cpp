#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "chamber/errors.hpp"
#include "chamber/scalar.hpp"
#include "oracles.hpp"

using namespace chamber;

TEST_CASE("mul adds pi powers", "[scalar]") {
  const PiScaledRational half_root_pi(Rational(1, 2), 1);
  CHECK(half_root_pi * half_root_pi == PiScaledRational(Rational(1, 4), 2));
  CHECK(mul(PiScaledRational(Rational(3, 4), 1), PiScaledRational(Rational(2), -1)) ==
        PiScaledRational(Rational(3, 2), 0));
  const PiScaledRational zero = PiScaledRational(Rational(7, 3), 5) * PiScaledRational();
  CHECK(zero.is_zero());
  CHECK(zero.pi_half_power() == 0);
}

TEST_CASE("add needs equal pi powers", "[scalar]") {
  CHECK(add(PiScaledRational(Rational(1, 3), -2), PiScaledRational(Rational(1, 6), -2)) ==
        PiScaledRational(Rational(1, 2), -2));
  const PiScaledRational q(Rational(5, 7), 3);
  CHECK(q + PiScaledRational() == q);
  CHECK_THROWS_AS(PiScaledRational(1) + PiScaledRational(Rational(1), 1), MixedPiPower);
}

TEST_CASE("zero is canonical", "[scalar]") {
  const PiScaledRational z(Rational(0), 7);
  CHECK(z.pi_half_power() == 0);
  CHECK(z == PiScaledRational());
  const PiScaledRational a(Rational(2, 5), -4);
  CHECK((a - a).pi_half_power() == 0);
}

TEST_CASE("coefficients are stored in lowest terms", "[scalar]") {
  const PiScaledRational x(Rational(6, -4), 2);
  CHECK(x.coeff().get_num() == -3);
  CHECK(x.coeff().get_den() == 2);
  CHECK(parse_rational("-10/4") == Rational(-5, 2));
  const Rational r = ratio(6, -4);
  CHECK(r.get_num() == -3);
  CHECK(r.get_den() == 2);
  CHECK_THROWS_AS(ratio(1, 0), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
}

TEST_CASE("gamma_half values", "[scalar]") {
  CHECK(gamma_half(2) == PiScaledRational(1));
  CHECK(gamma_half(1) == PiScaledRational(Rational(1), 1));
  CHECK(gamma_half(5) == PiScaledRational(Rational(3, 4), 1));
  for (int n = 1; n <= 40; ++n) {
    CHECK(gamma_half(n).to_double() == Catch::Approx(std::tgamma(n / 2.0)).epsilon(1e-13));
  }
}

TEST_CASE("gamma_half functional equation", "[scalar][property]") {
  for (int n = 1; n <= 60; ++n) {
    CHECK(gamma_half(n + 2) == PiScaledRational(Rational(n, 2)) * gamma_half(n));
  }
}

TEST_CASE("to_double agrees with direct evaluation", "[scalar][property]") {
  oracle::Gen g(11);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational q = g.rational(100000, 9999);
    const int k = g.integer(-20, 20);
    const double direct = q.get_d() * std::pow(std::sqrt(std::numbers::pi), k);
    const double got = PiScaledRational(q, k).to_double();
    if (direct == 0.0) {
      CHECK(got == 0.0);
    } else {
      CHECK(std::abs(got - direct) <= 1e-12 * std::abs(direct));
    }
  }
}

TEST_CASE("ring axioms on homogeneous operands", "[scalar][property]") {
  oracle::Gen g(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = g.integer(-6, 6);
    const PiScaledRational a(g.rational(), k);
    const PiScaledRational b(g.rational(), k);
    const PiScaledRational c(g.rational(), k);
    const PiScaledRational s(g.rational(), g.integer(-6, 6));
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK((a * s) * b == a * (s * b));
    CHECK(a * s == s * a);
    CHECK(s * (a + b) == s * a + s * b);
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("to_string format", "[scalar]") {
  CHECK(PiScaledRational(Rational(3, 4), 1).to_string() == "3/4*pi^(1/2)");
  CHECK(PiScaledRational(Rational(2)).to_string() == "2");
}
