#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include "chamber/errors.hpp"
#include "chamber/integrate.hpp"
#include "oracles.hpp"

using namespace chamber;

namespace {

MultiPoly x(int m, int i) { return MultiPoly::variable(m, i); }

Rational exact_value(const PiScaledRational& v) {
  REQUIRE(v.pi_half_power() == 0);
  return v.coeff();
}

std::vector<double> to_doubles(const std::vector<Rational>& r) {
  std::vector<double> out;
  for (const auto& q : r) out.push_back(q.get_d());
  return out;
}

double weight(const std::vector<double>& rates, const std::vector<double>& l) {
  double s = 0.0;
  for (std::size_t i = 0; i < l.size(); ++i) s += rates[i] * l[i];
  return std::exp(-s);
}

}  // namespace

TEST_CASE("chamber integral examples", "[integrate]") {
  ConeIntegrand f = ConeIntegrand::chamber(1);
  f.multiply(x(1, 0)).set_rate(0, Rational(2));
  CHECK(exact_value(chamber_integral(f)) == Rational(1, 4));

  ConeIntegrand g = ConeIntegrand::chamber(2);
  g.multiply(x(2, 0) * x(2, 1) * (x(2, 0) - x(2, 1)));
  CHECK(exact_value(chamber_integral(g)) == Rational(3, 4));

  ConeIntegrand d = ConeIntegrand::chamber(2);
  d.set_rates({Rational(1), Rational(-1)});
  CHECK_THROWS_AS(chamber_integral(d), DivergentIntegral);
}

TEST_CASE("orthant integral examples", "[integrate]") {
  ConeIntegrand f = ConeIntegrand::orthant(2);
  f.multiply(x(2, 0) * x(2, 1)).with_abs_vandermonde();
  CHECK(exact_value(orthant_integral(f)) == Rational(3, 2));

  ConeIntegrand g = ConeIntegrand::orthant(1);
  g.multiply(x(1, 0) * x(1, 0));
  CHECK(exact_value(orthant_integral(g)) == Rational(2));
}

TEST_CASE("orthant monomials factorise", "[integrate][property]") {
  oracle::Gen gen(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = gen.integer(1, 5);
    const MultiPoly p = gen.poly(m, 6, gen.integer(1, 6));
    std::vector<Rational> rates;
    for (int i = 0; i < m; ++i) rates.push_back(gen.positive_rational());
    ConeIntegrand f = ConeIntegrand::orthant(m);
    f.multiply(p).set_rates(rates);
    CHECK(exact_value(orthant_integral(f)) == oracle::monomial_orthant(p, rates));
  }
}

TEST_CASE("chamber integrals match nested quadrature", "[integrate][oracle]") {
  oracle::Gen gen(22);
  for (int trial = 0; trial < 12; ++trial) {
    const int m = trial < 8 ? 2 : 3;
    const MultiPoly p = gen.poly(m, 4, 4);
    std::vector<Rational> rates;
    for (int i = 0; i < m; ++i) rates.push_back(gen.positive_rational(5, 3));
    ConeIntegrand f = ConeIntegrand::chamber(m);
    f.multiply(p).set_rates(rates);
    const double exact = exact_value(chamber_integral(f)).get_d();
    const auto r = to_doubles(rates);
    const double numeric =
        oracle::chamber_quadrature([&](const std::vector<double>& l) { return oracle::eval(p, l) * weight(r, l); }, m);
    INFO("trial " << trial << " poly " << to_canonical_string(p));
    CHECK(exact == Catch::Approx(numeric).epsilon(1e-7).margin(1e-10));
  }
}

TEST_CASE("orthant with |Delta| matches nested quadrature", "[integrate][oracle]") {
  oracle::Gen gen(23);
  for (int trial = 0; trial < 6; ++trial) {
    const int m = trial < 4 ? 2 : 3;
    const MultiPoly p = gen.poly(m, 3, 3);
    std::vector<Rational> rates;
    for (int i = 0; i < m; ++i) rates.push_back(gen.positive_rational(4, 2));
    ConeIntegrand f = ConeIntegrand::orthant(m);
    f.multiply(p).set_rates(rates).with_abs_vandermonde();
    const double exact = exact_value(orthant_integral(f)).get_d();
    const auto r = to_doubles(rates);
    const double numeric = oracle::sorted_orthant_quadrature(
        [&](const std::vector<double>& l) {
          double v = 1.0;
          for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) v *= std::abs(l[i] - l[j]);
          }
          return oracle::eval(p, l) * v * weight(r, l);
        },
        m);
    CHECK(exact == Catch::Approx(numeric).epsilon(1e-6).margin(1e-9));
  }
}

TEST_CASE("sign-split chambers agree across three routes", "[integrate][oracle]") {
  oracle::Gen gen(24);
  for (int m = 1; m <= 4; ++m) {
    for (int p = 0; p < m; ++p) {
      const MultiPoly poly = gen.poly(m, 3, 3) + Rational(1);
      ConeIntegrand f = ConeIntegrand::chamber(m, p);
      f.multiply(poly);
      for (auto& factor : vandermonde_factors(m)) f.multiply(std::move(factor));
      std::vector<Rational> rates(static_cast<std::size_t>(m), Rational(1));
      for (int i = p; i < m; ++i) rates[static_cast<std::size_t>(i)] = -gen.positive_rational(3, 1);
      f.set_rates(rates);
      const PiScaledRational direct = chamber_integral(f);
      INFO("m=" << m << " p=" << p);
      CHECK(chamber_integral(substitute_chain(f)) == direct);
      CHECK(orthant_integral(to_orthant(f)) == direct);
      CHECK(integrate(f) == direct);
    }
  }
}

TEST_CASE("sign-split chamber against quadrature", "[integrate][oracle]") {
  // l_1 > 0 > l_2 with l_2 = -t
  ConeIntegrand f = ConeIntegrand::chamber(2, 1);
  const MultiPoly poly = x(2, 0) * x(2, 0) - x(2, 0) * x(2, 1) * Rational(3) + Rational(1, 2);
  f.multiply(poly).set_rates({Rational(2), Rational(-3, 2)});
  const double exact = exact_value(chamber_integral(f)).get_d();
  const double numeric = oracle::orthant_quadrature(
      [&](const std::vector<double>& v) {
        const std::vector<double> l{v[0], -v[1]};
        return oracle::eval(poly, l) * std::exp(-2.0 * l[0] + 1.5 * l[1]);
      },
      2);
  CHECK(exact == Catch::Approx(numeric).epsilon(1e-8));
}

TEST_CASE("substitute_chain examples", "[integrate]") {
  ConeIntegrand id = ConeIntegrand::chamber(3);
  id.multiply(x(3, 0) + x(3, 2));
  CHECK(substitute_chain(id).poly() == id.poly());

  ConeIntegrand one = ConeIntegrand::chamber(1, 0);
  one.multiply(x(1, 0));
  // sum l -> sum l - 2 l_1
  CHECK(substitute_chain(one).poly() == -x(1, 0));

  ConeIntegrand two = ConeIntegrand::chamber(2, 1);
  const MultiPoly s = x(2, 0) + x(2, 1);
  two.multiply(s * s);
  const MultiPoly image = substitute_chain(two).poly();
  // (s - 3 l_2)^2 = s^2 - 6 s l_2 + 9 l_2^2 with s the mapped sum
  const MultiPoly mapped = x(2, 0) + x(2, 1);
  CHECK(image == mapped * mapped - mapped * x(2, 1) * Rational(6) + x(2, 1) * x(2, 1) * Rational(9));
  CHECK(image == (x(2, 0) - x(2, 1) * Rational(2)) * (x(2, 0) - x(2, 1) * Rational(2)));
}

TEST_CASE("delta collapse", "[integrate]") {
  ConeIntegrand f = ConeIntegrand::orthant(2);
  f.multiply(x(2, 0).pow(3) * x(2, 1)).set_rates({Rational(1), Rational(2)}).with_delta(0, 1);
  const ConeIntegrand c = delta_collapse(f);
  CHECK(c.nvars() == 1);
  CHECK(c.poly() == x(1, 0).pow(4));
  CHECK(c.rates() == std::vector<Rational>{Rational(3)});
  CHECK(exact_value(integrate(f)) == Rational(8, 81));

  ConeIntegrand none = ConeIntegrand::orthant(2);
  none.multiply(x(2, 0));
  CHECK(delta_collapse(none).poly() == none.poly());
}

TEST_CASE("delta collapse cancels against |Delta|", "[integrate]") {
  // l_1^2 prod l_j |Delta| / |l_1 - l_3| delta(l_1 - l_3), rates (1,1,2)
  ConeIntegrand f = ConeIntegrand::orthant(3);
  f.multiply(x(3, 0) * x(3, 0) * x(3, 0) * x(3, 1) * x(3, 2)).with_abs_vandermonde();
  f.set_rate(2, Rational(2)).multiply_abs_diff(0, 2, -1).with_delta(0, 2);
  // after collapse: l3^3 l2 l3 (l3 - l2)^2 e^{-l2 - 3 l3}
  ConeIntegrand reduced = ConeIntegrand::orthant(2);
  const MultiPoly y = x(2, 1);
  const MultiPoly z = x(2, 0);
  reduced.multiply(y.pow(4) * z * (y - z) * (y - z)).set_rates({Rational(1), Rational(3)});
  CHECK(integrate(f) == orthant_integral(reduced));

  ConeIntegrand vanish = ConeIntegrand::orthant(2);
  vanish.multiply(x(2, 0)).with_abs_vandermonde().with_delta(0, 1);
  CHECK(integrate(vanish).is_zero());

  ConeIntegrand pole = ConeIntegrand::orthant(2);
  pole.multiply(x(2, 0)).multiply_abs_diff(0, 1, -1).with_delta(0, 1);
  CHECK_THROWS_AS(integrate(pole), UncancelledSingularity);

  ConeIntegrand bare_pole = ConeIntegrand::orthant(2);
  bare_pole.multiply_abs_diff(0, 1, -1);
  CHECK_THROWS_AS(orthant_integral(bare_pole), UncancelledSingularity);
}

TEST_CASE("delta factors must be disjoint", "[integrate]") {
  ConeIntegrand f = ConeIntegrand::orthant(3);
  f.with_delta(0, 1);
  CHECK_THROWS(f.with_delta(1, 2));
}

TEST_CASE("symmetrisation identity", "[integrate][property]") {
  oracle::Gen gen(31);
  for (int trial = 0; trial < 12; ++trial) {
    const int m = 2 + trial % 3;
    const MultiPoly sym = gen.symmetric_poly(m, 4, 2);
    const Rational c = gen.positive_rational(4, 3);
    ConeIntegrand orth = ConeIntegrand::orthant(m);
    orth.multiply(sym).with_abs_vandermonde().set_rates(std::vector<Rational>(static_cast<std::size_t>(m), c));
    ConeIntegrand cham = ConeIntegrand::chamber(m);
    cham.multiply(sym).multiply(vandermonde(m)).set_rates(std::vector<Rational>(static_cast<std::size_t>(m), c));
    CHECK(orthant_integral(orth) == PiScaledRational(Rational(factorial(static_cast<unsigned long>(m)))) *
                                        chamber_integral(cham));
  }
}

TEST_CASE("homogeneous scaling", "[integrate][property]") {
  oracle::Gen gen(32);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = gen.integer(1, 3);
    const int d = gen.integer(0, 4);
    MultiPoly p(m);
    for (int t = 0; t < 3; ++t) {
      Exponents e;
      int left = d;
      for (int i = 0; i + 1 < m; ++i) {
        const int k = gen.integer(0, left);
        e = e.with(i, static_cast<unsigned>(k));
        left -= k;
      }
      e = e.with(m - 1, static_cast<unsigned>(left));
      p.add_term(e, gen.rational());
    }
    std::vector<Rational> rates;
    for (int i = 0; i < m; ++i) rates.push_back(gen.positive_rational());
    const Rational t = gen.positive_rational();
    std::vector<Rational> scaled;
    for (const auto& r : rates) scaled.push_back(r * t);
    const bool abs = trial % 2 == 0;
    ConeIntegrand a = ConeIntegrand::orthant(m);
    a.multiply(p).set_rates(rates);
    ConeIntegrand b = ConeIntegrand::orthant(m);
    b.multiply(p).set_rates(scaled);
    if (abs) {
      a.with_abs_vandermonde();
      b.with_abs_vandermonde();
    }
    const int degree = d + m + (abs ? m * (m - 1) / 2 : 0);
    CHECK(orthant_integral(b) == PiScaledRational(rational_pow(t, -degree)) * orthant_integral(a));
  }
}

TEST_CASE("antisymmetric integrand integrates to zero", "[integrate][property]") {
  // l1 l2/(l1 - l2) |Delta| e^{-sum l} summed over sectors, m = 3
  const int m = 3;
  MultiPoly body = x(m, 0) * x(m, 1) * (x(m, 0) - x(m, 2)) * (x(m, 1) - x(m, 2));
  const std::vector<Rational> rates(3, Rational(1));
  std::vector<int> order{0, 1, 2};
  Rational total(0);
  do {
    int inv = 0;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) inv += order[i] > order[j];
    }
    const Rational v = sector_integral(body, rates, order);
    total += inv % 2 == 0 ? v : Rational(-v);
  } while (std::next_permutation(order.begin(), order.end()));
  CHECK(total == 0);
}

TEST_CASE("dimension cap", "[integrate]") {
  ConeIntegrand f = ConeIntegrand::orthant(7);
  f.with_abs_vandermonde();
  ExactOptions opts;
  opts.max_dimension = 6;
  CHECK_THROWS_AS(orthant_integral(f, opts), DimensionCapExceeded);
}

TEST_CASE("results do not depend on the thread count", "[integrate]") {
  ConeIntegrand f = ConeIntegrand::orthant(4);
  f.multiply(x(4, 0) * x(4, 0) + x(4, 3)).with_abs_vandermonde().set_rate(3, Rational(2));
  ::setenv("CHAMBER_CALC_THREADS", "1", 1);
  const PiScaledRational one = orthant_integral(f);
  ::setenv("CHAMBER_CALC_THREADS", "4", 1);
  const PiScaledRational four = orthant_integral(f);
  ::unsetenv("CHAMBER_CALC_THREADS");
  CHECK(one == four);
}
