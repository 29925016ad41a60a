#include "chamber/selberg.hpp"

#include "chamber/errors.hpp"

namespace chamber {

namespace {

bool is_half_integer_multiple(const Rational& x) { return x.get_den() == 1 || x.get_den() == 2; }

}  // namespace

void SelbergParams::validate() const {
  if (m < 1) throw UnsupportedParameters("Selberg dimension must be >= 1");
  if (sgn(alpha) <= 0) throw UnsupportedParameters("alpha must be positive, got " + alpha.get_str());
  if (gamma != Rational(1, 2) && gamma != Rational(1) && gamma != Rational(3, 2)) {
    throw UnsupportedParameters("exact mode supports gamma in {1/2, 1, 3/2}, got " + gamma.get_str());
  }
  const bool trivial = k == 0 && ell == 0;
  if (!trivial && !(0 <= k && k <= ell && ell < m)) {
    throw UnsupportedParameters("moment indices need 0 <= k <= ell < m; got k=" + std::to_string(k) +
                                ", ell=" + std::to_string(ell) + ", m=" + std::to_string(m));
  }
  if (!is_half_integer_multiple(alpha)) {
    throw UnsupportedParameters("Gamma(alpha + j*gamma) needs alpha in (1/2)Z, got " + alpha.get_str());
  }
}

Rational rising_factorial(const Rational& a, unsigned n) {
  Rational r(1);
  for (unsigned i = 0; i < n; ++i) r *= a + i;
  return r;
}

PiScaledRational gamma_of(const Rational& x) {
  if (sgn(x) <= 0 || !is_half_integer_multiple(x)) {
    throw UnsupportedParameters("Gamma argument " + x.get_str() + " is not a positive (half-)integer");
  }
  const Rational twice = x * 2;
  return gamma_half(static_cast<int>(twice.get_num().get_si()));
}

PiScaledRational selberg_exponential(int m, const Rational& alpha, const Rational& gamma) {
  SelbergParams{m, alpha, gamma, 0, 0}.validate();
  PiScaledRational r(1);
  const PiScaledRational denom = gamma_of(1 + gamma);
  for (int j = 0; j < m; ++j) {
    r = r * gamma_of(1 + gamma + j * gamma) * gamma_of(alpha + j * gamma) / denom;
  }
  return r;
}

PiScaledRational selberg_moment(const SelbergParams& p) {
  p.validate();
  const Rational g = p.gamma;
  const Rational first = rising_factorial((1 + p.alpha) / g + 2 * p.m - p.ell - p.k, static_cast<unsigned>(p.k));
  const Rational second = rising_factorial(p.alpha / g + p.m - p.ell, static_cast<unsigned>(p.ell));
  const Rational scale = rational_pow(g, p.k + p.ell) * first * second;
  return PiScaledRational(scale) * selberg_exponential(p.m, p.alpha, p.gamma);
}

PiScaledRational selberg_brute_force(const SelbergParams& p, const ExactOptions& opts) {
  p.validate();
  if (p.alpha.get_den() != 1) throw UnsupportedParameters("brute force needs integer alpha");
  const Rational twice_gamma = p.gamma * 2;
  if (twice_gamma.get_den() != 1) throw UnsupportedParameters("brute force needs 2*gamma integral");
  const int m = p.m;
  const int power = static_cast<int>(twice_gamma.get_num().get_si());
  ConeIntegrand f = ConeIntegrand::orthant(m);
  MultiPoly w = MultiPoly::constant(m, Rational(1));
  for (int i = 0; i < p.k; ++i) w *= MultiPoly::variable(m, i);
  for (int i = 0; i < p.ell; ++i) w *= MultiPoly::variable(m, i);
  const unsigned a1 = static_cast<unsigned>(p.alpha.get_num().get_si() - 1);
  for (int j = 0; j < m; ++j) w *= MultiPoly::variable(m, j).pow(a1);
  f.multiply(std::move(w));
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) f.multiply_abs_diff(i, j, power);
  }
  return orthant_integral(f, opts);
}

}  // namespace chamber
