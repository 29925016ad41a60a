#include "chamber/scalar.hpp"

#include <cmath>
#include <numbers>

#include "chamber/errors.hpp"

namespace chamber {

Rational ratio(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw InvalidArgument("not a rational number: '" + text + "'");
  }
  if (q.get_den() == 0) throw InvalidArgument("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational rational_pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (sgn(base) == 0) throw InvalidArgument("zero to a negative power");
    return Rational(1) / rational_pow(base, -exponent);
  }
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

PiScaledRational::PiScaledRational(Rational coeff, int pi_half_power)
    : coeff_(std::move(coeff)), pi_half_power_(pi_half_power) {
  canonicalize();
}

PiScaledRational PiScaledRational::pi_power(int pi_half_power) {
  return PiScaledRational(Rational(1), pi_half_power);
}

void PiScaledRational::canonicalize() {
  coeff_.canonicalize();
  if (sgn(coeff_) == 0) pi_half_power_ = 0;
}

double PiScaledRational::to_double() const {
  if (is_zero()) return 0.0;
  // mpq_get_d truncates but stays within one ulp even for very long operands.
  const double q = coeff_.get_d();
  return q * std::pow(std::numbers::pi, 0.5 * pi_half_power_);
}

std::string PiScaledRational::to_string() const {
  std::string s = coeff_.get_str();
  if (pi_half_power_ != 0) s += "*pi^(" + std::to_string(pi_half_power_) + "/2)";
  return s;
}

PiScaledRational PiScaledRational::operator-() const {
  return PiScaledRational(-coeff_, pi_half_power_);
}

PiScaledRational operator*(const PiScaledRational& a, const PiScaledRational& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return PiScaledRational(a.coeff_ * b.coeff_, a.pi_half_power_ + b.pi_half_power_);
}

PiScaledRational operator/(const PiScaledRational& a, const PiScaledRational& b) {
  if (b.is_zero()) throw InvalidArgument("division by zero");
  if (a.is_zero()) return {};
  return PiScaledRational(a.coeff_ / b.coeff_, a.pi_half_power_ - b.pi_half_power_);
}

PiScaledRational operator+(const PiScaledRational& a, const PiScaledRational& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.pi_half_power_ != b.pi_half_power_) {
    throw MixedPiPower("cannot add " + a.to_string() + " and " + b.to_string());
  }
  return PiScaledRational(a.coeff_ + b.coeff_, a.pi_half_power_);
}

PiScaledRational operator-(const PiScaledRational& a, const PiScaledRational& b) { return a + (-b); }

PiScaledRational mul(const PiScaledRational& a, const PiScaledRational& b) { return a * b; }
PiScaledRational add(const PiScaledRational& a, const PiScaledRational& b) { return a + b; }

PiScaledRational gamma_half(int n) {
  if (n < 1) throw InvalidArgument("gamma_half needs n >= 1, got " + std::to_string(n));
  if (n % 2 == 0) return PiScaledRational(Rational(factorial(static_cast<unsigned long>(n / 2 - 1))));
  // Gamma(n/2) = (n-2)!! / 2^((n-1)/2) * sqrt(pi) for odd n.
  BigInt dfact;
  mpz_2fac_ui(dfact.get_mpz_t(), static_cast<unsigned long>(n >= 2 ? n - 2 : 0));
  BigInt pow2;
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>((n - 1) / 2));
  return PiScaledRational(ratio(dfact, pow2), 1);
}

}  // namespace chamber
