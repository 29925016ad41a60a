#pragma once

// Exact scalars of the form q * pi^(k/2).
//
// Every integral in this library is a rational number; the normalising
// constants carry powers of pi, and Gamma at half-integers carries sqrt(pi).
// PiScaledRational keeps both exact so that final coefficients come out as a
// big rational times pi^(-m) with no rounding anywhere in the pipeline.

#include <gmpxx.h>

#include <string>

namespace chamber {

using Rational = mpq_class;
using BigInt = mpz_class;

/// num/den in lowest terms. mpq_class(num, den) alone does not reduce.
Rational ratio(const BigInt& num, const BigInt& den);
/// Parses "p", "p/q" or "-p/q" into a canonical rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
Rational rational_pow(const Rational& base, long exponent);
BigInt factorial(unsigned long n);

class PiScaledRational {
 public:
  PiScaledRational() = default;
  PiScaledRational(Rational coeff, int pi_half_power = 0);  // NOLINT(google-explicit-constructor)
  PiScaledRational(long value) : PiScaledRational(Rational(value)) {}  // NOLINT

  /// pi^(k/2) with unit coefficient.
  static PiScaledRational pi_power(int pi_half_power);

  const Rational& coeff() const { return coeff_; }
  int pi_half_power() const { return pi_half_power_; }

  bool is_zero() const { return sgn(coeff_) == 0; }
  int sign() const { return sgn(coeff_); }
  /// The value as a double; only meant for reporting.
  double to_double() const;
  std::string to_string() const;

  PiScaledRational operator-() const;
  friend PiScaledRational operator*(const PiScaledRational& a, const PiScaledRational& b);
  friend PiScaledRational operator/(const PiScaledRational& a, const PiScaledRational& b);
  /// Throws MixedPiPower unless both operands share a pi power (zero is neutral).
  friend PiScaledRational operator+(const PiScaledRational& a, const PiScaledRational& b);
  friend PiScaledRational operator-(const PiScaledRational& a, const PiScaledRational& b);
  PiScaledRational& operator+=(const PiScaledRational& b) { return *this = *this + b; }
  PiScaledRational& operator-=(const PiScaledRational& b) { return *this = *this - b; }
  PiScaledRational& operator*=(const PiScaledRational& b) { return *this = *this * b; }

  friend bool operator==(const PiScaledRational& a, const PiScaledRational& b) {
    return a.pi_half_power_ == b.pi_half_power_ && a.coeff_ == b.coeff_;
  }

 private:
  void canonicalize();

  Rational coeff_{0};
  int pi_half_power_ = 0;
};

PiScaledRational mul(const PiScaledRational& a, const PiScaledRational& b);
PiScaledRational add(const PiScaledRational& a, const PiScaledRational& b);

/// Gamma(n/2) for n >= 1, exact.
PiScaledRational gamma_half(int n);

}  // namespace chamber
