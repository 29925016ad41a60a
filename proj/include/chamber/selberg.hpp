#pragma once

// Exponential Selberg integral
//   int_{R_+^m} |Delta|^{2g} prod l_j^{a-1} e^{-l_j} dl
// and its moments against (prod_{i<=k} l_i)(prod_{i<=ell} l_i).

#include "chamber/integrate.hpp"
#include "chamber/scalar.hpp"

namespace chamber {

struct SelbergParams {
  int m = 1;
  Rational alpha{2};
  Rational gamma{1, 2};
  int k = 0;
  int ell = 0;

  /// Throws UnsupportedParameters outside 0 <= k <= ell < m, or when a
  /// Gamma argument is not a positive integer or half-integer.
  void validate() const;
};

/// (a)_n = a (a+1) ... (a+n-1).
Rational rising_factorial(const Rational& a, unsigned n);

/// Gamma(x) for x a positive integer or half-integer.
PiScaledRational gamma_of(const Rational& x);

/// prod_{j<m} Gamma(1+g+jg) Gamma(a+jg) / Gamma(1+g).
PiScaledRational selberg_exponential(int m, const Rational& alpha, const Rational& gamma);

/// g^{k+ell} ((1+a)/g + 2m - ell - k)_k (a/g + m - ell)_ell * selberg_exponential.
PiScaledRational selberg_moment(const SelbergParams& p);

/// The same moment by sector integration. Needs integer alpha >= 1 and
/// 2*gamma a positive integer.
PiScaledRational selberg_brute_force(const SelbergParams& p, const ExactOptions& opts = {});

}  // namespace chamber
