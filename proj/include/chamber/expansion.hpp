#pragma once

// Three-term model of the expected number of critical points
//   n(m) c1(L)^m N^m + [pi^m b1/(m-1)!] c1(M)c1(L)^{m-1} N^{m-1}
//   + [b2 Calabi + b2' c1(M)^2 c1(L)^{m-2} + b2'' c2(M) c1(L)^{m-2}] N^{m-2}
// treated as an exact polynomial in N (no remainder estimate).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chamber/scalar.hpp"

namespace chamber {

struct CoefficientTable {
  std::optional<Rational> n_of_m;
  std::optional<double> beta1;
  /// From the beta engine.
  std::optional<PiScaledRational> beta2;
  std::optional<double> beta2_prime_top;
  std::optional<double> beta2_dblprime_top;
};

struct ExpansionInput {
  int m = 2;
  std::uint64_t N = 1;
  Rational c1L_m{0};
  Rational c1M_c1L{0};
  Rational c1M2_c1L{0};
  Rational c2M_c1L{0};
  double calabi = 0.0;
  CoefficientTable coeffs;

  /// m >= 1, N >= 1, calabi >= 0 and finite. Throws SchemaError. The
  /// n(m) bounds are checked separately by check_leading_bounds.
  void validate() const;
};

/// Throws SchemaError unless 2(m+1)/(m+2) < n(m) < (2m+3)/3.
void check_leading_bounds(int m, const Rational& n_of_m);

struct ExpansionValue {
  double leading = 0.0;
  double subleading = 0.0;
  double third = 0.0;
  double total = 0.0;
  /// Coefficients that defaulted to zero.
  std::vector<std::string> warnings;
};

/// Throws MissingCoefficient when n(m) or beta2 is absent; b1, b2', b2''
/// default to zero with a warning.
ExpansionValue evaluate_terms(const ExpansionInput& in);
double evaluate(const ExpansionInput& in);
/// The model with N replaced by a real variable.
double evaluate_at(const ExpansionInput& in, double N);

enum class Winner { A, B, Tie };
std::string to_string(Winner w);

struct Comparison {
  Winner winner = Winner::Tie;
  /// Smallest N from which the ordering holds; empty when it holds for every N >= 1.
  std::optional<std::uint64_t> crossover_N;
  /// False when the ordering is still changing at n_max.
  bool resolved = true;
};

/// Throws IncomparableInputs when m differs.
Comparison compare_metrics(const ExpansionInput& a, const ExpansionInput& b, std::uint64_t n_max = 1'000'000);

}  // namespace chamber
