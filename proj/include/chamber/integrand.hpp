#pragma once

// Integrands of the form
//   prod(factors) * prod_{i<j} |l_i - l_j|^{e_ij} * exp(-<a, l>) * prod delta(l_e - l_k)
// over the positive orthant or an ordered chamber Y_p.

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "chamber/poly.hpp"
#include "chamber/scalar.hpp"

namespace chamber {

/// Unordered variable pair, stored with i < j.
struct IndexPair {
  int i = 0;
  int j = 0;
  static IndexPair of(int a, int b);
  auto operator<=>(const IndexPair&) const = default;
};

/// delta(l_eliminate - l_keep); collapsing it removes l_eliminate.
struct DeltaFactor {
  int eliminate = 0;
  int keep = 0;
};

enum class DomainKind { Orthant, Chamber };

/// Chamber with positive_count = p means Y_p:
/// l_1 > ... > l_p > 0 > l_{p+1} > ... > l_m.
struct Domain {
  DomainKind kind = DomainKind::Orthant;
  int positive_count = 0;

  static Domain orthant() { return {DomainKind::Orthant, 0}; }
  static Domain chamber(int p) { return {DomainKind::Chamber, p}; }
  bool operator==(const Domain&) const = default;
};

class ConeIntegrand {
 public:
  static ConeIntegrand orthant(int m);
  /// Y_p; p defaults to m (the fully positive chamber).
  static ConeIntegrand chamber(int m, int positive_count);
  static ConeIntegrand chamber(int m) { return chamber(m, m); }

  int nvars() const { return nvars_; }
  const std::vector<MultiPoly>& factors() const { return factors_; }
  /// Expanded product of all polynomial factors.
  MultiPoly poly() const;
  const std::vector<Rational>& rates() const { return rates_; }
  const std::map<IndexPair, int>& abs_diffs() const { return abs_diffs_; }
  const std::vector<DeltaFactor>& deltas() const { return deltas_; }
  const Domain& domain() const { return domain_; }

  /// True when the absolute part is exactly |Delta(l)|.
  bool abs_vandermonde() const;
  int abs_exponent(int i, int j) const;
  bool is_zero() const;

  ConeIntegrand& multiply(MultiPoly f);
  ConeIntegrand& scale(const Rational& s);
  ConeIntegrand& set_rates(std::vector<Rational> rates);
  ConeIntegrand& set_rate(int var, Rational rate);
  ConeIntegrand& with_abs_vandermonde();
  /// |Delta| over the listed variables only.
  ConeIntegrand& with_abs_vandermonde(std::span<const int> vars);
  /// Multiplies by |l_i - l_j|^power; power may be negative.
  ConeIntegrand& multiply_abs_diff(int i, int j, int power);
  ConeIntegrand& with_delta(int eliminate, int keep);
  ConeIntegrand& set_domain(Domain d);

  /// Throws InvalidArgument when the invariants do not hold.
  void validate() const;
  std::string debug_string() const;

 private:
  ConeIntegrand(int m, Domain d);

  int nvars_ = 0;
  std::vector<MultiPoly> factors_;
  std::vector<Rational> rates_;
  std::map<IndexPair, int> abs_diffs_;
  std::vector<DeltaFactor> deltas_;
  Domain domain_;
};

}  // namespace chamber
