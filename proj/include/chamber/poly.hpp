#pragma once

// Sparse multivariate polynomials with exact coefficients.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chamber/errors.hpp"
#include "chamber/scalar.hpp"

namespace chamber {

/// Exponent vector packed into one 64-bit word: 10 variables, 6 bits each.
/// Adding two vectors is a single integer addition plus a carry check.
class Exponents {
 public:
  static constexpr int kMaxVars = 10;
  static constexpr int kBits = 6;
  static constexpr unsigned kMaxExponent = (1u << kBits) - 1;

  constexpr Exponents() = default;
  explicit constexpr Exponents(std::uint64_t packed) : packed_(packed) {}

  static Exponents unit(int var, unsigned power = 1) { return Exponents().with(var, power); }
  static Exponents from(std::span<const unsigned> exps);

  unsigned operator[](int var) const {
    return static_cast<unsigned>((packed_ >> (kBits * var)) & kMaxExponent);
  }
  Exponents with(int var, unsigned power) const;
  unsigned total_degree() const;
  std::uint64_t packed() const { return packed_; }

  /// Throws InvalidArgument when some exponent would exceed kMaxExponent.
  friend Exponents operator+(Exponents a, Exponents b);
  friend bool operator==(Exponents a, Exponents b) { return a.packed_ == b.packed_; }

  /// Lexicographic order on (e_0, e_1, ...); used for canonical output only.
  friend bool lex_less(Exponents a, Exponents b);

 private:
  std::uint64_t packed_ = 0;
};

struct ExponentsHash {
  std::size_t operator()(Exponents e) const noexcept {
    std::uint64_t z = e.packed() + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return static_cast<std::size_t>(z ^ (z >> 31));
  }
};

inline void fused_add_product(BigInt& acc, const BigInt& a, const BigInt& b) {
  mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}
inline void fused_add_product(Rational& acc, const Rational& a, const Rational& b) { acc += a * b; }

template <class C>
class BasicPoly {
 public:
  using Coeff = C;
  using TermMap = std::unordered_map<Exponents, C, ExponentsHash>;

  BasicPoly() = default;
  explicit BasicPoly(int nvars) : nvars_(nvars) {
    if (nvars < 0 || nvars > Exponents::kMaxVars) {
      throw InvalidArgument("polynomial variable count out of range: " + std::to_string(nvars));
    }
  }

  static BasicPoly constant(int nvars, const C& c) {
    BasicPoly p(nvars);
    p.add_term(Exponents(), c);
    return p;
  }
  static BasicPoly variable(int nvars, int var) {
    BasicPoly p(nvars);
    p.add_term(Exponents::unit(var), C(1));
    return p;
  }
  /// sum_i coeffs[i] * x_i
  static BasicPoly linear(std::span<const C> coeffs) {
    BasicPoly p(static_cast<int>(coeffs.size()));
    for (int i = 0; i < p.nvars_; ++i) p.add_term(Exponents::unit(i), coeffs[i]);
    return p;
  }

  int nvars() const { return nvars_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  C coefficient(Exponents e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? C(0) : it->second;
  }

  void add_term(Exponents e, const C& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  void reserve(std::size_t n) { terms_.reserve(n); }

  int degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.total_degree());
    return is_zero() ? -1 : static_cast<int>(d);
  }
  unsigned degree_in(int var) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  BasicPoly& operator+=(const BasicPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  BasicPoly& operator-=(const BasicPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  BasicPoly& operator*=(const C& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  BasicPoly& operator*=(const BasicPoly& o) { return *this = *this * o; }

  BasicPoly& operator+=(const C& s) {
    add_term(Exponents(), s);
    return *this;
  }
  BasicPoly& operator-=(const C& s) {
    add_term(Exponents(), -s);
    return *this;
  }
  friend BasicPoly operator+(BasicPoly a, const C& s) { return a += s; }
  friend BasicPoly operator+(const C& s, BasicPoly a) { return a += s; }
  friend BasicPoly operator-(BasicPoly a, const C& s) { return a -= s; }
  friend BasicPoly operator-(const C& s, BasicPoly a) { return -a + s; }
  friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
  friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
  friend BasicPoly operator-(BasicPoly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend BasicPoly operator*(BasicPoly a, const C& s) { return a *= s; }
  friend BasicPoly operator*(const C& s, BasicPoly a) { return a *= s; }
  friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
    a.check_compatible(b);
    BasicPoly r(a.nvars_);
    r.terms_.reserve(std::max(a.size(), b.size()) * 2);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        auto [it, inserted] = r.terms_.try_emplace(ea + eb, 0);
        fused_add_product(it->second, ca, cb);
      }
    }
    std::erase_if(r.terms_, [](const auto& kv) { return sgn(kv.second) == 0; });
    return r;
  }
  friend bool operator==(const BasicPoly& a, const BasicPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  BasicPoly pow(unsigned k) const {
    BasicPoly r = constant(nvars_, C(1));
    BasicPoly base = *this;
    while (k > 0) {
      if (k & 1u) r = r * base;
      k >>= 1;
      if (k > 0) base = base * base;
    }
    return r;
  }

  /// Exact evaluation at a rational point.
  Rational evaluate(std::span<const Rational> x) const {
    Rational total(0);
    for (const auto& [e, c] : terms_) {
      Rational t(c);
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] > 0) t *= rational_pow(x[i], e[i]);
      }
      total += t;
    }
    return total;
  }

  /// Renames variable i to variable image[i]; image must be a permutation.
  BasicPoly permuted(std::span<const int> image) const {
    BasicPoly r(nvars_);
    r.terms_.reserve(size());
    for (const auto& [e, c] : terms_) {
      Exponents f;
      for (int i = 0; i < nvars_; ++i) f = f.with(image[i], e[i]);
      r.terms_.emplace(f, c);
    }
    return r;
  }

  /// Invariance under every permutation of the listed variables.
  bool is_symmetric_in(std::span<const int> vars) const {
    if (vars.size() < 2) return true;
    std::vector<int> image(nvars_);
    for (std::size_t k = 0; k + 1 < vars.size(); ++k) {
      for (int i = 0; i < nvars_; ++i) image[i] = i;
      std::swap(image[vars[k]], image[vars[k + 1]]);
      if (!(permuted(image) == *this)) return false;
    }
    return true;
  }

  /// Terms in lexicographic exponent order.
  std::vector<std::pair<Exponents, C>> sorted_terms() const {
    std::vector<std::pair<Exponents, C>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
    return out;
  }

 private:
  void check_compatible(const BasicPoly& o) const {
    if (nvars_ != o.nvars_) {
      throw InvalidArgument("polynomial variable counts differ: " + std::to_string(nvars_) + " vs " +
                            std::to_string(o.nvars_));
    }
  }

  int nvars_ = 0;
  TermMap terms_;
};

using MultiPoly = BasicPoly<Rational>;
using IntPoly = BasicPoly<BigInt>;

/// Composition p(images[0], ..., images[n-1]); all images share one variable count.
MultiPoly substitute(const MultiPoly& p, std::span<const MultiPoly> images);

/// Product of all factors, folded in order of increasing term count.
MultiPoly product(std::vector<MultiPoly> factors, int nvars);
IntPoly product(std::vector<IntPoly> factors, int nvars);

/// p = num / den with num integral and den > 0 minimal.
std::pair<IntPoly, BigInt> clear_denominators(const MultiPoly& p);

/// Delta(x) = prod_{i<j} (x_i - x_j), expanded.
MultiPoly vandermonde(int m);
/// The linear factors x_i - x_j (i<j) of the Vandermonde, unexpanded.
std::vector<MultiPoly> vandermonde_factors(int m);

/// Removes a variable that does not occur in p, shifting later indices down.
MultiPoly drop_variable(const MultiPoly& p, int var);

/// Terms sorted by exponent vector, coefficients as "p/q", e.g. "3/4*l1^2*l2 - l3".
std::string to_canonical_string(const MultiPoly& p, const std::string& var = "l");

}  // namespace chamber
