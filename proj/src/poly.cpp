#include "chamber/poly.hpp"

#include <algorithm>
#include <sstream>

namespace chamber {

namespace {

constexpr std::uint64_t carry_mask() {
  std::uint64_t mask = 0;
  for (int v = 1; v <= Exponents::kMaxVars; ++v) mask |= std::uint64_t{1} << (Exponents::kBits * v);
  return mask;
}

}  // namespace

Exponents Exponents::from(std::span<const unsigned> exps) {
  if (exps.size() > static_cast<std::size_t>(kMaxVars)) throw InvalidArgument("too many variables");
  Exponents e;
  for (std::size_t i = 0; i < exps.size(); ++i) e = e.with(static_cast<int>(i), exps[i]);
  return e;
}

Exponents Exponents::with(int var, unsigned power) const {
  if (var < 0 || var >= kMaxVars) throw InvalidArgument("variable index out of range");
  if (power > kMaxExponent) throw InvalidArgument("exponent " + std::to_string(power) + " too large");
  const int shift = kBits * var;
  const std::uint64_t cleared = packed_ & ~(std::uint64_t{kMaxExponent} << shift);
  return Exponents(cleared | (std::uint64_t{power} << shift));
}

unsigned Exponents::total_degree() const {
  unsigned d = 0;
  for (int i = 0; i < kMaxVars; ++i) d += (*this)[i];
  return d;
}

Exponents operator+(Exponents a, Exponents b) {
  const std::uint64_t r = a.packed_ + b.packed_;
  if (((a.packed_ ^ b.packed_ ^ r) & carry_mask()) != 0) {
    throw InvalidArgument("monomial exponent overflow (max " + std::to_string(Exponents::kMaxExponent) + ")");
  }
  return Exponents(r);
}

bool lex_less(Exponents a, Exponents b) {
  for (int i = 0; i < Exponents::kMaxVars; ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

MultiPoly substitute(const MultiPoly& p, std::span<const MultiPoly> images) {
  if (images.size() != static_cast<std::size_t>(p.nvars())) {
    throw InvalidArgument("substitute: need one image per variable");
  }
  const int out_vars = images.empty() ? 0 : images[0].nvars();
  for (const auto& im : images) {
    if (im.nvars() != out_vars) throw InvalidArgument("substitute: images disagree on variable count");
  }
  // powers[i][k] = images[i]^k, filled lazily
  std::vector<std::vector<MultiPoly>> powers(images.size());
  auto power_of = [&](int i, unsigned k) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MultiPoly::constant(out_vars, Rational(1)));
    while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
    return cache[k];
  };
  MultiPoly out(out_vars);
  for (const auto& [e, c] : p.terms()) {
    MultiPoly term = MultiPoly::constant(out_vars, c);
    for (int i = 0; i < p.nvars(); ++i) {
      if (e[i] > 0) term = term * power_of(i, e[i]);
    }
    out += term;
  }
  return out;
}

namespace {

template <class P>
P product_impl(std::vector<P> factors, int nvars) {
  P acc = P::constant(nvars, typename P::Coeff(1));
  // The accumulator only ever meets the smallest remaining factor.
  std::stable_sort(factors.begin(), factors.end(), [](const P& a, const P& b) { return a.size() < b.size(); });
  for (const auto& f : factors) {
    if (f.nvars() != nvars) throw InvalidArgument("product: factor has the wrong variable count");
    acc = acc * f;
    if (acc.is_zero()) break;
  }
  return acc;
}

}  // namespace

MultiPoly product(std::vector<MultiPoly> factors, int nvars) { return product_impl(std::move(factors), nvars); }
IntPoly product(std::vector<IntPoly> factors, int nvars) { return product_impl(std::move(factors), nvars); }

std::pair<IntPoly, BigInt> clear_denominators(const MultiPoly& p) {
  BigInt den(1);
  for (const auto& [e, c] : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  IntPoly out(p.nvars());
  out.reserve(p.size());
  for (const auto& [e, c] : p.terms()) {
    BigInt n = c.get_num() * (den / c.get_den());
    out.add_term(e, n);
  }
  return {std::move(out), std::move(den)};
}

std::vector<MultiPoly> vandermonde_factors(int m) {
  std::vector<MultiPoly> out;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) out.push_back(MultiPoly::variable(m, i) - MultiPoly::variable(m, j));
  }
  return out;
}

MultiPoly vandermonde(int m) {
  if (m < 1) throw InvalidArgument("vandermonde needs m >= 1");
  MultiPoly r = MultiPoly::constant(m, Rational(1));
  for (const auto& f : vandermonde_factors(m)) r = r * f;
  return r;
}

MultiPoly drop_variable(const MultiPoly& p, int var) {
  if (p.nvars() == 0) throw InvalidArgument("drop_variable on a constant-only ring");
  MultiPoly out(p.nvars() - 1);
  for (const auto& [e, c] : p.terms()) {
    if (e[var] != 0) throw InvalidArgument("drop_variable: variable still occurs");
    Exponents f;
    for (int i = 0, k = 0; i < p.nvars(); ++i) {
      if (i == var) continue;
      f = f.with(k++, e[i]);
    }
    out.add_term(f, c);
  }
  return out;
}

std::string to_canonical_string(const MultiPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.sorted_terms()) {
    const bool negative = sgn(c) < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || e.total_degree() == 0) {
      os << mag.get_str();
      wrote = true;
    }
    for (int i = 0; i < p.nvars(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << var << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace chamber
