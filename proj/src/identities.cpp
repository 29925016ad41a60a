#include <algorithm>
#include <numeric>

#include "chamber/beta.hpp"
#include "chamber/errors.hpp"
#include "chamber/parallel.hpp"

namespace chamber {

namespace {

// coeff * numerator / prod (l_a - l_b), integrated against
// |Delta| prod l_j e^{-sum l_j - l_m} on the orthant.
struct RationalTerm {
  Rational coeff;
  MultiPoly numerator;
  std::vector<std::pair<int, int>> denominator;
};

struct Side {
  std::vector<RationalTerm> terms;
  // multiple of the delta term l_1^2 delta(l_1 - l_m)/|l_1 - l_m|
  Rational delta_coeff{0};
};

MultiPoly delta_over(int m, const std::vector<std::pair<int, int>>& denominator, Rational& sign) {
  std::vector<MultiPoly> kept;
  std::vector<IndexPair> dropped;
  for (auto [a, b] : denominator) {
    if (a == b) throw InvalidArgument("degenerate denominator pair");
    if (a > b) sign = -sign;
    const IndexPair pair = IndexPair::of(a, b);
    if (std::find(dropped.begin(), dropped.end(), pair) != dropped.end()) {
      throw UncancelledSingularity("repeated denominator pair is not cancelled by |Delta|");
    }
    dropped.push_back(pair);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (std::find(dropped.begin(), dropped.end(), IndexPair::of(i, j)) != dropped.end()) continue;
      kept.push_back(MultiPoly::variable(m, i) - MultiPoly::variable(m, j));
    }
  }
  return product(std::move(kept), m);
}

int inversion_sign(const std::vector<int>& order) {
  int inversions = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) inversions += order[i] > order[j] ? 1 : 0;
  }
  return inversions % 2 == 0 ? 1 : -1;
}

// On the sector ordered by sigma, |Delta| = sgn(sigma) Delta, so each term
// becomes a polynomial there.
Rational integrate_terms(int m, const std::vector<RationalTerm>& terms) {
  if (terms.empty()) return Rational(0);
  MultiPoly prod_l = MultiPoly::constant(m, Rational(1));
  for (int i = 0; i < m; ++i) prod_l *= MultiPoly::variable(m, i);
  MultiPoly integrand(m);
  for (const auto& t : terms) {
    Rational sign(1);
    MultiPoly body = delta_over(m, t.denominator, sign);
    integrand += t.numerator * body * (t.coeff * sign);
  }
  integrand = integrand * prod_l;
  std::vector<Rational> rates(static_cast<std::size_t>(m), Rational(1));
  rates.back() = 2;

  std::vector<std::vector<int>> sectors;
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  do {
    sectors.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));

  const auto parts = parallel_map(sectors.size(), [&](std::size_t s) -> Rational {
    const Rational v = sector_integral(integrand, rates, sectors[s]);
    return inversion_sign(sectors[s]) == 1 ? v : Rational(-v);
  });
  Rational total(0);
  for (const auto& v : parts) total += v;
  return total;
}

PiScaledRational evaluate(int m, const Side& side, const ExactOptions& opts) {
  PiScaledRational v(integrate_terms(m, side.terms));
  if (sgn(side.delta_coeff) != 0) v += PiScaledRational(side.delta_coeff) * prime_t2(m, opts);
  return v;
}

std::pair<Side, Side> sides(Identity id, int m) {
  const int last = m - 1;
  const MultiPoly one = MultiPoly::constant(m, Rational(1));
  const MultiPoly l1 = MultiPoly::variable(m, 0);
  const MultiPoly l2 = m >= 2 ? MultiPoly::variable(m, 1) : one;
  const MultiPoly lm = MultiPoly::variable(m, last);
  const std::pair<int, int> d1m{0, last};
  const std::pair<int, int> d12{0, 1};
  const std::pair<int, int> d2m{1, last};
  const Rational m1(m + 1);
  const Rational m2(m + 2);

  Side lhs;
  Side rhs;
  switch (id) {
    case Identity::H:
      lhs.terms = {{1, l1, {}}};
      rhs.terms = {{m2 / 2, one, {}}, {1, l1, {d1m}}};
      break;
    case Identity::J:
      lhs.terms = {{1, l1 * l1, {}}};
      rhs.terms = {{m1 * m2 / 2, one, {}}, {m1, l1, {d1m}}, {1, l1 * l1, {d1m}}};
      break;
    case Identity::L:
      lhs.terms = {{1, l1 * l1, {d1m}}};
      rhs.terms = {{3, l1, {d1m}}};
      if (m > 2) rhs.terms.push_back({Rational(m - 2), l1 * l1, {d12, d1m}});
      rhs.delta_coeff = 2;
      break;
    case Identity::I:
      lhs.terms = {{1, l1 * l2, {}}};
      rhs.terms = {{m1 * m2 / 4, one, {}}, {m1 / 2, l1, {d1m}}, {1, l1 * l2, {d1m}}};
      break;
    case Identity::K:
      lhs.terms = {{1, l1 * l2, {d1m}}};
      rhs.terms = {{m1 / 2, l1, {d1m}}, {1, l1 * l2, {d1m, d2m}}, {-1, l1 * l2, {d12, d1m}}};
      break;
    case Identity::K1:
      lhs.terms = {{1, l1 * l2 * l2 + l1 * l1 * l2 - l1 * l2 * lm * Rational(2), {d12, d1m, d2m}}};
      break;
  }
  return {std::move(lhs), std::move(rhs)};
}

}  // namespace

Identity parse_identity(const std::string& name) {
  if (name == "H") return Identity::H;
  if (name == "J") return Identity::J;
  if (name == "L") return Identity::L;
  if (name == "I") return Identity::I;
  if (name == "K") return Identity::K;
  if (name == "K1") return Identity::K1;
  throw InvalidArgument("unknown identity '" + name + "' (expected H, J, L, I, K or K1)");
}

std::string to_string(Identity id) {
  switch (id) {
    case Identity::H:
      return "H";
    case Identity::J:
      return "J";
    case Identity::L:
      return "L";
    case Identity::I:
      return "I";
    case Identity::K:
      return "K";
    case Identity::K1:
      return "K1";
  }
  return "?";
}

int identity_min_m(Identity id) {
  switch (id) {
    case Identity::H:
    case Identity::J:
    case Identity::L:
      return 2;
    case Identity::I:
    case Identity::K:
    case Identity::K1:
      return 3;
  }
  return 3;
}

IdentityResult verify_identity(Identity id, int m, const ExactOptions& opts) {
  if (m < identity_min_m(id)) {
    throw UnsupportedParameters("identity " + to_string(id) + " needs m >= " + std::to_string(identity_min_m(id)));
  }
  if (m > opts.max_dimension) {
    throw DimensionCapExceeded("identity check at m=" + std::to_string(m) + " exceeds max_dimension " +
                               std::to_string(opts.max_dimension));
  }
  const auto [lhs_side, rhs_side] = sides(id, m);
  IdentityResult r{id, m, evaluate(m, lhs_side, opts), evaluate(m, rhs_side, opts), false};
  r.equal = r.lhs == r.rhs;
  if (!r.equal) {
    throw IdentityFailure("identity " + to_string(id) + " fails at m=" + std::to_string(m), r.lhs.to_string(),
                          r.rhs.to_string());
  }
  return r;
}

}  // namespace chamber
