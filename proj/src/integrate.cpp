#include "chamber/integrate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "chamber/errors.hpp"
#include "chamber/parallel.hpp"

namespace chamber {

namespace {

// Moments of monomials over a product of ordered chains. A chain lists its
// variables from largest to smallest; a negated chain runs over -l instead
// of l. A free orthant coordinate is a chain of length one.
//
// For a chain v_0 > v_1 > ... > v_{k-1} > 0 with cumulative rates
// B_t = b_0 + ... + b_t the innermost integral is
//   int_{v_1}^inf v^a e^{-b_0 v} dv = e^{-b_0 v_1} sum_j a!/j! v_1^j / b_0^{a-j+1}
// which folds into the next level with rate B_1, and so on.
class MomentTable {
 public:
  struct Chain {
    std::vector<int> vars;
    bool negated = false;
  };

  MomentTable(std::vector<Chain> chains, std::span<const Rational> rates) {
    for (auto& c : chains) {
      if (c.vars.empty()) continue;
      ChainState s;
      Rational cumulative(0);
      for (int v : c.vars) {
        cumulative += c.negated ? Rational(-rates[static_cast<std::size_t>(v)]) : rates[static_cast<std::size_t>(v)];
        if (sgn(cumulative) <= 0) {
          throw DivergentIntegral("effective rate " + cumulative.get_str() + " <= 0 at l" + std::to_string(v + 1));
        }
        s.inv_pows.push_back({Rational(1), Rational(1) / cumulative});
      }
      s.memo.resize(c.vars.size());
      s.chain = std::move(c);
      chains_.push_back(std::move(s));
    }
  }

  Rational operator()(Exponents e) {
    Rational r(1);
    for (auto& s : chains_) {
      Exponents key;
      unsigned total = 0;
      for (std::size_t t = 0; t < s.chain.vars.size(); ++t) {
        const unsigned et = e[s.chain.vars[t]];
        key = key.with(static_cast<int>(t), et);
        total += et;
      }
      r *= value(s, 0, key);
      if (s.chain.negated && (total & 1u)) r = -r;
    }
    return r;
  }

 private:
  struct ChainState {
    Chain chain;
    std::vector<std::vector<Rational>> inv_pows;
    std::vector<std::unordered_map<Exponents, Rational, ExponentsHash>> memo;
  };

  const Rational& inv_pow(ChainState& s, std::size_t t, unsigned n) {
    auto& pw = s.inv_pows[t];
    while (pw.size() <= n) pw.push_back(pw.back() * pw[1]);
    return pw[n];
  }

  const Rational& inv_fact(unsigned n) {
    while (inv_facts_.size() <= n) inv_facts_.push_back(inv_facts_.back() / Rational(inv_facts_.size()));
    return inv_facts_[n];
  }

  Rational value(ChainState& s, std::size_t t, Exponents key) {
    auto& memo = s.memo[t];
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const unsigned a = key[static_cast<int>(t)];
    Rational r(0);
    if (t + 1 == s.chain.vars.size()) {
      r = inv_pow(s, t, a + 1) / inv_fact(a);
    } else {
      const Exponents base = key.with(static_cast<int>(t), 0);
      const unsigned next = key[static_cast<int>(t) + 1];
      for (unsigned j = 0; j <= a; ++j) {
        const Rational inner = value(s, t + 1, base.with(static_cast<int>(t) + 1, next + j));
        r += inv_pow(s, t, a - j + 1) * inv_fact(j) * inner;
      }
      r /= inv_fact(a);
    }
    memo.emplace(key, r);
    return r;
  }

  std::vector<ChainState> chains_;
  std::vector<Rational> inv_facts_{Rational(1)};
};

Rational integrate_terms(const MultiPoly& p, MomentTable& table) {
  auto [num, den] = clear_denominators(p);
  Rational acc(0);
  for (const auto& [e, c] : num.terms()) acc += Rational(c) * table(e);
  return acc / den;
}

Rational integrate_terms(const IntPoly& p, MomentTable& table) {
  Rational acc(0);
  for (const auto& [e, c] : p.terms()) acc += Rational(c) * table(e);
  return acc;
}

MultiPoly linear_diff(int nvars, int i, int j) { return MultiPoly::variable(nvars, i) - MultiPoly::variable(nvars, j); }

// On a chamber l_0 > ... > l_{m-1} every |l_i - l_j| with i < j equals l_i - l_j.
std::vector<MultiPoly> resolved_factors(const ConeIntegrand& f) {
  std::vector<MultiPoly> out = f.factors();
  for (const auto& [pair, e] : f.abs_diffs()) {
    if (e < 0) {
      throw UncancelledSingularity("negative power of |l" + std::to_string(pair.i + 1) + "-l" +
                                   std::to_string(pair.j + 1) + "|");
    }
    out.push_back(linear_diff(f.nvars(), pair.i, pair.j).pow(static_cast<unsigned>(e)));
  }
  return out;
}

void require_no_deltas(const ConeIntegrand& f) {
  if (!f.deltas().empty()) throw InvalidArgument("delta factors must be collapsed before integration");
}

ConeIntegrand apply_linear_map(const ConeIntegrand& f, const std::vector<MultiPoly>& images, Domain target) {
  require_no_deltas(f);
  if (f.domain().kind != DomainKind::Chamber) throw InvalidArgument("chamber integrand expected");
  const int m = f.nvars();
  ConeIntegrand out = target.kind == DomainKind::Orthant ? ConeIntegrand::orthant(m) : ConeIntegrand::chamber(m);
  for (const auto& factor : resolved_factors(f)) out.multiply(substitute(factor, images));
  std::vector<Rational> rates(static_cast<std::size_t>(m), Rational(0));
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) rates[k] += f.rates()[i] * images[i].coefficient(Exponents::unit(k));
  }
  out.set_rates(std::move(rates));
  return out;
}

// Variable index after deleting `removed`.
int shifted(int v, int removed) { return v < removed ? v : v - 1; }

// p(l) with l_elim replaced by l_keep, in the ring without l_elim.
MultiPoly merge_variable(const MultiPoly& p, int elim, int keep) {
  const int target = shifted(keep, elim);
  MultiPoly out(p.nvars() - 1);
  out.reserve(p.size());
  for (const auto& [e, c] : p.terms()) {
    Exponents f;
    for (int v = 0; v < p.nvars(); ++v) {
      if (v == elim) continue;
      f = f.with(shifted(v, elim), e[v]);
    }
    f = f.with(target, f[target] + e[elim]);
    out.add_term(f, c);
  }
  return out;
}

ConeIntegrand collapse_one(const ConeIntegrand& f, DeltaFactor d) {
  const int m = f.nvars();
  if (m < 2) throw InvalidArgument("delta factor needs two variables");
  const int e = d.eliminate;
  const int k = d.keep;
  ConeIntegrand out = ConeIntegrand::orthant(m - 1);
  const int pair_power = f.abs_exponent(e, k);
  if (pair_power < 0) {
    throw UncancelledSingularity("|l" + std::to_string(e + 1) + "-l" + std::to_string(k + 1) +
                                 "| divides the delta factor and was not cancelled");
  }
  if (pair_power > 0 || f.is_zero()) return out.scale(Rational(0));
  for (const auto& factor : f.factors()) out.multiply(merge_variable(factor, e, k));
  std::vector<Rational> rates;
  for (int v = 0; v < m; ++v) {
    if (v != e) rates.push_back(f.rates()[v]);
  }
  rates[static_cast<std::size_t>(shifted(k, e))] += f.rates()[e];
  out.set_rates(std::move(rates));
  for (const auto& [pair, power] : f.abs_diffs()) {
    const int a = pair.i == e ? k : pair.i;
    const int b = pair.j == e ? k : pair.j;
    if (a == b) continue;  // the (e, k) pair, power 0
    out.multiply_abs_diff(shifted(a, e), shifted(b, e), power);
  }
  for (const auto& other : f.deltas()) {
    if (other.eliminate == e && other.keep == k) continue;
    out.with_delta(shifted(other.eliminate, e), shifted(other.keep, e));
  }
  return out;
}

}  // namespace

ConeIntegrand delta_collapse(const ConeIntegrand& f) {
  f.validate();
  ConeIntegrand cur = f;
  while (!cur.deltas().empty()) cur = collapse_one(cur, cur.deltas().front());
  return cur;
}

PiScaledRational chamber_integral(const ConeIntegrand& f) {
  f.validate();
  require_no_deltas(f);
  if (f.domain().kind != DomainKind::Chamber) throw InvalidArgument("chamber_integral needs a chamber domain");
  if (f.is_zero()) return {};
  const int m = f.nvars();
  const int p = f.domain().positive_count;
  MomentTable::Chain positive{{}, false};
  MomentTable::Chain negative{{}, true};
  for (int i = 0; i < p; ++i) positive.vars.push_back(i);
  for (int i = m - 1; i >= p; --i) negative.vars.push_back(i);
  MomentTable table({positive, negative}, f.rates());
  return PiScaledRational(integrate_terms(product(resolved_factors(f), m), table));
}

PiScaledRational orthant_integral(const ConeIntegrand& f, const ExactOptions& opts) {
  f.validate();
  require_no_deltas(f);
  if (f.domain().kind != DomainKind::Orthant) throw InvalidArgument("orthant_integral needs an orthant domain");
  if (f.is_zero()) return {};
  const int m = f.nvars();
  for (int v = 0; v < m; ++v) {
    if (sgn(f.rates()[v]) <= 0) {
      throw DivergentIntegral("rate " + f.rates()[v].get_str() + " <= 0 on l" + std::to_string(v + 1));
    }
  }

  // Even powers of |l_i - l_j| are polynomial; odd ones keep one absolute factor.
  std::vector<MultiPoly> factors = f.factors();
  std::vector<IndexPair> odd;
  for (const auto& [pair, e] : f.abs_diffs()) {
    if (e < 0) {
      throw UncancelledSingularity("negative power of |l" + std::to_string(pair.i + 1) + "-l" +
                                   std::to_string(pair.j + 1) + "|");
    }
    if (e >= 2) factors.push_back(linear_diff(m, pair.i, pair.j).pow(static_cast<unsigned>(e - e % 2)));
    if (e % 2 == 1) odd.push_back(pair);
  }

  std::vector<int> V;
  for (const auto& pr : odd) {
    V.push_back(pr.i);
    V.push_back(pr.j);
  }
  std::sort(V.begin(), V.end());
  V.erase(std::unique(V.begin(), V.end()), V.end());

  auto singleton_chains = [&](const std::vector<int>& skip) {
    std::vector<MomentTable::Chain> chains;
    for (int v = 0; v < m; ++v) {
      if (!std::binary_search(skip.begin(), skip.end(), v)) chains.push_back({{v}, false});
    }
    return chains;
  };

  if (V.empty()) {
    MomentTable table(singleton_chains({}), f.rates());
    return PiScaledRational(integrate_terms(product(std::move(factors), m), table));
  }
  if (static_cast<int>(V.size()) > opts.max_dimension) {
    throw DimensionCapExceeded("sector decomposition over " + std::to_string(V.size()) + " variables exceeds the cap of " +
                               std::to_string(opts.max_dimension));
  }

  // Sector l_{sigma_0} > l_{sigma_1} > ... is relabelled so that slot V[t]
  // holds the t-th largest coordinate. Factors symmetric in V do not notice
  // the relabelling ("heavy"); the rest are summed over sectors sharing the
  // same relabelled rate vector ("light").
  const std::size_t k = V.size();
  const bool complete = odd.size() == k * (k - 1) / 2;
  std::vector<MultiPoly> heavy_factors;
  std::vector<MultiPoly> light_factors;
  for (auto& fac : factors) {
    (fac.is_symmetric_in(V) ? heavy_factors : light_factors).push_back(std::move(fac));
  }
  if (complete) {
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) heavy_factors.push_back(linear_diff(m, V[a], V[b]));
    }
  }
  const auto cleared = clear_denominators(product(std::move(heavy_factors), m));
  const IntPoly& heavy = cleared.first;
  const BigInt& heavy_den = cleared.second;
  const MultiPoly light = product(std::move(light_factors), m);

  std::map<std::vector<Rational>, MultiPoly> groups;
  std::vector<int> sigma = V;
  std::vector<int> image(static_cast<std::size_t>(m));
  do {
    std::iota(image.begin(), image.end(), 0);
    std::vector<Rational> rates = f.rates();
    for (std::size_t t = 0; t < k; ++t) {
      image[static_cast<std::size_t>(sigma[t])] = V[t];
      rates[static_cast<std::size_t>(V[t])] = f.rates()[static_cast<std::size_t>(sigma[t])];
    }
    MultiPoly term = light.permuted(image);
    if (!complete) {
      for (const auto& pr : odd) {
        const int a = image[static_cast<std::size_t>(pr.i)];
        const int b = image[static_cast<std::size_t>(pr.j)];
        term = term * linear_diff(m, std::min(a, b), std::max(a, b));
      }
    }
    auto [it, inserted] = groups.try_emplace(std::move(rates), m);
    it->second += term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  std::vector<std::pair<std::vector<Rational>, MultiPoly>> work(groups.begin(), groups.end());
  auto chains = singleton_chains(V);
  chains.push_back({V, false});
  const auto parts = parallel_map(work.size(), [&](std::size_t g) -> Rational {
    const auto& [rates, sum] = work[g];
    if (sum.is_zero()) return Rational(0);
    auto [num, den] = clear_denominators(sum);
    MomentTable table(chains, rates);
    return integrate_terms(heavy * num, table) / den;
  });
  Rational total(0);
  for (const auto& part : parts) total += part;
  return PiScaledRational(total / heavy_den);
}

PiScaledRational integrate(const ConeIntegrand& f, const ExactOptions& opts) {
  const ConeIntegrand g = delta_collapse(f);
  return g.domain().kind == DomainKind::Orthant ? orthant_integral(g, opts) : chamber_integral(g);
}

ConeIntegrand substitute_chain(const ConeIntegrand& f) {
  const int m = f.nvars();
  const int p = f.domain().positive_count;
  if (f.domain().kind != DomainKind::Chamber) throw InvalidArgument("substitute_chain needs a chamber integrand");
  std::vector<MultiPoly> images;
  for (int i = 0; i < m; ++i) {
    if (p == m) {
      images.push_back(MultiPoly::variable(m, i));
    } else if (i < p) {
      images.push_back(linear_diff(m, i, p));
    } else if (i < m - 1) {
      images.push_back(linear_diff(m, i + 1, p));
    } else {
      images.push_back(-MultiPoly::variable(m, p));
    }
  }
  return apply_linear_map(f, images, Domain::chamber(m));
}

ConeIntegrand to_orthant(const ConeIntegrand& f) {
  const int m = f.nvars();
  const int p = f.domain().positive_count;
  if (f.domain().kind != DomainKind::Chamber) throw InvalidArgument("to_orthant needs a chamber integrand");
  std::vector<MultiPoly> images;
  for (int i = 0; i < m; ++i) {
    MultiPoly img(m);
    if (i < p) {
      for (int j = i; j < p; ++j) img.add_term(Exponents::unit(j), Rational(1));
    } else {
      for (int j = p; j <= i; ++j) img.add_term(Exponents::unit(j), Rational(-1));
    }
    images.push_back(std::move(img));
  }
  return apply_linear_map(f, images, Domain::orthant());
}

Rational sector_integral(const MultiPoly& p, std::span<const Rational> rates, std::span<const int> order) {
  const int m = p.nvars();
  if (rates.size() != static_cast<std::size_t>(m) || order.size() != static_cast<std::size_t>(m)) {
    throw InvalidArgument("sector_integral: rates and order must cover every variable");
  }
  std::vector<int> check(order.begin(), order.end());
  std::sort(check.begin(), check.end());
  for (int i = 0; i < m; ++i) {
    if (check[static_cast<std::size_t>(i)] != i) throw InvalidArgument("sector_integral: order is not a permutation");
  }
  MomentTable table({{std::vector<int>(order.begin(), order.end()), false}}, rates);
  return integrate_terms(p, table);
}

}  // namespace chamber
