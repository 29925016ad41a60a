#include "chamber/beta.hpp"

#include "chamber/errors.hpp"
#include "chamber/parallel.hpp"
#include "chamber/selberg.hpp"

namespace chamber {

namespace {

void require_m(int m) {
  if (m < 1) throw InvalidArgument("dimension m must be >= 1, got " + std::to_string(m));
  if (m > Exponents::kMaxVars) throw DimensionCapExceeded("m=" + std::to_string(m) + " exceeds the polynomial ring size");
}

BigInt superfactorial(int n) {
  BigInt r(1);
  for (int j = 1; j <= n; ++j) r *= factorial(static_cast<unsigned long>(j));
  return r;
}

BigInt pow2(int e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return r;
}

MultiPoly var(int m, int i) { return MultiPoly::variable(m, i); }

MultiPoly trace_poly(int m) {
  MultiPoly t(m);
  for (int i = 0; i < m; ++i) t.add_term(Exponents::unit(i), Rational(1));
  return t;
}

MultiPoly trace2_poly(int m) {
  MultiPoly t(m);
  for (int i = 0; i < m; ++i) t.add_term(Exponents::unit(i, 2), Rational(1));
  return t;
}

MultiPoly product_of_vars(int m) {
  MultiPoly p = MultiPoly::constant(m, Rational(1));
  for (int i = 0; i < m; ++i) p *= var(m, i);
  return p;
}

Rational a_const(int m) { return Rational(m * (m + 1) * (m * (m + 3) * (m + 4) - 4)); }

// |Delta| prod l_j e^{-sum l_j - l_m} on the orthant, times poly.
ConeIntegrand prime_weight(int m, MultiPoly poly) {
  ConeIntegrand f = ConeIntegrand::orthant(m);
  f.multiply(product_of_vars(m)).multiply(std::move(poly)).with_abs_vandermonde();
  f.set_rate(m - 1, Rational(2));
  return f;
}

}  // namespace

NormConstant norm_constant(NormFamily family, int m) {
  if (m < 1) throw InvalidArgument("dimension m must be >= 1, got " + std::to_string(m));
  const int half = -2 * m;
  switch (family) {
    case NormFamily::ChamberPrefactor:
      return {family, PiScaledRational(ratio(pow2((m * m + m) / 2), 4 * superfactorial(m - 1)), half)};
    case NormFamily::Reduced:
      return {family, PiScaledRational(ratio(pow2((m * m + m - 2) / 2),
                                                BigInt((m + 1) * (m + 2) * (m + 2) * (m + 2) * (m + 3)) *
                                                    superfactorial(m)),
                                       half)};
    case NormFamily::Symmetrized:
      return {family, PiScaledRational(ratio(pow2((m * m + m - 2) / 2),
                                                BigInt(m * (m + 1) * (m + 2) * (m + 2) * (m + 2) * (m + 3)) *
                                                    superfactorial(m - 1)),
                                       half)};
  }
  throw InvalidArgument("unknown normalisation family");
}

Rational f_matrix(std::span<const Rational> lambda) {
  const int m = static_cast<int>(lambda.size());
  if (m < 1) throw InvalidArgument("f_matrix needs at least one eigenvalue");
  Rational tr(0);
  Rational tr2(0);
  for (const auto& l : lambda) {
    tr += l;
    tr2 += l * l;
  }
  return 1 - ratio(4, m * (m + 1)) * tr + (4 * tr * tr + 8 * tr2) / Rational(m * (m + 1) * (m + 2) * (m + 3));
}

MultiPoly f_matrix_poly(int m) {
  require_m(m);
  const MultiPoly t = trace_poly(m);
  const MultiPoly t2 = trace2_poly(m);
  MultiPoly f = MultiPoly::constant(m, Rational(1));
  f -= t * ratio(4, m * (m + 1));
  f += (t * t * Rational(4) + t2 * Rational(8)) * ratio(1, m * (m + 1) * (m + 2) * (m + 3));
  return f;
}

Rational f_s(int s, const Rational& c, const Rational& lambda_m) {
  if (sgn(c) <= 0) throw InvalidArgument("f_s needs c > 0");
  switch (s) {
    case 1:
      return Rational(1);
    case 2:
      return 1 - c * lambda_m;
    case 3:
      return (c * c * lambda_m * lambda_m - 2 * c * lambda_m + 2) / 2;
    default:
      throw InvalidArgument("f_s needs s in {1,2,3}, got " + std::to_string(s));
  }
}

MultiPoly f_s_poly(int s, const Rational& c, int m) {
  require_m(m);
  const MultiPoly l = var(m, m - 1);
  switch (s) {
    case 1:
      return MultiPoly::constant(m, Rational(1));
    case 2:
      return 1 - l * c;
    case 3:
      return (l * l * (c * c) - l * (2 * c) + Rational(2)) * Rational(1, 2);
    default:
      throw InvalidArgument("f_s needs s in {1,2,3}, got " + std::to_string(s));
  }
}

MultiPoly iq_poly(int m, int q) {
  require_m(m);
  if (q < m || q > 2 * m) throw InvalidArgument("Morse index q must lie in m..2m");
  const Rational c(m + 2);
  auto f = [&](int s) { return q == m ? MultiPoly::constant(m, Rational(1)) : f_s_poly(s, c, m); };
  const MultiPoly bracket = trace_poly(m) * ratio(4, m * (m + 1) * (m + 3)) - ratio(2, m + 1);
  MultiPoly out = f_matrix_poly(m) * f(1) * (2 / c);
  out += f(3) * (16 / (c * c * c * (m + 1) * (m + 3)));
  out += f(2) * bracket * (4 / (c * c));
  return out;
}

BetaIntegrand iq_integrand(int m, int q) {
  const MultiPoly poly = iq_poly(m, q);
  const int p = 2 * m - q;
  ConeIntegrand f = ConeIntegrand::chamber(m, p);
  f.multiply(poly);
  for (auto& factor : vandermonde_factors(m)) f.multiply(std::move(factor));
  for (int i = 0; i < m; ++i) f.multiply(var(m, i));
  // |l_j| = -l_j on the negative coordinates
  if ((m - p) % 2 == 1) f.scale(Rational(-1));
  if (q > m) f.set_rate(m - 1, Rational(1 - (m + 2)));
  return {norm_constant(NormFamily::ChamberPrefactor, m).value, std::move(f)};
}

PiScaledRational beta2q(int m, int q, ChamberRoute route) {
  const BetaIntegrand b = iq_integrand(m, q);
  const ConeIntegrand& f = b.integrand;
  const PiScaledRational v = route == ChamberRoute::Direct ? chamber_integral(f) : chamber_integral(substitute_chain(f));
  return b.prefactor * v;
}

PiScaledRational beta2m_closed(int m) {
  if (m < 1) throw InvalidArgument("dimension m must be >= 1, got " + std::to_string(m));
  const BigInt den = BigInt((m + 2) * (m + 2) * (m + 2) * (m + 3));
  return PiScaledRational(ratio(4 * factorial(static_cast<unsigned long>(m)), den), -2 * m);
}

PiScaledRational beta2m_symmetrized(int m, const ExactOptions& opts) {
  require_m(m);
  MultiPoly poly = MultiPoly::constant(m, a_const(m));
  MultiPoly inner = var(m, 0) * Rational(-m * (m + 1) * (m + 4)) + var(m, 0) * var(m, 0) * Rational(3 * m);
  if (m >= 2) inner += var(m, 0) * var(m, 1) * Rational(m * (m - 1));
  poly += inner * Rational(4 * (m + 2));
  ConeIntegrand f = ConeIntegrand::orthant(m);
  f.multiply(product_of_vars(m)).multiply(std::move(poly)).with_abs_vandermonde();
  const PiScaledRational c = norm_constant(NormFamily::Symmetrized, m).value;
  return c * orthant_integral(f, opts) / PiScaledRational(Rational(factorial(static_cast<unsigned long>(m))));
}

PiScaledRational beta2m_selberg(int m) {
  if (m < 3) {
    throw UnsupportedParameters("the Selberg moment route needs m >= 3 (moment (0,2) requires ell < m)");
  }
  auto moment = [m](int k, int ell) { return selberg_moment({m, Rational(2), Rational(1, 2), k, ell}); };
  PiScaledRational sum = PiScaledRational(a_const(m)) * moment(0, 0);
  sum = sum + PiScaledRational(Rational(-4 * (m + 2) * m * (m + 1) * (m + 4))) * moment(0, 1);
  sum = sum + PiScaledRational(Rational(4 * (m + 2) * m * (m - 1))) * moment(0, 2);
  sum = sum + PiScaledRational(Rational(4 * (m + 2) * 3 * m)) * moment(1, 1);
  const PiScaledRational c = norm_constant(NormFamily::Symmetrized, m).value;
  return c * sum / PiScaledRational(Rational(factorial(static_cast<unsigned long>(m))));
}

MultiPoly prime_symmetrized_poly(int m) {
  require_m(m);
  if (m == 1) return MultiPoly::constant(1, Rational(32));
  const MultiPoly l1 = var(m, 0);
  if (m == 2) return (l1 * l1 - l1 * Rational(6) + Rational(7)) * Rational(48);
  MultiPoly inner = l1 * Rational(-(m + 1) * (m + 4)) + l1 * var(m, 1) * Rational(m - 2) + l1 * l1 * Rational(3);
  return inner * Rational(4 * (m - 1) * (m + 2)) + a_const(m);
}

MultiPoly chamber_sum_poly(int m, int p) {
  require_m(m);
  if (p < 0 || p >= m) throw InvalidArgument("chamber_sum_poly index out of range");
  const MultiPoly t = trace_poly(m);
  const MultiPoly lp = var(m, p);
  const Rational c2(m + 2);
  MultiPoly out = lp * lp * (-4 * c2);
  out += ((m + 1) * (m + 4) - t * Rational(2)) * lp * (4 * c2);
  out += a_const(m);
  out -= t * Rational(4 * (m + 1) * (m + 2) * (m + 4));
  out += t * t * (4 * c2);
  out += trace2_poly(m) * (8 * c2);
  return out;
}

PiScaledRational prime_t1(int m, const ExactOptions& opts) {
  return orthant_integral(prime_weight(m, MultiPoly::constant(m, Rational(1))), opts);
}

PiScaledRational prime_t2(int m, const ExactOptions& opts) {
  if (m < 2) throw InvalidArgument("the delta term needs m >= 2");
  ConeIntegrand f = prime_weight(m, var(m, 0) * var(m, 0));
  f.multiply_abs_diff(0, m - 1, -1);
  f.with_delta(0, m - 1);
  return integrate(f, opts);
}

PiScaledRational prime_t2_reduced(int m, const ExactOptions& opts) {
  if (m < 2) throw InvalidArgument("the delta term needs m >= 2");
  const int n = m - 1;
  const int last = n - 1;
  ConeIntegrand f = ConeIntegrand::orthant(n);
  f.multiply(var(n, last).pow(3)).multiply(product_of_vars(n));
  std::vector<int> inner;
  for (int i = 0; i < last; ++i) {
    inner.push_back(i);
    f.multiply_abs_diff(last, i, 2);
  }
  f.with_abs_vandermonde(inner);
  f.set_rate(last, Rational(3));
  return orthant_integral(f, opts);
}

PiScaledRational beta2_prime(int m, PrimeRoute route, const ExactOptions& opts) {
  require_m(m);
  switch (route) {
    case PrimeRoute::Symmetrized: {
      const PiScaledRational c = norm_constant(NormFamily::Reduced, m).value;
      return c * orthant_integral(prime_weight(m, prime_symmetrized_poly(m)), opts);
    }
    case PrimeRoute::DeltaReduced: {
      const PiScaledRational c = norm_constant(NormFamily::Reduced, m).value;
      PiScaledRational inner = PiScaledRational(Rational(16 * (m + 1))) * prime_t1(m, opts);
      if (m >= 2) inner = inner + PiScaledRational(Rational(24 * (m - 1) * (m + 2))) * prime_t2(m, opts);
      return c * inner;
    }
    case PrimeRoute::ChamberSum: {
      const auto parts = parallel_map(static_cast<std::size_t>(m), [m](std::size_t p) {
        ConeIntegrand f = ConeIntegrand::chamber(m);
        for (auto& factor : vandermonde_factors(m)) f.multiply(std::move(factor));
        f.multiply(product_of_vars(m)).multiply(chamber_sum_poly(m, static_cast<int>(p)));
        f.set_rate(static_cast<int>(p), Rational(2));
        return chamber_integral(f);
      });
      PiScaledRational sum;
      for (const auto& v : parts) sum = sum + v;
      return norm_constant(NormFamily::Symmetrized, m).value * sum;
    }
    case PrimeRoute::PerIndexSum: {
      const auto parts = parallel_map(static_cast<std::size_t>(m), [m](std::size_t i) {
        return beta2q(m, m + 1 + static_cast<int>(i), ChamberRoute::Direct);
      });
      PiScaledRational sum;
      for (const auto& v : parts) sum = sum + v;
      return sum;
    }
  }
  throw InvalidArgument("unknown beta2' route");
}

CrossCheck CrossCheck::exact(std::string name, const PiScaledRational& lhs, const PiScaledRational& rhs) {
  return {std::move(name), lhs == rhs, lhs.to_string(), rhs.to_string(), lhs.to_double(), rhs.to_double()};
}

bool BetaReport::all_checks_passed() const {
  for (const auto& c : crosschecks) {
    if (!c.passed) return false;
  }
  return true;
}

namespace {

void check_homogeneous(BetaReport& r, const std::string& what, const PiScaledRational& v) {
  const int want = -2 * r.m;
  CrossCheck c;
  c.name = "pi power of " + what;
  c.passed = v.is_zero() || v.pi_half_power() == want;
  c.lhs = "pi^(" + std::to_string(v.pi_half_power()) + "/2)";
  c.rhs = "pi^(" + std::to_string(want) + "/2)";
  c.lhs_approx = v.pi_half_power();
  c.rhs_approx = want;
  r.crosschecks.push_back(std::move(c));
}

BetaReport exact_report(int m, const BetaOptions& opts) {
  BetaReport r;
  r.m = m;
  r.exact = true;
  r.beta2m_closed = beta2m_closed(m);
  r.provenance["beta2m_closed"] = "closed form 4 m!/(pi^m (m+2)^3 (m+3))";
  r.provenance["beta2q"] = "chamber integral over Y_{2m-q}";
  r.provenance["beta2_prime"] = "delta-reduced orthant form";
  r.provenance["beta2_total"] = "beta2m_closed + beta2_prime";

  const int qs = m + 1;
  const auto per_q = parallel_map(static_cast<std::size_t>(qs), [m](std::size_t i) {
    return beta2q(m, m + static_cast<int>(i), ChamberRoute::Direct);
  });
  for (int i = 0; i < qs; ++i) r.beta2q[m + i] = per_q[static_cast<std::size_t>(i)];

  // Independent routes, run side by side.
  enum Task { Symmetrized, Delta, ChamberSum, MinimalSym, T2Generic, T2Reduced, Count };
  const auto routes = parallel_map(static_cast<std::size_t>(Count), [&](std::size_t t) -> PiScaledRational {
    switch (static_cast<Task>(t)) {
      case Symmetrized:
        return beta2_prime(m, PrimeRoute::Symmetrized, opts.exact);
      case Delta:
        return beta2_prime(m, PrimeRoute::DeltaReduced, opts.exact);
      case ChamberSum:
        return beta2_prime(m, PrimeRoute::ChamberSum, opts.exact);
      case MinimalSym:
        return beta2m_symmetrized(m, opts.exact);
      case T2Generic:
        return m >= 2 ? prime_t2(m, opts.exact) : PiScaledRational();
      case T2Reduced:
        return m >= 2 ? prime_t2_reduced(m, opts.exact) : PiScaledRational();
      case Count:
        break;
    }
    return {};
  });

  PiScaledRational per_index_sum;
  for (int q = m + 1; q <= 2 * m; ++q) per_index_sum = per_index_sum + r.beta2q.at(q);
  const PiScaledRational& prime = routes[Delta];

  auto& checks = r.crosschecks;
  checks.push_back(CrossCheck::exact("beta2m: chamber integral vs closed form", r.beta2q.at(m), r.beta2m_closed));
  checks.push_back(CrossCheck::exact("beta2m: symmetrized orthant vs closed form", routes[MinimalSym], r.beta2m_closed));
  if (m >= 3) checks.push_back(CrossCheck::exact("beta2m: Selberg moments vs closed form", beta2m_selberg(m), r.beta2m_closed));
  checks.push_back(CrossCheck::exact("beta2': symmetrized vs delta-reduced", routes[Symmetrized], prime));
  checks.push_back(CrossCheck::exact("beta2': mapped chamber sum vs delta-reduced", routes[ChamberSum], prime));
  checks.push_back(CrossCheck::exact("beta2': sum of beta2q over q>m vs delta-reduced", per_index_sum, prime));
  if (m >= 2) {
    checks.push_back(CrossCheck::exact("delta term: generic collapse vs explicit reduced form", routes[T2Generic],
                                       routes[T2Reduced]));
  }
  if (m <= opts.max_substitution_check_m) {
    const auto mapped = parallel_map(static_cast<std::size_t>(m), [m](std::size_t i) {
      return beta2q(m, m + 1 + static_cast<int>(i), ChamberRoute::ChainSubstitution);
    });
    for (int i = 0; i < m; ++i) {
      const int q = m + 1 + i;
      checks.push_back(CrossCheck::exact("beta2q q=" + std::to_string(q) + ": mapped onto Y_m vs direct",
                                         mapped[static_cast<std::size_t>(i)], r.beta2q.at(q)));
    }
  }

  r.beta2_prime = prime;
  r.beta2_total = r.beta2m_closed + prime;
  for (const auto& [q, v] : r.beta2q) check_homogeneous(r, "beta2q q=" + std::to_string(q), v);
  check_homogeneous(r, "beta2_prime", *r.beta2_prime);
  check_homogeneous(r, "beta2_total", *r.beta2_total);

  if (r.beta2_total->sign() <= 0) {
    throw PositivityViolation("beta2(" + std::to_string(m) + ") = " + r.beta2_total->to_string() + " is not positive");
  }
  return r;
}

}  // namespace

BetaReport beta2_total(int m, const BetaOptions& opts) {
  if (m < 1) throw InvalidArgument("dimension m must be >= 1, got " + std::to_string(m));
  if (m <= opts.max_exact_m) return exact_report(m, opts);

  BetaReport r;
  r.m = m;
  r.exact = false;
  r.beta2m_closed = beta2m_closed(m);
  r.provenance["beta2m_closed"] = "closed form 4 m!/(pi^m (m+2)^3 (m+3))";
  r.provenance["mc"] = "Laguerre-ensemble estimate of beta2m_closed + delta-reduced beta2_prime";
  r.mc = mc_beta2(m, opts.mc);
  CrossCheck c;
  c.name = "mc: lower 3-sigma bound of beta2 > 0";
  c.lhs_approx = r.mc->lower(3.0);
  c.rhs_approx = 0.0;
  c.passed = c.lhs_approx > 0.0;
  c.lhs = std::to_string(c.lhs_approx);
  c.rhs = "0";
  r.crosschecks.push_back(std::move(c));
  return r;
}

LeadingBounds leading_bounds(int m) {
  if (m < 1) throw InvalidArgument("dimension m must be >= 1");
  const Rational n_m = ratio(2 * (m + 1), m + 2);
  return {n_m, ratio(2 * m + 3, 3), n_m};
}

}  // namespace chamber
