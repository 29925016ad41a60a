#include "chamber/expansion.hpp"

#include <cmath>
#include <numbers>

#include "chamber/beta.hpp"
#include "chamber/errors.hpp"

namespace chamber {

void ExpansionInput::validate() const {
  if (m < 1) throw SchemaError("m must be >= 1");
  if (N < 1) throw SchemaError("N must be >= 1");
  if (!std::isfinite(calabi) || calabi < 0.0) throw SchemaError("calabi must be finite and >= 0");
  if (m == 1 && (sgn(c1M2_c1L) != 0 || sgn(c2M_c1L) != 0)) {
    throw SchemaError("for m = 1 the N^{m-2} Chern numbers must be zero");
  }
}

void check_leading_bounds(int m, const Rational& n_of_m) {
  const LeadingBounds b = leading_bounds(m);
  if (!(b.lower < n_of_m && n_of_m < b.upper)) {
    throw SchemaError("n_of_m = " + to_string(n_of_m) + " is outside (" + to_string(b.lower) + ", " +
                      to_string(b.upper) + ") for m = " + std::to_string(m));
  }
}

namespace {

struct Coefficients {
  double lead;
  double sub;
  double third;
};

Coefficients coefficients(const ExpansionInput& in, std::vector<std::string>* warnings) {
  const auto& c = in.coeffs;
  if (!c.n_of_m) throw MissingCoefficient("n_of_m is required");
  if (!c.beta2) throw MissingCoefficient("beta2 is required (computed by the beta engine)");
  auto defaulted = [&](const std::optional<double>& v, const char* name) {
    if (v) return *v;
    if (warnings) warnings->push_back(std::string(name) + " not supplied; using 0");
    return 0.0;
  };
  const double b1 = defaulted(c.beta1, "beta1");
  const double b2p = defaulted(c.beta2_prime_top, "beta2_prime_top");
  const double b2pp = defaulted(c.beta2_dblprime_top, "beta2_dblprime_top");
  const int m = in.m;
  double fact = 1.0;
  for (int j = 2; j < m; ++j) fact *= j;
  return {c.n_of_m->get_d() * in.c1L_m.get_d(),
          std::pow(std::numbers::pi, m) * b1 / fact * in.c1M_c1L.get_d(),
          c.beta2->to_double() * in.calabi + b2p * in.c1M2_c1L.get_d() + b2pp * in.c2M_c1L.get_d()};
}

}  // namespace

ExpansionValue evaluate_terms(const ExpansionInput& in) {
  in.validate();
  ExpansionValue v;
  const Coefficients c = coefficients(in, &v.warnings);
  const double n = static_cast<double>(in.N);
  v.leading = c.lead * std::pow(n, in.m);
  v.subleading = c.sub * std::pow(n, in.m - 1);
  v.third = c.third * std::pow(n, in.m - 2);
  v.total = v.leading + v.subleading + v.third;
  return v;
}

double evaluate(const ExpansionInput& in) { return evaluate_terms(in).total; }

double evaluate_at(const ExpansionInput& in, double N) {
  const Coefficients c = coefficients(in, nullptr);
  return (c.lead * N * N + c.sub * N + c.third) * std::pow(N, in.m - 2);
}

std::string to_string(Winner w) {
  switch (w) {
    case Winner::A:
      return "A";
    case Winner::B:
      return "B";
    case Winner::Tie:
      return "Tie";
  }
  return "?";
}

Comparison compare_metrics(const ExpansionInput& a, const ExpansionInput& b, std::uint64_t n_max) {
  if (a.m != b.m) {
    throw IncomparableInputs("inputs have different dimensions " + std::to_string(a.m) + " and " +
                             std::to_string(b.m));
  }
  if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
  a.validate();
  b.validate();
  const Coefficients ca = coefficients(a, nullptr);
  const Coefficients cb = coefficients(b, nullptr);
  // d(N) / N^{m-2} = d2 N^2 + d1 N + d0
  const double d2 = ca.lead - cb.lead;
  const double d1 = ca.sub - cb.sub;
  const double d0 = ca.third - cb.third;

  auto sign_at = [&](double n) {
    const double v = (d2 * n + d1) * n + d0;
    return (v > 0.0) - (v < 0.0);
  };
  int eventual = 0;
  double bound = 1.0;
  if (d2 != 0.0) {
    eventual = d2 > 0.0 ? 1 : -1;
    bound = 1.0 + std::max(std::abs(d1), std::abs(d0)) / std::abs(d2);
  } else if (d1 != 0.0) {
    eventual = d1 > 0.0 ? 1 : -1;
    bound = 1.0 + std::abs(d0) / std::abs(d1);
  } else if (d0 != 0.0) {
    eventual = d0 > 0.0 ? 1 : -1;
  }
  Comparison out;
  out.winner = eventual < 0 ? Winner::A : eventual > 0 ? Winner::B : Winner::Tie;
  if (eventual == 0) return out;

  // Past the Cauchy root bound the sign is constant.
  const auto limit = static_cast<std::uint64_t>(std::min(std::ceil(bound), static_cast<double>(n_max)));
  std::uint64_t last_other = 0;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    if (sign_at(static_cast<double>(n)) != eventual) last_other = n;
  }
  out.resolved = bound <= static_cast<double>(n_max);
  if (last_other > 0) out.crossover_N = last_other + 1;
  return out;
}

}  // namespace chamber
