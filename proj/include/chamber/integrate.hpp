#pragma once

// Exact integration of ConeIntegrand values.

#include <span>
#include <vector>

#include "chamber/integrand.hpp"
#include "chamber/scalar.hpp"

namespace chamber {

struct ExactOptions {
  /// Largest number of variables allowed in a sector decomposition.
  int max_dimension = 6;
};

/// Collapses deltas, then dispatches on the domain.
PiScaledRational integrate(const ConeIntegrand& f, const ExactOptions& opts = {});

/// Integral over the chamber Y_p declared by f. |l_i - l_j| factors are
/// resolved using the chamber ordering. Deltas must already be collapsed.
PiScaledRational chamber_integral(const ConeIntegrand& f);

/// Integral over the positive orthant, splitting into ordered sectors when
/// odd powers of |l_i - l_j| are present.
PiScaledRational orthant_integral(const ConeIntegrand& f, const ExactOptions& opts = {});

/// Integrates each delta(l_e - l_k) out by setting l_e = l_k.
/// Throws UncancelledSingularity when |l_e - l_k| still has a negative power.
ConeIntegrand delta_collapse(const ConeIntegrand& f);

/// Maps an integrand over Y_p onto Y_m by
///   l_i -> l_i - l_p        (i < p)
///   l_i -> l_{i+1} - l_p    (p <= i < m-1)
///   l_{m-1} -> -l_p
/// (0-based, p = number of positive coordinates). The identity when p = m.
ConeIntegrand substitute_chain(const ConeIntegrand& f);

/// Difference coordinates taking Y_p onto the orthant:
///   l_i = sum_{j=i}^{p-1} u_j (i < p),  l_i = -sum_{j=p}^{i} u_j (i >= p).
ConeIntegrand to_orthant(const ConeIntegrand& f);

/// Integral of p * exp(-<rates, l>) over l_{order[0]} > ... > l_{order[n-1]} > 0.
Rational sector_integral(const MultiPoly& p, std::span<const Rational> rates, std::span<const int> order);

}  // namespace chamber
