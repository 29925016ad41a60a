#pragma once

// Importance-sampled Monte Carlo estimates for cross-checking exact values.

#include <cstdint>
#include <string>
#include <vector>

#include "chamber/integrand.hpp"

namespace chamber {

struct McConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  /// Exponential proposal rates; empty means the integrand's own rates.
  std::vector<double> rates;
  std::uint32_t batches = 100;

  /// samples >= 1000, batches >= 10, rates > 0.
  void validate() const;
};

struct McEstimate {
  double mean = 0.0;
  /// Batch-means standard error.
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::string target;

  double lower(double z) const { return mean - z * std_error; }
  double upper(double z) const { return mean + z * std_error; }
};

/// Unbiased estimate of the integral of f (no delta factors). Chambers with
/// equal rates use sort-and-divide; other chambers go through difference
/// coordinates onto the orthant first.
McEstimate mc_integral(const ConeIntegrand& f, const McConfig& cfg);

/// Estimate of beta_2(m): the closed-form minimal-index term plus the two
/// positive terms of the delta-reduced form, sampled from Laguerre ensembles.
McEstimate mc_beta2(int m, const McConfig& cfg);

}  // namespace chamber
