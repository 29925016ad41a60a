#include "chamber/mc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>

#include "chamber/beta.hpp"
#include "chamber/errors.hpp"
#include "chamber/integrate.hpp"
#include "chamber/parallel.hpp"
#include "chamber/selberg.hpp"

namespace chamber {

void McConfig::validate() const {
  if (samples < 1000) throw InvalidArgument("Monte Carlo needs at least 1000 samples");
  if (batches < 10) throw InvalidArgument("Monte Carlo needs at least 10 batches");
  if (batches > samples) throw InvalidArgument("more batches than samples");
  for (double r : rates) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("proposal rates must be positive and finite");
  }
}

namespace {

using Rng = std::mt19937_64;

Rng batch_rng(std::uint64_t seed, std::uint64_t batch) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(batch), static_cast<std::uint32_t>(batch >> 32), 0x6d63u};
  return Rng(seq);
}

double sample_variance(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return ss / (n - 1.0);
}

struct BatchSums {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t n = 0;
};

// sample(rng) returns one weight; batches run in parallel and are folded in
// batch order, so the estimate depends only on (seed, samples, batches).
//
// Infinite variance is flagged on non-finite weights, or (with at least 20
// batches) when the variance implied by batch means of size 2b exceeds the
// one at size b by more than 10x. Heavy but finite tails from high-degree
// polynomial weights are not distinguishable from infinite variance at these
// sample sizes, so no tail-shape test is attempted.
McEstimate batch_means(const McConfig& cfg, std::string target, const std::function<double(Rng&)>& sample) {
  cfg.validate();
  const std::uint64_t per = cfg.samples / cfg.batches;
  const std::uint64_t extra = cfg.samples % cfg.batches;
  const auto sums = parallel_map(cfg.batches, [&](std::size_t b) -> BatchSums {
    Rng rng = batch_rng(cfg.seed, b);
    BatchSums s;
    s.n = per + (b < extra ? 1 : 0);
    for (std::uint64_t i = 0; i < s.n; ++i) {
      const double w = sample(rng);
      s.sum += w;
      s.sum_sq += w * w;
    }
    return s;
  });

  double total = 0.0;
  std::vector<double> means;
  means.reserve(sums.size());
  for (const auto& s : sums) {
    if (!std::isfinite(s.sum) || !std::isfinite(s.sum_sq)) {
      throw InfiniteVarianceSuspected(target + ": non-finite sample weight");
    }
    total += s.sum;
    means.push_back(s.sum / static_cast<double>(s.n));
  }
  McEstimate est;
  est.target = std::move(target);
  est.samples = cfg.samples;
  est.mean = total / static_cast<double>(cfg.samples);
  const double var_b = sample_variance(means);
  est.std_error = std::sqrt(var_b / static_cast<double>(means.size()));

  if (means.size() >= 20) {
    std::vector<double> merged;
    for (std::size_t i = 0; i + 1 < means.size(); i += 2) merged.push_back((means[i] + means[i + 1]) / 2.0);
    const double implied_b = var_b * static_cast<double>(per);
    const double implied_2b = sample_variance(merged) * static_cast<double>(2 * per);
    if (implied_b > 0.0 && implied_2b / implied_b > 10.0) {
      throw InfiniteVarianceSuspected(est.target + ": batch variance grows with batch size (ratio " +
                                      std::to_string(implied_2b / implied_b) + ")");
    }
  }
  return est;
}

struct DoublePoly {
  std::vector<std::pair<std::vector<unsigned>, double>> terms;

  DoublePoly(const MultiPoly& p, int m) {
    for (const auto& [e, c] : p.terms()) {
      std::vector<unsigned> exps(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) exps[static_cast<std::size_t>(i)] = e[i];
      terms.emplace_back(std::move(exps), c.get_d());
    }
  }

  double operator()(const std::vector<double>& x) const {
    double s = 0.0;
    for (const auto& [e, c] : terms) {
      double t = c;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] > 0) t *= std::pow(x[i], static_cast<int>(e[i]));
      }
      s += t;
    }
    return s;
  }
};

McEstimate orthant_mc(const ConeIntegrand& f, const McConfig& cfg, bool sort_chamber) {
  const int m = f.nvars();
  std::vector<double> rates = cfg.rates;
  if (rates.empty()) {
    for (const auto& a : f.rates()) rates.push_back(a.get_d());
  }
  if (static_cast<int>(rates.size()) != m) throw InvalidArgument("proposal rate count does not match the integrand");
  for (double r : rates) {
    if (!(r > 0.0)) throw DivergentIntegral("no exponential proposal for a non-positive rate");
  }
  std::vector<DoublePoly> factors;
  for (const auto& p : f.factors()) factors.emplace_back(p, m);
  std::vector<std::tuple<int, int, int>> abs;
  for (const auto& [pair, e] : f.abs_diffs()) abs.emplace_back(pair.i, pair.j, e);
  std::vector<double> shift(static_cast<std::size_t>(m));
  double norm = 1.0;
  for (int i = 0; i < m; ++i) {
    shift[static_cast<std::size_t>(i)] = f.rates()[static_cast<std::size_t>(i)].get_d() - rates[static_cast<std::size_t>(i)];
    norm *= rates[static_cast<std::size_t>(i)];
  }
  double divide = 1.0;
  if (sort_chamber) {
    for (int i = 2; i <= m; ++i) divide *= i;
  }

  auto sample = [&](Rng& rng) {
    std::vector<double> x(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      std::exponential_distribution<double> d(rates[static_cast<std::size_t>(i)]);
      x[static_cast<std::size_t>(i)] = d(rng);
    }
    if (sort_chamber) std::sort(x.begin(), x.end(), std::greater<>());
    double w = 1.0;
    for (const auto& p : factors) w *= p(x);
    for (const auto& [i, j, e] : abs) w *= std::pow(std::abs(x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)]), e);
    double lin = 0.0;
    for (int i = 0; i < m; ++i) lin += shift[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    return w * std::exp(-lin) / norm / divide;
  };
  return batch_means(cfg, "integral", sample);
}

}  // namespace

McEstimate mc_integral(const ConeIntegrand& f_in, const McConfig& cfg) {
  cfg.validate();
  ConeIntegrand f = f_in.deltas().empty() ? f_in : delta_collapse(f_in);
  if (f.is_zero()) {
    McEstimate zero;
    zero.samples = cfg.samples;
    zero.target = "integral";
    return zero;
  }
  if (f.domain().kind == DomainKind::Orthant) return orthant_mc(f, cfg, false);

  const int m = f.nvars();
  bool equal = f.domain().positive_count == m;
  if (equal) {
    if (cfg.rates.empty()) {
      equal = std::all_of(f.rates().begin(), f.rates().end(), [&](const Rational& a) { return a == f.rates().front(); });
    } else {
      equal = std::all_of(cfg.rates.begin(), cfg.rates.end(), [&](double r) { return r == cfg.rates.front(); });
    }
  }
  if (equal) return orthant_mc(f, cfg, true);
  return orthant_mc(to_orthant(f), cfg, false);
}

namespace {

double chi(Rng& rng, int dof) {
  std::chi_squared_distribution<double> d(dof);
  return std::sqrt(d(rng));
}

// Eigenvalues of W/2, W real Wishart with m+3 degrees of freedom, so the
// joint density is proportional to |Delta| prod l_j e^{-sum l_j}.
Eigen::VectorXd laguerre_sample(Rng& rng, int m) {
  Eigen::VectorXd d(m);
  Eigen::VectorXd s(std::max(m - 1, 1));
  for (int i = 0; i < m; ++i) d(i) = chi(rng, m + 3 - i);
  for (int i = 0; i + 1 < m; ++i) s(i) = chi(rng, m - 1 - i);
  Eigen::VectorXd diag(m);
  Eigen::VectorXd off(std::max(m - 1, 0));
  for (int i = 0; i < m; ++i) diag(i) = d(i) * d(i) + (i > 0 ? s(i - 1) * s(i - 1) : 0.0);
  for (int i = 0; i + 1 < m; ++i) off(i) = d(i) * s(i);
  if (m == 1) return diag / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  return solver.eigenvalues() / 2.0;
}

}  // namespace

McEstimate mc_beta2(int m, const McConfig& cfg) {
  if (m < 1) throw InvalidArgument("dimension m must be >= 1");
  cfg.validate();
  const double closed = beta2m_closed(m).to_double();
  const double c_red = norm_constant(NormFamily::Reduced, m).value.to_double();
  const double a1 = 16.0 * (m + 1) * selberg_exponential(m, Rational(2), Rational(1, 2)).to_double();
  const double a2 =
      m >= 2 ? 24.0 * (m - 1) * (m + 2) * selberg_exponential(m - 1, Rational(2), Rational(1, 2)).to_double() : 0.0;

  auto sample = [&](Rng& rng) {
    const Eigen::VectorXd l = laguerre_sample(rng, m);
    double w1 = 0.0;
    for (int i = 0; i < m; ++i) w1 += std::exp(-l(i));
    w1 /= m;
    double w2 = 0.0;
    if (m >= 2) {
      const int n = m - 1;
      const Eigen::VectorXd z = laguerre_sample(rng, n);
      for (int i = 0; i < n; ++i) {
        double t = z(i) * z(i) * z(i) * std::exp(-2.0 * z(i));
        for (int k = 0; k < n; ++k) {
          if (k != i) t *= std::abs(z(i) - z(k));
        }
        w2 += t;
      }
      w2 /= n;
    }
    return closed + c_red * (a1 * w1 + a2 * w2);
  };
  return batch_means(cfg, "beta2(" + std::to_string(m) + ")", sample);
}

}  // namespace chamber
