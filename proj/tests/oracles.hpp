#pragma once

// Test-side oracles that share no code path with the library's integrators,
// plus small hand-rolled generators for property tests.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "chamber/poly.hpp"
#include "chamber/scalar.hpp"

namespace oracle {

using chamber::MultiPoly;
using chamber::Rational;

/// det[l_i^{m-1-j}] by the Leibniz permutation sum.
inline MultiPoly leibniz_vandermonde(int m) {
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  MultiPoly det(m);
  do {
    int inversions = 0;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) inversions += perm[i] > perm[j];
    }
    chamber::Exponents e;
    for (int i = 0; i < m; ++i) e = e.with(i, static_cast<unsigned>(m - 1 - perm[static_cast<std::size_t>(i)]));
    det.add_term(e, Rational(inversions % 2 == 0 ? 1 : -1));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

inline double eval(const MultiPoly& p, const std::vector<double>& x) {
  double s = 0.0;
  for (const auto& [e, c] : p.terms()) {
    double t = c.get_d();
    for (int i = 0; i < p.nvars(); ++i) t *= std::pow(x[static_cast<std::size_t>(i)], static_cast<int>(e[i]));
    s += t;
  }
  return s;
}

/// Nested exp_sinh quadrature over x_0 > x_1 > ... > x_{m-1} > 0, with the
/// innermost integral on x_0. Only for m <= 3.
inline double chamber_quadrature(const std::function<double(const std::vector<double>&)>& f, int m,
                                 double tol = 1e-11) {
  boost::math::quadrature::exp_sinh<double> q(8);
  std::vector<double> x(static_cast<std::size_t>(m));
  std::function<double(int, double)> level = [&](int k, double lower) -> double {
    return q.integrate(
        [&, k](double t) {
          x[static_cast<std::size_t>(k)] = t;
          const double v = k == 0 ? f(x) : level(k - 1, t);
          // far tail: poly overflow times exp underflow
          return std::isfinite(v) ? v : 0.0;
        },
        lower, std::numeric_limits<double>::infinity(), tol);
  };
  return level(m - 1, 0.0);
}

/// Nested quadrature over the orthant R_+^m.
inline double orthant_quadrature(const std::function<double(const std::vector<double>&)>& f, int m,
                                 double tol = 1e-11) {
  boost::math::quadrature::exp_sinh<double> q(8);
  std::vector<double> x(static_cast<std::size_t>(m));
  std::function<double(int)> level = [&](int k) -> double {
    return q.integrate(
        [&, k](double t) {
          x[static_cast<std::size_t>(k)] = t;
          const double v = k == 0 ? f(x) : level(k - 1);
          return std::isfinite(v) ? v : 0.0;
        },
        0.0, std::numeric_limits<double>::infinity(), tol);
  };
  return level(m - 1);
}

/// Orthant quadrature as a sum over the m! orderings, so integrands with
/// |l_i - l_j| kinks are smooth on each piece.
inline double sorted_orthant_quadrature(const std::function<double(const std::vector<double>&)>& f, int m,
                                        double tol = 1e-10) {
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0.0;
  do {
    total += chamber_quadrature(
        [&](const std::vector<double>& y) {
          std::vector<double> x(y.size());
          for (std::size_t i = 0; i < y.size(); ++i) x[static_cast<std::size_t>(perm[i])] = y[i];
          return f(x);
        },
        m, tol);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Closed form of int_{R_+^m} prod x_i^{a_i} e^{-r_i x_i} = prod a_i!/r_i^{a_i+1}.
inline Rational monomial_orthant(const MultiPoly& p, const std::vector<Rational>& rates) {
  Rational total(0);
  for (const auto& [e, c] : p.terms()) {
    Rational t(c);
    for (int i = 0; i < p.nvars(); ++i) {
      const unsigned a = e[i];
      t *= Rational(chamber::factorial(a)) / chamber::rational_pow(rates[static_cast<std::size_t>(i)], a + 1);
    }
    total += t;
  }
  return total;
}

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  Rational rational(int max_num = 20, int max_den = 9) {
    Rational q(integer(-max_num, max_num), integer(1, max_den));
    q.canonicalize();
    return q;
  }

  Rational positive_rational(int max_num = 9, int max_den = 5) {
    Rational q(integer(1, max_num), integer(1, max_den));
    q.canonicalize();
    return q;
  }

  MultiPoly poly(int nvars, int max_degree, int terms) {
    MultiPoly p(nvars);
    for (int t = 0; t < terms; ++t) {
      chamber::Exponents e;
      int left = integer(0, max_degree);
      for (int i = 0; i < nvars && left > 0; ++i) {
        const int d = integer(0, left);
        e = e.with(i, static_cast<unsigned>(d));
        left -= d;
      }
      p.add_term(e, rational(9, 4));
    }
    return p;
  }

  /// Symmetrisation of a random polynomial.
  MultiPoly symmetric_poly(int nvars, int max_degree, int terms) {
    const MultiPoly base = poly(nvars, max_degree, terms);
    std::vector<int> perm(static_cast<std::size_t>(nvars));
    std::iota(perm.begin(), perm.end(), 0);
    MultiPoly out(nvars);
    do {
      out += base.permuted(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }
};

}  // namespace oracle
