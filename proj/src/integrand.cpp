#include "chamber/integrand.hpp"

#include <set>
#include <sstream>

#include "chamber/errors.hpp"

namespace chamber {

IndexPair IndexPair::of(int a, int b) {
  if (a == b) throw InvalidArgument("index pair needs distinct indices");
  return a < b ? IndexPair{a, b} : IndexPair{b, a};
}

ConeIntegrand::ConeIntegrand(int m, Domain d) : nvars_(m), rates_(static_cast<std::size_t>(m), Rational(1)), domain_(d) {
  if (m < 1 || m > Exponents::kMaxVars) throw InvalidArgument("integrand dimension out of range: " + std::to_string(m));
  factors_.push_back(MultiPoly::constant(m, Rational(1)));
}

ConeIntegrand ConeIntegrand::orthant(int m) { return ConeIntegrand(m, Domain::orthant()); }

ConeIntegrand ConeIntegrand::chamber(int m, int positive_count) {
  if (positive_count < 0 || positive_count > m) {
    throw InvalidArgument("chamber split " + std::to_string(positive_count) + " outside 0.." + std::to_string(m));
  }
  return ConeIntegrand(m, Domain::chamber(positive_count));
}

MultiPoly ConeIntegrand::poly() const { return product(factors_, nvars_); }

bool ConeIntegrand::abs_vandermonde() const {
  const std::size_t pairs = static_cast<std::size_t>(nvars_) * (nvars_ - 1) / 2;
  if (abs_diffs_.size() != pairs) return false;
  for (const auto& [pair, e] : abs_diffs_) {
    if (e != 1) return false;
  }
  return true;
}

int ConeIntegrand::abs_exponent(int i, int j) const {
  auto it = abs_diffs_.find(IndexPair::of(i, j));
  return it == abs_diffs_.end() ? 0 : it->second;
}

bool ConeIntegrand::is_zero() const {
  for (const auto& f : factors_) {
    if (f.is_zero()) return true;
  }
  return false;
}

ConeIntegrand& ConeIntegrand::multiply(MultiPoly f) {
  if (f.nvars() != nvars_) throw InvalidArgument("factor has the wrong variable count");
  if (f.size() == 1 && f.terms().begin()->first == Exponents()) {
    // constants fold into the leading factor
    factors_.front() *= f.terms().begin()->second;
    return *this;
  }
  if (f.is_zero()) factors_.front() = MultiPoly(nvars_);
  factors_.push_back(std::move(f));
  return *this;
}

ConeIntegrand& ConeIntegrand::scale(const Rational& s) {
  factors_.front() *= s;
  return *this;
}

ConeIntegrand& ConeIntegrand::set_rates(std::vector<Rational> rates) {
  if (rates.size() != static_cast<std::size_t>(nvars_)) throw InvalidArgument("rate vector has the wrong length");
  rates_ = std::move(rates);
  return *this;
}

ConeIntegrand& ConeIntegrand::set_rate(int var, Rational rate) {
  if (var < 0 || var >= nvars_) throw InvalidArgument("rate index out of range");
  rates_[static_cast<std::size_t>(var)] = std::move(rate);
  return *this;
}

ConeIntegrand& ConeIntegrand::with_abs_vandermonde() {
  for (int i = 0; i < nvars_; ++i) {
    for (int j = i + 1; j < nvars_; ++j) multiply_abs_diff(i, j, 1);
  }
  return *this;
}

ConeIntegrand& ConeIntegrand::with_abs_vandermonde(std::span<const int> vars) {
  for (std::size_t a = 0; a < vars.size(); ++a) {
    for (std::size_t b = a + 1; b < vars.size(); ++b) multiply_abs_diff(vars[a], vars[b], 1);
  }
  return *this;
}

ConeIntegrand& ConeIntegrand::multiply_abs_diff(int i, int j, int power) {
  if (i < 0 || j < 0 || i >= nvars_ || j >= nvars_) throw InvalidArgument("abs factor index out of range");
  const IndexPair key = IndexPair::of(i, j);
  const int e = (abs_diffs_[key] += power);
  if (e == 0) abs_diffs_.erase(key);
  return *this;
}

ConeIntegrand& ConeIntegrand::with_delta(int eliminate, int keep) {
  deltas_.push_back({eliminate, keep});
  validate();
  return *this;
}

ConeIntegrand& ConeIntegrand::set_domain(Domain d) {
  domain_ = d;
  validate();
  return *this;
}

void ConeIntegrand::validate() const {
  if (rates_.size() != static_cast<std::size_t>(nvars_)) throw InvalidArgument("rate vector has the wrong length");
  for (const auto& f : factors_) {
    if (f.nvars() != nvars_) throw InvalidArgument("factor has the wrong variable count");
  }
  if (domain_.kind == DomainKind::Chamber && (domain_.positive_count < 0 || domain_.positive_count > nvars_)) {
    throw InvalidArgument("chamber split out of range");
  }
  std::set<int> used;
  for (const auto& d : deltas_) {
    if (d.eliminate == d.keep) throw InvalidArgument("delta factor needs two distinct variables");
    for (int v : {d.eliminate, d.keep}) {
      if (v < 0 || v >= nvars_) throw InvalidArgument("delta index out of range");
      if (!used.insert(v).second) throw InvalidArgument("delta factors must involve disjoint variables");
    }
  }
  if (!deltas_.empty() && domain_.kind != DomainKind::Orthant) {
    throw InvalidArgument("delta factors are only supported on the orthant");
  }
}

std::string ConeIntegrand::debug_string() const {
  std::ostringstream os;
  os << (domain_.kind == DomainKind::Orthant ? "orthant" : "chamber Y_" + std::to_string(domain_.positive_count))
     << " m=" << nvars_ << "\n";
  os << "poly: " << to_canonical_string(poly()) << "\n";
  os << "rates:";
  for (const auto& r : rates_) os << " " << r.get_str();
  os << "\n";
  if (!abs_diffs_.empty()) {
    os << "abs:";
    for (const auto& [p, e] : abs_diffs_) os << " |l" << p.i + 1 << "-l" << p.j + 1 << "|^" << e;
    os << "\n";
  }
  for (const auto& d : deltas_) os << "delta(l" << d.eliminate + 1 << "-l" << d.keep + 1 << ")\n";
  return os.str();
}

}  // namespace chamber
