#pragma once

// The beta_2 coefficient family: per-index chamber integrals beta_2q(m),
// the minimal-index closed form, beta_2' by several reductions, and the
// integration-by-parts identities behind the positivity argument.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chamber/integrand.hpp"
#include "chamber/integrate.hpp"
#include "chamber/mc.hpp"
#include "chamber/scalar.hpp"

namespace chamber {

/// Normalisation constants. Each formula family binds its own; they differ.
enum class NormFamily {
  /// 2^{(m^2+m)/2} / (4 pi^m prod_{j<m} j!), in front of each chamber integral.
  ChamberPrefactor,
  /// 2^{(m^2+m-2)/2} / (pi^m (m+1)(m+2)^3(m+3) prod_{j<=m} j!), reduced orthant forms.
  Reduced,
  /// 2^{(m^2+m-2)/2} / (m(m+1)(m+2)^3(m+3) pi^m prod_{j<m} j!), symmetrized forms.
  Symmetrized,
};

struct NormConstant {
  NormFamily family;
  PiScaledRational value;
};

NormConstant norm_constant(NormFamily family, int m);

/// F(D(l)) = 1 - 4 Tr/(m(m+1)) + (4 Tr^2 + 8 Tr_2)/(m(m+1)(m+2)(m+3)).
Rational f_matrix(std::span<const Rational> lambda);
MultiPoly f_matrix_poly(int m);

/// f_1 = 1, f_2 = 1 - c l, f_3 = (c^2 l^2 - 2 c l + 2)/2.
Rational f_s(int s, const Rational& c, const Rational& lambda_m);
/// f_s as a polynomial in the last of m variables.
MultiPoly f_s_poly(int s, const Rational& c, int m);

/// Polynomial part of the reduced integrand for Morse index q; for q > m the
/// factor e^{(m+2) l_m} is carried by the rates instead.
MultiPoly iq_poly(int m, int q);

struct BetaIntegrand {
  PiScaledRational prefactor;
  /// Over Y_{2m-q}, including Delta prod|l_j| e^{-sum l_j}.
  ConeIntegrand integrand;
};

BetaIntegrand iq_integrand(int m, int q);

enum class ChamberRoute { Direct, ChainSubstitution };

PiScaledRational beta2q(int m, int q, ChamberRoute route = ChamberRoute::Direct);

/// 4 m! / (pi^m (m+2)^3 (m+3)).
PiScaledRational beta2m_closed(int m);
/// Minimal index via the symmetrized orthant integral, by sector integration.
PiScaledRational beta2m_symmetrized(int m, const ExactOptions& opts = {});
/// Minimal index via Selberg moments; needs m >= 3 (moment range 0 <= k <= ell < m).
PiScaledRational beta2m_selberg(int m);

enum class PrimeRoute {
  /// Orthant form with polynomial A + 4(m-1)(m+2)(...) against |Delta| e^{-l_m}.
  Symmetrized,
  /// 16(m+1) T1 + 24(m-1)(m+2) T2 after integrating the delta term out.
  DeltaReduced,
  /// Single chamber Y_m after mapping every Y_p onto it.
  ChamberSum,
  /// Sum of the per-index chamber integrals.
  PerIndexSum,
};

PiScaledRational beta2_prime(int m, PrimeRoute route, const ExactOptions& opts = {});

/// Polynomial of the symmetrized beta_2' form (32 at m=1).
MultiPoly prime_symmetrized_poly(int m);
/// P_p without its e^{-l_p} factor; p is 0-based.
MultiPoly chamber_sum_poly(int m, int p);
/// int_{R_+^m} |Delta| prod l_j e^{-sum l_j - l_m}.
PiScaledRational prime_t1(int m, const ExactOptions& opts = {});
/// The delta term, collapsed generically from l_1^2 delta(l_1-l_m)/|l_1-l_m| times the weight.
PiScaledRational prime_t2(int m, const ExactOptions& opts = {});
/// The delta term from its explicit (m-1)-variable form.
PiScaledRational prime_t2_reduced(int m, const ExactOptions& opts = {});

struct CrossCheck {
  std::string name;
  bool passed = false;
  std::string lhs;
  std::string rhs;
  double lhs_approx = 0.0;
  double rhs_approx = 0.0;

  static CrossCheck exact(std::string name, const PiScaledRational& lhs, const PiScaledRational& rhs);
};

struct BetaOptions {
  ExactOptions exact;
  /// Above this m, beta2_total switches to Monte Carlo.
  int max_exact_m = 6;
  /// Per-index composite-substitution checks are skipped above this m.
  int max_substitution_check_m = 4;
  McConfig mc;
};

struct BetaReport {
  int m = 0;
  bool exact = true;
  /// q -> beta_2q(m), exact mode only.
  std::map<int, PiScaledRational> beta2q;
  PiScaledRational beta2m_closed;
  std::optional<PiScaledRational> beta2_prime;
  std::optional<PiScaledRational> beta2_total;
  std::optional<McEstimate> mc;
  std::vector<CrossCheck> crosschecks;
  /// Which formula produced each reported value.
  std::map<std::string, std::string> provenance;

  bool all_checks_passed() const;
};

/// Throws PositivityViolation if an exact beta_2 is not positive.
BetaReport beta2_total(int m, const BetaOptions& opts = {});

enum class Identity { H, J, L, I, K, K1 };

Identity parse_identity(const std::string& name);
std::string to_string(Identity id);
/// Smallest m for which the identity holds.
int identity_min_m(Identity id);

struct IdentityResult {
  Identity id;
  int m = 0;
  PiScaledRational lhs;
  PiScaledRational rhs;
  bool equal = false;
};

/// Both sides exactly, through sign-resolved sector integration. Throws
/// IdentityFailure (carrying both sides) when they differ.
IdentityResult verify_identity(Identity id, int m, const ExactOptions& opts = {});

struct LeadingBounds {
  Rational lower;
  Rational upper;
  Rational n_m;
};

/// 2(m+1)/(m+2) < n(m) < (2m+3)/3 and n_m(m) = 2(m+1)/(m+2).
LeadingBounds leading_bounds(int m);

}  // namespace chamber
