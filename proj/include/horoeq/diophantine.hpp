#pragma once

// Continued fractions, diophantine type fits, sums of min(M, 1/||n alpha||),
// admissible scaling exponents, and the Liouville-type construction whose
// Kronecker points escape into the cusp.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "horoeq/arith.hpp"
#include "horoeq/summation.hpp"

namespace horoeq {

struct Convergent {
  std::int64_t p;
  std::int64_t q;
};

struct ContinuedFraction {
  /// a_0, a_1, ..., a_depth. a_0 may be any integer, the rest are >= 1.
  std::vector<std::int64_t> partial_quotients;
  /// p_j / q_j for j = 0..depth.
  std::vector<Convergent> convergents;
  /// The expansion ended because alpha is (numerically) rational.
  bool terminating = false;
  /// Name of the exact quotient pattern ("sqrt2", "golden", "e"), or empty.
  std::string symbol;

  std::size_t depth() const { return partial_quotients.empty() ? 0 : partial_quotients.size() - 1; }
};

/// Convergents from explicit quotients. Overflow of int64 is a numeric guard.
ContinuedFraction from_quotients(std::vector<std::int64_t> quotients);

/// Expansion of the exact rational value of a double. Stops early (and sets
/// `terminating`) when the double is a short rational up to rounding; throws
/// DepthUnreliable when further quotients are not determined by the double.
ContinuedFraction continued_fraction(double alpha, std::size_t depth);

/// "sqrt2", "golden" and "e" use their exact quotient patterns; "p/q" is
/// expanded exactly; anything else is parsed as a decimal double.
ContinuedFraction continued_fraction(const std::string& alpha, std::size_t depth);

/// Quotient j of a symbolic pattern.
std::int64_t symbolic_quotient(const std::string& symbol, std::size_t j);

struct TypeEstimate {
  double K;
  double C;
  std::size_t depth;  // convergents used in the fit
};

/// Type fit over the convergents of cf whose error |alpha - p_j/q_j| is
/// resolved by the representation of alpha. K is the least-squares slope of
/// -log|alpha - p_j/q_j| against log q_j (at least 2), and C is 0.99 times the
/// smallest q_j^K |alpha - p_j/q_j|, so |alpha - p_j/q_j| > C / q_j^K holds
/// on every convergent used.
TypeEstimate estimate_type(const ContinuedFraction& cf, const Alpha& alpha);

/// |alpha - p/q| for convergent j, exact up to double rounding where the
/// representation allows it.
double convergent_error(const ContinuedFraction& cf, const Alpha& alpha, std::size_t j);

/// sum_{n=N1}^{N2} min(M, 1/||n alpha||).
double min_norm_sum(const Alpha& alpha, double M, std::int64_t N1, std::int64_t N2,
                    const Exec& exec = {});

/// Largest admissible scaling exponent nu for an alpha of type K under a
/// spectral bound with exponent beta (the bound on nu is strict).
double admissible_nu(double beta, double K);

struct Counterexample {
  double nu;
  Alpha alpha;
  /// Quotients [0; a_1, ..., a_{L+1}] followed implicitly by 1, 1, 1, ...
  ContinuedFraction cf;
  /// Indices j = 1..L of the certified levels.
  std::size_t levels;
  /// Exponent 2 + 2/nu.
  double exponent;
  /// True when every level was certified in exact integer arithmetic; false
  /// when the exponent is irrational and a long double comparison was used.
  bool exact_certificate;
};

/// alpha with |alpha - p_j/q_j| <= (3 q_j)^(-2-2/nu) for j = 1..levels.
/// Throws PrecisionExceeded when q_j^2 >= 2^52 at a requested level.
Counterexample make_counterexample(double nu, std::size_t levels);

/// Exact check of q_j q_{j+1} >= (3 q_j)^(2+2/nu) for level j of cf.
/// Returns false if the exponent is not a rational with a small denominator.
bool certify_level_exact(const ContinuedFraction& cf, std::size_t j, double nu, bool& holds);

/// Integer window [M_lo, M_hi] on which both escape conditions
///   4 q^2 <= M^nu   and   4 M^(2+nu) q^2 <= (3q)^(4+4/nu)
/// hold. Throws EmptyWindow when no integer satisfies both.
std::pair<std::int64_t, std::int64_t> escape_window(std::int64_t q, double nu);

/// The two escape conditions for a single M, decided exactly when nu and
/// 4/nu are rationals with small denominators.
bool escape_conditions_hold(std::int64_t q, double nu, std::int64_t M);

}  // namespace horoeq
