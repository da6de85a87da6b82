#pragma once

// Pair correlation of n^2 alpha mod 1: the sharp window count, the smoothed
// statistic with a window g whose Fourier transform has compact support,
// and its evaluation through theta sums.

#include <cstdint>
#include <utility>
#include <vector>

#include "horoeq/arith.hpp"
#include "horoeq/kronecker.hpp"
#include "horoeq/summation.hpp"
#include "horoeq/theta.hpp"

namespace horoeq {

/// Window g given through its Fourier transform ghat, which is even,
/// piecewise linear on the grid u = k * spacing and zero from the last grid
/// value on. Then
///   g(x) = sin^2(pi s x) / (pi^2 s x^2) * (v_0 + 2 sum_k v_k cos(2 pi k s x)),
/// with s the spacing.
class Window {
 public:
  /// ghat(u) = max(0, 1 - |u| / scale), g(x) = scale * (sin(pi scale x) / (pi scale x))^2.
  static Window fejer(double scale = 1.0);
  /// ghat through values[k] at u = k * spacing; the last value must be 0.
  static Window table(double spacing, std::vector<double> values);

  double ghat(double u) const;
  double g(double x) const;
  /// Radius of the support of ghat.
  double support() const { return spacing_ * static_cast<double>(values_.size() - 1); }
  /// Integral of g, equal to ghat(0).
  double integral() const { return values_.front(); }
  double spacing() const { return spacing_; }
  const std::vector<double>& values() const { return values_; }
  bool is_fejer() const { return fejer_; }

  /// sum_m g(N (t + m)). Summed in closed form when spacing * N is an
  /// integer, otherwise truncated where |g| drops below 1e-14 of its peak.
  double periodized(double t, std::int64_t N) const;

  /// ghat as a piecewise linear weight for weighted_average.
  PiecewisePolynomial as_weight() const;

 private:
  Window(double spacing, std::vector<double> values, bool fejer);
  double q_factor(double x) const;

  double spacing_;
  std::vector<double> values_;
  bool fejer_;
  double q_abs_max_;
};

struct WindowPair {
  Window g;
  Cutoff psi;

  /// Fejer g with scale 1 and the unit-mass bump psi on (-1, 1).
  static WindowPair defaults();
  /// Limit of the smoothed statistic: int g * (int psi)^2.
  double poisson_target() const { return g.integral() * psi.integral() * psi.integral(); }
};

inline constexpr std::int64_t kMaxPairCorrN = 94906265;

/// (1/N) #{1 <= j != k <= N : j^2 alpha - k^2 alpha in [a/N, b/N] + Z}.
/// Sorted binary-search path.
double r2_sharp(const Alpha& alpha, std::int64_t N, double a, double b, const Exec& exec = {});

/// Same count by the direct double loop. Retained as the oracle.
double r2_sharp_reference(const Alpha& alpha, std::int64_t N, double a, double b);

/// (1/N) sum_{|j| != |k|} psi(j/N) psi(k/N) sum_m g(N (j^2 alpha - k^2 alpha + m)).
double r2_smoothed(const Alpha& alpha, std::int64_t N, const WindowPair& w,
                   const Exec& exec = {});

/// (1/N) sum_m ghat(m/N) |theta_psi(m alpha + i/N^2)|^2, all j and k included.
double r2_full_via_theta(const Alpha& alpha, std::int64_t N, const WindowPair& w,
                         const Exec& exec = {});

/// The m = 0 term of r2_full_via_theta.
double theta_zero_mode(std::int64_t N, const WindowPair& w);

/// Contribution of the pairs |j| = |k|:
///   (2/N) (sum_{j in Z} psi(j/N)^2 - psi(0)^2 / 2) * sum_m g(N m).
double diagonal_term(std::int64_t N, const WindowPair& w);

/// r2_full_via_theta minus diagonal_term; equals r2_smoothed.
double r2_via_theta(const Alpha& alpha, std::int64_t N, const WindowPair& w,
                    const Exec& exec = {});

/// lhs counts (1/N) sum over 0 < |j| != |k| <= N of the sharp window; rhs is
/// 4 r2_sharp. The two are equal as an integer identity.
std::pair<double, double> sharp_smoothed_bridge(const Alpha& alpha, std::int64_t N, double a,
                                                double b);

}  // namespace horoeq
