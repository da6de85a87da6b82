#pragma once

// Even compactly supported cutoff functions and the theta sum
//   theta_psi(x + iy) = y^(1/4) * sum_j psi(j sqrt(y)) e(j^2 x).

#include <complex>
#include <memory>
#include <vector>

namespace horoeq {

class Cutoff {
 public:
  enum class Kind { Bump, Table };

  /// psi(x) = (kappa / s) exp(-1 / (1 - (x/s)^2)) on (-s, s), with kappa
  /// chosen so that the integral of psi is 1.
  static Cutoff bump(double half_width = 1.0);

  /// Piecewise linear psi through values[i] at x = i * half_width / (n - 1),
  /// extended evenly. The last value must be 0.
  static Cutoff table(double half_width, std::vector<double> values);

  Kind kind() const { return kind_; }
  double operator()(double x) const;
  double half_width() const { return half_width_; }
  double integral() const { return integral_; }
  double integral_of_square() const { return integral_sq_; }
  const std::vector<double>& table_values() const { return values_; }

 private:
  Cutoff() = default;

  Kind kind_ = Kind::Bump;
  double half_width_ = 1.0;
  double scale_ = 1.0;  // kappa / s for the bump
  std::vector<double> values_;
  double integral_ = 0.0;
  double integral_sq_ = 0.0;
};

/// Exact finite theta sum; O(half_width / sqrt(y)) terms. Requires y > 0.
std::complex<double> theta_sum(const Cutoff& psi, double x, double y);

}  // namespace horoeq
