#pragma once

#include <cstdint>
#include <string>

namespace horoeq {

/// frac(n * a) in [0, 1), with the rounding error of the product recovered
/// by an FMA so the result is correct to about one ulp of 1.
double frac_mul(std::int64_t n, double a);

/// Distance from x to the nearest integer (ties to even).
double nearest_int_distance(double x);

/// Real number held as p/q + tail, with p/q an exact rational anchor.
///
/// Plain reals use q = 1; the integer part lives in p so that shifts by
/// integers are exact. Liouville-type numbers built from convergents keep
/// their last convergent in (p, q) so that m*alpha mod 1 stays accurate even
/// when the tail is far below the resolution of a double.
class Alpha {
 public:
  Alpha() = default;
  static Alpha real(double v);
  static Alpha rational(std::int64_t p, std::int64_t q, double tail = 0.0);
  /// "sqrt2", "golden", "e", "p/q", or a decimal literal.
  static Alpha parse(const std::string& text);

  std::int64_t anchor_p() const { return p_; }
  std::int64_t anchor_q() const { return q_; }
  double tail() const { return tail_; }
  double value() const;

  /// frac(m * alpha) in [0, 1).
  double frac_multiple(std::int64_t m) const;

  Alpha negated() const { return rational(-p_, q_, -tail_); }
  Alpha shifted(std::int64_t k) const;

 private:
  std::int64_t p_ = 0;
  std::int64_t q_ = 1;
  double tail_ = 0.0;
};

}  // namespace horoeq
