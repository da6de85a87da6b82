#pragma once

// Upper half-plane, its unit tangent bundle, and the PSL(2,R) action.

#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>

namespace horoeq {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Point x + iy of the upper half-plane; y > 0, both finite.
class UpperHalfPoint {
 public:
  UpperHalfPoint(double x, double y);
  static UpperHalfPoint from_complex(std::complex<double> z) { return {z.real(), z.imag()}; }

  double x() const { return x_; }
  double y() const { return y_; }
  std::complex<double> as_complex() const { return {x_, y_}; }

  friend bool operator==(const UpperHalfPoint&, const UpperHalfPoint&) = default;

 private:
  double x_;
  double y_;
};

/// Direction angle stored as a 64-bit fixed-point fraction of a full turn.
/// Reduction mod 2*pi is implicit and exact; negation is an exact involution.
class Angle {
 public:
  constexpr Angle() = default;
  static Angle from_radians(double theta);
  static constexpr Angle from_turns_fixed(std::uint64_t t) { return Angle(t); }

  /// Radians in [0, 2*pi).
  double radians() const;
  constexpr std::uint64_t turns_fixed() const { return turns_; }

  constexpr Angle operator-() const { return Angle(0 - turns_); }
  constexpr Angle operator+(Angle o) const { return Angle(turns_ + o.turns_); }
  constexpr Angle operator-(Angle o) const { return Angle(turns_ - o.turns_); }
  friend constexpr bool operator==(Angle, Angle) = default;

 private:
  constexpr explicit Angle(std::uint64_t t) : turns_(t) {}
  std::uint64_t turns_ = 0;
};

/// Shortest signed distance between two angles, in radians.
double angle_distance(Angle a, Angle b);

/// Reduces an angle in radians to [0, 2*pi). Idempotent.
double reduce_angle(double theta);

class UnitTangent {
 public:
  UnitTangent(UpperHalfPoint z, Angle theta) : z_(z), theta_(theta) {}
  UnitTangent(UpperHalfPoint z, double theta_radians)
      : z_(z), theta_(Angle::from_radians(theta_radians)) {}

  const UpperHalfPoint& z() const { return z_; }
  Angle angle() const { return theta_; }
  double theta() const { return theta_.radians(); }

  friend bool operator==(const UnitTangent&, const UnitTangent&) = default;

 private:
  UpperHalfPoint z_;
  Angle theta_;
};

/// Element of PSL(2,R). Stored with determinant renormalized to 1 and the
/// sign fixed so that the first nonzero of (c, a) is positive; projectively
/// equal matrices therefore compare equal field by field.
class MoebiusMap {
 public:
  MoebiusMap() = default;
  MoebiusMap(double a, double b, double c, double d);

  static MoebiusMap identity() { return {}; }
  static MoebiusMap translation(double t) { return {1.0, t, 0.0, 1.0}; }
  static MoebiusMap inversion() { return {0.0, -1.0, 1.0, 0.0}; }

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }
  double det() const { return a_ * d_ - b_ * c_; }

  MoebiusMap inverse() const { return {d_, -b_, -c_, a_}; }
  MoebiusMap operator-() const { return {-a_, -b_, -c_, -d_}; }

  /// Tilde automorphism (a,b;c,d) -> (a,-b;-c,d).
  MoebiusMap tilde() const { return {a_, -b_, -c_, d_}; }

  friend MoebiusMap operator*(const MoebiusMap& g, const MoebiusMap& h);
  friend bool operator==(const MoebiusMap&, const MoebiusMap&) = default;
  friend std::ostream& operator<<(std::ostream& os, const MoebiusMap& m);

 private:
  double a_ = 1.0, b_ = 0.0, c_ = 0.0, d_ = 1.0;
};

/// Point action z -> (az+b)/(cz+d). Throws NumericGuard(Overflow) when
/// |cz+d| < 1e-300.
UpperHalfPoint apply(const MoebiusMap& g, const UpperHalfPoint& z);

/// Unit tangent action (z, theta) -> (gz, theta - 2 arg(cz+d)).
UnitTangent apply(const MoebiusMap& g, const UnitTangent& p);

/// u(z,w) = |z-w|^2 / (4 Im z Im w).
double point_pair_invariant(const UpperHalfPoint& z, const UpperHalfPoint& w);

/// Hyperbolic distance, via cosh(d) = 1 + 2u, evaluated as 2 asinh(sqrt(u)).
double hyperbolic_distance(const UpperHalfPoint& z, const UpperHalfPoint& w);

/// V(z, theta) = (-conj(z), -theta).
UnitTangent reflect(const UnitTangent& p);

}  // namespace horoeq
