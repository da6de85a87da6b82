#include "horoeq/hyperbolic.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "horoeq/errors.hpp"

namespace horoeq {

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;
constexpr long double kTwo64 = 18446744073709551616.0L;

}  // namespace

UpperHalfPoint::UpperHalfPoint(double x, double y) : x_(x), y_(y) {
  if (!std::isfinite(x) || !std::isfinite(y))
    throw DomainError("UpperHalfPoint: coordinates must be finite");
  if (!(y > 0.0)) throw DomainError("UpperHalfPoint: y must be positive, got " + std::to_string(y));
}

Angle Angle::from_radians(double theta) {
  if (!std::isfinite(theta)) throw DomainError("Angle: non-finite radians");
  long double t = static_cast<long double>(theta) / kTwoPiL;
  t -= std::floor(t);
  long double scaled = std::ldexp(t, 64);
  if (scaled >= kTwo64) scaled = 0.0L;
  return Angle(static_cast<std::uint64_t>(scaled));
}

double Angle::radians() const {
  const long double r = std::ldexp(static_cast<long double>(turns_), -64) * kTwoPiL;
  const double out = static_cast<double>(r);
  return out < kTwoPi ? out : 0.0;
}

double angle_distance(Angle a, Angle b) {
  const auto diff = static_cast<std::int64_t>(a.turns_fixed() - b.turns_fixed());
  return static_cast<double>(std::ldexp(static_cast<long double>(diff), -64) * kTwoPiL);
}

double reduce_angle(double theta) {
  if (theta >= 0.0 && theta < kTwoPi) return theta;
  double r = theta - kTwoPi * std::floor(theta / kTwoPi);
  if (r >= kTwoPi || r < 0.0) r = 0.0;
  return r;
}

MoebiusMap::MoebiusMap(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
    throw DomainError("MoebiusMap: non-finite entry");
  const double det = a * d - b * c;
  if (!(det > 0.0)) throw DomainError("MoebiusMap: determinant must be positive");
  // Already-normalized input is left untouched so that re-wrapping a stored
  // map (or its negation) is bit-exact.
  const double det_scale = std::abs(a_ * d_) + std::abs(b_ * c_);
  if (std::abs(det - 1.0) > 16.0 * std::numeric_limits<double>::epsilon() * det_scale) {
    const double s = 1.0 / std::sqrt(det);
    a_ *= s;
    b_ *= s;
    c_ *= s;
    d_ *= s;
  }
  const bool flip = (c_ != 0.0) ? (c_ < 0.0) : (a_ < 0.0);
  if (flip) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
    d_ = -d_;
  }
  // Avoid -0.0 so that field comparison is a true projective equality.
  a_ += 0.0;
  b_ += 0.0;
  c_ += 0.0;
  d_ += 0.0;
}

MoebiusMap operator*(const MoebiusMap& g, const MoebiusMap& h) {
  return {g.a_ * h.a_ + g.b_ * h.c_, g.a_ * h.b_ + g.b_ * h.d_, g.c_ * h.a_ + g.d_ * h.c_,
          g.c_ * h.b_ + g.d_ * h.d_};
}

std::ostream& operator<<(std::ostream& os, const MoebiusMap& m) {
  return os << "(" << m.a_ << ", " << m.b_ << "; " << m.c_ << ", " << m.d_ << ")";
}

namespace {

struct Denominator {
  double re;
  double im;
  double norm2;
};

Denominator denominator(const MoebiusMap& g, const UpperHalfPoint& z) {
  const double re = g.c() * z.x() + g.d();
  const double im = g.c() * z.y();
  const double n2 = re * re + im * im;
  if (!(std::sqrt(n2) >= 1e-300)) throw overflow_error("|cz+d| underflow in Moebius action");
  return {re, im, n2};
}

UpperHalfPoint apply_with(const MoebiusMap& g, const UpperHalfPoint& z, const Denominator& w) {
  // (az+b) * conj(cz+d) / |cz+d|^2; imaginary part reduces to y / |cz+d|^2.
  const double num_re = g.a() * z.x() + g.b();
  const double num_im = g.a() * z.y();
  const double x = (num_re * w.re + num_im * w.im) / w.norm2;
  const double y = z.y() / w.norm2;
  if (!std::isfinite(x) || !(y > 0.0) || !std::isfinite(y))
    throw overflow_error("Moebius image left the representable half-plane");
  return {x, y};
}

}  // namespace

UpperHalfPoint apply(const MoebiusMap& g, const UpperHalfPoint& z) {
  return apply_with(g, z, denominator(g, z));
}

UnitTangent apply(const MoebiusMap& g, const UnitTangent& p) {
  const Denominator w = denominator(g, p.z());
  const UpperHalfPoint gz = apply_with(g, p.z(), w);
  if (g.c() == 0.0) return {gz, p.angle()};  // arg(d) = 0 since d > 0
  const Angle beta = Angle::from_radians(std::atan2(w.im, w.re));
  return {gz, p.angle() - beta - beta};
}

double point_pair_invariant(const UpperHalfPoint& z, const UpperHalfPoint& w) {
  const double dx = z.x() - w.x();
  const double dy = z.y() - w.y();
  return (dx * dx + dy * dy) / (4.0 * z.y() * w.y());
}

double hyperbolic_distance(const UpperHalfPoint& z, const UpperHalfPoint& w) {
  return 2.0 * std::asinh(std::sqrt(point_pair_invariant(z, w)));
}

UnitTangent reflect(const UnitTangent& p) {
  return {UpperHalfPoint(-p.z().x(), p.z().y()), -p.angle()};
}

}  // namespace horoeq
