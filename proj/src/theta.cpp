#include "horoeq/theta.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "horoeq/arith.hpp"
#include "horoeq/errors.hpp"

namespace horoeq {

namespace {

double unit_bump(double t) {
  const double s = 1.0 - t * t;
  return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

struct BumpMoments {
  double mass;         // integral of unit_bump over (-1, 1)
  double mass_sq;      // integral of unit_bump^2 over (-1, 1)
};

const BumpMoments& bump_moments() {
  static const BumpMoments m = [] {
    boost::math::quadrature::tanh_sinh<double> q;
    BumpMoments out{};
    out.mass = q.integrate([](double t) { return unit_bump(t); }, -1.0, 1.0);
    out.mass_sq = q.integrate(
        [](double t) {
          const double v = unit_bump(t);
          return v * v;
        },
        -1.0, 1.0);
    return out;
  }();
  return m;
}

}  // namespace

Cutoff Cutoff::bump(double half_width) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw DomainError("bump half-width must be positive");
  const BumpMoments& m = bump_moments();
  Cutoff c;
  c.kind_ = Kind::Bump;
  c.half_width_ = half_width;
  c.scale_ = 1.0 / (m.mass * half_width);
  c.integral_ = 1.0;
  c.integral_sq_ = c.scale_ * c.scale_ * m.mass_sq * half_width;
  return c;
}

Cutoff Cutoff::table(double half_width, std::vector<double> values) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw DomainError("table half-width must be positive");
  if (values.size() < 2) throw DomainError("cutoff table needs at least two values");
  if (values.back() != 0.0) throw DomainError("cutoff table must vanish at its support edge");
  Cutoff c;
  c.kind_ = Kind::Table;
  c.half_width_ = half_width;
  const double h = half_width / static_cast<double>(values.size() - 1);
  double mass = 0.0;
  double mass_sq = 0.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double a = values[i], b = values[i + 1];
    mass += 0.5 * h * (a + b);
    mass_sq += h * (a * a + a * b + b * b) / 3.0;
  }
  c.integral_ = 2.0 * mass;
  c.integral_sq_ = 2.0 * mass_sq;
  c.values_ = std::move(values);
  return c;
}

double Cutoff::operator()(double x) const {
  const double ax = std::abs(x);
  if (ax >= half_width_) return 0.0;
  if (kind_ == Kind::Bump) return scale_ * unit_bump(ax / half_width_);
  const double pos = ax / half_width_ * static_cast<double>(values_.size() - 1);
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= values_.size()) return values_.back();
  const double t = pos - static_cast<double>(i);
  return values_[i] + t * (values_[i + 1] - values_[i]);
}

std::complex<double> theta_sum(const Cutoff& psi, double x, double y) {
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("theta_sum: y must be positive");
  const double sqrt_y = std::sqrt(y);
  if (psi.half_width() / sqrt_y > 3.0e9) throw guard_violation("theta_sum: y too small for int64 j^2");
  double re = psi(0.0);
  double im = 0.0;
  for (std::int64_t j = 1;; ++j) {
    const double arg = static_cast<double>(j) * sqrt_y;
    if (arg >= psi.half_width()) break;
    const double w = psi(arg);
    if (w == 0.0) continue;
    double phase = frac_mul(j * j, x);
    if (phase >= 0.5) phase -= 1.0;
    const double angle = 2.0 * std::numbers::pi * phase;
    re += 2.0 * w * std::cos(angle);
    im += 2.0 * w * std::sin(angle);
  }
  const double scale = std::sqrt(sqrt_y);
  return {scale * re, scale * im};
}

}  // namespace horoeq
