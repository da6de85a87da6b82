#include "horoeq/testfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "horoeq/errors.hpp"
#include "horoeq/summation.hpp"

namespace horoeq {

namespace {

double ramp(double lo, double hi, double eps, double v) {
  if (v < lo || v > hi) return 0.0;
  if (eps <= 0.0) return 1.0;
  const double inside = std::min(v - lo, hi - v);
  return std::min(1.0, inside / eps);
}

void validate_box(const Box& b) {
  if (!(b.x_lo < b.x_hi) || !(b.y_lo < b.y_hi) || std::isnan(b.x_lo) || std::isnan(b.y_hi))
    throw DomainError("cell box must have lo < hi on both axes");
  if (!(b.epsilon >= 0.0)) throw DomainError("cell smoothing margin must be >= 0");
  if (b.epsilon > 0.0) {
    if (std::isfinite(b.x_hi - b.x_lo) && 2.0 * b.epsilon > b.x_hi - b.x_lo)
      throw DomainError("cell smoothing margin exceeds half the x-width");
    if (std::isfinite(b.y_hi - b.y_lo) && 2.0 * b.epsilon > b.y_hi - b.y_lo)
      throw DomainError("cell smoothing margin exceeds half the y-height");
  }
}

// Integral over [a, b] of the ramp profile on [lo, hi] with margin eps,
// weighted by 1 (x axis) or by y^-2 (y axis). The profile is piecewise
// linear with breakpoints lo, lo+eps, hi-eps, hi.
double ramp_integral(double lo, double hi, double eps, double a, double b, bool hyperbolic) {
  a = std::max(a, lo);
  b = std::min(b, hi);
  if (!(a < b)) return 0.0;
  std::vector<double> cuts{a, b};
  if (eps > 0.0) {
    for (double c : {lo + eps, hi - eps})
      if (std::isfinite(c) && c > a && c < b) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double u = cuts[i], v = cuts[i + 1];
    // Which piece: rising, flat, or falling.
    const double mid = std::isfinite(v) ? 0.5 * (u + v) : u + 1.0;
    int piece = 0;  // flat
    if (eps > 0.0 && mid - lo < eps) piece = 1;
    if (eps > 0.0 && std::isfinite(hi) && hi - mid < eps && hi - mid < mid - lo) piece = -1;
    if (!hyperbolic) {
      if (piece == 0) {
        total += v - u;
      } else {
        // linear: exact by the trapezoid rule
        total += 0.5 * (v - u) * (ramp(lo, hi, eps, u) + ramp(lo, hi, eps, v));
      }
      continue;
    }
    const double inv_u = 1.0 / u;
    const double inv_v = std::isfinite(v) ? 1.0 / v : 0.0;
    if (piece == 0) {
      total += inv_u - inv_v;
    } else if (piece == 1) {
      // integral of (y - lo) / (eps y^2) = [ln y + lo / y] / eps
      total += (std::log(v / u) + lo * (inv_v - inv_u)) / eps;
    } else {
      // integral of (hi - y) / (eps y^2) = [-hi / y - ln y] / eps
      total += (-hi * (inv_v - inv_u) - std::log(v / u)) / eps;
    }
  }
  return total;
}

// Hyperbolic area of box intersected with the standard PSL(2,Z) domain,
// for a sharp box.
double sharp_box_area_in_modular_domain(const Box& b) {
  const double xl = std::max(b.x_lo, -0.5);
  const double xh = std::min(b.x_hi, 0.5);
  if (!(xl < xh)) return 0.0;
  const double y0 = std::max(b.y_lo, 0.0);
  const double y1 = b.y_hi;
  const double inv_y1 = std::isfinite(y1) ? 1.0 / y1 : 0.0;
  std::vector<double> cuts{xl, xh};
  for (double level : {y0, y1}) {
    if (level < 1.0) {
      const double r = std::sqrt(1.0 - level * level);
      for (double c : {-r, r})
        if (c > xl && c < xh) cuts.push_back(c);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double u = cuts[i], v = cuts[i + 1];
    const double m = 0.5 * (u + v);
    const double arc = std::sqrt(1.0 - m * m);
    if (arc <= y0) {
      if (y0 < y1) area += (v - u) * (1.0 / y0 - inv_y1);
    } else if (arc < y1) {
      area += std::asin(v) - std::asin(u) - (v - u) * inv_y1;
    }
  }
  return area;
}

bool box_avoids_unit_disk(const Box& b) {
  const double x_near = (b.x_lo <= 0.0 && b.x_hi >= 0.0) ? 0.0
                        : (b.x_lo > 0.0)                 ? b.x_lo
                                                         : b.x_hi;
  return x_near * x_near + b.y_lo * b.y_lo >= 1.0;
}

}  // namespace

double Box::value(double x, double y) const {
  return ramp(x_lo, x_hi, epsilon, x) * ramp(y_lo, y_hi, epsilon, y);
}

bool box_mean_closed_form(const FuchsianGroup& g, const Box& box, double& mean) {
  if (std::isinf(box.x_lo) && std::isinf(box.x_hi) && box.y_lo <= 0.0 && std::isinf(box.y_hi)) {
    mean = 1.0;
    return true;
  }
  double area = 0.0;
  if (box_avoids_unit_disk(box)) {
    // Inside |z| >= 1 the domain is the plain strip |x| <= 1/2.
    area = ramp_integral(box.x_lo, box.x_hi, box.epsilon, -0.5, 0.5, false) *
           ramp_integral(box.y_lo, box.y_hi, box.epsilon, 1.0, HUGE_VAL, true);
    if (box.y_lo < 1.0) {
      // box reaches below y = 1 only where |x| >= sqrt(1 - y^2); fall back
      // to the sharp formula, which covers that case exactly.
      if (box.epsilon > 0.0) return false;
      area = sharp_box_area_in_modular_domain(box);
    }
  } else if (g.preset() == GroupPreset::PSL2Z && box.epsilon == 0.0) {
    area = sharp_box_area_in_modular_domain(box);
  } else {
    return false;
  }
  mean = area / g.area();
  return true;
}

double estimate_theta_growth_constant(const Cutoff& psi) {
  const FuchsianGroup& g = FuchsianGroup::gamma1_4();
  double worst = 0.0;
  // Probe near each cusp class and along rationals with small denominators.
  const std::array<double, 9> xs{0.0, 0.5, 0.25, 1.0 / 3.0, 0.2, 1.0 / 6.0, 0.125, 0.1, 0.37};
  for (double x0 : xs) {
    for (int e = 0; e <= 48; ++e) {
      const double y = std::pow(10.0, -e / 8.0);
      for (double dx : {0.0, 0.3 * y, -0.7 * y}) {
        const double x = x0 + dx;
        const double t = std::norm(theta_sum(psi, x, y));
        const double yy = g.invariant_height(UpperHalfPoint(x, y));
        worst = std::max(worst, t / std::sqrt(yy));
      }
    }
  }
  return worst;
}

TestFunction TestFunction::cell(const FuchsianGroup& g, const Box& box) {
  validate_box(box);
  return TestFunction(g, CellIndicator{box});
}

TestFunction TestFunction::height_power(const FuchsianGroup& g, double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw DomainError("height power exponent must be in [0, 1)");
  return TestFunction(g, HeightPower{gamma});
}

TestFunction TestFunction::theta_modulus_squared(const Cutoff& psi) {
  TestFunction f(FuchsianGroup::gamma1_4(), ThetaModulusSquared{psi});
  // Safety factor over the probed sup; the probe set is not exhaustive.
  f.growth_constant_ = 1.5 * estimate_theta_growth_constant(psi);
  return f;
}

TestFunction TestFunction::fourier_mode(const FuchsianGroup& g, int v, const Box& base) {
  validate_box(base);
  return TestFunction(g, FourierMode{v, base});
}

TestFunction TestFunction::reflected() const {
  TestFunction out = *this;
  out.reflected_ = !reflected_;
  return out;
}

double TestFunction::growth_exponent() const {
  return std::visit(
      [](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, HeightPower>) return k.exponent;
        if constexpr (std::is_same_v<K, ThetaModulusSquared>) return 0.5;
        return 0.0;
      },
      kind_);
}

std::complex<double> TestFunction::evaluate(const UnitTangent& p_in) const {
  const UnitTangent p = reflected_ ? reflect(p_in) : p_in;
  return std::visit(
      [&](const auto& k) -> std::complex<double> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, CellIndicator>) {
          const ReducedPoint r = group_->reduce(p.z());
          return k.box.value(r.point.x(), r.point.y());
        } else if constexpr (std::is_same_v<K, HeightPower>) {
          if (k.exponent == 0.0) return 1.0;
          return std::pow(group_->invariant_height(p.z()), k.exponent);
        } else if constexpr (std::is_same_v<K, ThetaModulusSquared>) {
          if (p.angle() != Angle())
            throw DomainError("theta modulus test function is only available at theta = 0");
          return std::norm(theta_sum(k.psi, p.z().x(), p.z().y()));
        } else {
          const ReducedTangent r = group_->reduce(p);
          const double base = k.base.value(r.point.z().x(), r.point.z().y());
          if (base == 0.0 || k.v == 0) return base;
          return std::polar(base, static_cast<double>(k.v) * r.point.theta());
        }
      },
      kind_);
}

MeanEstimate TestFunction::reference_mean(std::size_t n_mc, std::uint64_t seed) const {
  // Reflection is measure preserving, so <f o V> = <f>.
  if (const auto* t = std::get_if<ThetaModulusSquared>(&kind_))
    return {2.0 * t->psi.integral_of_square(), 0.0, true};
  if (const auto* fm = std::get_if<FourierMode>(&kind_)) {
    if (fm->v != 0) return {0.0, 0.0, true};
    return TestFunction::cell(*group_, fm->base).reference_mean(n_mc, seed);
  }
  if (const auto* c = std::get_if<CellIndicator>(&kind_)) {
    double mean = 0.0;
    if (box_mean_closed_form(*group_, c->box, mean)) return {mean, 0.0, true};
  }
  if (const auto* h = std::get_if<HeightPower>(&kind_); h && h->exponent == 0.0)
    return {1.0, 0.0, true};
  if (n_mc < 1000) throw DomainError("reference_mean needs at least 1000 Monte Carlo samples");
  const auto pts = group_->sample_fundamental_domain(n_mc, seed);
  CompensatedSum sum;
  CompensatedSum sum_sq;
  for (const auto& z : pts) {
    const double v = evaluate(UnitTangent(z, Angle())).real();
    sum.add(v);
    sum_sq.add(v * v);
  }
  const double n = static_cast<double>(n_mc);
  const double mean = sum.value() / n;
  const double var = std::max(0.0, sum_sq.value() / n - mean * mean);
  return {mean, std::sqrt(var / (n - 1.0)), false};
}

}  // namespace horoeq
