#include "horoeq/kronecker.hpp"

#include <cmath>
#include <numbers>

#include "horoeq/errors.hpp"

namespace horoeq {

PointSetSpec::PointSetSpec(Alpha alpha, std::int64_t M, double nu, double c, double delta,
                           bool include_zero)
    : alpha_(alpha), M_(M), nu_(nu), c_(c), delta_(delta), include_zero_(include_zero) {
  if (M < 1) throw DomainError("point set size M must be >= 1");
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw DomainError("nu must be >= 0");
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("c must be > 0");
  if (!std::isfinite(delta)) throw DomainError("delta must be finite");
  y_ = c * std::pow(static_cast<double>(M), -nu);
  if (!(y_ > 0.0) || y_ > 1.0)
    throw DomainError("y = c M^-nu must lie in (0, 1], got " + std::to_string(y_));
}

PointSetSpec PointSetSpec::with_alpha(Alpha a) const {
  return PointSetSpec(a, M_, nu_, c_, delta_, include_zero_);
}

double PointSetSpec::x_of(std::int64_t m) const {
  const double f = alpha_.frac_multiple(m);
  return delta_ == 0.0 ? f : delta_ + f;
}

UnitTangent PointSetSpec::point(std::int64_t m) const {
  return {UpperHalfPoint(x_of(m), y_), Angle()};
}

std::complex<double> pse_average(const PointSetSpec& spec, const TestFunction& f,
                                 const Exec& exec) {
  if (spec.include_zero() && spec.nu() * f.growth_exponent() >= 1.0)
    throw guard_violation("m = 0 term diverges when nu * gamma >= 1; exclude m = 0");
  const auto n = static_cast<std::size_t>(spec.size());
  const std::int64_t first = spec.first_index();
  const auto total = chunked_reduce<ComplexCompensatedSum>(
      n, exec, [&](std::size_t b, std::size_t e) {
        ComplexCompensatedSum s;
        for (std::size_t i = b; i < e; ++i)
          s.add(f.evaluate(spec.point(first + static_cast<std::int64_t>(i))));
        return s;
      });
  return total.value() / static_cast<double>(spec.size());
}

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breaks,
                                         std::vector<std::vector<double>> coeffs)
    : breaks_(std::move(breaks)), coeffs_(std::move(coeffs)) {
  if (breaks_.size() < 2 || coeffs_.size() + 1 != breaks_.size())
    throw DomainError("piecewise polynomial needs n+1 breakpoints for n pieces");
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
    if (!(breaks_[i] < breaks_[i + 1]) || !std::isfinite(breaks_[i + 1]) ||
        !std::isfinite(breaks_[i]))
      throw DomainError("breakpoints must be finite and strictly increasing");
}

PiecewisePolynomial PiecewisePolynomial::indicator(double lo, double hi) {
  return PiecewisePolynomial({lo, hi}, {{1.0}});
}

PiecewisePolynomial PiecewisePolynomial::triangle(double half_width) {
  const double w = half_width;
  return PiecewisePolynomial({-w, 0.0, w}, {{1.0, 1.0 / w}, {1.0, -1.0 / w}});
}

double PiecewisePolynomial::operator()(double u) const {
  if (u < breaks_.front() || u > breaks_.back()) return 0.0;
  std::size_t i = 0;
  while (i + 2 < breaks_.size() && u >= breaks_[i + 1]) ++i;
  double v = 0.0;
  const auto& c = coeffs_[i];
  for (std::size_t k = c.size(); k-- > 0;) v = v * u + c[k];
  return v;
}

double PiecewisePolynomial::integral() const {
  double total = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const double a = breaks_[i], b = breaks_[i + 1];
    for (std::size_t k = 0; k < coeffs_[i].size(); ++k) {
      const double p = static_cast<double>(k + 1);
      total += coeffs_[i][k] * (std::pow(b, p) - std::pow(a, p)) / p;
    }
  }
  return total;
}

std::complex<double> weighted_average(const PointSetSpec& spec, const TestFunction& f,
                                      const PiecewisePolynomial& h, const Exec& exec) {
  const double M = static_cast<double>(spec.size());
  const auto m_lo = static_cast<std::int64_t>(std::ceil(h.support_lo() * M));
  const auto m_hi = static_cast<std::int64_t>(std::floor(h.support_hi() * M));
  if (m_hi < m_lo) return 0.0;
  const auto n = static_cast<std::size_t>(m_hi - m_lo + 1);
  const auto total = chunked_reduce<ComplexCompensatedSum>(
      n, exec, [&](std::size_t b, std::size_t e) {
        ComplexCompensatedSum s;
        for (std::size_t i = b; i < e; ++i) {
          const std::int64_t m = m_lo + static_cast<std::int64_t>(i);
          if (m == 0) continue;
          const double w = h(static_cast<double>(m) / M);
          if (w == 0.0) continue;
          s.add(w * f.evaluate(spec.point(m)));
        }
        return s;
      });
  return total.value() / M;
}

std::complex<double> horocycle_fourier(const TestFunction& f, double y, std::int64_t n,
                                       std::size_t n_quad, const Exec& exec) {
  if (!(y > 0.0 && std::isfinite(y))) throw DomainError("horocycle height must be positive and finite");
  if (n_quad < 1000) throw DomainError("horocycle quadrature needs n_quad >= 1000");
  const double h = 1.0 / static_cast<double>(n_quad);
  const auto total = chunked_reduce<ComplexCompensatedSum>(
      n_quad, exec, [&](std::size_t b, std::size_t e) {
        ComplexCompensatedSum s;
        for (std::size_t k = b; k < e; ++k) {
          const double x = (static_cast<double>(k) + 0.5) * h;
          const std::complex<double> v = f.evaluate(UnitTangent(UpperHalfPoint(x, y), Angle()));
          if (n == 0) {
            s.add(v);
          } else {
            // e(-n x) with the phase reduced exactly: n x = n (2k+1) / (2 n_quad).
            const auto num = static_cast<__int128>(n) * static_cast<__int128>(2 * k + 1);
            const auto den = static_cast<__int128>(2 * n_quad);
            __int128 r = num % den;
            if (r < 0) r += den;
            const double phase = static_cast<double>(static_cast<std::int64_t>(r)) /
                                 static_cast<double>(static_cast<std::int64_t>(den));
            const double ang = -2.0 * std::numbers::pi * phase;
            s.add(v * std::complex<double>(std::cos(ang), std::sin(ang)));
          }
        }
        return s;
      });
  return total.value() * h;
}

std::complex<double> horocycle_average(const TestFunction& f, double y, std::size_t n_quad,
                                       const Exec& exec) {
  return horocycle_fourier(f, y, 0, n_quad, exec);
}

}  // namespace horoeq
