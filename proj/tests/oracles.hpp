#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the reduction, height or pair-correlation code.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

// Arc length of the geodesic from z to w, integrated numerically.
// Vertical case: ds = dy / y. Otherwise the geodesic is a half circle with
// centre c on the real axis and radius r; parametrising by the angle t from
// the positive real direction gives ds = dt / sin t.
inline double geodesic_length(std::complex<double> z, std::complex<double> w) {
  using boost::math::quadrature::gauss_kronrod;
  if (std::abs(z.real() - w.real()) < 1e-14) {
    const double lo = std::min(z.imag(), w.imag()), hi = std::max(z.imag(), w.imag());
    return gauss_kronrod<double, 61>::integrate([](double y) { return 1.0 / y; }, lo, hi, 15, 1e-14);
  }
  const double c = (std::norm(w) - std::norm(z)) / (2.0 * (w.real() - z.real()));
  const double t1 = std::arg(z - c), t2 = std::arg(w - c);
  const double lo = std::min(t1, t2), hi = std::max(t1, t2);
  return gauss_kronrod<double, 61>::integrate([](double t) { return 1.0 / std::sin(t); }, lo, hi,
                                              15, 1e-14);
}

// Integer 2x2 matrices up to sign, first nonzero of (c, a) positive.
using IMat = std::array<std::int64_t, 4>;

inline IMat normalize(IMat m) {
  const bool flip = m[2] != 0 ? m[2] < 0 : m[0] < 0;
  if (flip)
    for (auto& e : m) e = -e;
  return m;
}

inline IMat mul(const IMat& g, const IMat& h) {
  return normalize({g[0] * h[0] + g[1] * h[2], g[0] * h[1] + g[1] * h[3],
                    g[2] * h[0] + g[3] * h[2], g[2] * h[1] + g[3] * h[3]});
}

// Every element of PSL(2,Z) expressible as a word of length <= depth in
// T, T^-1 and S, by breadth-first enumeration.
inline std::vector<IMat> modular_words(int depth) {
  const std::array<IMat, 3> gens = {IMat{1, 1, 0, 1}, IMat{1, -1, 0, 1}, normalize({0, -1, 1, 0})};
  std::set<IMat> seen = {IMat{1, 0, 0, 1}};
  std::vector<IMat> frontier = {IMat{1, 0, 0, 1}};
  for (int d = 0; d < depth; ++d) {
    std::vector<IMat> next;
    for (const auto& w : frontier)
      for (const auto& s : gens) {
        const IMat v = mul(s, w);
        if (seen.insert(v).second) next.push_back(v);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

inline std::complex<double> act(const IMat& m, std::complex<double> z) {
  return (double(m[0]) * z + double(m[1])) / (double(m[2]) * z + double(m[3]));
}

// Closed standard domain, with a small slack.
inline bool in_closed_domain(std::complex<double> z, double slack = 1e-12) {
  return std::abs(z.real()) <= 0.5 + slack && std::norm(z) >= 1.0 - slack;
}

// max over coprime (c, d) of weight(c) * y / |cz + d|^2, where weight is 1
// for PSL(2,Z). For Gamma_1(4) bar the three cusps contribute bottom rows
// with c = 0 mod 4 (cusp infinity), c = 2 mod 4 (cusp 1/2) and c odd (cusp 0,
// width 4, hence weight 1/4).
inline double brute_height(std::complex<double> z, bool level4) {
  const double x = z.real(), y = z.imag();
  // Any candidate must beat sqrt(3)/8, a lower bound for both groups.
  const double floor = std::sqrt(3.0) / 8.0;
  const auto cmax = static_cast<std::int64_t>(std::ceil(std::sqrt(1.0 / (floor * y)))) + 1;
  double best = 0.0;
  for (std::int64_t c = 0; c <= cmax; ++c) {
    const double w = (level4 && (c % 2 != 0)) ? 0.25 : 1.0;
    const double rad = std::sqrt(w * y / floor) + 1.0;
    const auto dlo = static_cast<std::int64_t>(std::floor(-c * x - rad));
    const auto dhi = static_cast<std::int64_t>(std::ceil(-c * x + rad));
    for (std::int64_t d = dlo; d <= dhi; ++d) {
      if (std::gcd(c, d) != 1) continue;
      if (c == 0 && d != 1) continue;
      best = std::max(best, w * y / std::norm(double(c) * z + double(d)));
    }
  }
  return best;
}

// Direct smoothed pair sum with the m-sum cut at |m| <= L (no closed forms).
template <class G, class Psi>
double smoothed_direct(double alpha, std::int64_t N, G g, Psi psi, double psi_half_width,
                       std::int64_t L) {
  const auto J = static_cast<std::int64_t>(std::ceil(psi_half_width * double(N)));
  long double total = 0.0L;
  for (std::int64_t j = -J; j <= J; ++j)
    for (std::int64_t k = -J; k <= J; ++k) {
      if (std::llabs(j) == std::llabs(k)) continue;
      const double w = psi(double(j) / double(N)) * psi(double(k) / double(N));
      if (w == 0.0) continue;
      // j^2 - k^2 exact; reduce (j^2 - k^2) alpha mod 1 in long double.
      long double t = static_cast<long double>(j * j - k * k) * static_cast<long double>(alpha);
      t -= std::floor(t);
      long double s = 0.0L;
      for (std::int64_t m = -L; m <= L; ++m) s += g(double(N) * double(t + m));
      total += w * s;
    }
  return static_cast<double>(total / N);
}

using boost::multiprecision::cpp_int;

// Exact convergent recurrences and coprimality for quotients a.
inline bool convergents_ok(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& p,
                           const std::vector<std::int64_t>& q) {
  cpp_int pm2 = 0, pm1 = 1, qm2 = 1, qm1 = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const cpp_int pj = a[j] * pm1 + pm2, qj = a[j] * qm1 + qm2;
    if (pj != p[j] || qj != q[j]) return false;
    if (boost::multiprecision::gcd(pj, qj) != 1) return false;
    pm2 = pm1;
    pm1 = pj;
    qm2 = qm1;
    qm1 = qj;
  }
  return true;
}

}  // namespace oracle
