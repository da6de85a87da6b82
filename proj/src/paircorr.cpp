#include "horoeq/paircorr.hpp"

#include <boost/math/special_functions/trigamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "horoeq/errors.hpp"

namespace horoeq {

namespace {

constexpr double kPi = std::numbers::pi;

void check_n(std::int64_t N) {
  if (N < 2) throw DomainError("pair correlation needs N >= 2");
  if (N > kMaxPairCorrN) throw guard_violation("N exceeds 94906265; j^2 would lose exactness");
}

// The sharp window [a/N, b/N] + Z, decided on d = u_j - u_k by one shared
// predicate so every counting path agrees exactly.
struct SharpWindow {
  double lo, hi;
  std::int64_t n_min, n_max;

  SharpWindow(double a, double b, std::int64_t N) {
    const auto nd = static_cast<double>(N);
    lo = a / nd;
    hi = b / nd;
    n_min = static_cast<std::int64_t>(std::floor(lo)) - 1;
    n_max = static_cast<std::int64_t>(std::ceil(hi)) + 1;
  }
  bool hit(double d, std::int64_t n) const {
    const double v = d + static_cast<double>(n);
    return lo <= v && v <= hi;
  }
  std::int64_t hits(double d) const {
    std::int64_t c = 0;
    for (std::int64_t n = n_min; n <= n_max; ++n) c += hit(d, n) ? 1 : 0;
    return c;
  }
};

void check_window(std::int64_t N, double a, double b) {
  check_n(N);
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("window must be finite");
  if (!(a <= b)) throw DomainError("window needs a <= b");
  if (!(b - a < static_cast<double>(N))) throw DomainError("window needs b - a < N");
}

std::vector<double> square_fracs(const Alpha& alpha, std::int64_t N) {
  std::vector<double> u(static_cast<std::size_t>(N));
  for (std::int64_t j = 1; j <= N; ++j) u[static_cast<std::size_t>(j - 1)] = alpha.frac_multiple(j * j);
  return u;
}

struct Count {
  std::int64_t n = 0;
  void add(const Count& o) { n += o.n; }
};

// Largest |j| with psi(j/N) possibly nonzero.
std::int64_t psi_range(const Cutoff& psi, std::int64_t N) {
  return static_cast<std::int64_t>(std::ceil(psi.half_width() * static_cast<double>(N)));
}

}  // namespace

Window::Window(double spacing, std::vector<double> values, bool fejer)
    : spacing_(spacing), values_(std::move(values)), fejer_(fejer) {
  if (!(spacing_ > 0.0) || !std::isfinite(spacing_)) throw DomainError("window spacing must be positive");
  if (values_.size() < 2 || values_.back() != 0.0)
    throw DomainError("ghat table needs at least two values and must end in 0");
  q_abs_max_ = std::abs(values_[0]);
  for (std::size_t k = 1; k < values_.size(); ++k) q_abs_max_ += 2.0 * std::abs(values_[k]);
  // g >= 0 and g = O(x^-2) on a grid; the decay holds by construction.
  for (int i = 0; i <= 4000; ++i) {
    const double x = 0.01 * i / spacing_;
    if (g(x) < -1e-12 * q_abs_max_ * spacing_)
      throw DomainError("window g must be nonnegative; ghat table gives g < 0");
  }
}

Window Window::fejer(double scale) { return Window(scale, {1.0, 0.0}, true); }

Window Window::table(double spacing, std::vector<double> values) {
  return Window(spacing, std::move(values), false);
}

double Window::ghat(double u) const {
  const double pos = std::abs(u) / spacing_;
  const double last = static_cast<double>(values_.size() - 1);
  if (pos >= last) return 0.0;
  const auto k = static_cast<std::size_t>(pos);
  const double t = pos - static_cast<double>(k);
  return values_[k] + t * (values_[k + 1] - values_[k]);
}

double Window::q_factor(double x) const {
  double q = values_[0];
  for (std::size_t k = 1; k + 1 < values_.size(); ++k)
    if (values_[k] != 0.0) q += 2.0 * values_[k] * std::cos(2.0 * kPi * static_cast<double>(k) * spacing_ * x);
  return q;
}

double Window::g(double x) const {
  const double s = spacing_;
  const double z = kPi * s * x;
  const double sinc2 = (std::abs(z) < 1e-8) ? 1.0 - z * z / 3.0 : std::pow(std::sin(z) / z, 2);
  return s * sinc2 * q_factor(x);
}

double Window::periodized(double t, std::int64_t N) const {
  const auto nd = static_cast<double>(N);
  t -= std::nearbyint(t);  // t in [-1/2, 1/2]; the sum is even and 1-periodic
  const double sN = spacing_ * nd;
  if (sN == std::nearbyint(sN)) {
    // sin^2(pi s N (t+m)) and Q(N(t+m)) do not depend on m, and
    // sum_m (t+m)^-2 = pi^2 / sin^2(pi t).
    const double st = std::sin(kPi * t);
    if (std::abs(st) < 1e-300) return spacing_ * q_factor(0.0);
    const double num = std::sin(kPi * sN * t);
    return num * num * q_factor(nd * t) / (sN * nd * st * st);
  }
  const double peak = std::max(std::abs(g(0.0)), 1e-300);
  const double x_cut = std::sqrt(q_abs_max_ / (kPi * kPi * spacing_ * 1e-14 * peak));
  const auto L = static_cast<std::int64_t>(std::ceil(x_cut / nd)) + 1;
  CompensatedSum s;
  for (std::int64_t m = -L; m <= L; ++m) s.add(g(nd * (t + static_cast<double>(m))));
  // Beyond |m| = L, g(N(t+m)) is A(N(t+m)) / (pi^2 s N^2 (t+m)^2) with A a
  // trig polynomial of mean (v_0 - v_1)/2. The mean part sums exactly to a
  // pair of trigamma values; the oscillating remainder is O(L^-2).
  const double v1 = values_.size() > 1 ? values_[1] : 0.0;
  const double mean_a = 0.5 * (values_[0] - v1);
  const double Lp = static_cast<double>(L + 1);
  s.add(mean_a / (kPi * kPi * spacing_ * nd * nd) *
        (boost::math::trigamma(Lp + t) + boost::math::trigamma(Lp - t)));
  return s.value();
}

PiecewisePolynomial Window::as_weight() const {
  const auto K = static_cast<std::int64_t>(values_.size() - 1);
  std::vector<double> breaks;
  std::vector<std::vector<double>> coeffs;
  auto v = [&](std::int64_t k) { return values_[static_cast<std::size_t>(std::abs(k))]; };
  for (std::int64_t k = -K; k <= K; ++k) breaks.push_back(static_cast<double>(k) * spacing_);
  for (std::int64_t k = -K; k < K; ++k) {
    const double slope = (v(k + 1) - v(k)) / spacing_;
    coeffs.push_back({v(k) - slope * static_cast<double>(k) * spacing_, slope});
  }
  return PiecewisePolynomial(std::move(breaks), std::move(coeffs));
}

WindowPair WindowPair::defaults() { return {Window::fejer(1.0), Cutoff::bump(1.0)}; }

double r2_sharp_reference(const Alpha& alpha, std::int64_t N, double a, double b) {
  check_window(N, a, b);
  const SharpWindow w(a, b, N);
  const auto u = square_fracs(alpha, N);
  std::int64_t count = 0;
  for (std::size_t j = 0; j < u.size(); ++j)
    for (std::size_t k = 0; k < u.size(); ++k)
      if (j != k) count += w.hits(u[j] - u[k]);
  return static_cast<double>(count) / static_cast<double>(N);
}

double r2_sharp(const Alpha& alpha, std::int64_t N, double a, double b, const Exec& exec) {
  check_window(N, a, b);
  const SharpWindow w(a, b, N);
  const auto u = square_fracs(alpha, N);
  auto sorted = u;
  std::sort(sorted.begin(), sorted.end());
  // For fixed u_j and n, u_j - u_k + n is non-increasing along sorted u_k
  // (rounding is monotone), so the predicate itself partitions the array.
  const auto total = chunked_reduce<Count>(u.size(), exec, [&](std::size_t b0, std::size_t e0) {
    Count c;
    for (std::size_t j = b0; j < e0; ++j) {
      const double uj = u[j];
      for (std::int64_t n = w.n_min; n <= w.n_max; ++n) {
        const double nd = static_cast<double>(n);
        const auto ge_lo = std::partition_point(sorted.begin(), sorted.end(),
                                                [&](double uk) { return (uj - uk) + nd >= w.lo; });
        const auto gt_hi = std::partition_point(sorted.begin(), ge_lo,
                                                [&](double uk) { return (uj - uk) + nd > w.hi; });
        c.n += ge_lo - gt_hi;
        if (w.hit(0.0, n)) c.n -= 1;  // k = j
      }
    }
    return c;
  });
  return static_cast<double>(total.n) / static_cast<double>(N);
}

std::pair<double, double> sharp_smoothed_bridge(const Alpha& alpha, std::int64_t N, double a,
                                                double b) {
  check_window(N, a, b);
  const SharpWindow w(a, b, N);
  const auto u = square_fracs(alpha, N);
  // Signed indices; u depends on j^2 only.
  std::int64_t count = 0;
  for (std::int64_t j = -N; j <= N; ++j) {
    if (j == 0) continue;
    for (std::int64_t k = -N; k <= N; ++k) {
      if (k == 0 || std::abs(j) == std::abs(k)) continue;
      count += w.hits(u[static_cast<std::size_t>(std::abs(j) - 1)] -
                      u[static_cast<std::size_t>(std::abs(k) - 1)]);
    }
  }
  const double lhs = static_cast<double>(count) / static_cast<double>(N);
  return {lhs, 4.0 * r2_sharp(alpha, N, a, b)};
}

double r2_smoothed(const Alpha& alpha, std::int64_t N, const WindowPair& w, const Exec& exec) {
  check_n(N);
  const std::int64_t J = psi_range(w.psi, N);
  const auto nd = static_cast<double>(N);
  std::vector<double> psi(static_cast<std::size_t>(J + 1));
  for (std::int64_t j = 0; j <= J; ++j) psi[static_cast<std::size_t>(j)] = w.psi(static_cast<double>(j) / nd);
  // Pairs (|j|, |k|) = (a, b) with a < b, each standing for 2 w_a w_b signed
  // pairs in both orders; w_0 = 1, w_a = 2 otherwise.
  const auto total = chunked_reduce<CompensatedSum>(
      static_cast<std::size_t>(J + 1), exec, [&](std::size_t b0, std::size_t e0) {
        CompensatedSum s;
        for (std::size_t bi = b0; bi < e0; ++bi) {
          const auto b = static_cast<std::int64_t>(bi);
          const double pb = psi[bi];
          if (pb == 0.0) continue;
          const double wb = b == 0 ? 1.0 : 2.0;
          for (std::int64_t a = 0; a < b; ++a) {
            const double pa = psi[static_cast<std::size_t>(a)];
            if (pa == 0.0) continue;
            const double wa = a == 0 ? 1.0 : 2.0;
            const double t = alpha.frac_multiple(b * b - a * a);
            s.add(2.0 * wa * wb * pa * pb * w.g.periodized(t, N));
          }
        }
        return s;
      });
  return total.value() / nd;
}

double theta_zero_mode(std::int64_t N, const WindowPair& w) {
  check_n(N);
  const auto nd = static_cast<double>(N);
  return w.g.ghat(0.0) * std::norm(theta_sum(w.psi, 0.0, 1.0 / (nd * nd))) / nd;
}

double r2_full_via_theta(const Alpha& alpha, std::int64_t N, const WindowPair& w,
                         const Exec& exec) {
  check_n(N);
  const auto nd = static_cast<double>(N);
  const double y = 1.0 / (nd * nd);
  const auto m_max = static_cast<std::int64_t>(std::ceil(w.g.support() * nd));
  // |theta(-x)|^2 = |theta(x)|^2, so m and -m share a term.
  const auto total = chunked_reduce<CompensatedSum>(
      static_cast<std::size_t>(m_max + 1), exec, [&](std::size_t b0, std::size_t e0) {
        CompensatedSum s;
        for (std::size_t i = b0; i < e0; ++i) {
          const auto m = static_cast<std::int64_t>(i);
          const double h = w.g.ghat(static_cast<double>(m) / nd);
          if (h == 0.0) continue;
          const double t = std::norm(theta_sum(w.psi, alpha.frac_multiple(m), y));
          s.add((m == 0 ? 1.0 : 2.0) * h * t);
        }
        return s;
      });
  return total.value() / nd;
}

double diagonal_term(std::int64_t N, const WindowPair& w) {
  check_n(N);
  const auto nd = static_cast<double>(N);
  const std::int64_t J = psi_range(w.psi, N);
  CompensatedSum sq;  // sum over j in Z of psi(j/N)^2
  for (std::int64_t j = -J; j <= J; ++j) {
    const double p = w.psi(static_cast<double>(j) / nd);
    sq.add(p * p);
  }
  const double p0 = w.psi(0.0);
  return 2.0 / nd * (sq.value() - 0.5 * p0 * p0) * w.g.periodized(0.0, N);
}

double r2_via_theta(const Alpha& alpha, std::int64_t N, const WindowPair& w, const Exec& exec) {
  return r2_full_via_theta(alpha, N, w, exec) - diagonal_term(N, w);
}

}  // namespace horoeq
