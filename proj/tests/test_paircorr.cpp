#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "horoeq/errors.hpp"
#include "horoeq/fuchsian.hpp"
#include "horoeq/kronecker.hpp"
#include "horoeq/paircorr.hpp"
#include "oracles.hpp"

using namespace horoeq;
constexpr double kPi = std::numbers::pi;

namespace {

// Direct count with j^2 alpha reduced in long double.
double sharp_oracle(long double alpha, std::int64_t N, double a, double b) {
  std::vector<long double> u(N + 1);
  for (std::int64_t j = 1; j <= N; ++j) {
    const long double t = static_cast<long double>(j * j) * alpha;
    u[j] = t - std::floor(t);
  }
  std::int64_t count = 0;
  for (std::int64_t j = 1; j <= N; ++j)
    for (std::int64_t k = 1; k <= N; ++k) {
      if (j == k) continue;
      const long double d = u[j] - u[k];
      for (int n = -2; n <= 2; ++n) {
        const long double v = (d + n) * N;
        if (v >= a && v <= b) ++count;
      }
    }
  return double(count) / double(N);
}

std::complex<double> theta_oracle(const Cutoff& psi, double x, double y) {
  std::complex<long double> s = 0.0L;
  const auto J = static_cast<std::int64_t>(psi.half_width() / std::sqrt(y)) + 1;
  for (std::int64_t j = -J; j <= J; ++j) {
    const double w = psi(double(j) * std::sqrt(y));
    if (w == 0.0) continue;
    // e(j^2 x) with j^2 x reduced mod 1 first.
    long double t = static_cast<long double>(j * j) * x;
    t -= std::floor(t);
    s += std::polar<long double>(w, 2.0L * std::numbers::pi_v<long double> * t);
  }
  const auto v = std::pow(y, 0.25) * std::complex<double>(double(s.real()), double(s.imag()));
  return v;
}

}  // namespace

TEST_CASE("Fejer window") {
  const Window w = Window::fejer();
  CHECK(w.ghat(0.0) == 1.0);
  CHECK(w.ghat(0.5) == 0.5);
  CHECK(w.ghat(-0.25) == 0.75);
  CHECK(w.ghat(1.0) == 0.0);
  CHECK(w.ghat(3.0) == 0.0);
  CHECK(w.support() == 1.0);
  CHECK(w.integral() == 1.0);
  CHECK(w.g(0.0) == doctest::Approx(1.0));
  for (double x = -20.0; x <= 20.0; x += 0.0137) {
    const double s = std::sin(kPi * x) / (kPi * x);
    CHECK(w.g(x) == doctest::Approx(s * s).epsilon(1e-12).scale(1e-300));
    CHECK(w.g(x) >= 0.0);
    CHECK(w.g(x) * x * x <= 1.0 / (kPi * kPi) + 1e-15);
  }
  const Window w2 = Window::fejer(2.0);
  CHECK(w2.ghat(1.0) == 0.5);
  CHECK(w2.integral() == 1.0);
  CHECK(w2.g(0.0) == doctest::Approx(2.0));
}

TEST_CASE("tabulated windows") {
  CHECK_THROWS_AS(Window::table(0.5, {1.0, 0.5}), DomainError);
  CHECK_THROWS_AS(Window::table(0.0, {1.0, 0.0}), DomainError);
  // ghat = 1 on [0, 0.2], dropping linearly to 0 at 1 would make g change sign.
  CHECK_THROWS_AS(Window::table(0.2, {1.0, 1.0, 1.0, 1.0, 1.0, 0.0}), DomainError);
  // A tabulated Fejer kernel agrees with the closed form.
  const Window t = Window::table(0.25, {1.0, 0.75, 0.5, 0.25, 0.0});
  const Window f = Window::fejer();
  for (double x : {0.0, 0.3, 1.7, 5.5, -2.2}) CHECK(t.g(x) == doctest::Approx(f.g(x)).epsilon(1e-12));
  for (double u : {0.0, 0.1, 0.6, 0.99}) CHECK(t.ghat(u) == doctest::Approx(f.ghat(u)).epsilon(1e-15));
}

TEST_CASE("periodized window matches a truncated sum") {
  const Window windows[] = {Window::fejer(), Window::fejer(1.5),
                            Window::table(0.37, {1.0, 0.6, 0.25, 0.0})};
  for (const auto& w : windows)
    for (std::int64_t N : {7, 20}) {
      for (double t : {0.0, 0.013, 0.25, 0.5, 0.77}) {
        long double s = 0.0L;
        for (int m = -200000; m <= 200000; ++m) s += w.g(double(N) * (t + m));
        CHECK(w.periodized(t, N) == doctest::Approx(double(s)).epsilon(1e-5).scale(1e-9));
      }
    }
}

TEST_CASE("theta sums") {
  const Cutoff psi = Cutoff::bump();
  CHECK(theta_sum(psi, 0.0, 1.0) == std::complex<double>(psi(0.0)));
  CHECK(theta_sum(psi, 0.37, 1.0) == std::complex<double>(psi(0.0)));
  std::mt19937_64 rng(61);
  for (int i = 0; i < 300; ++i) {
    const double x = -2.0 + 4.0 * uniform01(rng), y = std::pow(10.0, -6.0 + 6.0 * uniform01(rng));
    const auto a = theta_sum(psi, x, y), b = theta_oracle(psi, x, y);
    CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)));
  }
  CHECK_THROWS_AS(theta_sum(psi, 0.0, 0.0), DomainError);
  // Riemann sum of psi.
  const double N = 1000.0;
  CHECK(std::abs(theta_sum(psi, 0.0, 1.0 / (N * N)).real() / std::sqrt(N) - psi.integral()) <= 1e-3);
  const WindowPair wp = WindowPair::defaults();
  CHECK(std::abs(theta_zero_mode(2000, wp) - wp.g.ghat(0.0) * psi.integral() * psi.integral()) <= 1e-2);
}

TEST_CASE("theta modulus grows at most like Y^(1/2)") {
  const Cutoff psi = Cutoff::bump();
  const double C = TestFunction::theta_modulus_squared(psi).growth_constant();
  const auto& G = FuchsianGroup::gamma1_4();
  std::mt19937_64 rng(62);
  for (int i = 0; i < 10000; ++i) {
    const double x = -1.0 + 2.0 * uniform01(rng), y = std::pow(10.0, -6.0 * uniform01(rng));
    CHECK(std::norm(theta_sum(psi, x, y)) <= C * std::sqrt(G.invariant_height({x, y})));
  }
}

TEST_CASE("sharp pair correlation") {
  CHECK(r2_sharp(Alpha::real(0.0), 2, -0.5, 0.5) == 1.0);
  CHECK(r2_sharp_reference(Alpha::real(0.0), 2, -0.5, 0.5) == 1.0);
  const Alpha s2 = Alpha::parse("sqrt2");
  CHECK(r2_sharp(s2, 3, 0.0, 1.0) == sharp_oracle(std::sqrt(2.0L), 3, 0.0, 1.0));
  CHECK(r2_sharp(s2, 300, 0.0, 1.0) == sharp_oracle(std::sqrt(2.0L), 300, 0.0, 1.0));

  std::mt19937_64 rng(63);
  for (int i = 0; i < 50; ++i) {
    const Alpha a = Alpha::real(uniform01(rng));
    const auto N = static_cast<std::int64_t>(2 + uniform01(rng) * 499);
    double lo = -3.0 + 6.0 * uniform01(rng), hi = lo + 4.0 * uniform01(rng);
    const double fast = r2_sharp(a, N, lo, hi);
    CHECK(fast == r2_sharp_reference(a, N, lo, hi));
    CHECK(fast >= 0.0);
    CHECK(fast == r2_sharp(a, N, -hi, -lo));
    CHECK(fast == r2_sharp(a, N, lo, hi, Exec{4}));
  }
  CHECK_THROWS_AS(r2_sharp(s2, 1, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(r2_sharp(s2, 10, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(r2_sharp(s2, 10, 0.0, 10.0), DomainError);
  CHECK_THROWS_AS(r2_sharp(s2, kMaxPairCorrN + 1, 0.0, 1.0), NumericGuard);
}

TEST_CASE("bridge identity is exact") {
  const Alpha s2 = Alpha::parse("sqrt2");
  const auto [l5, r5] = sharp_smoothed_bridge(s2, 5, 0.0, 1.0);
  CHECK(l5 == r5);
  std::mt19937_64 rng(64);
  for (int i = 0; i < 10; ++i) {
    const Alpha a = Alpha::real(uniform01(rng));
    const double lo = -2.0 + 4.0 * uniform01(rng), hi = lo + 3.0 * uniform01(rng);
    const auto [l, r] = sharp_smoothed_bridge(a, 200, lo, hi);
    CHECK(l == r);
  }
  const auto [ld, rd] = sharp_smoothed_bridge(s2, 50, 0.3, 0.3);
  CHECK(ld == rd);
}

TEST_CASE("smoothed form against the direct truncated sum") {
  const WindowPair wp = WindowPair::defaults();
  const std::int64_t N = 10, L = 3000;
  for (const char* name : {"sqrt2", "golden"}) {
    const Alpha a = Alpha::parse(name);
    const double ref = oracle::smoothed_direct(
        a.value(), N, [&](double x) { return wp.g.g(x); }, [&](double x) { return wp.psi(x); }, 1.0, L);
    // The neglected tail is below 2 / (pi^2 N^2 L) per unit weight.
    CHECK(r2_smoothed(a, N, wp) == doctest::Approx(ref).epsilon(1e-5));
  }
  const WindowPair zero{Window::fejer(), Cutoff::table(1.0, {0.0, 0.0})};
  CHECK(r2_smoothed(Alpha::parse("sqrt2"), 50, zero) == 0.0);
  CHECK(r2_via_theta(Alpha::parse("sqrt2"), 50, zero) == 0.0);
}

TEST_CASE("theta form equals the smoothed form") {
  const WindowPair pairs[] = {
      WindowPair::defaults(),
      {Window::fejer(2.0), Cutoff::bump(0.7)},
      {Window::table(0.5, {1.0, 0.6, 0.35, 0.1, 0.0}), Cutoff::table(1.0, {1.0, 0.8, 0.3, 0.0})},
  };
  for (const auto& wp : pairs)
    for (const char* name : {"sqrt2", "golden", "1/3"})
      for (std::int64_t N : {20, 50, 200}) {
        const Alpha a = Alpha::parse(name);
        const double direct = r2_smoothed(a, N, wp);
        const double theta = r2_via_theta(a, N, wp);
        CHECK(theta == doctest::Approx(direct).epsilon(1e-8));
        // Diagonal term, computed independently.
        long double psq = 0.0L;
        const auto J = static_cast<std::int64_t>(wp.psi.half_width() * double(N)) + 1;
        for (std::int64_t j = -J; j <= J; ++j) psq += std::pow(wp.psi(double(j) / double(N)), 2);
        long double gs = 0.0L;
        for (int m = -100000; m <= 100000; ++m) gs += wp.g.g(double(N) * m);
        const double diag = double(2.0L / N * (psq - std::pow(wp.psi(0.0), 2) / 2.0L) * gs);
        CHECK(diagonal_term(N, wp) == doctest::Approx(diag).epsilon(1e-8));
        CHECK(r2_full_via_theta(a, N, wp) - direct == doctest::Approx(diag).epsilon(1e-8));
      }
}

TEST_CASE("theta form equals the smoothed form off the closed-form grid") {
  // spacing * N is not an integer here, so the m-sum is truncated.
  const WindowPair wp{Window::table(0.37, {1.0, 0.6, 0.25, 0.0}),
                      Cutoff::table(1.0, {1.0, 0.8, 0.3, 0.0})};
  for (std::int64_t N : {5, 10}) {
    const Alpha a = Alpha::parse(N == 5 ? "golden" : "sqrt2");
    CHECK(r2_via_theta(a, N, wp) == doctest::Approx(r2_smoothed(a, N, wp)).epsilon(1e-8));
  }
}

TEST_CASE("point set pipeline reproduces the theta form") {
  const WindowPair wp = WindowPair::defaults();
  const TestFunction f = TestFunction::theta_modulus_squared(wp.psi);
  for (std::int64_t N : {50, 200, 1000}) {
    const Alpha a = Alpha::parse("sqrt2");
    const PointSetSpec spec(a, N, 2.0, 1.0);
    const double via_points = weighted_average(spec, f, wp.g.as_weight()).real() + theta_zero_mode(N, wp);
    CHECK(via_points == doctest::Approx(r2_full_via_theta(a, N, wp)).epsilon(1e-8));
  }
}

TEST_CASE("thread count does not change results") {
  const Alpha a = Alpha::parse("sqrt2");
  const WindowPair wp = WindowPair::defaults();
  CHECK(r2_smoothed(a, 300, wp, Exec{1}) == r2_smoothed(a, 300, wp, Exec{8}));
  CHECK(r2_via_theta(a, 3000, wp, Exec{1}) == r2_via_theta(a, 3000, wp, Exec{8}));
  CHECK(r2_sharp(a, 30000, -0.5, 0.5, Exec{1}) == r2_sharp(a, 30000, -0.5, 0.5, Exec{8}));
}
