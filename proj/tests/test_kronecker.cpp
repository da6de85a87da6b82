#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "horoeq/errors.hpp"
#include "horoeq/kronecker.hpp"

using namespace horoeq;

namespace {
const FuchsianGroup& psl() { return FuchsianGroup::psl2z(); }
const FuchsianGroup& g14() { return FuchsianGroup::gamma1_4(); }
}  // namespace

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(PointSetSpec(Alpha::real(0.5), 0, 1.0), DomainError);
  CHECK_THROWS_AS(PointSetSpec(Alpha::real(0.5), 10, -1.0), DomainError);
  CHECK_THROWS_AS(PointSetSpec(Alpha::real(0.5), 10, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(PointSetSpec(Alpha::real(0.5), 10, 0.0, 2.0), DomainError);
  const PointSetSpec s(Alpha::real(0.5), 100, 1.0, 2.0);
  CHECK(s.height() == doctest::Approx(0.02).epsilon(1e-15));
  CHECK_FALSE(s.include_zero());
}

TEST_CASE("generate examples") {
  const PointSetSpec one(Alpha::real(0.5), 1, 0.0);
  std::vector<UnitTangent> pts(generate(one).begin(), generate(one).end());
  REQUIRE(pts.size() == 1);
  CHECK(pts[0] == UnitTangent({0.5, 1.0}, 0.0));

  const PointSetSpec three(Alpha::rational(1, 3), 3, 1.0);
  std::vector<UnitTangent> p3;
  for (const auto& p : generate(three)) p3.push_back(p);
  REQUIRE(p3.size() == 3);
  const double want[] = {1.0 / 3.0, 2.0 / 3.0, 1.0};
  for (int k = 0; k < 3; ++k) {
    // Coordinates are stored mod 1.
    const double d = p3[k].z().x() - want[k];
    CHECK(std::abs(d - std::round(d)) < 1e-15);
    CHECK(p3[k].z().y() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(p3[k].theta() == 0.0);
  }

  std::mt19937_64 rng(41);
  for (int i = 0; i < 20; ++i) {
    const auto M = static_cast<std::int64_t>(1 + uniform01(rng) * 5000);
    const PointSetSpec s(Alpha::real(uniform01(rng)), M, uniform01(rng), 1.0, uniform01(rng),
                         uniform01(rng) < 0.5);
    std::int64_t n = 0;
    for (auto it = generate(s).begin(); it != generate(s).end(); ++it) ++n;
    CHECK(n == M);
  }
}

TEST_CASE("constant average is exactly one") {
  for (std::int64_t M : {1, 7, 4096, 4097, 100000}) {
    const PointSetSpec s(Alpha::parse("sqrt2"), M, 1.0);
    CHECK(pse_average(s, TestFunction::constant_one(psl())) == std::complex<double>(1.0));
  }
}

TEST_CASE("rational alpha locks onto at most q orbit points") {
  const auto f = TestFunction::cell(psl(), Box{-0.5, 0.5, 0.0, 1.5, 0.2});
  for (std::int64_t q = 1; q <= 20; ++q)
    for (std::int64_t p = 0; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      for (std::int64_t M : {50, 333}) {
        const PointSetSpec s(Alpha::rational(p, q), M, 0.5);
        std::map<double, std::int64_t> orbit;
        for (std::int64_t m = 1; m <= M; ++m) ++orbit[s.x_of(m)];
        CHECK(orbit.size() <= std::size_t(q));
        // Period divides q.
        for (std::int64_t m = 1; m + q <= M; ++m) CHECK(s.x_of(m) == s.x_of(m + q));
        double lock = 0.0;
        for (const auto& [x, n] : orbit)
          lock += double(n) * f.evaluate(UnitTangent({x, s.height()}, 0.0)).real();
        CHECK(pse_average(s, f).real() == doctest::Approx(lock / double(M)).epsilon(1e-14));
      }
    }
  // alpha = 1/2: two orbit points whatever M is.
  for (std::int64_t M : {10, 1000, 100000}) {
    const PointSetSpec s(Alpha::rational(1, 2), M, 0.0, 0.9);
    const auto f = TestFunction::cell(psl(), Box{-0.3, 0.3, 1.0, 2.0});
    // x in {0, 1/2} at height 0.9: 0.9i -> i/0.9 is in the cell, 1/2 + 0.9i is not.
    CHECK(pse_average(s, f).real() == doctest::Approx(double(M / 2) / double(M)).epsilon(1e-15));
  }
}

TEST_CASE("translation invariance alpha -> alpha + 1") {
  const auto f = TestFunction::cell(psl(), Box{-0.25, 0.25, 1.2, 2.0});
  const auto h = TestFunction::height_power(psl(), 0.3);
  for (const char* a : {"sqrt2", "golden", "0.1234567", "3/7"}) {
    const PointSetSpec s(Alpha::parse(a), 20000, 1.0);
    const PointSetSpec t = s.with_alpha(Alpha::parse(a).shifted(1));
    CHECK(pse_average(s, f) == pse_average(t, f));
    CHECK(pse_average(s, h) == pse_average(t, h));
  }
}

TEST_CASE("reflection equivalence on gamma1_4") {
  const TestFunction cells[] = {
      TestFunction::cell(g14(), Box{-0.5, 0.5, 0.5, 3.0}),
      TestFunction::cell(g14(), Box{0.1, 0.45, 0.3, 2.0}),
      TestFunction::cell(g14(), Box{-0.4, 0.2, 0.6, 1.7, 0.05}),
      TestFunction::height_power(g14(), 0.5),
  };
  for (const char* a : {"sqrt2", "golden", "0.3183"}) {
    const Alpha alpha = Alpha::parse(a);
    const PointSetSpec s(alpha, 30000, 1.2);
    const PointSetSpec neg = s.with_alpha(alpha.negated());
    for (const auto& f : cells) {
      const auto lhs = pse_average(neg, f), rhs = pse_average(s, f.reflected());
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("thread count does not change a single bit") {
  const auto f = TestFunction::cell(psl(), Box{-0.5, 0.5, 1.0, 1.6, 0.1});
  const auto h = TestFunction::height_power(psl(), 0.8);
  const PointSetSpec s(Alpha::parse("sqrt2"), 50000, 1.3);
  const auto w = PiecewisePolynomial::triangle(1.0);
  for (const auto* fn : {&f, &h}) {
    const auto base = pse_average(s, *fn, Exec{1});
    const auto wbase = weighted_average(s, *fn, w, Exec{1});
    for (unsigned t : {2u, 3u, 8u}) {
      CHECK(pse_average(s, *fn, Exec{t}) == base);
      CHECK(weighted_average(s, *fn, w, Exec{t}) == wbase);
    }
  }
  CHECK(horocycle_average(f, 1e-3, 20000, Exec{1}) == horocycle_average(f, 1e-3, 20000, Exec{8}));
}

TEST_CASE("include_zero growth guard") {
  const auto h = TestFunction::height_power(psl(), 0.5);
  CHECK_THROWS_AS(pse_average(PointSetSpec(Alpha::parse("sqrt2"), 100, 2.0, 1.0, 0.0, true), h),
                  NumericGuard);
  CHECK_NOTHROW(pse_average(PointSetSpec(Alpha::parse("sqrt2"), 100, 1.5, 1.0, 0.0, true), h));
  CHECK_NOTHROW(pse_average(PointSetSpec(Alpha::parse("sqrt2"), 100, 2.0, 1.0, 0.0, false), h));
}

TEST_CASE("equidistribution for sqrt2 at nu = 1") {
  const auto f = TestFunction::cell(psl(), Box{-0.25, 0.25, 1.2, 2.0});
  const double mean = f.reference_mean(1000, 0).mean;
  const PointSetSpec s(Alpha::parse("sqrt2"), 100000, 1.0);
  CHECK(std::abs(pse_average(s, f).real() - mean) <= 0.05);
}

TEST_CASE("piecewise polynomial weights") {
  const auto tri = PiecewisePolynomial::triangle(1.0);
  CHECK(tri(0.0) == 1.0);
  CHECK(tri(0.5) == 0.5);
  CHECK(tri(-0.5) == 0.5);
  CHECK(tri(1.0) == 0.0);
  CHECK(tri(2.0) == 0.0);
  CHECK(tri.integral() == doctest::Approx(1.0).epsilon(1e-15));
  const auto ind = PiecewisePolynomial::indicator(-1.0, 1.0);
  CHECK(ind.integral() == 2.0);
  CHECK_THROWS_AS(PiecewisePolynomial({0.0, 1.0}, {{1.0}, {2.0}}), DomainError);
}

TEST_CASE("weighted averages") {
  const auto one = TestFunction::constant_one(psl());
  for (std::int64_t M : {10, 1000, 54321}) {
    const PointSetSpec s(Alpha::parse("sqrt2"), M, 1.0);
    CHECK(weighted_average(s, one, PiecewisePolynomial::indicator(0.0, 1.0)) ==
          std::complex<double>(1.0));
    CHECK(weighted_average(s, one, PiecewisePolynomial::indicator(-1.0, 1.0)).real() ==
          doctest::Approx(2.0).epsilon(1e-14));
    // With f = 1 and h = 1 on (0, 1], this is the point set average.
    const auto f = TestFunction::cell(psl(), Box{-0.5, 0.5, 1.0, 1.6});
    CHECK(weighted_average(s, f, PiecewisePolynomial::indicator(0.0, 1.0)).real() ==
          doctest::Approx(pse_average(s, f).real()).epsilon(1e-13));
  }
  const auto f = TestFunction::cell(psl(), Box{-0.25, 0.25, 1.2, 2.0});
  const PointSetSpec s(Alpha::parse("sqrt2"), 100000, 1.0);
  const double target = f.reference_mean(1000, 0).mean;
  CHECK(std::abs(weighted_average(s, f, PiecewisePolynomial::triangle(1.0)).real() - target) <=
        0.05);
}

TEST_CASE("horocycle averages") {
  const auto one = TestFunction::constant_one(psl());
  CHECK(std::abs(horocycle_average(one, 0.01, 1000) - 1.0) <= 1e-15);
  const auto strip = TestFunction::cell(psl(), Box{-0.5, 0.5, 2.0});
  CHECK(horocycle_average(strip, 3.0, 1000) == std::complex<double>(1.0));
  CHECK(horocycle_average(strip, 1.5, 1000) == std::complex<double>(0.0));
  CHECK_THROWS_AS(horocycle_average(one, 0.01, 999), DomainError);
  CHECK_THROWS_AS(horocycle_average(one, 0.0, 1000), DomainError);

  const double target = strip.reference_mean(1000, 0).mean;
  CHECK(std::abs(horocycle_average(strip, 1e-4, 200000).real() - target) <= 0.02);
}

TEST_CASE("horocycle Fourier coefficients") {
  const auto one = TestFunction::constant_one(psl());
  CHECK(std::abs(horocycle_fourier(one, 0.05, 5, 1000)) <= 1e-12);
  const auto cell = TestFunction::cell(psl(), Box{-0.3, 0.3, 1.1, 2.5, 0.1});
  CHECK(horocycle_fourier(cell, 1e-2, 0, 4000) == horocycle_average(cell, 1e-2, 4000));
  // Decay sets in once |n| y is large.
  for (double y : {1e-2, 1e-1}) {
    double head = 0.0;
    for (int n = 1; n <= 16; ++n) head = std::max(head, std::abs(horocycle_fourier(cell, y, n, 200000)));
    for (double ny : {20.0, 64.0}) {
      const auto n = static_cast<std::int64_t>(ny / y);
      CHECK(std::abs(horocycle_fourier(cell, y, n, 200000)) < 0.01 * head);
    }
  }
}

// The ratio a(y,32)/a(y,1) at y = 1e-2 is not small: |n| y < 1 there, so the
// decay bound says nothing, and a(y,1) happens to be tiny. Kept as a record.
TEST_CASE("horocycle Fourier ratio at small n" * doctest::should_fail()) {
  const auto cell = TestFunction::cell(psl(), Box{-0.3, 0.3, 1.1, 2.5, 0.1});
  const double a1 = std::abs(horocycle_fourier(cell, 1e-2, 1, 100000));
  const double a32 = std::abs(horocycle_fourier(cell, 1e-2, 32, 100000));
  CHECK(a32 / a1 < 0.1);
}
