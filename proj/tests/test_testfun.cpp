#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "horoeq/errors.hpp"
#include "horoeq/testfun.hpp"
#include "oracles.hpp"

using namespace horoeq;

namespace {

const FuchsianGroup& psl() { return FuchsianGroup::psl2z(); }
const FuchsianGroup& g14() { return FuchsianGroup::gamma1_4(); }

MoebiusMap random_element(const FuchsianGroup& g, std::mt19937_64& rng, int len) {
  MoebiusMap w;
  const auto& gens = g.generators();
  for (int i = 0; i < len; ++i) {
    const auto k = static_cast<std::size_t>(uniform01(rng) * 2.0 * double(gens.size()));
    w = w * ((k % 2) ? gens[k / 2].inverse() : gens[k / 2]);
  }
  return w;
}

UnitTangent random_tangent(std::mt19937_64& rng) {
  return {{-2.0 + 4.0 * uniform01(rng), std::pow(10.0, -2.0 + 3.0 * uniform01(rng))},
          2.0 * std::numbers::pi * uniform01(rng)};
}

}  // namespace

TEST_CASE("constant functions") {
  std::mt19937_64 rng(31);
  const auto one = TestFunction::constant_one(psl());
  const auto h0 = TestFunction::height_power(g14(), 0.0);
  for (int i = 0; i < 200; ++i) {
    const UnitTangent p = random_tangent(rng);
    CHECK(one.evaluate(p) == std::complex<double>(1.0));
    CHECK(h0.evaluate(p) == std::complex<double>(1.0));
  }
  const MeanEstimate m = one.reference_mean(1000, 0);
  CHECK(m.mean == 1.0);
  CHECK(m.std_error == 0.0);
  CHECK(one.growth_exponent() == 0.0);
}

TEST_CASE("cell indicator example") {
  const auto f = TestFunction::cell(psl(), Box{-0.25, 0.25, 1.2, 2.0, 0.0});
  CHECK(f.evaluate(UnitTangent({1.5, 1.5}, 0.0)) == 0.0);
  CHECK(f.evaluate(UnitTangent({1.1, 1.5}, 0.0)) == 1.0);
  CHECK(f.evaluate(UnitTangent({0.0, 3.0}, 0.0)) == 0.0);
  // i/1.5 reduces to 1.5 i.
  CHECK(f.evaluate(UnitTangent({0.0, 1.0 / 1.5}, 0.0)) == 1.0);
}

TEST_CASE("smoothing ramp") {
  const Box b{-0.25, 0.25, 1.2, 2.0, 0.1};
  CHECK(b.value(0.0, 1.6) == 1.0);
  CHECK(b.value(0.3, 1.6) == 0.0);
  CHECK(b.value(0.2, 1.6) == doctest::Approx(0.5));
  CHECK(b.value(0.0, 1.25) == doctest::Approx(0.5));
}

TEST_CASE("exact means") {
  const auto strip = TestFunction::cell(psl(), Box{-0.5, 0.5, 2.0});
  const MeanEstimate m = strip.reference_mean(1000, 0);
  CHECK(m.exact);
  CHECK(m.mean == doctest::Approx(3.0 / (2.0 * std::numbers::pi)).epsilon(1e-14));
  const auto mode = TestFunction::fourier_mode(psl(), 3, Box{-0.5, 0.5, 1.0, 2.0});
  const MeanEstimate z = mode.reference_mean(1000, 0);
  CHECK(z.mean == 0.0);
  CHECK(z.std_error == 0.0);
  const auto th = TestFunction::theta_modulus_squared(Cutoff::bump());
  CHECK(th.reference_mean(1000, 0).mean == 2.0 * Cutoff::bump().integral_of_square());
  CHECK_THROWS_AS(TestFunction::height_power(psl(), 0.5).reference_mean(10, 0), DomainError);
  CHECK_THROWS_AS(TestFunction::height_power(psl(), 1.0), DomainError);
}

TEST_CASE("Monte Carlo agrees with closed-form box means") {
  struct Case {
    const FuchsianGroup* g;
    Box box;
  };
  const Case cases[] = {
      {&psl(), {-0.5, 0.5, 2.0}},
      {&psl(), {-0.25, 0.25, 1.2, 2.0}},
      {&psl(), {-0.5, 0.0, 0.866, 1.5}},
      {&psl(), {-0.3, 0.3, 1.1, 2.5, 0.1}},
      {&g14(), {-0.5, 0.5, 1.5, 4.0}},
  };
  for (const auto& c : cases) {
    double exact = 0.0;
    REQUIRE(box_mean_closed_form(*c.g, c.box, exact));
    const auto f = TestFunction::cell(*c.g, c.box);
    const std::size_t n = 400000;
    double s = 0.0, s2 = 0.0;
    for (const auto& z : c.g->sample_fundamental_domain(n, 99)) {
      const double v = f.evaluate(UnitTangent(z, 0.0)).real();
      s += v;
      s2 += v * v;
    }
    const double mean = s / double(n);
    const double se = std::sqrt((s2 / double(n) - mean * mean) / double(n - 1));
    CHECK(std::abs(mean - exact) <= 4.0 * se);
  }
}

TEST_CASE("gamma invariance") {
  std::mt19937_64 rng(32);
  for (const FuchsianGroup* g : {&psl(), &g14()}) {
    const TestFunction fs[] = {
        TestFunction::cell(*g, Box{-0.3, 0.3, 1.1, 2.5, 0.1}),
        TestFunction::height_power(*g, 0.7),
        TestFunction::fourier_mode(*g, 2, Box{-0.3, 0.3, 1.1, 2.5, 0.1}),
    };
    for (const auto& f : fs)
      for (int i = 0; i < 300; ++i) {
        const UnitTangent p = random_tangent(rng);
        const MoebiusMap gam = random_element(*g, rng, 5);
        const auto a = f.evaluate(p), b = f.evaluate(apply(gam, p));
        CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
      }
  }
}

TEST_CASE("height power equals Y^gamma") {
  std::mt19937_64 rng(33);
  const auto f = TestFunction::height_power(psl(), 0.4);
  for (int i = 0; i < 200; ++i) {
    const UnitTangent p = random_tangent(rng);
    const double y = oracle::brute_height(p.z().as_complex(), false);
    CHECK(f.evaluate(p).real() == doctest::Approx(std::pow(y, 0.4)).epsilon(1e-10));
  }
}

TEST_CASE("reflection composes with evaluation") {
  std::mt19937_64 rng(34);
  const auto f = TestFunction::cell(g14(), Box{0.05, 0.4, 0.3, 1.5, 0.05});
  const auto fv = f.reflected();
  CHECK(fv.is_reflected());
  CHECK_FALSE(fv.reflected().is_reflected());
  for (int i = 0; i < 300; ++i) {
    const UnitTangent p = random_tangent(rng);
    CHECK(fv.evaluate(p) == f.evaluate(reflect(p)));
  }
}

TEST_CASE("theta modulus shares the theta sum and is only defined at angle 0") {
  const Cutoff psi = Cutoff::bump();
  const auto f = TestFunction::theta_modulus_squared(psi);
  CHECK(f.growth_exponent() == 0.5);
  std::mt19937_64 rng(35);
  for (int i = 0; i < 1000; ++i) {
    const double x = -1.0 + 2.0 * uniform01(rng), y = std::pow(10.0, -4.0 + 4.0 * uniform01(rng));
    CHECK(f.evaluate(UnitTangent({x, y}, 0.0)).real() == std::norm(theta_sum(psi, x, y)));
  }
  CHECK_THROWS_AS(f.evaluate(UnitTangent({0.0, 1.0}, 0.5)), DomainError);
}

TEST_CASE("growth contract with cusp excursions") {
  std::mt19937_64 rng(36);
  const Cutoff psi = Cutoff::bump();
  const TestFunction fs[] = {
      TestFunction::theta_modulus_squared(psi),
      TestFunction::height_power(g14(), 0.6),
      TestFunction::cell(g14(), Box{-0.5, 0.5, 1.0, 3.0}),
  };
  const MoebiusMap cusp_maps[] = {MoebiusMap::identity(), g14().cusps()[1].normalizer.inverse(),
                                  g14().cusps()[2].normalizer.inverse()};
  for (const auto& f : fs) {
    const double C = f.growth_constant(), gam = f.growth_exponent();
    for (int i = 0; i < 10000; ++i) {
      UpperHalfPoint z(0.0, 1.0);
      if (i % 2 == 0) {
        z = {-1.0 + 2.0 * uniform01(rng), std::pow(10.0, -6.0 + 6.0 * uniform01(rng))};
      } else {
        // Height up to 1e6 in one of the three cusps.
        const UpperHalfPoint top(uniform01(rng), std::pow(10.0, 6.0 * uniform01(rng)));
        z = apply(cusp_maps[(i / 2) % 3], top);
        if (z.y() < 1e-12) continue;
      }
      const double yz = g14().invariant_height(z);
      CHECK(std::abs(f.evaluate(UnitTangent(z, 0.0))) <= C * std::pow(yz, gam) * (1.0 + 1e-12));
    }
  }
}
