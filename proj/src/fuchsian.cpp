#include "horoeq/fuchsian.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "horoeq/errors.hpp"

namespace horoeq {

namespace {

struct IntMatrix {
  std::int64_t a, b, c, d;
};

IntMatrix to_integer(const MoebiusMap& m) {
  auto round_checked = [](double v) {
    const double r = std::nearbyint(v);
    if (!(std::abs(v - r) <= 0.5e-6) || std::abs(r) > 9.0e15)
      throw NonIntegral("matrix entry is not near an integer: " + std::to_string(v));
    return static_cast<std::int64_t>(r);
  };
  return {round_checked(m.a()), round_checked(m.b()), round_checked(m.c()), round_checked(m.d())};
}

std::int64_t mod4(std::int64_t v) { return ((v % 4) + 4) % 4; }

// Width of the Gamma_0(4) cusp class of p/q (q = 0 is infinity).
int gamma0_4_cusp_width(std::int64_t q) {
  const std::int64_t r = mod4(q);
  if (r == 0 || r == 2) return 1;
  return 4;
}

MoebiusMap word(std::initializer_list<MoebiusMap> factors) {
  MoebiusMap out;
  for (const auto& f : factors) out = out * f;
  return out;
}

}  // namespace

ReducedPoint reduce_modular(const UpperHalfPoint& z) {
  double x = z.x();
  double y = z.y();
  // Witness tracked as an integral matrix held in doubles (exact below 2^53).
  double wa = 1.0, wb = 0.0, wc = 0.0, wd = 1.0;
  for (int step = 0;; ++step) {
    if (step >= kMaxReductionSteps)
      throw iteration_limit("PSL(2,Z) reduction did not terminate (y underflow?)");
    double n = std::floor(x + 0.5);
    double xr = x - n;
    while (xr >= 0.5) {
      xr -= 1.0;
      n += 1.0;
    }
    while (xr < -0.5) {
      xr += 1.0;
      n -= 1.0;
    }
    if (n != 0.0) {
      x = xr;
      wa -= n * wc;
      wb -= n * wd;
    }
    const double r2 = x * x + y * y;
    if (!(r2 > 0x1.0p-1000)) throw overflow_error("PSL(2,Z) reduction: |z|^2 underflow");
    if (r2 < 1.0 || (r2 == 1.0 && x > 0.0)) {
      x = -x / r2;
      y = y / r2;
      const double na = -wc, nb = -wd, nc = wa, nd = wb;
      wa = na;
      wb = nb;
      wc = nc;
      wd = nd;
      continue;
    }
    break;
  }
  if (std::max({std::abs(wa), std::abs(wb), std::abs(wc), std::abs(wd)}) > 0x1.0p53)
    throw precision_exceeded("reduction witness exceeds exact integer range");
  return {UpperHalfPoint(x, y), MoebiusMap(wa, wb, wc, wd)};
}

FuchsianGroup::FuchsianGroup(GroupPreset p) : preset_(p) {
  const MoebiusMap T = MoebiusMap::translation(1.0);
  const MoebiusMap S = MoebiusMap::inversion();
  switch (p) {
    case GroupPreset::PSL2Z:
      cusps_.push_back({ExtendedReal::infinity(), MoebiusMap::identity(), T, 1});
      generators_ = {S, T};
      cosets_ = {MoebiusMap::identity()};
      area_ = std::numbers::pi / 3.0;
      height_floor_ = std::sqrt(3.0) / 2.0;
      break;
    case GroupPreset::GammaBar1of4: {
      const MoebiusMap U(1.0, 0.0, 4.0, 1.0);
      cusps_.push_back({ExtendedReal::infinity(), MoebiusMap::identity(), T, 1});
      // Cusp 0 has width 4; the scaling diag(1/2, 2) is folded into N.
      cusps_.push_back({{0.0, false}, MoebiusMap(0.0, -0.5, 2.0, 0.0), U, 4});
      cusps_.push_back({{0.5, false}, MoebiusMap(1.0, 0.0, -2.0, 1.0),
                        MoebiusMap(-1.0, 1.0, -4.0, 3.0), 1});
      generators_ = {T, U};
      cosets_ = {MoebiusMap::identity(),
                 S,
                 word({S, T}),
                 word({S, MoebiusMap::translation(2.0)}),
                 word({S, MoebiusMap::translation(3.0)}),
                 word({S, MoebiusMap::translation(2.0), S})};
      area_ = 2.0 * std::numbers::pi;
      // Y >= Im(reduced point) / (largest width) >= (sqrt 3 / 2) / 4.
      height_floor_ = std::sqrt(3.0) / 8.0;
      break;
    }
  }
}

const FuchsianGroup& FuchsianGroup::psl2z() {
  static const FuchsianGroup g = [] {
    FuchsianGroup out(GroupPreset::PSL2Z);
    out.self_check();
    return out;
  }();
  return g;
}

const FuchsianGroup& FuchsianGroup::gamma1_4() {
  static const FuchsianGroup g = [] {
    FuchsianGroup out(GroupPreset::GammaBar1of4);
    out.self_check();
    return out;
  }();
  return g;
}

const FuchsianGroup& FuchsianGroup::get(GroupPreset p) {
  return p == GroupPreset::PSL2Z ? psl2z() : gamma1_4();
}

const FuchsianGroup& FuchsianGroup::by_name(std::string_view name) {
  if (name == "psl2z") return psl2z();
  if (name == "gamma1_4") return gamma1_4();
  throw DomainError("unknown group preset '" + std::string(name) +
                    "' (expected psl2z or gamma1_4)");
}

std::string_view FuchsianGroup::name() const {
  return preset_ == GroupPreset::PSL2Z ? "psl2z" : "gamma1_4";
}

bool FuchsianGroup::contains(const MoebiusMap& m) const {
  const IntMatrix k = to_integer(m);
  const __int128 det = static_cast<__int128>(k.a) * k.d - static_cast<__int128>(k.b) * k.c;
  if (det != 1) return false;
  if (preset_ == GroupPreset::PSL2Z) return true;
  for (const std::int64_t s : {1, -1}) {
    if (mod4(s * k.c) == 0 && mod4(s * k.a) == 1 && mod4(s * k.d) == 1) return true;
  }
  return false;
}

ReducedPoint FuchsianGroup::reduce(const UpperHalfPoint& z) const {
  const ReducedPoint base = reduce_modular(z);
  if (preset_ == GroupPreset::PSL2Z) return base;
  for (const auto& g : cosets_) {
    const MoebiusMap w = g * base.witness;
    if (contains(w)) return {apply(g, base.point), w};
  }
  throw DomainError("coset lookup failed; coset table is inconsistent");
}

ReducedTangent FuchsianGroup::reduce(const UnitTangent& p) const {
  const ReducedPoint r = reduce(p.z());
  const UnitTangent moved = apply(r.witness, p);
  return {UnitTangent(r.point, moved.angle()), r.witness};
}

double FuchsianGroup::invariant_height(const UpperHalfPoint& z) const {
  const ReducedPoint r = reduce_modular(z);
  const double x0 = r.point.x();
  const double y0 = r.point.y();
  if (preset_ == GroupPreset::PSL2Z) return y0;

  // Y = max over rationals rho of H(z, rho) / width(class of rho), where
  // H(z, rho) = Im h z for any h in PSL(2,Z) with h(rho) = infinity. In
  // reduced coordinates H(z0, -d/c) = y0 / |c z0 + d|^2; the candidate c = 0
  // already gives y0 / 4, so only |c z0 + d|^2 <= 4 can compete, which
  // forces c <= 2 because y0 >= sqrt(3)/2.
  const IntMatrix w = to_integer(r.witness);
  double best = 0.0;
  for (std::int64_t c = 0; c <= 2; ++c) {
    const double rem = 4.0 - static_cast<double>(c * c) * y0 * y0;
    if (rem < 0.0) continue;
    const double rad = std::sqrt(rem);
    const double cx = static_cast<double>(c) * x0;
    const auto d_lo = static_cast<std::int64_t>(std::ceil(-cx - rad));
    const auto d_hi = static_cast<std::int64_t>(std::floor(-cx + rad));
    for (std::int64_t d = d_lo; d <= d_hi; ++d) {
      if (c == 0 && d != 1) continue;
      if (std::gcd(c, d) != 1) continue;
      const double re = cx + static_cast<double>(d);
      const double im = static_cast<double>(c) * y0;
      const double h = y0 / (re * re + im * im);
      // Cusp -d/c in reduced coordinates, pulled back by the witness inverse
      // (d0, -b0; -c0, a0); only its denominator matters.
      const __int128 q = -static_cast<__int128>(w.c) * (-d) + static_cast<__int128>(w.a) * c;
      const int width = gamma0_4_cusp_width(static_cast<std::int64_t>(q % 4));
      best = std::max(best, h / width);
    }
  }
  return best;
}

std::vector<UpperHalfPoint> FuchsianGroup::sample_fundamental_domain(std::size_t n,
                                                                     std::uint64_t seed) const {
  std::vector<UpperHalfPoint> out;
  out.reserve(n);
  std::mt19937_64 rng(seed);
  // In (x, t = 1/y) coordinates hyperbolic area is Lebesgue measure. Above
  // the height cut the domain is the strip [-1/2, 1/2) x [B0, inf), sampled
  // by the inverse CDF of y; the remaining body is sampled by rejection.
  const double tail_area = 1.0 / kHeightCut;
  const double tail_prob = tail_area / (std::numbers::pi / 3.0);
  const double t_min = 1.0 / kHeightCut;
  const double t_max = 2.0 / std::sqrt(3.0);
  const auto n_cosets = static_cast<double>(cosets_.size());
  while (out.size() < n) {
    double x = 0.0;
    double y = 0.0;
    if (uniform01(rng) < tail_prob) {
      x = uniform01(rng) - 0.5;
      y = kHeightCut / (1.0 - uniform01(rng));
    } else {
      for (;;) {
        x = uniform01(rng) - 0.5;
        const double t = t_min + (t_max - t_min) * uniform01(rng);
        if (t * t * (1.0 - x * x) <= 1.0 && t > t_min) {
          y = 1.0 / t;
          break;
        }
      }
    }
    UpperHalfPoint z(x, y);
    if (cosets_.size() > 1) {
      const auto j = static_cast<std::size_t>(std::floor(uniform01(rng) * n_cosets));
      z = apply(cosets_[j], z);
    }
    out.push_back(z);
  }
  return out;
}

void FuchsianGroup::self_check() const {
  auto fail = [this](const std::string& what) {
    throw DomainError("self-check failed for " + std::string(name()) + ": " + what);
  };
  int width_sum = 0;
  for (std::size_t k = 0; k < cusps_.size(); ++k) {
    const Cusp& cusp = cusps_[k];
    width_sum += cusp.width;
    if (!contains(cusp.stabilizer)) fail("stabilizer generator not in group");
    const MoebiusMap conj = cusp.normalizer * cusp.stabilizer * cusp.normalizer.inverse();
    if (std::abs(conj.c()) > 1e-12 || std::abs(conj.a() - 1.0) > 1e-12 ||
        std::abs(conj.d() - 1.0) > 1e-12 || std::abs(std::abs(conj.b()) - 1.0) > 1e-12)
      fail("conjugated stabilizer is not a unit translation");
    if (k == 0) {
      if (!cusp.representative.infinite || !(cusp.normalizer == MoebiusMap::identity()))
        fail("first cusp must be infinity with identity normalizer");
    } else {
      double prev = 0.0;
      for (int e = 2; e <= 8; ++e) {
        const UpperHalfPoint probe(cusp.representative.value, std::pow(10.0, -e));
        const double mag = std::abs(apply(cusp.normalizer, probe).as_complex());
        if (!(mag > prev)) fail("normalizer does not send the cusp to infinity");
        prev = mag;
      }
      if (prev < 1e6) fail("normalizer does not send the cusp to infinity");
    }
    // Strip: above the height cut the cusp neighbourhood is
    // an exact unit strip on which the invariant height equals Im N_k z.
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 3; ++j) {
        const UpperHalfPoint w(0.1 + 0.2 * i, kHeightCut * (1.0 + j));
        const UpperHalfPoint z = apply(cusp.normalizer.inverse(), w);
        if (std::abs(invariant_height(z) - w.y()) > 1e-9 * w.y())
          fail("cusp strip above the height cut is not disjoint from other cusps");
      }
    }
  }
  if (width_sum != index()) fail("cusp widths do not sum to the index");
  for (std::size_t i = 0; i < cosets_.size(); ++i)
    for (std::size_t j = i + 1; j < cosets_.size(); ++j)
      if (contains(cosets_[i] * cosets_[j].inverse())) fail("coset representatives not distinct");
}

}  // namespace horoeq
