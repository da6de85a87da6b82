#pragma once

// Preset Fuchsian groups: PSL(2,Z) and the level-4 group Gamma_1(4) bar.

#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "horoeq/hyperbolic.hpp"

namespace horoeq {

enum class GroupPreset { PSL2Z, GammaBar1of4 };

/// Point of R u {infinity}.
struct ExtendedReal {
  double value = 0.0;
  bool infinite = false;
  static ExtendedReal infinity() { return {0.0, true}; }
};

struct Cusp {
  ExtendedReal representative;
  MoebiusMap normalizer;  // N_k with N_k(representative) = infinity
  MoebiusMap stabilizer;  // generator T_k of the stabilizer in the group
  int width = 1;
};

struct ReducedPoint {
  UpperHalfPoint point;
  MoebiusMap witness;  // group element with witness(input) == point
};

/// Same as ReducedPoint but carrying the reduced direction as well.
struct ReducedTangent {
  UnitTangent point;
  MoebiusMap witness;
};

/// Height cut above which every cusp neighbourhood is an exact unit strip.
inline constexpr double kHeightCut = 2.0;

class FuchsianGroup {
 public:
  static const FuchsianGroup& psl2z();
  static const FuchsianGroup& gamma1_4();
  static const FuchsianGroup& get(GroupPreset p);
  /// "psl2z" or "gamma1_4"; throws DomainError otherwise.
  static const FuchsianGroup& by_name(std::string_view name);

  GroupPreset preset() const { return preset_; }
  std::string_view name() const;
  const std::vector<Cusp>& cusps() const { return cusps_; }
  const std::vector<MoebiusMap>& generators() const { return generators_; }
  /// Right coset representatives g_j with PSL(2,Z) = disjoint union of G g_j.
  const std::vector<MoebiusMap>& coset_representatives() const { return cosets_; }
  /// Hyperbolic area of the fundamental domain.
  double area() const { return area_; }
  /// Index in PSL(2,Z).
  int index() const { return static_cast<int>(cosets_.size()); }
  /// Positive lower bound of the invariant height.
  double height_floor() const { return height_floor_; }

  /// Membership test for a near-integral matrix. Throws NonIntegral if some
  /// entry is farther than 0.5e-6 from an integer.
  bool contains(const MoebiusMap& m) const;

  /// Maps z into the fixed fundamental domain.
  ReducedPoint reduce(const UpperHalfPoint& z) const;
  ReducedTangent reduce(const UnitTangent& p) const;

  /// Invariant height: sup over cusps k and group elements W of Im N_k W z.
  double invariant_height(const UpperHalfPoint& z) const;

  /// n i.i.d. points from normalized hyperbolic area on the fundamental domain.
  std::vector<UpperHalfPoint> sample_fundamental_domain(std::size_t n, std::uint64_t seed) const;

  /// Startup consistency checks on the hardcoded data. Throws on failure.
  void self_check() const;

 private:
  explicit FuchsianGroup(GroupPreset p);

  GroupPreset preset_;
  std::vector<Cusp> cusps_;
  std::vector<MoebiusMap> generators_;
  std::vector<MoebiusMap> cosets_;
  double area_ = 0.0;
  double height_floor_ = 0.0;
};

/// Step cap for the reduction loop.
inline constexpr int kMaxReductionSteps = 1'000'000;

/// Reduction into the standard PSL(2,Z) domain |Re z| <= 1/2, |z| >= 1 with
/// Re z in [-1/2, 1/2) and Re z <= 0 on the unit circle.
ReducedPoint reduce_modular(const UpperHalfPoint& z);

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit engine draw.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace horoeq
