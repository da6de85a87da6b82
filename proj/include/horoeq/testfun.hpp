#pragma once

// Gamma-invariant test functions of controlled cusp growth, with reference
// means <f> over the unit tangent bundle of the quotient.

#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <variant>

#include "horoeq/fuchsian.hpp"
#include "horoeq/theta.hpp"

namespace horoeq {

/// Coordinate box in reduced coordinates, with an optional linear ramp of
/// width epsilon inside each finite face.
struct Box {
  double x_lo = -std::numeric_limits<double>::infinity();
  double x_hi = std::numeric_limits<double>::infinity();
  double y_lo = 0.0;
  double y_hi = std::numeric_limits<double>::infinity();
  double epsilon = 0.0;

  double value(double x, double y) const;
};

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  bool exact = false;
};

class TestFunction {
 public:
  struct CellIndicator {
    Box box;
  };
  struct HeightPower {
    double exponent;
  };
  struct ThetaModulusSquared {
    Cutoff psi;
  };
  struct FourierMode {
    int v;
    Box base;
  };
  using Kind = std::variant<CellIndicator, HeightPower, ThetaModulusSquared, FourierMode>;

  static TestFunction cell(const FuchsianGroup& g, const Box& box);
  static TestFunction constant_one(const FuchsianGroup& g) { return cell(g, Box{}); }
  /// Y(z)^gamma with gamma in [0, 1).
  static TestFunction height_power(const FuchsianGroup& g, double gamma);
  /// |theta_psi(z)|^2 on the Gamma_1(4) quotient, sampled at theta = 0.
  static TestFunction theta_modulus_squared(const Cutoff& psi);
  /// base(z) * exp(i v theta), both taken at the reduced representative.
  static TestFunction fourier_mode(const FuchsianGroup& g, int v, const Box& base);

  /// f o V with V(z, theta) = (-conj z, -theta).
  TestFunction reflected() const;

  std::complex<double> evaluate(const UnitTangent& p) const;

  /// gamma in the bound |f| <= C * Y^gamma.
  double growth_exponent() const;
  /// C in the same bound. For the theta modulus this is an empirical
  /// estimate, not a proved constant.
  double growth_constant() const { return growth_constant_; }

  /// <f>: closed form where available, otherwise Monte Carlo with n_mc
  /// samples from the fundamental domain.
  MeanEstimate reference_mean(std::size_t n_mc, std::uint64_t seed) const;

  const Kind& kind() const { return kind_; }
  const FuchsianGroup& group() const { return *group_; }
  bool is_reflected() const { return reflected_; }

 private:
  TestFunction(const FuchsianGroup& g, Kind k) : group_(&g), kind_(std::move(k)) {}

  const FuchsianGroup* group_;
  Kind kind_;
  bool reflected_ = false;
  double growth_constant_ = 1.0;
};

/// Exact <1_box> when the box avoids the open unit disk (or, for PSL(2,Z),
/// when the box is sharp). Returns false when no closed form applies.
bool box_mean_closed_form(const FuchsianGroup& g, const Box& box, double& mean);

/// Empirical sup of |theta_psi|^2 / Y^(1/2) over a deterministic probe set.
double estimate_theta_growth_constant(const Cutoff& psi);

}  // namespace horoeq
