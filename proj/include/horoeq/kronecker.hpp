#pragma once

// Kronecker point sets (delta + m alpha + iy, 0) along a closed horocycle,
// their averages against test functions, and closed-horocycle averages.

#include <complex>
#include <cstdint>
#include <iterator>
#include <vector>

#include "horoeq/arith.hpp"
#include "horoeq/summation.hpp"
#include "horoeq/testfun.hpp"

namespace horoeq {

/// Point set with y tied to the size by y = c * M^-nu.
class PointSetSpec {
 public:
  PointSetSpec(Alpha alpha, std::int64_t M, double nu, double c = 1.0, double delta = 0.0,
               bool include_zero = false);

  const Alpha& alpha() const { return alpha_; }
  std::int64_t size() const { return M_; }
  double nu() const { return nu_; }
  double c() const { return c_; }
  double delta() const { return delta_; }
  bool include_zero() const { return include_zero_; }
  double height() const { return y_; }

  PointSetSpec with_alpha(Alpha a) const;

  /// Horocycle coordinate of the point with index m, reduced mod 1.
  double x_of(std::int64_t m) const;
  UnitTangent point(std::int64_t m) const;
  std::int64_t first_index() const { return include_zero_ ? 0 : 1; }

 private:
  Alpha alpha_;
  std::int64_t M_;
  double nu_;
  double c_;
  double delta_;
  bool include_zero_;
  double y_;
};

/// Lazy forward range over the points of a spec; nothing is materialized.
class PointSet {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = UnitTangent;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const PointSetSpec* s, std::int64_t m) : spec_(s), m_(m) {}
    UnitTangent operator*() const { return spec_->point(m_); }
    iterator& operator++() {
      ++m_;
      return *this;
    }
    iterator operator++(int) {
      iterator t = *this;
      ++m_;
      return t;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.m_ == b.m_; }

   private:
    const PointSetSpec* spec_ = nullptr;
    std::int64_t m_ = 0;
  };

  explicit PointSet(const PointSetSpec& s) : spec_(s) {}
  iterator begin() const { return {&spec_, spec_.first_index()}; }
  iterator end() const { return {&spec_, spec_.first_index() + spec_.size()}; }
  std::int64_t size() const { return spec_.size(); }

 private:
  PointSetSpec spec_;
};

inline PointSet generate(const PointSetSpec& spec) { return PointSet(spec); }

/// (1/M) sum_m f(points). Fixed ascending order, compensated, chunked.
std::complex<double> pse_average(const PointSetSpec& spec, const TestFunction& f,
                                 const Exec& exec = {});

/// Piecewise polynomial weight with compact support. Piece i covers
/// [breaks[i], breaks[i+1]) (the last piece is closed on the right) and is
/// sum_k coeffs[i][k] * u^k in the absolute variable u.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(std::vector<double> breaks, std::vector<std::vector<double>> coeffs);

  static PiecewisePolynomial indicator(double lo, double hi);
  static PiecewisePolynomial triangle(double half_width);

  double operator()(double u) const;
  double support_lo() const { return breaks_.front(); }
  double support_hi() const { return breaks_.back(); }
  double integral() const;

 private:
  std::vector<double> breaks_;
  std::vector<std::vector<double>> coeffs_;
};

/// (1/M) sum_{m != 0} h(m/M) f(m alpha + iy, 0) over all m with m/M in the
/// support of h.
std::complex<double> weighted_average(const PointSetSpec& spec, const TestFunction& f,
                                      const PiecewisePolynomial& h, const Exec& exec = {});

/// Midpoint rule for the closed-horocycle integral of f(x + iy, 0) e(-nx).
std::complex<double> horocycle_fourier(const TestFunction& f, double y, std::int64_t n,
                                       std::size_t n_quad, const Exec& exec = {});

/// Closed-horocycle average; equals horocycle_fourier with n = 0.
std::complex<double> horocycle_average(const TestFunction& f, double y, std::size_t n_quad,
                                       const Exec& exec = {});

}  // namespace horoeq
