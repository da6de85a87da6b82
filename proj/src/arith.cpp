#include "horoeq/arith.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include "horoeq/errors.hpp"

namespace horoeq {

namespace {

double wrap01(double f) {
  if (f < 0.0) f += 1.0;
  if (f >= 1.0) f -= 1.0;
  // f + 1.0 can round up to exactly 1.0 for tiny negative f.
  return f < 1.0 ? f : 0.0;
}

}  // namespace

double frac_mul(std::int64_t n, double a) {
  const auto nd = static_cast<double>(n);
  const double prod = nd * a;
  const double err = std::fma(nd, a, -prod);
  const double f = (prod - std::floor(prod)) + err;
  return wrap01(f);
}

double nearest_int_distance(double x) { return std::abs(x - std::nearbyint(x)); }

Alpha Alpha::real(double v) {
  if (!std::isfinite(v)) throw DomainError("alpha must be finite");
  const double fl = std::floor(v);
  if (std::abs(fl) > 0x1.0p62) throw DomainError("alpha too large");
  return rational(static_cast<std::int64_t>(fl), 1, v - fl);
}

Alpha Alpha::rational(std::int64_t p, std::int64_t q, double tail) {
  if (q <= 0) throw DomainError("alpha anchor denominator must be positive");
  if (!std::isfinite(tail)) throw DomainError("alpha tail must be finite");
  Alpha a;
  const std::int64_t g = std::gcd(p, q);
  a.p_ = g > 1 ? p / g : p;
  a.q_ = g > 1 ? q / g : q;
  a.tail_ = tail;
  return a;
}

Alpha Alpha::parse(const std::string& text) {
  if (text == "sqrt2") return real(std::numbers::sqrt2);
  if (text == "golden") return real(std::numbers::phi);
  if (text == "e") return real(std::numbers::e);
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    std::int64_t p = 0, q = 0;
    const char* mid = text.data() + slash;
    auto r1 = std::from_chars(text.data(), mid, p);
    auto r2 = std::from_chars(mid + 1, text.data() + text.size(), q);
    if (r1.ec != std::errc() || r1.ptr != mid || r2.ec != std::errc() ||
        r2.ptr != text.data() + text.size() || q <= 0)
      throw DomainError("cannot parse rational alpha '" + text + "'");
    return rational(p, q);
  }
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw DomainError("cannot parse alpha '" + text + "' (decimal, sqrt2, golden or e)");
  return real(v);
}

double Alpha::value() const {
  return static_cast<double>(p_) / static_cast<double>(q_) + tail_;
}

double Alpha::frac_multiple(std::int64_t m) const {
  double anchor = 0.0;
  if (q_ != 1) {
    __int128 r = (static_cast<__int128>(m) * p_) % q_;
    if (r < 0) r += q_;
    anchor = static_cast<double>(static_cast<std::int64_t>(r)) / static_cast<double>(q_);
  }
  if (tail_ == 0.0) return anchor;
  return wrap01(anchor + frac_mul(m, tail_));
}

Alpha Alpha::shifted(std::int64_t k) const {
  const __int128 p = static_cast<__int128>(p_) + static_cast<__int128>(k) * q_;
  if (p > INT64_MAX || p < INT64_MIN) throw DomainError("alpha shift overflows");
  Alpha a = *this;
  a.p_ = static_cast<std::int64_t>(p);
  return a;
}

}  // namespace horoeq
