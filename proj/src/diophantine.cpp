#include "horoeq/diophantine.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "horoeq/errors.hpp"

namespace horoeq {

namespace {

using boost::multiprecision::cpp_int;
using i128 = __int128;

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool fits_i64(i128 v) {
  return v <= std::numeric_limits<std::int64_t>::max() &&
         v >= std::numeric_limits<std::int64_t>::min();
}

// x = num/den with den <= max_den, if x is such a rational to 1e-12.
bool small_rational(double x, std::int64_t max_den, std::int64_t& num, std::int64_t& den) {
  if (!std::isfinite(x)) return false;
  for (std::int64_t d = 1; d <= max_den; ++d) {
    const double n = std::nearbyint(x * static_cast<double>(d));
    if (std::abs(n - x * static_cast<double>(d)) <= 1e-12 * static_cast<double>(d) &&
        std::abs(n) < 1e6) {
      num = static_cast<std::int64_t>(n);
      den = d;
      return true;
    }
  }
  return false;
}

cpp_int ipow(std::int64_t base, std::int64_t e) {
  return boost::multiprecision::pow(cpp_int(base), static_cast<unsigned>(e));
}

// Pushes a_j and its convergent. Returns false on int64 overflow.
bool push_quotient(ContinuedFraction& cf, std::int64_t a) {
  const std::size_t j = cf.partial_quotients.size();
  i128 p = 0, q = 0;
  if (j == 0) {
    p = a;
    q = 1;
  } else {
    const Convergent c1 = cf.convergents[j - 1];
    const Convergent c2 = j >= 2 ? cf.convergents[j - 2] : Convergent{1, 0};
    p = static_cast<i128>(a) * c1.p + c2.p;
    q = static_cast<i128>(a) * c1.q + c2.q;
  }
  if (!fits_i64(p) || !fits_i64(q)) return false;
  cf.partial_quotients.push_back(a);
  cf.convergents.push_back({static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)});
  return true;
}

ContinuedFraction rational_expansion(i128 num, i128 den, std::size_t depth) {
  ContinuedFraction cf;
  // floor division for a_0
  i128 a = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --a;
  i128 r = num - a * den;
  if (!fits_i64(a)) throw overflow_error("continued fraction quotient exceeds int64");
  push_quotient(cf, static_cast<std::int64_t>(a));
  while (r != 0 && cf.depth() < depth) {
    const i128 n2 = den, d2 = r;
    a = n2 / d2;
    r = n2 - a * d2;
    den = d2;
    if (!fits_i64(a) || !push_quotient(cf, static_cast<std::int64_t>(a)))
      throw overflow_error("continued fraction convergent exceeds int64");
  }
  cf.terminating = (r == 0);
  return cf;
}

// Complete quotient alpha_{j+1} = [a_{j+1}; a_{j+2}, ...] of a symbolic pattern.
long double symbolic_complete_quotient(const std::string& s, std::size_t j) {
  long double v = 0.0L;
  for (std::size_t k = j + 60; k > j + 1; --k)
    v = 1.0L / (static_cast<long double>(symbolic_quotient(s, k)) + v);
  return static_cast<long double>(symbolic_quotient(s, j + 1)) + v;
}

}  // namespace

ContinuedFraction from_quotients(std::vector<std::int64_t> quotients) {
  ContinuedFraction cf;
  for (std::size_t j = 0; j < quotients.size(); ++j) {
    if (j > 0 && quotients[j] < 1) throw DomainError("partial quotients after a_0 must be >= 1");
    if (!push_quotient(cf, quotients[j]))
      throw overflow_error("continued fraction convergent exceeds int64");
  }
  return cf;
}

std::int64_t symbolic_quotient(const std::string& s, std::size_t j) {
  if (s == "sqrt2") return j == 0 ? 1 : 2;
  if (s == "golden") return 1;
  if (s == "e") {
    if (j == 0) return 2;
    return (j % 3 == 2) ? static_cast<std::int64_t>(2 * (j + 1) / 3) : 1;
  }
  throw DomainError("unknown symbolic constant '" + s + "'");
}

namespace {

// [..., a, 1] and [..., a + 1] are the same rational; keep the short form.
ContinuedFraction canonical(ContinuedFraction cf) {
  auto& a = cf.partial_quotients;
  if (!cf.terminating || a.size() < 3 || a.back() != 1) return cf;
  a.pop_back();
  a.back() += 1;
  ContinuedFraction out = from_quotients(a);
  out.terminating = true;
  return out;
}

}  // namespace

ContinuedFraction continued_fraction(double alpha, std::size_t depth) {
  if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
  int exp = 0;
  const double mant = std::frexp(alpha, &exp);
  // alpha = m * 2^(exp - 53) with m an integer.
  const auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  const int shift = 53 - exp;
  if (shift > 120) throw DomainError("alpha too close to zero for exact expansion");
  i128 num = m, den = 1;
  if (shift > 0) {
    den = static_cast<i128>(1) << shift;
  } else {
    if (-shift > 10) throw DomainError("alpha too large for exact expansion");
    num = static_cast<i128>(m) << (-shift);
  }
  // Exact expansion of the double, then cut where it stops meaning anything.
  const ContinuedFraction full = rational_expansion(num, den, depth + 2);
  const double ulp = std::max(std::nextafter(std::abs(alpha), HUGE_VAL) - std::abs(alpha),
                              std::numeric_limits<double>::denorm_min());
  ContinuedFraction out;
  for (std::size_t j = 0; j < full.partial_quotients.size() && out.depth() <= depth; ++j) {
    if (j > depth) break;
    push_quotient(out, full.partial_quotients[j]);
    const Convergent c = full.convergents[j];
    const double qd = static_cast<double>(c.q);
    const double err = std::abs(alpha - static_cast<double>(c.p) / qd);
    if (err <= ulp && qd * qd * ulp < 1e-6) {
      out.terminating = true;
      return canonical(out);
    }
    if (j == full.partial_quotients.size() - 1) {
      out.terminating = full.terminating;
      return canonical(out);
    }
    if (j < depth) {
      const double q_next = static_cast<double>(full.convergents[j + 1].q);
      const double a_next = static_cast<double>(full.partial_quotients[j + 1]);
      if (qd * q_next * a_next * ulp > 1e-3)
        throw depth_unreliable("double precision resolves only " + std::to_string(j) +
                               " partial quotients; requested " + std::to_string(depth));
    }
  }
  return out;
}

ContinuedFraction continued_fraction(const std::string& alpha, std::size_t depth) {
  if (alpha == "sqrt2" || alpha == "golden" || alpha == "e") {
    ContinuedFraction cf;
    cf.symbol = alpha;
    for (std::size_t j = 0; j <= depth; ++j)
      if (!push_quotient(cf, symbolic_quotient(alpha, j)))
        throw overflow_error("continued fraction convergent exceeds int64 at depth " +
                             std::to_string(j));
    return cf;
  }
  const Alpha a = Alpha::parse(alpha);
  if (a.tail() == 0.0) return rational_expansion(a.anchor_p(), a.anchor_q(), depth);
  return continued_fraction(a.value(), depth);
}

double convergent_error(const ContinuedFraction& cf, const Alpha& alpha, std::size_t j) {
  const Convergent c = cf.convergents.at(j);
  if (!cf.symbol.empty()) {
    const long double next = symbolic_complete_quotient(cf.symbol, j);
    const long double q_prev = j >= 1 ? static_cast<long double>(cf.convergents[j - 1].q) : 0.0L;
    const auto q = static_cast<long double>(c.q);
    return static_cast<double>(1.0L / (q * (next * q + q_prev)));
  }
  const i128 num = static_cast<i128>(alpha.anchor_p()) * c.q -
                   static_cast<i128>(c.p) * alpha.anchor_q();
  const long double rat = static_cast<long double>(num) /
                          (static_cast<long double>(alpha.anchor_q()) * c.q);
  return static_cast<double>(std::abs(rat + static_cast<long double>(alpha.tail())));
}

TypeEstimate estimate_type(const ContinuedFraction& cf, const Alpha& alpha) {
  // Plain doubles only resolve errors well above their own rounding.
  const double floor_err = (cf.symbol.empty() && alpha.anchor_q() == 1)
                               ? 1e3 * kEps * std::max(1.0, std::abs(alpha.value()))
                               : 0.0;
  std::vector<double> xs, ys;
  std::vector<std::pair<double, double>> used;  // (q, err)
  for (std::size_t j = 0; j < cf.convergents.size(); ++j) {
    const double err = convergent_error(cf, alpha, j);
    if (!(err > floor_err)) break;
    const auto q = static_cast<double>(cf.convergents[j].q);
    used.emplace_back(q, err);
    if (q >= 2.0) {
      xs.push_back(std::log(q));
      ys.push_back(-std::log(err));
    }
  }
  if (xs.size() < 2 || used.size() < 3)
    throw DomainError("estimate_type needs at least 3 resolved convergents");
  // Least-squares decay exponent of log|alpha - p/q| against log q.
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double K = std::max(2.0, sxx > 0.0 ? sxy / sxx : 2.0);
  double C = HUGE_VAL;
  for (const auto& [q, err] : used) C = std::min(C, std::pow(q, K) * err);
  return {K, 0.99 * C, used.size()};
}

double min_norm_sum(const Alpha& alpha, double M, std::int64_t N1, std::int64_t N2,
                    const Exec& exec) {
  if (N1 < 1 || N2 < N1) throw DomainError("min_norm_sum needs 1 <= N1 <= N2");
  if (N2 > 10'000'000) throw DomainError("min_norm_sum supports N2 <= 1e7");
  if (!(M > 0.0)) throw DomainError("min_norm_sum needs M > 0");
  const auto n = static_cast<std::size_t>(N2 - N1 + 1);
  const auto total = chunked_reduce<CompensatedSum>(n, exec, [&](std::size_t b, std::size_t e) {
    CompensatedSum s;
    for (std::size_t i = b; i < e; ++i) {
      const double f = alpha.frac_multiple(N1 + static_cast<std::int64_t>(i));
      const double d = std::min(f, 1.0 - f);
      s.add(d > 0.0 ? std::min(M, 1.0 / d) : M);
    }
    return s;
  });
  return total.value();
}

double admissible_nu(double beta, double K) {
  if (!(beta >= 0.0) || !(K >= 2.0)) throw DomainError("admissible_nu needs beta >= 0, K >= 2");
  const double edge = (3.0 - K) / (2.0 * (K - 1.0));
  if (beta < edge) return 2.0 / (1.0 + 2.0 * beta);
  if (beta < 0.5) return 2.0 / (2.0 * K * beta + K - 2.0);
  return 2.0 / (2.0 * K + 2.0 * beta - 3.0);
}

bool certify_level_exact(const ContinuedFraction& cf, std::size_t j, double nu, bool& holds) {
  std::int64_t num = 0, den = 0;
  // exponent 2 + 2/nu = num / den
  if (!small_rational(2.0 + 2.0 / nu, 64, num, den)) return false;
  const std::int64_t qj = cf.convergents.at(j).q;
  const std::int64_t qn = cf.convergents.at(j + 1).q;
  // (q_j q_{j+1})^den >= (3 q_j)^num
  const cpp_int lhs = boost::multiprecision::pow(cpp_int(qj) * qn, static_cast<unsigned>(den));
  holds = lhs >= ipow(3 * qj, num);
  return true;
}

Counterexample make_counterexample(double nu, std::size_t levels) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("nu must be positive");
  if (levels < 1) throw DomainError("make_counterexample needs at least one level");
  const double E = 2.0 + 2.0 / nu;
  std::int64_t e_num = 0, e_den = 0;
  const bool rational_exponent = small_rational(E, 64, e_num, e_den);

  ContinuedFraction cf;
  push_quotient(cf, 0);
  push_quotient(cf, 2);
  bool exact = true;
  for (std::size_t j = 1; j <= levels; ++j) {
    const std::int64_t qj = cf.convergents[j].q;
    if (static_cast<double>(qj) * static_cast<double>(qj) >= 0x1.0p52)
      throw precision_exceeded("level " + std::to_string(j) + " has q^2 >= 2^52 (q = " +
                               std::to_string(qj) + ")");
    // Smallest a with a q_j >= (3 q_j)^E, so q_{j+1} > (3 q_j)^E. Float guess,
    // settled by the exact test.
    const long double target = std::pow(3.0L * qj, static_cast<long double>(E));
    if (target > 0x1.0p120L)
      throw precision_exceeded("quotient at level " + std::to_string(j) + " too large");
    auto a = static_cast<std::int64_t>(std::ceil(target / static_cast<long double>(qj)));
    a = std::max<std::int64_t>(a - 2, 1);
    auto ok = [&](std::int64_t cand) {
      const i128 aq = static_cast<i128>(cand) * qj;
      if (rational_exponent) {
        const cpp_int lhs = boost::multiprecision::pow(cpp_int(static_cast<std::int64_t>(aq)),
                                                       static_cast<unsigned>(e_den));
        return lhs >= ipow(3 * qj, e_num);
      }
      return std::log(static_cast<long double>(aq)) >= E * std::log(3.0L * qj);
    };
    while (!ok(a)) ++a;
    if (!push_quotient(cf, a)) throw precision_exceeded("convergent overflows int64");
    bool holds = false;
    if (certify_level_exact(cf, j, nu, holds)) {
      if (!holds) throw std::logic_error("counterexample level failed exact certification");
    } else {
      exact = false;
    }
  }
  // Tail [1; 1, 1, ...] = golden ratio beyond the last quotient a_{L+1}.
  const std::size_t n = levels + 1;
  const Convergent cn = cf.convergents[n];
  const Convergent cp = cf.convergents[n - 1];
  const long double phi = (1.0L + std::sqrt(5.0L)) / 2.0L;
  const long double qn = cn.q;
  long double tail = 1.0L / (qn * (phi * qn + static_cast<long double>(cp.q)));
  if (n % 2 == 1) tail = -tail;
  Counterexample out{nu, Alpha::rational(cn.p, cn.q, static_cast<double>(tail)), cf, levels, E,
                     exact};
  return out;
}

bool escape_conditions_hold(std::int64_t q, double nu, std::int64_t M) {
  if (q < 2 || M < 1) return false;
  std::int64_t nn = 0, nd = 0, fn = 0, fd = 0;
  // nu = nn/nd and 4/nu = fn/fd
  if (small_rational(nu, 64, nn, nd) && small_rational(4.0 / nu, 64, fn, fd)) {
    const std::int64_t D = std::lcm(nd, fd);
    const std::int64_t nuD = nn * (D / nd);
    const std::int64_t fourD = fn * (D / fd);
    const cpp_int four_d = ipow(4, D);
    const cpp_int q2 = ipow(q, 2 * D);
    const bool c1 = four_d * q2 <= ipow(M, nuD);
    const bool c2 = four_d * ipow(M, 2 * D + nuD) * q2 <= ipow(3 * q, 4 * D + fourD);
    return c1 && c2;
  }
  const long double lq = std::log(static_cast<long double>(q));
  const long double lm = std::log(static_cast<long double>(M));
  const long double l4 = std::log(4.0L);
  const long double n = nu;
  const bool c1 = l4 + 2 * lq <= n * lm;
  const bool c2 = l4 + (2 + n) * lm + 2 * lq <= (4 + 4 / n) * std::log(3.0L * q);
  return c1 && c2;
}

std::pair<std::int64_t, std::int64_t> escape_window(std::int64_t q, double nu) {
  if (q < 2) throw DomainError("escape_window needs q >= 2");
  if (!(nu > 0.0)) throw DomainError("escape_window needs nu > 0");
  const long double qq = static_cast<long double>(q);
  const long double n = nu;
  const long double base = std::pow(qq, 2.0L / n);
  const long double lhs = std::pow(4.0L, 1.0L / n) * base;
  const long double rhs = std::pow(4.0L, -1.0L / (2.0L + n)) *
                          std::pow(3.0L, 4.0L * (1.0L + n) / (n * (2.0L + n))) * base;
  if (rhs > 0x1.0p62L) throw precision_exceeded("escape window exceeds int64");
  auto lo = static_cast<std::int64_t>(std::ceil(lhs));
  auto hi = static_cast<std::int64_t>(std::floor(rhs));
  // The float endpoints may be off by one; the exact predicate settles them.
  auto inside = [&](std::int64_t M) { return M >= 1 && escape_conditions_hold(q, nu, M); };
  if (lo > hi) {
    bool found = false;
    for (std::int64_t M = std::max<std::int64_t>(1, hi - 1); M <= lo + 1 && !found; ++M)
      if (inside(M)) {
        lo = hi = M;
        found = true;
      }
    if (!found) throw empty_window("no integer M for q = " + std::to_string(q));
  }
  while (lo > 1 && inside(lo - 1)) --lo;
  while (lo <= hi && !inside(lo)) ++lo;
  while (inside(hi + 1)) ++hi;
  while (hi >= lo && !inside(hi)) --hi;
  if (lo > hi) throw empty_window("no integer M for q = " + std::to_string(q));
  return {lo, hi};
}

}  // namespace horoeq
