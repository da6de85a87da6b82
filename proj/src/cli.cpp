#include "horoeq/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "horoeq/diophantine.hpp"
#include "horoeq/errors.hpp"
#include "horoeq/fuchsian.hpp"
#include "horoeq/kronecker.hpp"
#include "horoeq/paircorr.hpp"
#include "horoeq/testfun.hpp"

namespace horoeq::cli {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

class Csv {
 public:
  explicit Csv(const ExperimentConfig& cfg) {
    os_ << "# " << kVersion << "\n";
    std::istringstream canon(cfg.canonical());
    std::string line;
    while (std::getline(canon, line)) os_ << "# " << line << "\n";
  }
  void header(std::initializer_list<const char*> cols) {
    bool first = true;
    for (const char* c : cols) {
      os_ << (first ? "" : ",") << c;
      first = false;
    }
    os_ << "\n";
  }
  Csv& row() {
    first_ = true;
    return *this;
  }
  Csv& operator<<(const std::string& s) {
    os_ << (first_ ? "" : ",") << csv_field(s);
    first_ = false;
    return *this;
  }
  Csv& operator<<(const char* s) { return *this << std::string(s); }
  Csv& operator<<(double v) { return *this << format_real(v); }
  Csv& operator<<(std::int64_t v) { return *this << std::to_string(v); }
  Csv& operator<<(std::size_t v) { return *this << std::to_string(v); }
  Csv& operator<<(int v) { return *this << std::to_string(v); }
  void end() { os_ << "\n"; }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
  bool first_ = true;
};

// Typed access to one section, reporting bad values with their line.
class Reader {
 public:
  Reader(const ExperimentConfig& cfg, const Section& sec) : cfg_(cfg), sec_(sec) {}

  const Entry& entry(const std::string& key) const { return sec_.entries.at(key); }
  std::string str(const std::string& key) const { return entry(key).value; }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw ConfigError(cfg_.source, entry(key).line, key, "[" + sec_.name + "] " + key + ": " + msg);
  }

  double real_of(const std::string& key, const std::string& text) const {
    const std::string t = text;
    double v = 0.0;
    if (t == "inf" || t == "+inf") return HUGE_VAL;
    if (t == "-inf") return -HUGE_VAL;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || std::isnan(v))
      fail(key, "cannot parse '" + t + "' as a real number");
    return v;
  }
  double real(const std::string& key) const { return real_of(key, str(key)); }

  std::vector<std::string> list(const std::string& key) const {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(str(key));
    while (std::getline(is, cur, ',')) {
      const auto b = cur.find_first_not_of(" \t");
      const auto e = cur.find_last_not_of(" \t");
      if (b == std::string::npos) fail(key, "empty list element");
      out.push_back(cur.substr(b, e - b + 1));
    }
    if (out.empty()) fail(key, "empty list");
    return out;
  }
  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    for (const auto& s : list(key)) out.push_back(real_of(key, s));
    return out;
  }
  std::int64_t count_of(const std::string& key, const std::string& text, std::int64_t lo) const {
    const double v = real_of(key, text);
    if (v != std::floor(v) || std::abs(v) > 9.0e18) fail(key, "'" + text + "' is not an integer");
    if (v < static_cast<double>(lo)) fail(key, "must be >= " + std::to_string(lo));
    return static_cast<std::int64_t>(v);
  }
  std::int64_t count(const std::string& key, std::int64_t lo = 0) const {
    return count_of(key, str(key), lo);
  }
  std::vector<std::int64_t> counts(const std::string& key, std::int64_t lo = 0) const {
    std::vector<std::int64_t> out;
    for (const auto& s : list(key)) out.push_back(count_of(key, s, lo));
    return out;
  }
  bool flag(const std::string& key) const {
    const auto v = str(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(key, "expected true or false, got '" + v + "'");
  }
  std::uint64_t seed() const {
    const auto v = str("seed");
    std::uint64_t s = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
    if (ec != std::errc() || p != v.data() + v.size()) fail("seed", "expected an unsigned 64-bit integer");
    return s;
  }
  Alpha alpha(const std::string& key) const {
    try {
      return Alpha::parse(str(key));
    } catch (const DomainError& e) {
      fail(key, e.what());
    }
  }
  const FuchsianGroup& group(const std::string& key) const {
    try {
      return FuchsianGroup::by_name(str(key));
    } catch (const DomainError& e) {
      fail(key, e.what());
    }
  }
  Cutoff psi() const {
    const double hw = real("psi_half_width");
    const auto kind = str("psi");
    try {
      if (kind == "bump") return Cutoff::bump(hw);
      if (kind == "table") return Cutoff::table(hw, reals("psi_table"));
    } catch (const DomainError& e) {
      fail("psi", e.what());
    }
    fail("psi", "expected bump or table, got '" + kind + "'");
  }

 private:
  const ExperimentConfig& cfg_;
  const Section& sec_;
};

struct FunctionSpec {
  TestFunction f;
  std::size_t n_mc;
};

FunctionSpec make_function(const ExperimentConfig& cfg, const Section& sec, const FuchsianGroup& g) {
  const Reader r(cfg, sec);
  const auto kind = r.str("kind");
  Box box{r.real("x_lo"), r.real("x_hi"), r.real("y_lo"), r.real("y_hi"), r.real("epsilon")};
  auto build = [&]() -> TestFunction {
    if (kind == "one") return TestFunction::constant_one(g);
    if (kind == "cell") return TestFunction::cell(g, box);
    if (kind == "height_power") return TestFunction::height_power(g, r.real("gamma"));
    if (kind == "fourier") return TestFunction::fourier_mode(g, static_cast<int>(r.count_of("v", r.str("v"), -1000000)), box);
    if (kind == "theta") {
      if (g.preset() != GroupPreset::GammaBar1of4)
        r.fail("kind", "theta test functions live on gamma1_4; set group = gamma1_4");
      return TestFunction::theta_modulus_squared(r.psi());
    }
    r.fail("kind", "expected one, cell, height_power, fourier or theta, got '" + kind + "'");
  };
  try {
    TestFunction f = build();
    if (r.flag("reflected")) f = f.reflected();
    return {f, static_cast<std::size_t>(r.count("n_mc", 1000))};
  } catch (const DomainError& e) {
    r.fail("kind", e.what());
  }
}

std::vector<FunctionSpec> functions(const ExperimentConfig& cfg, const FuchsianGroup& g) {
  std::vector<FunctionSpec> out;
  for (const auto& s : cfg.test_functions) out.push_back(make_function(cfg, s, g));
  if (out.empty()) out.push_back({TestFunction::constant_one(g), 100000});
  return out;
}

WindowPair make_window(const ExperimentConfig& cfg) {
  if (!cfg.window) return WindowPair::defaults();
  const Reader r(cfg, *cfg.window);
  const auto gk = r.str("g");
  std::optional<Window> g;
  try {
    if (gk == "fejer") g = Window::fejer(r.real("g_scale"));
    else if (gk == "table") g = Window::table(r.real("g_spacing"), r.reals("g_table"));
  } catch (const DomainError& e) {
    r.fail("g", e.what());
  }
  if (!g) r.fail("g", "expected fejer or table, got '" + gk + "'");
  return {*g, r.psi()};
}

struct MinPartial {
  double v = std::numeric_limits<double>::infinity();
  void add(const MinPartial& o) { v = std::min(v, o.v); }
};

// ---------------------------------------------------------------- runners

void run_equidistribute(const ExperimentConfig& cfg, const Exec& exec, Csv& csv) {
  const Reader r(cfg, cfg.experiment);
  const FuchsianGroup& g = r.group("group");
  const Alpha alpha = r.alpha("alpha");
  const auto nus = r.reals("nu");
  const auto cs = r.reals("c");
  const auto Ms = r.counts("schedule", 1);
  const double delta = r.real("delta");
  const bool include_zero = r.flag("include_zero");
  const auto weight = r.str("weight");
  std::optional<PiecewisePolynomial> h;
  if (weight == "indicator") h = PiecewisePolynomial::indicator(r.real("weight_lo"), r.real("weight_hi"));
  else if (weight == "triangle") h = PiecewisePolynomial::triangle(r.real("weight_half_width"));
  else if (weight != "none") r.fail("weight", "expected none, indicator or triangle");
  const auto fs = functions(cfg, g);
  const std::uint64_t seed = r.seed();

  csv.header({"f", "nu", "c", "M", "y", "re", "im", "mean", "abs_err"});
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto ref = fs[i].f.reference_mean(fs[i].n_mc, seed + i);
    const double target = ref.mean * (h ? h->integral() : 1.0);
    for (double nu : nus)
      for (double c : cs)
        for (std::int64_t M : Ms) {
          const PointSetSpec spec(alpha, M, nu, c, delta, include_zero);
          const auto avg = h ? weighted_average(spec, fs[i].f, *h, exec) : pse_average(spec, fs[i].f, exec);
          csv.row() << i << nu << c << M << spec.height() << avg.real() << avg.imag() << target
                    << std::abs(avg - target);
          csv.end();
        }
  }
}

void run_horocycle(const ExperimentConfig& cfg, const Exec& exec, Csv& csv) {
  const Reader r(cfg, cfg.experiment);
  const FuchsianGroup& g = r.group("group");
  const auto ys = r.reals("heights");
  const auto n_quad = static_cast<std::size_t>(r.count("n_quad", 1000));
  std::vector<std::int64_t> modes;
  for (const auto& s : r.list("modes")) modes.push_back(r.count_of("modes", s, -1000000000));
  const auto fs = functions(cfg, g);
  const std::uint64_t seed = r.seed();

  csv.header({"f", "y", "n", "re", "im", "target", "abs_err"});
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto ref = fs[i].f.reference_mean(fs[i].n_mc, seed + i);
    for (double y : ys)
      for (std::int64_t n : modes) {
        const auto a = horocycle_fourier(fs[i].f, y, n, n_quad, exec);
        const double target = n == 0 ? ref.mean : 0.0;
        csv.row() << i << y << n << a.real() << a.imag() << target << std::abs(a - target);
        csv.end();
      }
  }
}

void run_paircorr(const ExperimentConfig& cfg, const Exec& exec, Csv& csv) {
  const Reader r(cfg, cfg.experiment);
  const Alpha alpha = r.alpha("alpha");
  const auto Ns = r.counts("schedule", 2);
  const auto forms = r.list("forms");
  const WindowPair w = make_window(cfg);

  std::vector<std::pair<double, double>> intervals;
  for (const auto& s : r.list("intervals")) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) r.fail("intervals", "expected a:b, got '" + s + "'");
    intervals.emplace_back(r.real_of("intervals", s.substr(0, colon)),
                           r.real_of("intervals", s.substr(colon + 1)));
  }
  std::mt19937_64 rng(r.seed());
  for (std::int64_t i = 0, n = r.count("random_intervals"); i < n; ++i) {
    const double a = -3.0 + 6.0 * uniform01(rng);
    const double width = 3.0 * (1.0 - uniform01(rng));
    intervals.emplace_back(a, a + width);
  }

  csv.header({"N", "form", "a", "b", "value", "target", "abs_err"});
  auto emit = [&](std::int64_t N, const std::string& form, const std::string& a, const std::string& b,
                  double value, double target) {
    csv.row() << N << form << a << b << value << target << std::abs(value - target);
    csv.end();
  };
  for (std::int64_t N : Ns) {
    const auto nd = static_cast<double>(N);
    for (const auto& form : forms) {
      if (form == "sharp" || form == "sharp_reference" || form == "bridge") {
        for (const auto& [a, b] : intervals) {
          const std::string sa = format_real(a), sb = format_real(b);
          if (form == "sharp") {
            emit(N, form, sa, sb, r2_sharp(alpha, N, a, b, exec), b - a);
          } else if (form == "sharp_reference") {
            if (N > 2000) r.fail("forms", "sharp_reference is limited to N <= 2000");
            emit(N, form, sa, sb, r2_sharp_reference(alpha, N, a, b), b - a);
          } else {
            const auto [lhs, rhs] = sharp_smoothed_bridge(alpha, N, a, b);
            emit(N, form, sa, sb, lhs, rhs);
          }
        }
      } else if (form == "smoothed") {
        emit(N, form, "", "", r2_smoothed(alpha, N, w, exec), w.poisson_target());
      } else if (form == "theta") {
        emit(N, form, "", "", r2_via_theta(alpha, N, w, exec), w.poisson_target());
      } else if (form == "identity") {
        // Poisson identity: theta form against the direct smoothed sum.
        emit(N, form, "", "", r2_via_theta(alpha, N, w, exec), r2_smoothed(alpha, N, w, exec));
      } else if (form == "diagonal") {
        emit(N, form, "", "", r2_full_via_theta(alpha, N, w, exec) - r2_smoothed(alpha, N, w, exec),
             diagonal_term(N, w));
      } else if (form == "zero_mode") {
        emit(N, form, "", "", theta_zero_mode(N, w),
             w.g.ghat(0.0) * w.psi.integral() * w.psi.integral());
      } else if (form == "theta_mass") {
        emit(N, form, "", "", theta_sum(w.psi, 0.0, 1.0 / (nd * nd)).real() / std::sqrt(nd),
             w.psi.integral());
      } else if (form == "pipeline") {
        const TestFunction f = TestFunction::theta_modulus_squared(w.psi);
        const PointSetSpec spec(alpha, N, 2.0, 1.0);
        const double avg = weighted_average(spec, f, w.g.as_weight(), exec).real();
        emit(N, form, "", "", avg + theta_zero_mode(N, w), r2_full_via_theta(alpha, N, w, exec));
      } else {
        r.fail("forms", "unknown form '" + form +
                            "' (sharp, sharp_reference, bridge, smoothed, theta, identity, "
                            "diagonal, zero_mode, theta_mass, pipeline)");
      }
    }
  }
}

void run_counterexample(const ExperimentConfig& cfg, const Exec& exec, Csv& csv) {
  const Reader r(cfg, cfg.experiment);
  const FuchsianGroup& g = r.group("group");
  const double nu = r.real("nu");
  const auto levels = static_cast<std::size_t>(r.count("levels", 1));
  const auto samples = r.count("samples", 1);
  const TestFunction cell =
      cfg.test_functions.empty() ? TestFunction::cell(g, Box{-0.5, 0.5, 1.0, 1.9, 0.0})
                                 : make_function(cfg, cfg.test_functions.front(), g).f;
  const Counterexample ce = make_counterexample(nu, levels);

  csv.header({"level", "q", "a_next", "certificate", "M_lo", "M_hi", "M", "min_Y", "escaped",
              "cell_average"});
  for (std::size_t j = 1; j <= levels; ++j) {
    const std::int64_t q = ce.cf.convergents[j].q;
    const std::int64_t a_next = ce.cf.partial_quotients[j + 1];
    const char* cert = ce.exact_certificate ? "exact" : "float";
    std::pair<std::int64_t, std::int64_t> win;
    try {
      win = escape_window(q, nu);
    } catch (const NumericGuard& e) {
      if (e.kind() != "EmptyWindow") throw;
      csv.row() << j << q << a_next << cert << "" << "" << "" << "" << "" << "";
      csv.end();
      continue;
    }
    for (std::int64_t s = 0; s < samples; ++s) {
      const std::int64_t M = win.first + (s + 1) * (win.second - win.first) / (samples + 1);
      const PointSetSpec spec(ce.alpha, M, nu);
      const auto min_y = chunked_reduce<MinPartial>(
          static_cast<std::size_t>(M), exec, [&](std::size_t b, std::size_t e) {
            MinPartial p;
            for (std::size_t i = b; i < e; ++i)
              p.v = std::min(p.v, g.invariant_height(spec.point(static_cast<std::int64_t>(i) + 1).z()));
            return p;
          });
      const double avg = pse_average(spec, cell, exec).real();
      csv.row() << j << q << a_next << cert << win.first << win.second << M << min_y.v
                << (min_y.v >= 2.0 ? 1 : 0) << avg;
      csv.end();
    }
  }
}

void run_diophantine(const ExperimentConfig& cfg, const Exec& exec, Csv& csv) {
  const Reader r(cfg, cfg.experiment);
  const std::string text = r.str("alpha");
  const Alpha alpha = r.alpha("alpha");
  const auto depth = static_cast<std::size_t>(r.count("depth", 1));
  const auto N1 = r.count("N1", 1);
  const auto N2s = r.counts("schedule", 1);
  const double M = r.real("M");
  const double fit_M = r.real("fit_M");

  csv.header({"kind", "param", "value"});
  auto emit = [&](const char* kind, const std::string& param, double v) {
    csv.row() << kind << param << v;
    csv.end();
  };
  const ContinuedFraction cf = continued_fraction(text, depth);
  for (std::size_t j = 0; j < cf.partial_quotients.size(); ++j) {
    emit("quotient", std::to_string(j), static_cast<double>(cf.partial_quotients[j]));
    emit("convergent_q", std::to_string(j), static_cast<double>(cf.convergents[j].q));
  }
  if (!cf.terminating && cf.convergents.size() >= 3) {
    const TypeEstimate te = estimate_type(cf, alpha);
    emit("type_K", std::to_string(te.depth), te.K);
    emit("type_C", std::to_string(te.depth), te.C);
    emit("admissible_nu_beta0", format_real(te.K), admissible_nu(0.0, te.K));
    emit("admissible_nu_beta_half", format_real(te.K), admissible_nu(0.5, te.K));
  }
  for (std::int64_t N2 : N2s) {
    const auto n2 = static_cast<double>(N2);
    const double s = min_norm_sum(alpha, M, N1, N2, exec);
    emit("min_norm_sum", std::to_string(N2), s);
    emit("ratio_log", std::to_string(N2), s / (n2 * std::log(2.0 * n2)));
    const double s2 = min_norm_sum(alpha, fit_M, N1, N2, exec);
    emit("min_norm_sum_fit_M", std::to_string(N2), s2);
    emit("ratio_bound2", std::to_string(N2),
         s2 / (fit_M + (std::sqrt(n2 * fit_M) + n2) * std::log(n2 * fit_M + 1.0)));
  }
}

MoebiusMap random_word(const FuchsianGroup& g, std::mt19937_64& rng, std::int64_t len) {
  MoebiusMap w = MoebiusMap::identity();
  const auto& gens = g.generators();
  for (std::int64_t i = 0; i < len; ++i) {
    const auto k = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(2 * gens.size()));
    const MoebiusMap& s = gens[k / 2];
    w = w * ((k % 2) ? s.inverse() : s);
  }
  return w;
}

UpperHalfPoint random_point(std::mt19937_64& rng) {
  const double x = -2.0 + 4.0 * uniform01(rng);
  const double y = std::pow(10.0, -3.0 + 4.0 * uniform01(rng));
  return {x, y};
}

MoebiusMap random_sl2r(std::mt19937_64& rng) {
  const double a = 0.5 + 1.5 * uniform01(rng);
  const double b = -2.0 + 4.0 * uniform01(rng);
  const double c = -2.0 + 4.0 * uniform01(rng);
  return {a, b, c, (1.0 + b * c) / a};
}

void run_heights(const ExperimentConfig& cfg, const Exec&, Csv& csv) {
  const Reader r(cfg, cfg.experiment);
  const FuchsianGroup& g = r.group("group");
  const auto report = r.str("report");
  const auto n = r.count("samples", 1);
  const auto len = r.count("word_length", 0);
  std::mt19937_64 rng(r.seed());

  if (report == "geometry") {
    csv.header({"i", "assoc_err", "isometry_err", "u_delta_err", "projective_equal"});
    for (std::int64_t i = 0; i < n; ++i) {
      const MoebiusMap g1 = random_sl2r(rng), g2 = random_sl2r(rng);
      const UpperHalfPoint z = random_point(rng), w = random_point(rng);
      const UpperHalfPoint lhs = apply(g1 * g2, z), rhs = apply(g1, apply(g2, z));
      const double assoc = hyperbolic_distance(lhs, rhs);
      const double d = hyperbolic_distance(z, w);
      const double iso = std::abs(hyperbolic_distance(apply(g1, z), apply(g1, w)) - d) / std::max(1.0, d);
      const double u = point_pair_invariant(z, w);
      const double ud = std::abs(std::cosh(d) - (1.0 + 2.0 * u)) / (1.0 + 2.0 * u);
      csv.row() << i << assoc << iso << ud << ((-g1) == g1 ? 1 : 0);
      csv.end();
    }
  } else if (report == "reduction") {
    csv.header({"i", "x", "y", "red_x", "red_y", "witness_err", "witness_in_group"});
    for (std::int64_t i = 0; i < n; ++i) {
      const UpperHalfPoint z = random_point(rng);
      const ReducedPoint rp = g.reduce(z);
      const double err = hyperbolic_distance(apply(rp.witness, z), rp.point);
      csv.row() << i << z.x() << z.y() << rp.point.x() << rp.point.y() << err
                << (g.contains(rp.witness) ? 1 : 0);
      csv.end();
    }
  } else if (report == "heights") {
    csv.header({"i", "x", "y", "Y", "Y_image", "rel_diff"});
    for (std::int64_t i = 0; i < n; ++i) {
      const UpperHalfPoint z = random_point(rng);
      const MoebiusMap w = random_word(g, rng, len);
      const double y0 = g.invariant_height(z);
      const double y1 = g.invariant_height(apply(w, z));
      csv.row() << i << z.x() << z.y() << y0 << y1 << std::abs(y1 - y0) / y0;
      csv.end();
    }
  } else {
    r.fail("report", "expected geometry, reduction or heights, got '" + report + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "", "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int run(const std::string& config_text, const std::string& source, const RunOptions& opts,
        std::ostream& out, std::ostream& err) {
  try {
    const ExperimentConfig cfg = parse_config(config_text, source, opts);
    const Exec exec{std::max(1u, opts.threads)};
    Csv csv(cfg);
    if (cfg.type == "equidistribute") run_equidistribute(cfg, exec, csv);
    else if (cfg.type == "horocycle") run_horocycle(cfg, exec, csv);
    else if (cfg.type == "paircorr") run_paircorr(cfg, exec, csv);
    else if (cfg.type == "counterexample") run_counterexample(cfg, exec, csv);
    else if (cfg.type == "diophantine") run_diophantine(cfg, exec, csv);
    else run_heights(cfg, exec, csv);
    out << csv.str();
    out.flush();
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericGuard& e) {
    err << "numeric guard: " << e.what() << "\n";
    return kExitGuard;
  } catch (const DomainError& e) {
    err << "invalid parameter: " << e.what() << "\n";
    return kExitConfig;
  }
}

int run_file(const std::string& path, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  return run(text, path, opts, out, err);
}

std::optional<std::string> configured_output(const std::string& config_text,
                                             const std::string& source, const RunOptions& opts) {
  const ExperimentConfig cfg = parse_config(config_text, source, opts);
  const std::string v = cfg.experiment.entries.at("output").value;
  if (v.empty()) return std::nullopt;
  return v;
}

}  // namespace horoeq::cli
