// Python bindings. Points are Python complex numbers; matrices are 4-tuples.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "horoeq/cli.hpp"
#include "horoeq/diophantine.hpp"
#include "horoeq/errors.hpp"
#include "horoeq/fuchsian.hpp"
#include "horoeq/kronecker.hpp"
#include "horoeq/paircorr.hpp"

namespace py = pybind11;
using namespace horoeq;

namespace {

using Matrix = std::tuple<double, double, double, double>;
using BoxTuple = std::tuple<double, double, double, double>;

UpperHalfPoint point(std::complex<double> z) { return UpperHalfPoint::from_complex(z); }
Matrix matrix(const MoebiusMap& m) { return {m.a(), m.b(), m.c(), m.d()}; }
MoebiusMap moebius(const Matrix& m) {
  return {std::get<0>(m), std::get<1>(m), std::get<2>(m), std::get<3>(m)};
}
Box box(const BoxTuple& b) {
  return {std::get<0>(b), std::get<1>(b), std::get<2>(b), std::get<3>(b)};
}
const FuchsianGroup& group(const std::string& name) { return FuchsianGroup::by_name(name); }

}  // namespace

PYBIND11_MODULE(_horoeq, m) {
  m.doc() = "Equidistribution of Kronecker point sets on horocycles";
  m.attr("__version__") = cli::kVersion;

  static py::exception<NumericGuard> guard(m, "NumericGuard", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NumericGuard& e) {
      py::set_error(guard, e.what());
    } catch (const DomainError& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  m.def("apply", [](const Matrix& g, std::complex<double> z) { return apply(moebius(g), point(z)).as_complex(); },
        py::arg("g"), py::arg("z"));
  m.def("hyperbolic_distance",
        [](std::complex<double> z, std::complex<double> w) { return hyperbolic_distance(point(z), point(w)); });
  m.def("point_pair_invariant",
        [](std::complex<double> z, std::complex<double> w) { return point_pair_invariant(point(z), point(w)); });

  m.def(
      "reduce",
      [](std::complex<double> z, const std::string& g) {
        const ReducedPoint r = group(g).reduce(point(z));
        return std::make_pair(r.point.as_complex(), matrix(r.witness));
      },
      py::arg("z"), py::arg("group") = "psl2z", "Fundamental-domain representative and the group element used.");
  m.def(
      "invariant_height", [](std::complex<double> z, const std::string& g) { return group(g).invariant_height(point(z)); },
      py::arg("z"), py::arg("group") = "psl2z");
  m.def(
      "contains", [](const Matrix& x, const std::string& g) { return group(g).contains(moebius(x)); },
      py::arg("matrix"), py::arg("group") = "psl2z");

  m.def(
      "continued_fraction",
      [](const std::string& alpha, std::size_t depth) {
        const ContinuedFraction cf = continued_fraction(alpha, depth);
        std::vector<std::pair<std::int64_t, std::int64_t>> conv;
        for (const auto& c : cf.convergents) conv.emplace_back(c.p, c.q);
        return std::make_pair(cf.partial_quotients, conv);
      },
      py::arg("alpha"), py::arg("depth"), "Partial quotients and convergents (p, q).");
  m.def(
      "min_norm_sum",
      [](const std::string& alpha, double M, std::int64_t N1, std::int64_t N2, unsigned threads) {
        return min_norm_sum(Alpha::parse(alpha), M, N1, N2, Exec{threads});
      },
      py::arg("alpha"), py::arg("M"), py::arg("N1"), py::arg("N2"), py::arg("threads") = 1);
  m.def("admissible_nu", &admissible_nu, py::arg("beta"), py::arg("K"));
  m.def("escape_window", &escape_window, py::arg("q"), py::arg("nu"));

  m.def(
      "pse_average",
      [](const std::string& alpha, std::int64_t M, double nu, const BoxTuple& cell, const std::string& g, double c,
         unsigned threads) {
        return pse_average(PointSetSpec(Alpha::parse(alpha), M, nu, c), TestFunction::cell(group(g), box(cell)),
                           Exec{threads});
      },
      py::arg("alpha"), py::arg("M"), py::arg("nu"), py::arg("cell"), py::arg("group") = "psl2z",
      py::arg("c") = 1.0, py::arg("threads") = 1,
      "Average of a box-cell indicator, cell = (x_lo, x_hi, y_lo, y_hi) in reduced coordinates.");
  m.def(
      "horocycle_average",
      [](const BoxTuple& cell, double y, std::size_t n_quad, const std::string& g) {
        return horocycle_average(TestFunction::cell(group(g), box(cell)), y, n_quad);
      },
      py::arg("cell"), py::arg("y"), py::arg("n_quad"), py::arg("group") = "psl2z");
  m.def(
      "cell_mean",
      [](const BoxTuple& cell, const std::string& g) {
        return TestFunction::cell(group(g), box(cell)).reference_mean(1000000, 0).mean;
      },
      py::arg("cell"), py::arg("group") = "psl2z");

  m.def(
      "theta_sum", [](double x, double y, double half_width) { return theta_sum(Cutoff::bump(half_width), x, y); },
      py::arg("x"), py::arg("y"), py::arg("half_width") = 1.0);
  m.def(
      "r2_sharp",
      [](const std::string& alpha, std::int64_t N, double a, double b, unsigned threads) {
        return r2_sharp(Alpha::parse(alpha), N, a, b, Exec{threads});
      },
      py::arg("alpha"), py::arg("N"), py::arg("a"), py::arg("b"), py::arg("threads") = 1);
  m.def(
      "r2_smoothed",
      [](const std::string& alpha, std::int64_t N, unsigned threads) {
        return r2_smoothed(Alpha::parse(alpha), N, WindowPair::defaults(), Exec{threads});
      },
      py::arg("alpha"), py::arg("N"), py::arg("threads") = 1, "Fejer window and unit-mass bump cutoff.");
  m.def(
      "r2_via_theta",
      [](const std::string& alpha, std::int64_t N, unsigned threads) {
        return r2_via_theta(Alpha::parse(alpha), N, WindowPair::defaults(), Exec{threads});
      },
      py::arg("alpha"), py::arg("N"), py::arg("threads") = 1);

  m.def(
      "run_config",
      [](const std::string& text, unsigned threads) {
        cli::RunOptions opts;
        opts.threads = threads;
        std::ostringstream out, err;
        const int code = cli::run(text, "<python>", opts, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("text"), py::arg("threads") = 1, "Runs an experiment config; returns (exit code, csv, diagnostics).");
}
