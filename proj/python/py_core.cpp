#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "radlab/asymptotics.hpp"
#include "radlab/cumulants.hpp"
#include "radlab/determinant.hpp"
#include "radlab/ensemble.hpp"
#include "radlab/measure.hpp"
#include "radlab/sections.hpp"
#include "radlab/symbol.hpp"

namespace py = pybind11;
using namespace radlab;

namespace {

Symbol symbol_from_pairs(const std::vector<std::pair<int, cplx>>& terms) {
    return Symbol::from_trig(terms);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact generating functions of angular statistics for radially symmetric "
              "determinantal ensembles via perturbed Toeplitz determinants.";

    py::register_exception<NonInvertibleError>(m, "NonInvertibleError");
    py::register_exception<NonzeroWindingError>(m, "NonzeroWindingError");

    py::class_<RadialMeasure>(m, "RadialMeasure")
        .def_static("cue", &RadialMeasure::cue)
        .def_static("ginibre", &RadialMeasure::ginibre)
        .def_static("bergman", &RadialMeasure::bergman)
        .def_static("jacobi_edge", &RadialMeasure::jacobi_edge, py::arg("alpha"))
        .def_static("gamma_weight", &RadialMeasure::gamma_weight, py::arg("p"), py::arg("alpha"))
        .def_static("log_stretch", &RadialMeasure::log_stretch, py::arg("c"), py::arg("q"))
        .def_static("from_files", &RadialMeasure::from_files, py::arg("csv_path"),
                    py::arg("config_path"))
        .def_static("by_name", &RadialMeasure::by_name, py::arg("name"))
        .def("name", &RadialMeasure::name)
        .def("log_moment", &RadialMeasure::log_moment, py::arg("xi"))
        .def("log_moment_dd", &RadialMeasure::log_moment_dd, py::arg("xi"))
        .def("rho", &RadialMeasure::rho, py::arg("j"), py::arg("k"))
        .def("h_mu", &RadialMeasure::h_mu, py::arg("xi"))
        .def("iota", &RadialMeasure::iota, py::arg("x"))
        .def("radial_power_sample", &RadialMeasure::radial_power_sample, py::arg("k"),
             py::arg("u"))
        .def("__repr__", [](const RadialMeasure& mu) { return "RadialMeasure(" + mu.name() + ")"; });

    py::class_<ClassifyResult>(m, "ClassifyResult")
        .def_readonly("alpha_hat", &ClassifyResult::alpha_hat)
        .def_readonly("beta_hat", &ClassifyResult::beta_hat)
        .def_readonly("max_residual", &ClassifyResult::max_residual);
    m.def("classify",
          [](const RadialMeasure& mu, const std::vector<double>& grid) { return classify(mu, grid); },
          py::arg("measure"), py::arg("xi_grid"));

    py::class_<Symbol>(m, "Symbol")
        .def_static("constant", &Symbol::constant, py::arg("c"))
        .def_static("from_trig", &symbol_from_pairs, py::arg("terms"))
        .def_static("two_cos", &Symbol::two_cos)
        .def("window", &Symbol::window)
        .def("coeff", &Symbol::coeff, py::arg("k"))
        .def("real_valued", &Symbol::real_valued)
        .def("eval", &Symbol::eval, py::arg("theta"))
        .def("multiply", &Symbol::multiply)
        .def("add", &Symbol::add)
        .def("scale", &Symbol::scale, py::arg("factor"))
        .def("add_constant", &Symbol::add_constant, py::arg("c"))
        .def("pow_int", &Symbol::pow_int, py::arg("m"))
        .def("flipped", &Symbol::flipped)
        .def("grid_size", &Symbol::grid_size);
    m.def("parse_symbol", &parse_symbol, py::arg("spec"));
    m.def("exp_symbol",
          [](const Symbol& s, int n_out) { return exp_symbol(s, n_out).symbol; }, py::arg("s"),
          py::arg("n_out") = 0);
    m.def("log_symbol",
          [](const Symbol& s, int n_out) { return log_symbol(s, n_out).symbol; }, py::arg("s"),
          py::arg("n_out") = 0);
    m.def("invert_symbol",
          [](const Symbol& s, int n_out) { return invert_symbol(s, n_out).symbol; }, py::arg("s"),
          py::arg("n_out") = 0);
    m.def("flp_norm",
          [](const Symbol& s, int p, double sigma) { return flp_norm(s, p, FlpWeight::power(sigma)); },
          py::arg("s"), py::arg("p"), py::arg("sigma") = 0.0);

    m.def("toeplitz_section",
          [](const Symbol& a, int n) { return toeplitz_section(a, n).data; }, py::arg("a"),
          py::arg("n"));
    m.def("hankel_section",
          [](const Symbol& a, int n) { return hankel_section(a, n).data; }, py::arg("a"),
          py::arg("n"));
    m.def("m_section",
          [](const RadialMeasure& mu, const Symbol& a, int n) { return m_section(mu, a, n).data; },
          py::arg("measure"), py::arg("a"), py::arg("n"));
    m.def("k_section",
          [](const RadialMeasure& mu, const Symbol& a, int n) { return k_section(mu, a, n).data; },
          py::arg("measure"), py::arg("a"), py::arg("n"));
    m.def("kozak_inverse_section",
          [](const Symbol& a, int n, int n_big) { return kozak_inverse_section(a, n, n_big).data; },
          py::arg("a"), py::arg("n"), py::arg("n_big") = 0);
    m.def("diagonal_deficit_sum", &diagonal_deficit_sum, py::arg("measure"), py::arg("m"),
          py::arg("n"));

    py::class_<LogDet>(m, "LogDet")
        .def_readonly("log_abs", &LogDet::log_abs)
        .def_readonly("phase", &LogDet::phase)
        .def("value", &LogDet::value)
        .def("singular", &LogDet::singular);
    m.def("log_det", [](const Eigen::MatrixXcd& mtx) { return log_det(mtx); }, py::arg("matrix"));
    m.def("angular_mgf", &angular_mgf, py::arg("measure"), py::arg("f"), py::arg("lam"),
          py::arg("n"));
    m.def("quadrature_oracle", &quadrature_oracle, py::arg("measure"), py::arg("phi"),
          py::arg("n"));
    m.def("fd_cumulant",
          [](const RadialMeasure& mu, const Symbol& f, int n, int order, double h) {
              return fd_cumulant(mu, f, n, order, h).value;
          },
          py::arg("measure"), py::arg("f"), py::arg("n"), py::arg("order"),
          py::arg("h_lambda") = 0.0);

    m.def("g_constant",
          [](const Symbol& a, const std::string& route) {
              return g_constant(a, route == "kozak" ? GRoute::Kozak : GRoute::LogMean);
          },
          py::arg("a"), py::arg("route") = "log_mean");
    m.def("omega_pair", &omega_pair, py::arg("a"), py::arg("b"));
    m.def("omega_functional", &omega_functional, py::arg("a"));
    m.def("tau",
          [](const RadialMeasure& mu, const Symbol& a, const Symbol& b, double tol) {
              const Certified c = tau(mu, a, b, tol);
              return py::make_tuple(c.value, c.delta);
          },
          py::arg("measure"), py::arg("a"), py::arg("b"), py::arg("tol") = 1e-9);
    m.def("trace_section", &trace_section, py::arg("measure"), py::arg("b"), py::arg("a"),
          py::arg("n"));
    m.def("parity_sums", &parity_sums, py::arg("measure"), py::arg("x"));
    m.def("parity_constants",
          [](const RadialMeasure& mu, double x) {
              const ParityConstants pc = parity_constants(mu, x);
              return py::make_tuple(pc.c_plus, pc.c_minus, pc.delta);
          },
          py::arg("measure"), py::arg("x") = 1e6);
    m.def("c_mu_residual",
          [](const RadialMeasure& mu, const Symbol& a, const Symbol& b) {
              const Certified c = c_mu_residual(mu, a, b);
              return py::make_tuple(c.value, c.delta);
          },
          py::arg("measure"), py::arg("a"), py::arg("b"));
    m.def("c_mu_series",
          [](const RadialMeasure& mu, const Symbol& a, const Symbol& b) {
              return c_mu_series(mu, a, b);
          },
          py::arg("measure"), py::arg("a"), py::arg("b"));
    m.def("p_delta", &p_delta, py::arg("measure"), py::arg("n"), py::arg("m"), py::arg("delta"));
    m.def("e_constant",
          [](const RadialMeasure& mu, const Symbol& a, int n) {
              const Certified c = e_constant(mu, a, n);
              return py::make_tuple(c.value, c.delta);
          },
          py::arg("measure"), py::arg("a"), py::arg("n_trunc") = 128);
    m.def("h_constant",
          [](const RadialMeasure& mu, const Symbol& a, int n) {
              const Certified c = h_constant(mu, a, n);
              return py::make_tuple(c.value, c.delta);
          },
          py::arg("measure"), py::arg("a"), py::arg("n_trunc") = 128);
    m.def("f_constant",
          [](const RadialMeasure& mu, const Symbol& a, int n) {
              const Certified c = f_constant(mu, a, n);
              return py::make_tuple(c.value, c.delta);
          },
          py::arg("measure"), py::arg("a"), py::arg("n_trunc") = 128);

    py::class_<SzegoReport>(m, "SzegoReport")
        .def_readonly("n_grid", &SzegoReport::n_grid)
        .def_readonly("ratios", &SzegoReport::ratios)
        .def_readonly("log_ratios", &SzegoReport::log_ratios)
        .def_readonly("iota", &SzegoReport::iota)
        .def_readonly("traces", &SzegoReport::traces)
        .def_readonly("extrapolated_limit", &SzegoReport::extrapolated_limit);
    m.def("szego_sweep",
          [](const RadialMeasure& mu, const Symbol& a, const std::vector<long>& grid,
             const std::string& mode) {
              return szego_sweep(mu, a, grid, mode == "c2" ? SweepMode::C2 : SweepMode::C1);
          },
          py::arg("measure"), py::arg("a"), py::arg("n_grid"), py::arg("mode") = "c1");

    py::class_<CumulantReport>(m, "CumulantReport")
        .def_readonly("measure", &CumulantReport::measure)
        .def_readonly("m_max", &CumulantReport::m_max)
        .def_readonly("n_trunc", &CumulantReport::n_trunc)
        .def_readonly("traces", &CumulantReport::traces)
        .def_readonly("cumulants", &CumulantReport::cumulants)
        .def_readonly("tail_certificates", &CumulantReport::tail_certificates);
    m.def("cumulant_recursion", &cumulant_recursion, py::arg("measure"), py::arg("f"),
          py::arg("m_max") = 4, py::arg("n_trunc") = 256);
    m.def("shift_invariance_check", &shift_invariance_check, py::arg("measure"), py::arg("f"),
          py::arg("c_shift"), py::arg("n_trunc") = 256);
    m.def("hankel_trace", &hankel_trace, py::arg("b"));

    m.def("mean_density", &mean_density, py::arg("measure"), py::arg("n"), py::arg("r"));
    m.def("mean_absolute_moment", &mean_absolute_moment, py::arg("measure"), py::arg("n"),
          py::arg("l"));
    py::class_<CircularLawReport>(m, "CircularLawReport")
        .def_readonly("fitted_radius", &CircularLawReport::fitted_radius)
        .def_readonly("max_deviation", &CircularLawReport::max_deviation)
        .def_readonly("scaled_moments", &CircularLawReport::scaled_moments)
        .def_readonly("radii", &CircularLawReport::radii);
    m.def("circular_law_check", &circular_law_check, py::arg("measure"), py::arg("n"),
          py::arg("l_max"));
    m.def("sample_moduli", &sample_moduli, py::arg("measure"), py::arg("n"), py::arg("seed"));
    py::class_<PointSample>(m, "PointSample")
        .def_readonly("points", &PointSample::points)
        .def_readonly("seed", &PointSample::seed)
        .def_readonly("measure", &PointSample::measure)
        .def_readonly("n", &PointSample::n);
    m.def("sample_dpp", &sample_dpp, py::arg("measure"), py::arg("n"), py::arg("seed"));
    m.def("empirical_statistic", &empirical_statistic, py::arg("sample"), py::arg("f"));

#ifdef RADLAB_VERSION
    m.attr("__version__") = RADLAB_VERSION;
#endif
}
