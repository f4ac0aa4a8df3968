#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stlsq/bench.hpp"
#include "stlsq/lsq_core.hpp"
#include "stlsq/ode_problem.hpp"
#include "stlsq/pde_problem.hpp"

namespace py = pybind11;
using namespace stlsq;

namespace {

py::dict diagnostics_dict(const SolveDiagnostics& d) {
  py::dict out;
  out["iterations"] = d.iterations;
  out["relative_residual"] = d.final_relative_residual;
  out["wall_time"] = d.wall_time;
  out["energy"] = d.energy;
  return out;
}

MovingCosinePotential potential(double c1, double c2, double amplitude) {
  return {c1, c2, amplitude};
}

PeriodicSchrodinger periodic(int N, double tau, double c1, double c2, double amplitude,
                             double sigma) {
  PeriodicSchrodinger p{N, tau, potential(c1, c2, amplitude), default_initial_datum(N, sigma)};
  p.validate();
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Space-time least-squares solver for Schrodinger-type equations";

  py::register_exception<OracleError>(m, "OracleError", PyExc_RuntimeError);
  py::register_exception<SolveError>(m, "SolveError", PyExc_RuntimeError);
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_RuntimeError);

  // Chebyshev.
  m.def("gauss_cheb", [](std::size_t L) {
    const auto q = gauss_cheb(L);
    return py::make_tuple(q.nodes, q.weights);
  }, py::arg("L"), "Gauss-Chebyshev nodes (decreasing) and weights.");
  m.def("cheb_eval", [](std::vector<cplx> coeffs, double t, bool second_kind) {
    return cheb_eval({second_kind ? ChebKind::SecondKind : ChebKind::FirstKind, std::move(coeffs)}, t);
  }, py::arg("coeffs"), py::arg("t"), py::arg("second_kind") = false);
  m.def("free_precond_solve", &free_precond_solve, py::arg("f"), py::arg("initial_time") = 0.0,
        "Inverse of the free normal operator applied to a K x dim block.");

  // Scalar problem.
  m.def("ode_apply_normal", [](double a, double omega, std::size_t K, std::size_t L,
                               const SpaceTimeCoefficients& u) {
    return apply_normal(build_problem(CosineOde{a, omega, 1.0}, K, L), u);
  }, py::arg("a"), py::arg("omega"), py::arg("K"), py::arg("L"), py::arg("u"));
  m.def("solve_ode", [](double a, double omega, cplx eta0, std::size_t K, std::size_t L,
                        double cg_tol) {
    const auto sol = solve(CosineOde{a, omega, eta0}, K, L == 0 ? K : L, cg_tol);
    return py::make_tuple(sol.series.coeffs, diagnostics_dict(sol.diagnostics));
  }, py::arg("a") = 5.0, py::arg("omega") = 20.0, py::arg("eta0") = cplx(1.0), py::arg("K"),
     py::arg("L") = 0, py::arg("cg_tol") = 1e-12,
     "Chebyshev coefficients of the minimizer and solver diagnostics.");
  m.def("ode_exact", [](double a, double omega, cplx eta0, double t) {
    return exact_solution(CosineOde{a, omega, eta0}, t);
  }, py::arg("a"), py::arg("omega"), py::arg("eta0"), py::arg("t"));
  m.def("ode_sup_error", [](std::vector<cplx> coeffs, double a, double omega, cplx eta0,
                            std::size_t samples) {
    return sup_error({ChebKind::FirstKind, std::move(coeffs)}, CosineOde{a, omega, eta0}, samples);
  }, py::arg("coeffs"), py::arg("a") = 5.0, py::arg("omega") = 20.0, py::arg("eta0") = cplx(1.0),
     py::arg("samples") = 1000);
  m.def("ode_stepper_error", [](const std::string& method, std::size_t steps, double a,
                                double omega) {
    const auto sm = method == "rk4" ? SteppingMethod::RK4 : SteppingMethod::CrankNicolson;
    if (method != "rk4" && method != "crank_nicolson")
      throw py::value_error("method must be 'crank_nicolson' or 'rk4'");
    return stepper_sup_error(CosineOde{a, omega, 1.0}, sm, steps);
  }, py::arg("method"), py::arg("steps"), py::arg("a") = 5.0, py::arg("omega") = 20.0);

  // Torus.
  m.def("grid_values", [](int N, const StateVector& c) {
    return grid_values(FourierField2D(N, c));
  }, py::arg("N"), py::arg("coeffs"));
  m.def("field_from_values", [](int N, const Eigen::VectorXcd& v) {
    return field_from_values(N, v).coeffs();
  }, py::arg("N"), py::arg("values"));
  m.def("free_propagate", [](int N, const StateVector& c, double s) {
    return free_propagate(FourierField2D(N, c), s).coeffs();
  }, py::arg("N"), py::arg("coeffs"), py::arg("s"));
  m.def("apply_potential", [](int N, const StateVector& c, double t, double c1, double c2,
                              double amplitude) {
    return apply_potential(FourierField2D(N, c), potential(c1, c2, amplitude), t).coeffs();
  }, py::arg("N"), py::arg("coeffs"), py::arg("t"), py::arg("c1") = 1.0, py::arg("c2") = 0.5,
     py::arg("amplitude") = 1.0);
  m.def("initial_datum", [](int N, double sigma) { return default_initial_datum(N, sigma).coeffs(); },
        py::arg("N"), py::arg("sigma") = 0.0);

  // Periodic problem.
  m.def("solve_pde", [](int N, double tau, std::size_t K, std::size_t L, double cg_tol, double c1,
                        double c2, double amplitude, double sigma) {
    const auto sol = solve(periodic(N, tau, c1, c2, amplitude, sigma), K, L, cg_tol);
    return py::make_tuple(sol.v_coeffs, diagnostics_dict(sol.diagnostics));
  }, py::arg("N") = 16, py::arg("tau") = 0.5, py::arg("K"), py::arg("L") = 0,
     py::arg("cg_tol") = 1e-12, py::arg("c1") = 1.0, py::arg("c2") = 0.5,
     py::arg("amplitude") = 1.0, py::arg("sigma") = 0.0,
     "Interaction-picture Chebyshev coefficients (K x N^2) and diagnostics.");
  m.def("pde_reference", [](int N, double tau, std::vector<double> times, std::size_t steps,
                            double tol, double c1, double c2, double amplitude, double sigma) {
    const auto ref = reference_solution(periodic(N, tau, c1, c2, amplitude, sigma), times, steps, tol);
    Eigen::MatrixXcd states(Eigen::Index(times.size()), Eigen::Index(N) * N);
    for (std::size_t i = 0; i < times.size(); ++i) states.row(Eigen::Index(i)) = ref.states[i].coeffs().transpose();
    return py::make_tuple(states, ref.richardson_gap);
  }, py::arg("N") = 16, py::arg("tau") = 0.5, py::arg("times"), py::arg("steps") = 1 << 14,
     py::arg("tol") = 1e-9, py::arg("c1") = 1.0, py::arg("c2") = 0.5, py::arg("amplitude") = 1.0,
     py::arg("sigma") = 0.0);
  m.def("cheb_eval_rows", &cheb_eval_rows, py::arg("coeffs"), py::arg("t"));

  // Bench.
  m.def("run_config", [](const std::string& json_text, bool paper_scale) {
    py::list out;
    for (const auto& r : bench::run(bench::parse_config(json_text, paper_scale))) {
      py::dict d;
      d["method"] = r.method;
      d["param"] = r.param;
      d["error"] = r.error;
      d["iterations"] = r.iterations ? py::cast(*r.iterations) : py::none();
      d["wall_time_s"] = r.wall_time_s;
      out.append(d);
    }
    return out;
  }, py::arg("config_json"), py::arg("paper_scale") = false);
  m.def("fit_order", [](const std::vector<std::size_t>& params, const std::vector<double>& errors,
                        double floor) {
    if (params.size() != errors.size()) throw py::value_error("params and errors differ in length");
    std::vector<bench::ConvergenceRecord> recs;
    for (std::size_t i = 0; i < params.size(); ++i) recs.push_back({"", params[i], errors[i], {}, 0});
    return bench::fit_order(recs, floor);
  }, py::arg("params"), py::arg("errors"), py::arg("floor") = 1e-12);
}
