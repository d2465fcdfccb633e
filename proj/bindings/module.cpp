#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eot/entropic.hpp"
#include "eot/exact.hpp"
#include "eot/experiments.hpp"
#include "eot/measures.hpp"
#include "eot/metrics.hpp"

namespace py = pybind11;
using namespace eot;

namespace {

CostFamily family_from_list(const std::vector<Matrix>& costs, bool negative) {
  return CostFamily(costs,
                    negative ? CostSign::negative : CostSign::nonnegative);
}

SolveOptions options_from_kwargs(int max_iter, double tol, double value_tol,
                                 int trace_every) {
  SolveOptions opts;
  opts.max_iter = max_iter;
  opts.tol = tol;
  opts.value_tol = value_tol;
  opts.trace_every = trace_every;
  return opts;
}

}  // namespace

PYBIND11_MODULE(_eot, m) {
  m.doc() = "Equitable optimal transport: exact LP and entropic solvers";

  py::register_exception<Error>(m, "EotError");

  py::class_<EotExactResult>(m, "EotExactResult")
      .def_readonly("value", &EotExactResult::value)
      .def_readonly("couplings", &EotExactResult::couplings)
      .def_readonly("lam", &EotExactResult::lambda)
      .def_readonly("potential_f", &EotExactResult::potential_f)
      .def_readonly("potential_g", &EotExactResult::potential_g)
      .def_readonly("per_cost_values", &EotExactResult::per_cost_values);

  py::class_<TraceRow>(m, "TraceRow")
      .def_readonly("iteration", &TraceRow::iteration)
      .def_readonly("dual_value", &TraceRow::dual_value)
      .def_readonly("residual", &TraceRow::residual);

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("dual_value", &SolveReport::dual_value)
      .def_readonly("primal_value", &SolveReport::primal_value)
      .def_readonly("reg_primal_value", &SolveReport::reg_primal_value)
      .def_readonly("marginal_residual", &SolveReport::marginal_residual)
      .def_readonly("per_cost_values", &SolveReport::per_cost_values)
      .def_readonly("lambda_final", &SolveReport::lambda_final)
      .def_readonly("iterations", &SolveReport::iterations)
      .def_readonly("converged", &SolveReport::converged)
      .def_readonly("trace", &SolveReport::trace);

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("eot_value", &BoundReport::eot_value)
      .def_readonly("per_cost_ot", &BoundReport::per_cost_ot)
      .def_readonly("harmonic_bound", &BoundReport::harmonic_bound)
      .def_readonly("min_ot", &BoundReport::min_ot);

  m.def("normalize_weights", &normalize_weights, py::arg("raw"),
        "Rescale nonnegative weights onto the strict probability simplex.");

  m.def(
      "eot_exact",
      [](const Vector& a, const Vector& b, const std::vector<Matrix>& costs,
         bool negative) { return eot_exact(a, b, family_from_list(costs, negative)); },
      py::arg("a"), py::arg("b"), py::arg("costs"),
      py::arg("negative") = false,
      "Exact equitable transport value, couplings, and dual certificate.");

  m.def(
      "ot_exact",
      [](const Vector& a, const Vector& b, const Matrix& cost) {
        const OtExactResult res = ot_exact(a, b, cost);
        return py::make_tuple(res.value, res.plan);
      },
      py::arg("a"), py::arg("b"), py::arg("cost"),
      "Kantorovich value and plan for one cost matrix.");

  m.def(
      "utilitarian_exact",
      [](const Vector& a, const Vector& b, const std::vector<Matrix>& costs,
         bool negative) {
        return utilitarian_exact(a, b, family_from_list(costs, negative));
      },
      py::arg("a"), py::arg("b"), py::arg("costs"),
      py::arg("negative") = false);

  m.def("dudley_ipm_exact", &dudley_ipm_exact, py::arg("a"), py::arg("b"),
        py::arg("dist"), py::arg("alpha") = 1.0,
        "Holder-ball IPM via its own LP (independent of eot_exact).");

  m.def("dudley", &dudley, py::arg("a"), py::arg("b"), py::arg("dist"));
  m.def("holder_ipm", &holder_ipm, py::arg("a"), py::arg("b"), py::arg("dist"),
        py::arg("alpha"));

  m.def(
      "harmonic_upper_bound",
      [](const Vector& a, const Vector& b, const std::vector<Matrix>& costs) {
        return harmonic_upper_bound(a, b, family_from_list(costs, false));
      },
      py::arg("a"), py::arg("b"), py::arg("costs"));

  m.def("lambda_star_closed_form", &lambda_star_closed_form, py::arg("x"));
  m.def("relative_error", &relative_error, py::arg("approx"), py::arg("truth"));
  m.def("simplex_project", &simplex_project, py::arg("v"),
        "Euclidean projection onto the probability simplex.");

  m.def(
      "pam_solve",
      [](const Vector& a, const Vector& b, const std::vector<Matrix>& costs,
         double epsilon, int max_iter, double tol, double value_tol,
         int trace_every) {
        RegularizedProblem prob(a, b, family_from_list(costs, false), epsilon);
        return pam_solve(prob,
                         options_from_kwargs(max_iter, tol, value_tol, trace_every));
      },
      py::arg("a"), py::arg("b"), py::arg("costs"), py::arg("epsilon"),
      py::arg("max_iter") = 20000, py::arg("tol") = 1e-9,
      py::arg("value_tol") = 1e-12, py::arg("trace_every") = 10,
      "Projected alternating maximization on the smoothed dual.");

  m.def(
      "apga_solve",
      [](const Vector& a, const Vector& b, const std::vector<Matrix>& costs,
         double epsilon, int max_iter, double tol, double value_tol,
         int trace_every) {
        RegularizedProblem prob(a, b, family_from_list(costs, false), epsilon);
        return apga_solve(prob,
                          options_from_kwargs(max_iter, tol, value_tol, trace_every));
      },
      py::arg("a"), py::arg("b"), py::arg("costs"), py::arg("epsilon"),
      py::arg("max_iter") = 20000, py::arg("tol") = 1e-9,
      py::arg("value_tol") = 1e-12, py::arg("trace_every") = 10,
      "Accelerated projected gradient ascent on the smoothed dual.");

  m.def(
      "sinkhorn_baseline",
      [](const Vector& a, const Vector& b, const Matrix& cost, double epsilon,
         int max_iter, double tol, double value_tol) {
        SolveOptions opts;
        opts.max_iter = max_iter;
        opts.tol = tol;
        opts.value_tol = value_tol;
        return sinkhorn_baseline(a, b, cost, epsilon, opts);
      },
      py::arg("a"), py::arg("b"), py::arg("cost"), py::arg("epsilon"),
      py::arg("max_iter") = 20000, py::arg("tol") = 1e-9,
      py::arg("value_tol") = 1e-12);

  m.def(
      "recover_primal",
      [](const Vector& lam, const Vector& f, const Vector& g, const Vector& a,
         const Vector& b, const std::vector<Matrix>& costs, double epsilon) {
        RegularizedProblem prob(a, b, family_from_list(costs, false), epsilon);
        return recover_primal(DualState{lam, f, g}, prob);
      },
      py::arg("lam"), py::arg("f"), py::arg("g"), py::arg("a"), py::arg("b"),
      py::arg("costs"), py::arg("epsilon"));

  m.def(
      "round_to_feasible",
      [](const std::vector<Matrix>& couplings, const Vector& a,
         const Vector& b) { return round_to_feasible(couplings, a, b); },
      py::arg("couplings"), py::arg("a"), py::arg("b"));

  m.def(
      "gen_sequential_scenario",
      [](int n, int m, int days, std::uint64_t seed, double wind_coefficient) {
        ScenarioConfig cfg;
        cfg.n = n;
        cfg.m = m;
        cfg.days = days;
        cfg.seed = seed;
        cfg.wind_coefficient = wind_coefficient;
        Scenario sc = gen_sequential_scenario(cfg);
        return py::make_tuple(sc.mu.points(), sc.mu.weights(), sc.nu.points(),
                              sc.nu.weights(), sc.costs.matrices());
      },
      py::arg("n") = 20, py::arg("m") = 20, py::arg("days") = 2,
      py::arg("seed") = 0, py::arg("wind_coefficient") = 0.7,
      "Seeded wind scenario: (mu_points, a, nu_points, b, cost_matrices).");

  m.def(
      "build_cost_matrix",
      [](const std::string& spec, const Matrix& X, const Matrix& Y) {
        return build_cost_matrix(CostSpec::parse(spec), X, Y);
      },
      py::arg("spec"), py::arg("X"), py::arg("Y"),
      "Evaluate a textual cost spec (e.g. 'euclidean', 'holder:0.5') on two "
      "point clouds.");

#ifdef VERSION_INFO
#define EOT_STR_INNER(x) #x
#define EOT_STR(x) EOT_STR_INNER(x)
  m.attr("__version__") = EOT_STR(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
