#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "seqode/oracle.hpp"
#include "seqode/problem_io.hpp"
#include "seqode/solver.hpp"

namespace py = pybind11;
using namespace seqode;

namespace {

Tail tail_from_anchor(std::optional<AnchorSeq> a) {
  if (!a) return TailZero{};
  return TailAnchor{*a};
}

}  // namespace

PYBIND11_MODULE(_seqode, m) {
  m.doc() = "Monotone fixed-point solver for countable ODE systems in weighted "
            "sequence spaces";

  py::enum_<Sign>(m, "Sign")
      .value("nonneg", Sign::Nonneg)
      .value("nonpos", Sign::Nonpos)
      .value("mixed", Sign::Mixed);

  py::class_<AnchorSeq>(m, "AnchorSeq")
      .def_static("zero", &AnchorSeq::zero)
      .def_static("constant", &AnchorSeq::constant, py::arg("c"))
      .def_static("poly", &AnchorSeq::poly, py::arg("coeff"), py::arg("degree"))
      .def("__call__", &AnchorSeq::operator(), py::arg("k"))
      .def_property_readonly("sign", &AnchorSeq::sign)
      .def_property_readonly("label", &AnchorSeq::label)
      .def("__repr__",
           [](const AnchorSeq& a) { return "AnchorSeq(" + a.label() + ")"; });
  m.def("anchor_abs", [](const AnchorSeq& a) { return abs(a); });
  m.def("anchor_scale", [](const AnchorSeq& a, double c) { return scale(a, c); });
  m.def("anchor_add", [](const AnchorSeq& a, const AnchorSeq& b) { return add(a, b); });
  m.def("anchor_max", [](const AnchorSeq& a, const AnchorSeq& b) { return max(a, b); });

  py::enum_<SeminormKind>(m, "SeminormKind")
      .value("weighted_sum", SeminormKind::WeightedSum)
      .value("weighted_sup", SeminormKind::WeightedSup);

  py::class_<SpaceSpec>(m, "SpaceSpec")
      .def_static("power_series", &SpaceSpec::power_series,
                  py::arg("kind") = SeminormKind::WeightedSum,
                  py::arg("name") = "power-series")
      .def_static("table", &SpaceSpec::table, py::arg("rows"),
                  py::arg("kind") = SeminormKind::WeightedSum, py::arg("name") = "table")
      .def_static("custom", &SpaceSpec::custom, py::arg("weight"),
                  py::arg("tail_ratio") = nullptr, py::arg("support_end") = nullptr,
                  py::arg("kind") = SeminormKind::WeightedSum, py::arg("name") = "custom")
      .def("weight", &SpaceSpec::weight, py::arg("i"), py::arg("k"))
      .def_property_readonly("kind", &SpaceSpec::kind)
      .def_property_readonly("name", &SpaceSpec::name);

  py::class_<CoeffVec>(m, "CoeffVec")
      .def(py::init([](std::vector<double> prefix, std::optional<AnchorSeq> tail) {
             return CoeffVec(std::move(prefix), tail_from_anchor(std::move(tail)));
           }),
           py::arg("prefix"), py::arg("tail") = py::none())
      .def_static("zero", &CoeffVec::zero)
      .def_static("from_anchor", &CoeffVec::from_anchor, py::arg("anchor"))
      .def("coord", &CoeffVec::coord, py::arg("k"))
      .def_property_readonly("prefix", &CoeffVec::prefix)
      .def_property_readonly("prefix_len", &CoeffVec::prefix_len)
      .def("__add__", [](const CoeffVec& a, const CoeffVec& b) { return a + b; })
      .def("__sub__", [](const CoeffVec& a, const CoeffVec& b) { return a - b; })
      .def("__rmul__", [](const CoeffVec& a, double c) { return c * a; })
      .def("__abs__", [](const CoeffVec& a) { return abs(a); });

  py::class_<SeminormValue>(m, "SeminormValue")
      .def_readonly("value", &SeminormValue::value)
      .def_readonly("tail_bound", &SeminormValue::tail_bound);
  m.def("seminorm", &seminorm, py::arg("x"), py::arg("i"), py::arg("spec"),
        py::arg("tail_tol") = 1e-12);

  py::class_<CertifiedBool>(m, "CertifiedBool")
      .def_readonly("holds", &CertifiedBool::holds)
      .def_readonly("certified_depth", &CertifiedBool::certified_depth)
      .def_readonly("witness_coord", &CertifiedBool::witness_coord)
      .def("__bool__", [](const CertifiedBool& b) { return b.holds; });
  m.def("leq", &leq, py::arg("x"), py::arg("y"), py::arg("sample_depth") = 10000,
        py::arg("require_certified") = false);

  py::class_<OrderInterval>(m, "OrderInterval")
      .def(py::init<CoeffVec, CoeffVec>(), py::arg("lo"), py::arg("hi"))
      .def_readonly("lo", &OrderInterval::lo)
      .def_readonly("hi", &OrderInterval::hi)
      .def("contains", &OrderInterval::contains, py::arg("x"),
           py::arg("sample_depth") = 10000);

  py::class_<DiagMult>(m, "DiagMult")
      .def(py::init<std::function<double(std::int64_t)>, double, std::int64_t>(),
           py::arg("lambda_rule"), py::arg("sup_norm"), py::arg("verify_depth") = 10000)
      .def_readonly("sup_norm", &DiagMult::sup_norm);
  m.def("diag_apply", &diag_apply, py::arg("m"), py::arg("x"));
  m.def("coordwise_sup", &coordwise_sup, py::arg("vs"), py::arg("upper"));

  py::class_<PiecewiseConstantFn>(m, "PiecewiseConstantFn")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("breakpoints"),
           py::arg("values"))
      .def_static("constant", &PiecewiseConstantFn::constant, py::arg("v"))
      .def("__call__", &PiecewiseConstantFn::operator(), py::arg("t"));

  py::class_<IndexMap>(m, "IndexMap")
      .def_static("identity", &IndexMap::identity)
      .def_static("half", &IndexMap::half)
      .def_static("table", &IndexMap::table, py::arg("entries"));

  py::class_<Field>(m, "Field")
      .def_readonly("name", &Field::name)
      .def_readonly("declared_monotone", &Field::declared_monotone)
      .def_readonly("declared_order_left_continuous",
                    &Field::declared_order_left_continuous)
      .def("eval_coord",
           [](const Field& f, double t, const CoeffVec& x, std::int64_t k) {
             return f.eval_coord(t, x, k);
           },
           py::arg("t"), py::arg("x"), py::arg("k"));
  m.def("heaviside_field",
        [](int p, const IndexMap& n, std::function<PiecewiseConstantFn(std::int64_t)> rho) {
          return heaviside_field({p, n, std::move(rho)});
        },
        py::arg("p"), py::arg("n"), py::arg("rho"));
  m.def("dieudonne_field", &dieudonne_field);
  m.def("scalar_h_field", &scalar_h_field);
  m.def("constant_field", &constant_field, py::arg("c"));

  py::class_<CheckWitness>(m, "CheckWitness")
      .def_readonly("t", &CheckWitness::t)
      .def_readonly("k", &CheckWitness::k)
      .def_readonly("lhs", &CheckWitness::lhs)
      .def_readonly("rhs", &CheckWitness::rhs)
      .def_readonly("description", &CheckWitness::description);
  py::class_<CheckReport>(m, "CheckReport")
      .def_readonly("check_name", &CheckReport::check_name)
      .def_readonly("ok", &CheckReport::ok)
      .def_readonly("witness", &CheckReport::witness)
      .def_readonly("trials", &CheckReport::trials)
      .def_readonly("seed", &CheckReport::seed)
      .def_readonly("detail", &CheckReport::detail);
  m.def("check_monotone", &check_monotone, py::arg("f"), py::arg("box"),
        py::arg("t_samples"), py::arg("trials"), py::arg("rng_seed"),
        py::arg("check_depth") = 32);
  m.def("check_bound", &check_bound, py::arg("f"), py::arg("box"), py::arg("candidate_C"),
        py::arg("t_samples"), py::arg("trials"), py::arg("rng_seed"),
        py::arg("check_depth") = 32);
  m.def("check_subsolution", &check_subsolution, py::arg("f"), py::arg("x_star"),
        py::arg("x_hat"), py::arg("grid"), py::arg("N"));
  m.def("check_left_continuity", &check_left_continuity, py::arg("f"), py::arg("box"),
        py::arg("t_samples"), py::arg("trials"), py::arg("rng_seed"),
        py::arg("ladder_len") = 48, py::arg("check_depth") = 32);

  py::class_<TimeGrid>(m, "TimeGrid")
      .def(py::init<std::vector<double>>(), py::arg("nodes"))
      .def_static("uniform", &TimeGrid::uniform, py::arg("T"), py::arg("M"))
      .def_property_readonly("nodes", &TimeGrid::nodes)
      .def_property_readonly("horizon", &TimeGrid::horizon)
      .def("__eq__", [](const TimeGrid& a, const TimeGrid& b) { return a == b; });
  m.def("refine", &refine, py::arg("grid"));

  py::class_<Trajectory>(m, "Trajectory")
      .def_static("constant", &Trajectory::constant, py::arg("grid"),
                  py::arg("n_coords"), py::arg("x"))
      .def_property_readonly("grid", &Trajectory::grid)
      .def_property_readonly("n_coords", &Trajectory::n_coords)
      .def_property_readonly("n_nodes", &Trajectory::n_nodes)
      .def("value",
           [](const Trajectory& u, std::int64_t j, std::int64_t k) { return u.value(j, k); },
           py::arg("node"), py::arg("k"))
      .def("at_node", &Trajectory::at_node, py::arg("node"));
  m.def("phi_apply", &phi_apply, py::arg("f"), py::arg("x_hat"), py::arg("u"));

  py::class_<StepFn>(m, "StepFn")
      .def(py::init<std::vector<double>, std::vector<CoeffVec>>(),
           py::arg("breakpoints"), py::arg("cell_values"));
  m.def("step_integral", &step_integral, py::arg("s"));
  m.def("step_combine", &step_combine, py::arg("alpha"), py::arg("s"), py::arg("beta"),
        py::arg("r"));

  py::class_<Problem>(m, "Problem")
      .def(py::init([](SpaceSpec space, Field field, CoeffVec x_hat, CoeffVec x_star,
                       CoeffVec C, double T, std::int64_t N, TimeGrid grid,
                       double tol_residual, int max_iters, int max_refines,
                       bool override_hypotheses, std::uint64_t rng_seed) {
             Problem p{std::move(space), std::move(field), std::move(x_hat),
                       std::move(x_star), std::move(C), T, N, std::move(grid)};
             p.tol_residual = tol_residual;
             p.max_iters = max_iters;
             p.max_refines = max_refines;
             p.override_hypotheses = override_hypotheses;
             p.rng_seed = rng_seed;
             p.validate();
             return p;
           }),
           py::arg("space"), py::arg("field"), py::arg("x_hat"), py::arg("x_star"),
           py::arg("C"), py::arg("T"), py::arg("N"), py::arg("grid"),
           py::arg("tol_residual") = 1e-12, py::arg("max_iters") = 200,
           py::arg("max_refines") = 0, py::arg("override_hypotheses") = false,
           py::arg("rng_seed") = 0)
      .def_readonly("T", &Problem::T)
      .def_readonly("N", &Problem::N)
      .def_readonly("tol_residual", &Problem::tol_residual)
      .def("ceiling", &Problem::ceiling)
      .def("enclosure_box", &Problem::enclosure_box);

  py::enum_<SolveStatus>(m, "SolveStatus")
      .value("converged", SolveStatus::Converged)
      .value("not_converged", SolveStatus::NotConverged)
      .value("refused", SolveStatus::Refused);

  py::class_<ResidualReport>(m, "ResidualReport")
      .def_readonly("per_index", &ResidualReport::per_index)
      .def_readonly("coord_max", &ResidualReport::coord_max);

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("trajectory", &SolveReport::trajectory)
      .def_readonly("status", &SolveReport::status)
      .def_readonly("converged", &SolveReport::converged)
      .def_readonly("iterations", &SolveReport::iterations)
      .def_readonly("refines", &SolveReport::refines)
      .def_readonly("residual", &SolveReport::residual)
      .def_readonly("monotone_certificate", &SolveReport::monotone_certificate)
      .def_readonly("enclosure_certificate", &SolveReport::enclosure_certificate)
      .def_readonly("hypothesis_reports", &SolveReport::hypothesis_reports)
      .def_readonly("warnings", &SolveReport::warnings)
      .def_readonly("final_node_increments", &SolveReport::final_node_increments)
      .def("summary", &SolveReport::summary);

  m.def("solve", &solve, py::arg("problem"),
        py::call_guard<py::gil_scoped_release>());
  m.def("residual", &residual, py::arg("problem"), py::arg("u"));
  m.def("sup_solutions", &sup_solutions, py::arg("problem"), py::arg("sols"));

  py::class_<WeakDerivativeReport>(m, "WeakDerivativeReport")
      .def_readonly("fraction_ok", &WeakDerivativeReport::fraction_ok)
      .def_readonly("excluded_nodes", &WeakDerivativeReport::excluded_nodes)
      .def_readonly("compared", &WeakDerivativeReport::compared);
  m.def("weak_derivative_diagnostic", &weak_derivative_diagnostic, py::arg("problem"),
        py::arg("u"), py::arg("tol"));

  py::class_<DieudonneReport>(m, "DieudonneReport")
      .def_readonly("modes", &DieudonneReport::modes)
      .def_readonly("values_at_T", &DieudonneReport::values_at_T)
      .def_readonly("inf_value", &DieudonneReport::inf_value);
  m.def("dieudonne_diagnostic", &dieudonne_diagnostic, py::arg("T"), py::arg("modes"),
        py::arg("fine_M"));

  py::class_<ScalarEventSolution>(m, "ScalarEventSolution")
      .def_readonly("switch_times", &ScalarEventSolution::switch_times)
      .def("eval", &ScalarEventSolution::eval, py::arg("t"));
  m.def("scalar_heaviside_solve", &scalar_heaviside_solve, py::arg("a"), py::arg("rho"),
        py::arg("u0"), py::arg("T"));
  m.def("dieudonne_mode_solve", &dieudonne_mode_solve, py::arg("k"), py::arg("T"),
        py::arg("fine_M"));

  m.def("load_problem", &load_problem, py::arg("path"));
  m.def("parse_problem", &parse_problem, py::arg("text"),
        py::arg("origin") = "<string>");
  m.def("write_trajectory_csv",
        [](const std::string& path, const Trajectory& u) {
          write_trajectory_csv(path, u);
        },
        py::arg("path"), py::arg("u"));
  m.def("read_trajectory_csv",
        [](const std::string& path, std::optional<AnchorSeq> beyond) {
          return read_trajectory_csv(path, tail_from_anchor(std::move(beyond)));
        },
        py::arg("path"), py::arg("beyond") = py::none());

  py::register_exception<OrderUndecidableError>(m, "OrderUndecidableError");
  py::register_exception<ProblemFileError>(m, "ProblemFileError");

  m.attr("__version__") = "1.0.0";
}
