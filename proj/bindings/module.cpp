// Python bindings for the solver, classifier and exact-enumeration oracle.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sos/classifier.hpp"
#include "sos/criticals.hpp"
#include "sos/errors.hpp"
#include "sos/model.hpp"
#include "sos/report_io.hpp"
#include "sos/roots.hpp"
#include "sos/solvers.hpp"
#include "sos/sweep.hpp"
#include "sos/tree.hpp"

namespace py = pybind11;
using namespace sos;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gibbs-measure toolkit for the three-level height model on Cayley trees";

    py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
    py::register_exception<contract_error>(m, "ContractError", PyExc_ValueError);
    py::register_exception<regime_error>(m, "RegimeError", PyExc_RuntimeError);
    py::register_exception<degenerate_error>(m, "DegenerateError", PyExc_RuntimeError);
    py::register_exception<scan_error>(m, "ScanError", PyExc_RuntimeError);
    py::register_exception<size_error>(m, "SizeError", PyExc_RuntimeError);
    py::register_exception<io_error>(m, "IoError", PyExc_OSError);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<double, int, int>(), py::arg("theta"), py::arg("k"), py::arg("m") = 2)
        .def_static("from_coupling", &ModelParams::from_coupling, py::arg("J"),
                    py::arg("beta"), py::arg("k"), py::arg("m") = 2)
        .def_readonly("theta", &ModelParams::theta)
        .def_readonly("k", &ModelParams::k)
        .def_readonly("m", &ModelParams::m)
        .def("degenerate", &ModelParams::degenerate);

    py::class_<BranchPattern>(m, "BranchPattern")
        .def(py::init([](int a, int b, int c, int d) {
                 if (a < 0 || b < 0 || c < 0 || d < 0 || a + b != c + d)
                     throw contract_error(
                         "branch pattern rows must be non-negative and both sum to k");
                 return BranchPattern{a, b, c, d};
             }),
             py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"))
        .def_readonly("a", &BranchPattern::a)
        .def_readonly("b", &BranchPattern::b)
        .def_readonly("c", &BranchPattern::c)
        .def_readonly("d", &BranchPattern::d)
        .def("order", &BranchPattern::order);

    py::class_<ReducedField>(m, "ReducedField")
        .def(py::init([](double h2, double l2) {
                 return ReducedField{h2, l2};
             }),
             py::arg("h2"), py::arg("l2"))
        .def_readonly("h2", &ReducedField::h2)
        .def_readonly("l2", &ReducedField::l2)
        .def("__repr__", [](const ReducedField& r) {
            return "ReducedField(h2=" + format_machine(r.h2) + ", l2=" + format_machine(r.l2) +
                   ")";
        });

    m.def("kernel_f", &kernel_f, py::arg("x"), py::arg("theta"));
    m.def("kernel_f_derivative", &kernel_f_derivative, py::arg("x"), py::arg("theta"));
    m.def("kernel_f_second", &kernel_f_second, py::arg("x"), py::arg("theta"));
    m.def("inflection_point", &inflection_point, py::arg("theta"));
    m.def("kernel_f_bounds", &kernel_f_bounds, py::arg("theta"));
    m.def("map_F", &map_F, py::arg("h"), py::arg("params"));

    py::class_<RootFindConfig>(m, "RootFindConfig")
        .def(py::init<>())
        .def_readwrite("scan_lo", &RootFindConfig::scan_lo)
        .def_readwrite("scan_hi", &RootFindConfig::scan_hi)
        .def_readwrite("scan_points", &RootFindConfig::scan_points)
        .def_readwrite("tol_x", &RootFindConfig::tol_x)
        .def_readwrite("tol_residual", &RootFindConfig::tol_residual)
        .def_readwrite("max_iter", &RootFindConfig::max_iter);

    py::enum_<Stability>(m, "Stability")
        .value("STABLE", Stability::Stable)
        .value("UNSTABLE", Stability::Unstable)
        .value("MARGINAL", Stability::Marginal);

    py::class_<SolutionReport>(m, "SolutionReport")
        .def_readonly("roots", &SolutionReport::roots)
        .def_readonly("residuals", &SolutionReport::residuals)
        .def_readonly("derivatives", &SolutionReport::derivatives)
        .def_readonly("stability", &SolutionReport::stability)
        .def_readonly("labels", &SolutionReport::labels)
        .def_readonly("regime_note", &SolutionReport::regime_note)
        .def_readonly("h_star", &SolutionReport::h_star)
        .def_readonly("has_h_star", &SolutionReport::has_h_star)
        .def_readonly("cross_check_count", &SolutionReport::cross_check_count)
        .def_readonly("positive_l2_count", &SolutionReport::positive_l2_count)
        .def("__len__", &SolutionReport::size)
        .def("to_json", [](const SolutionReport& r) { return to_json(r).dump(2); });

    m.def("solve_ti", &solve_ti, py::arg("params"), py::arg("cfg") = RootFindConfig{});
    m.def("solve_periodic", &solve_periodic, py::arg("params"),
          py::arg("cfg") = RootFindConfig{});
    m.def("solve_b_nonzero", &solve_b_nonzero, py::arg("pattern"), py::arg("params"),
          py::arg("cfg") = RootFindConfig{});
    m.def("solve_b_zero", &solve_b_zero, py::arg("params"), py::arg("c"),
          py::arg("cfg") = RootFindConfig{}, py::arg("h_root_index") = -1);
    m.def("solve_non_ti_23", &solve_non_ti_23, py::arg("pattern"), py::arg("params"),
          py::arg("cfg") = RootFindConfig{});
    m.def("widened_config", &widened_config, py::arg("params"),
          py::arg("cfg") = RootFindConfig{}, py::arg("shift") = 0.0);
    m.def("phi_of", &phi_of, py::arg("h2"), py::arg("pattern"), py::arg("params"));
    m.def("psi_of", &psi_of, py::arg("h2"), py::arg("pattern"), py::arg("params"));
    m.def("psi_derivative", &psi_derivative, py::arg("h2"), py::arg("pattern"),
          py::arg("params"));
    m.def("g_of", &g_of, py::arg("x"), py::arg("zeta"), py::arg("d"));
    m.def("g_derivative", &g_derivative, py::arg("x"), py::arg("zeta"), py::arg("d"));
    m.def("g_inflection", &g_inflection, py::arg("zeta"), py::arg("d"));

    py::enum_<PrefactorConvention>(m, "PrefactorConvention")
        .value("K_OVER_H_STAR", PrefactorConvention::KOverHStar)
        .value("D_OVER_H_STAR", PrefactorConvention::DOverHStar);

    m.def("zeta_of", &zeta_of, py::arg("theta"));
    m.def("theta_critical", &theta_critical, py::arg("d"));
    m.def("discriminant", &discriminant, py::arg("zeta"), py::arg("d"));
    m.def("discriminant_factored", &discriminant_factored, py::arg("zeta"), py::arg("d"));
    m.def(
        "quadratic_roots",
        [](double zeta, int d) {
            const auto r = quadratic_roots(zeta, d);
            return std::make_pair(r.x1, r.x2);
        },
        py::arg("zeta"), py::arg("d"));
    m.def(
        "eta_values",
        [](double zeta, int d) {
            const auto e = eta_values(zeta, d);
            return std::make_pair(e.eta1, e.eta2);
        },
        py::arg("zeta"), py::arg("d"));
    m.def(
        "c_star_bounds",
        [](double theta, int k, int d, double h_star, PrefactorConvention convention) {
            const auto b = c_star_bounds(theta, k, d, h_star, convention);
            return std::make_tuple(b.c1, b.c2, b.order_flipped);
        },
        py::arg("theta"), py::arg("k"), py::arg("d"), py::arg("h_star"),
        py::arg("convention") = PrefactorConvention::DOverHStar);

    py::class_<CriticalSet>(m, "CriticalSet")
        .def_readonly("theta_c", &CriticalSet::theta_c)
        .def_readonly("zeta", &CriticalSet::zeta)
        .def_readonly("discriminant_value", &CriticalSet::discriminant_value)
        .def_readonly("x1", &CriticalSet::x1)
        .def_readonly("x2", &CriticalSet::x2)
        .def_readonly("eta1", &CriticalSet::eta1)
        .def_readonly("eta2", &CriticalSet::eta2)
        .def_readonly("c_star_1", &CriticalSet::c_star_1)
        .def_readonly("c_star_2", &CriticalSet::c_star_2)
        .def_readonly("convention", &CriticalSet::convention)
        .def("to_json", [](const CriticalSet& cs) { return to_json(cs).dump(2); });

    m.def("make_critical_set", &make_critical_set, py::arg("theta"), py::arg("k"),
          py::arg("d"), py::arg("h_star"),
          py::arg("convention") = PrefactorConvention::DOverHStar);

    py::enum_<Regime>(m, "Regime")
        .value("UNIQUE", Regime::Unique)
        .value("BOUNDARY_PAIR", Regime::BoundaryPair)
        .value("TRIPLE", Regime::Triple);

    py::enum_<FamilyTag>(m, "FamilyTag")
        .value("TRANSLATION_INVARIANT", FamilyTag::TranslationInvariant)
        .value("PERIODIC", FamilyTag::Periodic)
        .value("NONPERIODIC_NEW", FamilyTag::NonperiodicNew);

    m.def("count_N", &count_N, py::arg("theta"), py::arg("c"), py::arg("d"),
          py::arg("h_star"), py::arg("k") = std::nullopt, py::arg("boundary_tol") = 1e-9);
    m.def("family_tag_for", &family_tag_for, py::arg("pattern"), py::arg("root"),
          py::arg("tol") = 1e-9);

    py::class_<RegimeReport>(m, "RegimeReport")
        .def_readonly("regime", &RegimeReport::regime)
        .def_readonly("n_solutions_predicted", &RegimeReport::n_solutions_predicted)
        .def_readonly("n_solutions_found", &RegimeReport::n_solutions_found)
        .def_readonly("theorem_applied", &RegimeReport::theorem_applied)
        .def_readonly("criticals", &RegimeReport::criticals)
        .def_readonly("family_tags", &RegimeReport::family_tags)
        .def_readonly("solutions", &RegimeReport::solutions)
        .def("to_json", [](const RegimeReport& r) { return to_json(r).dump(2); });

    m.def("classify_point", &classify_point, py::arg("pattern"), py::arg("params"),
          py::arg("cfg") = RootFindConfig{});
    m.def(
        "check_th1_condition",
        [](const BranchPattern& pattern, const ModelParams& params, double h2_star,
           double residual_tol) {
            const auto r = check_th1_condition(pattern, params, h2_star, residual_tol);
            return std::make_pair(r.satisfied, r.value);
        },
        py::arg("pattern"), py::arg("params"), py::arg("h2_star"),
        py::arg("residual_tol") = 1e-8);

    py::enum_<Label>(m, "Label").value("H_BAR", Label::HBar).value("L_BAR", Label::LBar);

    py::class_<FiniteTree>(m, "FiniteTree")
        .def_readonly("k", &FiniteTree::k)
        .def_readonly("n", &FiniteTree::n)
        .def("vertex_count", &FiniteTree::vertex_count)
        .def("sphere_size", &FiniteTree::sphere_size)
        .def("ball_size", &FiniteTree::ball_size)
        .def("edges", &FiniteTree::edges);

    m.def("build_tree", &build_tree, py::arg("k"), py::arg("n"),
          py::arg("max_vertices") = kDefaultEnumerationBudget);
    m.def("hamiltonian", &hamiltonian, py::arg("config"), py::arg("tree"), py::arg("J"));

    py::class_<RootSplit>(m, "RootSplit")
        .def(py::init([](int to_h, int to_l) {
                 return RootSplit{to_h, to_l};
             }),
             py::arg("to_h"), py::arg("to_l"))
        .def_readonly("to_h", &RootSplit::to_h)
        .def_readonly("to_l", &RootSplit::to_l);

    py::class_<FieldAssignment>(m, "FieldAssignment")
        .def_readonly("labels", &FieldAssignment::labels)
        .def_readonly("h2", &FieldAssignment::h2)
        .def_readonly("l2", &FieldAssignment::l2)
        .def("value_of", &FieldAssignment::value_of)
        .def("field_of", &FieldAssignment::field_of)
        .def("perturbed", &FieldAssignment::perturbed, py::arg("dh2"), py::arg("dl2"));

    m.def("assign_fields", &assign_fields, py::arg("tree"), py::arg("pattern"),
          py::arg("h2"), py::arg("l2"), py::arg("root_label") = Label::HBar,
          py::arg("split") = std::nullopt);

    py::class_<ExactDistribution>(m, "ExactDistribution")
        .def_readonly("n_vertices", &ExactDistribution::n_vertices)
        .def_readonly("n_configs", &ExactDistribution::n_configs)
        .def_readonly("probabilities", &ExactDistribution::probabilities)
        .def_readonly("partition_value", &ExactDistribution::partition_value)
        .def_readonly("log_partition", &ExactDistribution::log_partition)
        .def_static("spin_of", &ExactDistribution::spin_of, py::arg("code"), py::arg("v"))
        .def_static("encode", &ExactDistribution::encode, py::arg("config"));

    m.def("exact_mu_n", &exact_mu_n, py::arg("tree"), py::arg("fields"), py::arg("theta"),
          py::arg("workers") = 1);
    m.def("root_marginal", &root_marginal, py::arg("dist"));
    m.def("check_compatibility", &check_compatibility, py::arg("tree"), py::arg("fields"),
          py::arg("theta"), py::arg("workers") = 1);

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("theta_lo", &SweepSpec::theta_lo)
        .def_readwrite("theta_hi", &SweepSpec::theta_hi)
        .def_readwrite("theta_steps", &SweepSpec::theta_steps)
        .def_readwrite("c_values", &SweepSpec::c_values)
        .def_readwrite("k", &SweepSpec::k)
        .def_readwrite("pattern", &SweepSpec::pattern)
        .def_readwrite("output_path", &SweepSpec::output_path)
        .def_readwrite("workers", &SweepSpec::workers)
        .def_readwrite("root_config", &SweepSpec::root_config);

    m.def(
        "sweep_csv",
        [](const SweepSpec& spec) { return sweep_csv(run_sweep_rows(spec)); },
        py::arg("spec"));
    m.def("run_sweep", &run_sweep, py::arg("spec"));
}
