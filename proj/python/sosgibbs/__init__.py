"""Solvers, classifiers and exact finite-tree oracles for Gibbs measures of a
three-level height model on Cayley trees.

Everything is implemented in the C++ core; this package re-exports it.
"""

from ._core import (  # noqa: F401
    BranchPattern,
    CriticalSet,
    DegenerateError,
    DomainError,
    ContractError,
    ExactDistribution,
    FamilyTag,
    FieldAssignment,
    FiniteTree,
    IoError,
    Label,
    ModelParams,
    PrefactorConvention,
    ReducedField,
    Regime,
    RegimeReport,
    RegimeError,
    RootFindConfig,
    RootSplit,
    ScanError,
    SizeError,
    SolutionReport,
    Stability,
    SweepSpec,
    assign_fields,
    build_tree,
    c_star_bounds,
    check_compatibility,
    check_th1_condition,
    classify_point,
    count_N,
    discriminant,
    discriminant_factored,
    eta_values,
    exact_mu_n,
    family_tag_for,
    g_derivative,
    g_inflection,
    g_of,
    hamiltonian,
    inflection_point,
    kernel_f,
    kernel_f_bounds,
    kernel_f_derivative,
    kernel_f_second,
    make_critical_set,
    map_F,
    phi_of,
    psi_derivative,
    psi_of,
    quadratic_roots,
    root_marginal,
    run_sweep,
    solve_b_nonzero,
    solve_b_zero,
    solve_non_ti_23,
    solve_periodic,
    solve_ti,
    sweep_csv,
    theta_critical,
    widened_config,
    zeta_of,
)

__version__ = "0.1.0"
