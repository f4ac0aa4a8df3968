"""Space-time least-squares solver: Chebyshev in time, Fourier on the torus."""

from ._core import (
    DivergenceError,
    OracleError,
    SolveError,
    apply_potential,
    cheb_eval,
    cheb_eval_rows,
    field_from_values,
    fit_order,
    free_precond_solve,
    free_propagate,
    gauss_cheb,
    grid_values,
    initial_datum,
    ode_apply_normal,
    ode_exact,
    ode_stepper_error,
    ode_sup_error,
    pde_reference,
    run_config,
    solve_ode,
    solve_pde,
)

__all__ = [name for name in dir() if not name.startswith("_")]
