//! Linear-implicit, momentum-preserving Fourier pseudo-spectral solvers for
//! the periodic regularized long-wave equation
//!
//! ```text
//! u_t + a u_x − σ u_xxt + (F'(u))_x = 0,   F(u) = γu³/6
//! ```
//!
//! so the flux term is `γ u u_x`.
//!
//! Two integrators are provided: a linearised Crank-Nicolson scheme with
//! extrapolated coefficient (LCN-MP) and a linearised leap-frog scheme
//! (LLF-MP). Both keep the discrete momentum `‖U‖²_h + σ|U|²_h` constant to
//! solver precision while requiring only one linear solve per step.

pub mod cli;
pub mod config;
pub mod error;
pub mod grid;
pub mod harness;
pub mod invariants;
pub mod model;
pub mod output;
pub mod solver;
pub mod stepper;

pub use config::{load_config, parse_config, OutputOptions, RunConfig};
pub use error::{Result, RlwError};
pub use grid::{dense_diff_matrix, inner_product_h, norms, Grid, GridFunction, Norms, SpectralOperators};
pub use harness::{
    convergence_study, error_norms, run_scenario, Axis, ConvergenceTable, ErrorReport, Refinements,
    RunBundle, Scenario,
};
pub use invariants::{
    analytic_two_soliton_momentum, compute_invariants, relative_drift, InvariantRecord, RelativeDrift,
};
pub use model::{
    apply_nonlinear_operator, exact_soliton, initial_profile, InitialCondition, RlwParams, SolitonSpec,
    TwoSolitonSpec,
};
pub use output::{emit_convergence, emit_results};
pub use solver::{solve_linear, LinearSolve, LinearSolver, SolverConfig, SolverMode};
pub use stepper::{integrate, lcn_step, llf_step, startup_step, Scheme, SchemeRun};
