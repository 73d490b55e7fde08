//! Cubic trigonometric B-spline collocation for the time-fractional
//! diffusion-wave equation with reaction term
//!
//! ```text
//!     D_t^γ u + α u = u_xx + f(x, t),    1 < γ ≤ 2,  x ∈ [a, b],  0 ≤ t ≤ T
//! ```
//!
//! with Dirichlet boundary data and initial value/velocity. The Caputo
//! derivative is discretized with the classical L1-type weights
//! `b_j = (j+1)^{2-γ} - j^{2-γ}` and space is collocated at the knots of a
//! uniform mesh using twice-differentiable trigonometric cubic B-splines.
//! Each time level is one tridiagonal (Thomas) solve.
//!
//! Modules:
//!
//! - [`basis`]: basis functions, their derivatives and the knot stencils.
//! - [`fractime`]: Caputo weights and the discrete fractional operator.
//! - [`linalg`]: tridiagonal systems and the Thomas algorithm.
//! - [`solver`]: initial fit, step assembly and time marching.
//! - [`stability`]: Von Neumann growth-factor recursion and sweeps.
//! - [`problems`]: problem data, built-in benchmarks, manufactured sources,
//!   error norms and the config-file format.
//!
//! ```
//! use trigfrac_core::prelude::*;
//!
//! let gamma = FractionalOrder::new(1.5).unwrap();
//! let problem = builtin_example(2, gamma).unwrap();
//! let sol = solve(&problem, 20, 20).unwrap();
//! let report = sol.error_report(sol.len() - 1, &problem).unwrap();
//! assert!(report.linf < 1e-3);
//! ```

pub mod basis;
pub mod error;
pub mod fractime;
pub mod linalg;
pub mod problems;
pub mod solver;
pub mod stability;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::basis::{
        eval_basis, eval_basis_derivative, eval_spline, stencil_coefficients, CoefficientVector,
        SpatialGrid, StencilCoefficients,
    };
    pub use crate::error::{Error, Result};
    pub use crate::fractime::{caputo_weights, discrete_caputo, CaputoWeights, FractionalOrder};
    pub use crate::linalg::{thomas_solve, TridiagonalSystem};
    pub use crate::problems::{
        builtin_example, error_norms, manufactured_source, ErrorReport, ProblemConfig, ProblemSpec,
        SeparableSolution,
    };
    pub use crate::solver::{fit_initial_coefficients, solve, SolutionHistory, SolverState};
    pub use crate::stability::{
        amplification_nu, empirical_stability_scan, xi_sequence, ScanRanges, ScanReport,
        StabilityParams, StabilityTrace, StartRule,
    };
}
