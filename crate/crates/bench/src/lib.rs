//! Fixtures for the criterion benchmarks in `benches/solver.rs`.

use trigfrac_core::prelude::*;

/// Diagonally dominant `n × n` system with a smooth right-hand side,
/// shaped like the systems the time stepper produces.
pub fn dominant_system(n: usize) -> TridiagonalSystem {
    let off = vec![-1.0; n - 1];
    let diag = vec![4.0; n];
    let rhs = (0..n).map(|i| (i as f64 / n as f64 * 6.0).sin()).collect();
    TridiagonalSystem::new(off.clone(), diag, off, rhs).expect("consistent shapes")
}

/// Example 1 at `γ = 1.75`.
pub fn example_one() -> ProblemSpec {
    builtin_example(1, FractionalOrder::new(1.75).expect("valid order")).expect("built-in exists")
}
