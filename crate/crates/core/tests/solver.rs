mod common;

use std::f64::consts::PI;

use trigfrac_core::prelude::*;

use common::*;

fn order(g: f64) -> FractionalOrder {
    FractionalOrder::new(g).unwrap()
}

#[test]
fn wave_equation_limit_converges() {
    for id in [1, 2, 3] {
        let p = builtin_example(id, order(2.0)).unwrap();
        let errs: Vec<f64> = [(10, 10), (20, 20), (40, 40)]
            .iter()
            .map(|&(n, m)| linf_at_end(&p, n, m))
            .collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "example {id}: {errs:?}");
        assert!((errs[1] / errs[2]).log2() > 1.5, "example {id}: {errs:?}");
    }
}

#[test]
fn homogeneous_solution_stays_bounded() {
    let p = homogeneous_sine(1.5, 10.0);
    let sol = solve(&p, 20, 1000).unwrap();
    let start = sol.level(0).iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let peak = sol.levels().iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(peak <= 2.0 * start + 1e-8, "peak {peak} vs start {start}");
    // the fractional term damps the oscillation
    let last = sol.level(sol.steps()).iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(last < start);
}

#[test]
fn initial_level_reproduces_initial_value() {
    let p = builtin_example(3, order(1.3)).unwrap();
    let sol = solve(&p, 12, 4).unwrap();
    for (j, u) in sol.level(0).iter().enumerate() {
        let x = j as f64 / 12.0;
        assert!((u - (p.phi1)(x)).abs() < 1e-13);
    }
    // boundary values are imposed exactly at every level
    for n in 0..=sol.steps() {
        let t = sol.time(n);
        let u = sol.level(n);
        assert!((u[0] - (p.psi1)(t)).abs() < 1e-12);
        assert!((u[12] - (p.psi2)(t)).abs() < 1e-12);
    }
}

#[test]
fn manufactured_solution_refines() {
    // u = t² x(1-x) cos(x) + t e^x, exercising the linear-in-time term and
    // nonzero boundary data
    let recipe = SeparableSolution::new(vec![
        (2.0, "x*(1-x)*cos(x)".parse().unwrap()),
        (1.0, "exp(x)".parse().unwrap()),
    ])
    .unwrap();
    for gamma in [1.2, 1.6, 1.95] {
        let p = recipe.clone().into_problem("mms", order(gamma), 0.7, (0.0, 2.0), 1.0).unwrap();
        let errs: Vec<f64> = [(10, 10), (20, 20), (40, 40)]
            .iter()
            .map(|&(n, m)| linf_at_end(&p, n, m))
            .collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "γ = {gamma}: {errs:?}");
        assert!(errs[2] < 1e-3);
    }
}

#[test]
fn manufactured_source_agrees_with_hand_derivation() {
    let recipe = SeparableSolution::new(vec![(3.0, "sin(pi*x)".parse().unwrap())]).unwrap();
    let gamma = 1.7;
    let f = manufactured_source(&recipe, 2.0, order(gamma)).unwrap();
    for (x, t) in [(0.1f64, 0.2f64), (0.5, 0.9), (0.77, 0.33)] {
        let s = (PI * x).sin();
        // D^γ t³ = 6 t^{3-γ} / Γ(4-γ)
        let caputo = 6.0 * t.powf(3.0 - gamma) / lanczos_gamma(4.0 - gamma) * s;
        let want = caputo + 2.0 * t.powi(3) * s + PI * PI * t.powi(3) * s;
        assert!((f(x, t) - want).abs() < 1e-12, "({x}, {t})");
    }
}

#[test]
fn step_by_step_matches_run() {
    let p = builtin_example(1, order(1.5)).unwrap();
    let whole = solve(&p, 16, 12).unwrap();
    let mut state = SolverState::new(&p, 16, 12).unwrap();
    let first = state.assemble_first_step().unwrap();
    // the first-step system is solvable by the dense oracle too
    let dense = dense_solve(tridiagonal_to_dense(&first), first.rhs.clone());
    let thomas = thomas_solve(&first).unwrap();
    for (a, b) in dense.iter().zip(&thomas) {
        assert!((a - b).abs() < 1e-12 * (1.0 + b.abs()));
    }
    while !state.is_finished() {
        state.step().unwrap();
    }
    assert_eq!(state.knot_values(12).unwrap(), whole.level(12));
}

#[test]
fn every_step_system_is_solved_accurately() {
    for id in [1, 2, 3] {
        let p = builtin_example(id, order(1.45)).unwrap();
        let mut state = SolverState::new(&p, 50, 30).unwrap();
        while !state.is_finished() {
            let sys = if state.level() == 0 {
                state.assemble_first_step().unwrap()
            } else {
                state.assemble_step().unwrap()
            };
            let x = thomas_solve(&sys).unwrap();
            let scale = sys.rhs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            assert!(sys.residual_inf(&x) <= 1e-10 * scale.max(1.0));
            state.step().unwrap();
        }
    }
}

#[test]
fn l2_is_bounded_by_linf() {
    for id in [1, 2, 3] {
        let p = builtin_example(id, order(1.8)).unwrap();
        let sol = solve(&p, 24, 16).unwrap();
        for n in 1..=sol.steps() {
            let r = sol.error_report(n, &p).unwrap();
            let h = sol.grid().h();
            assert!(r.l2 <= (h * 25.0).sqrt() * r.linf * (1.0 + 1e-12));
        }
    }
}
