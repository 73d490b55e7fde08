//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the crate's numerics.

#![allow(dead_code)]

use std::f64::consts::PI;
use std::sync::Arc;

use trigfrac_core::prelude::*;

/// Dense Gaussian elimination with partial pivoting.
pub fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

pub fn tridiagonal_to_dense(sys: &TridiagonalSystem) -> Vec<Vec<f64>> {
    let n = sys.diag.len();
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..n {
        a[i][i] = sys.diag[i];
        if i + 1 < n {
            a[i][i + 1] = sys.sup[i];
            a[i + 1][i] = sys.sub[i];
        }
    }
    a
}

/// Knot stencils in closed form.
pub struct Stencil {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub a5: f64,
}

pub fn closed_form_stencil(h: f64) -> Stencil {
    let (s, c) = (h.sin(), h.cos());
    let half = (h / 2.0).sin();
    let cot_half = (h / 2.0).cos() / half;
    Stencil {
        a1: half * half / (s * (1.5 * h).sin()),
        a2: 2.0 / (1.0 + 2.0 * c),
        a3: 0.75 / (1.5 * h).sin(),
        a4: (3.0 + 9.0 * c) / (4.0 * (h / 2.0).cos() - 4.0 * (2.5 * h).cos()),
        a5: -3.0 * cot_half * cot_half / (2.0 + 4.0 * c),
    }
}

/// Full `(N+3)`-unknown interpolation system for `c_{-1}..c_{N+1}`:
/// values at every knot plus end slopes, solved densely.
pub fn fit_oracle(g: &dyn Fn(f64) -> f64, dg: &dyn Fn(f64) -> f64, a: f64, h: f64, n: usize) -> Vec<f64> {
    let s = closed_form_stencil(h);
    let size = n + 3;
    let mut m = vec![vec![0.0; size]; size];
    let mut rhs = vec![0.0; size];
    // unknown k holds c_{k-1}
    m[0][0] = -s.a3;
    m[0][2] = s.a3;
    rhs[0] = dg(a);
    for j in 0..=n {
        let row = j + 1;
        m[row][j] = s.a1;
        m[row][j + 1] = s.a2;
        m[row][j + 2] = s.a1;
        rhs[row] = g(a + j as f64 * h);
    }
    m[n + 2][n] = -s.a3;
    m[n + 2][n + 2] = s.a3;
    rhs[n + 2] = dg(a + n as f64 * h);
    dense_solve(m, rhs)
}

/// Lanczos approximation (g = 7, 9 terms), accurate to ~1e-15 on `[0.5, 3]`.
pub fn lanczos_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return PI / ((PI * x).sin() * lanczos_gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = C[0];
    for (i, c) in C.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// Caputo derivative of `t²`.
pub fn caputo_t2(t: f64, gamma: f64) -> f64 {
    2.0 * t.powf(2.0 - gamma) / lanczos_gamma(3.0 - gamma)
}

/// Hand-written `(u, D_t^γ u, u_xx)` for the three benchmark solutions.
pub fn benchmark_exact(id: u32, x: f64, t: f64, gamma: f64) -> (f64, f64, f64) {
    let d = caputo_t2(t, gamma);
    match id {
        // (t² - t) sin(πx); the linear part has zero Caputo derivative
        1 => {
            let s = (PI * x).sin();
            ((t * t - t) * s, d * s, -PI * PI * (t * t - t) * s)
        }
        2 => {
            let p = x * (1.0 - x);
            (t * t * p, d * p, -2.0 * t * t)
        }
        3 => {
            let s = x.sinh();
            (t * t * s, d * s, t * t * s)
        }
        _ => unreachable!(),
    }
}

/// `D^γ u + α u - u_xx - f` at one point.
pub fn residual(id: u32, problem: &ProblemSpec, source: &dyn Fn(f64, f64) -> f64, x: f64, t: f64) -> f64 {
    let (u, caputo, uxx) = benchmark_exact(id, x, t, problem.gamma.value());
    caputo + problem.alpha * u - uxx - source(x, t)
}

/// `D^γ u = u_xx`, `u(x, 0) = sin(πx)`, at rest, zero boundary values.
pub fn homogeneous_sine(gamma: f64, horizon: f64) -> ProblemSpec {
    let zero_x: Arc<dyn Fn(f64) -> f64 + Send + Sync> = Arc::new(|_| 0.0);
    ProblemSpec {
        name: "homogeneous-sine".into(),
        gamma: FractionalOrder::new(gamma).unwrap(),
        alpha: 0.0,
        domain: (0.0, 1.0),
        horizon,
        phi1: Arc::new(|x| (PI * x).sin()),
        phi1_dx: Arc::new(|x| PI * (PI * x).cos()),
        phi2: zero_x.clone(),
        phi2_dx: zero_x,
        psi1: Arc::new(|_| 0.0),
        psi2: Arc::new(|_| 0.0),
        source: Arc::new(|_, _| 0.0),
        exact: None,
    }
}

pub fn linf_at_end(problem: &ProblemSpec, n: usize, m: usize) -> f64 {
    let sol = solve(problem, n, m).unwrap();
    sol.error_report(sol.steps(), problem).unwrap().linf
}
