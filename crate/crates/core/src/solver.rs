//! Fully discrete collocation scheme.
//!
//! Collocating the time-discrete equation at the knots `x_0..x_N` gives, for
//! the unknown coefficients `c^{n+1}`,
//!
//! ```text
//!     L c_{j-1} + C c_j + L c_{j+1} = r_j,      L = κ a1 - a4,  C = κ a2 - a5
//! ```
//!
//! with `κ = α0 + α` and
//!
//! ```text
//!     r_j = 2α0 u^n_j - α0 u^{n-1}_j
//!           - α0 Σ_{k=1}^{n} b_k (u^{n+1-k} - 2u^{n-k} + u^{n-1-k})_j + f(x_j, t_{n+1})
//! ```
//!
//! where `u^m_j = a1 c^m_{j-1} + a2 c^m_j + a1 c^m_{j+1}`. The auxiliary level
//! is `u^{-1} = u^1 - 2Δt φ2`; on the first step it is folded into the matrix,
//! which doubles `α0` (`κ = 2α0 + α`). The Dirichlet rows
//! `a1 c_{-1} + a2 c_0 + a1 c_1 = ψ1` and the mirror row at `x_N` are used to
//! eliminate the ghost coefficients, leaving an `(N+1)`-row tridiagonal
//! system for `c_0..c_N`.

use crate::basis::{CoefficientVector, SpatialGrid, StencilCoefficients, stencil_coefficients};
use crate::error::{Error, Result};
use crate::fractime::{caputo_weights, CaputoWeights};
use crate::linalg::{thomas_solve, TridiagonalSystem};
use crate::problems::{error_norms, ErrorReport, ProblemSpec};

/// Interpolates `g` at the knots and `g'` at both end points.
pub fn fit_initial_coefficients(
    g: &dyn Fn(f64) -> f64,
    dg: &dyn Fn(f64) -> f64,
    grid: &SpatialGrid,
    stencil: &StencilCoefficients,
) -> Result<CoefficientVector> {
    let n = grid.n();
    let StencilCoefficients { a1, a2, a3, .. } = *stencil;
    let (x0, xn) = (grid.knot(0), grid.knot(n as i64));
    let (slope_left, slope_right) = (dg(x0), dg(xn));

    let mut sub = vec![a1; n];
    let diag = vec![a2; n + 1];
    let mut sup = vec![a1; n];
    let mut rhs: Vec<f64> = (0..=n).map(|j| g(grid.knot(j as i64))).collect();
    // c_{-1} = c_1 - g'(x_0)/a3 and c_{N+1} = c_{N-1} + g'(x_N)/a3
    sup[0] = 2.0 * a1;
    rhs[0] += a1 * slope_left / a3;
    sub[n - 1] = 2.0 * a1;
    rhs[n] -= a1 * slope_right / a3;

    let inner = thomas_solve(&TridiagonalSystem::new(sub, diag, sup, rhs)?)?;
    let mut values = Vec::with_capacity(n + 3);
    values.push(inner[1] - slope_left / a3);
    values.extend_from_slice(&inner);
    values.push(inner[n - 1] + slope_right / a3);
    CoefficientVector::from_values(values)
}

/// Stepping state of one solver run. The coefficient history grows by one
/// vector per step.
pub struct SolverState<'p> {
    problem: &'p ProblemSpec,
    grid: SpatialGrid,
    weights: CaputoWeights,
    stencil: StencilCoefficients,
    steps: usize,
    history: Vec<CoefficientVector>,
    phi2_coeffs: CoefficientVector,
    /// knot values `u^0..u^n`
    values: Vec<Vec<f64>>,
    /// `u^{-1}`, known once `u^1` is
    aux_level: Option<Vec<f64>>,
    /// `D^m = u^{m+1} - 2u^m + u^{m-1}` for `m = 0..n-1`
    second_diffs: Vec<Vec<f64>>,
}

impl<'p> SolverState<'p> {
    /// Fits `c^0` to `φ1` and prepares `M` steps of size `T/M` on `N` subintervals.
    pub fn new(problem: &'p ProblemSpec, n: usize, m: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("need N >= 3 subintervals, got {n}")));
        }
        if m < 2 {
            return Err(Error::Domain(format!("need M >= 2 time steps, got {m}")));
        }
        problem.validate()?;
        let (a, b) = problem.domain;
        let grid = SpatialGrid::new(a, b, n)?;
        let stencil = stencil_coefficients(grid.h())?;
        let weights = caputo_weights(problem.gamma, problem.horizon / m as f64, m)?;
        let c0 = fit_initial_coefficients(&*problem.phi1, &*problem.phi1_dx, &grid, &stencil)?;
        let phi2_coeffs =
            fit_initial_coefficients(&*problem.phi2, &*problem.phi2_dx, &grid, &stencil)?;
        let u0 = c0.knot_values(&stencil);
        Ok(Self {
            problem,
            grid,
            weights,
            stencil,
            steps: m,
            history: vec![c0],
            phi2_coeffs,
            values: vec![u0],
            aux_level: None,
            second_diffs: Vec::new(),
        })
    }

    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn weights(&self) -> &CaputoWeights {
        &self.weights
    }

    pub fn stencil(&self) -> &StencilCoefficients {
        &self.stencil
    }

    /// Index `n` of the newest level.
    pub fn level(&self) -> usize {
        self.history.len() - 1
    }

    pub fn history(&self) -> &[CoefficientVector] {
        &self.history
    }

    pub fn phi2_coeffs(&self) -> &CoefficientVector {
        &self.phi2_coeffs
    }

    /// Knot values of level `n`.
    pub fn knot_values(&self, n: usize) -> Option<&[f64]> {
        self.values.get(n).map(Vec::as_slice)
    }

    /// `u^{-1}` at the knots, once the first step has been taken.
    pub fn aux_level(&self) -> Option<&[f64]> {
        self.aux_level.as_deref()
    }

    pub fn is_finished(&self) -> bool {
        self.level() >= self.steps
    }

    /// `t_n = n Δt`
    pub fn time(&self, n: usize) -> f64 {
        n as f64 * self.weights.dt()
    }

    fn source_at(&self, t: f64) -> Vec<f64> {
        (0..=self.grid.n()).map(|j| (self.problem.source)(self.grid.knot(j as i64), t)).collect()
    }

    fn close_system(&self, kappa: f64, rhs: Vec<f64>, t: f64) -> TridiagonalSystem {
        let StencilCoefficients { a1, a2, a4, a5, .. } = self.stencil;
        let n = self.grid.n();
        let lower = kappa * a1 - a4;
        let centre = kappa * a2 - a5;
        let mut sub = vec![lower; n];
        let mut diag = vec![centre; n + 1];
        let mut sup = vec![lower; n];
        let mut rhs = rhs;
        // substituting c_{-1} = (ψ - a2 c_0 - a1 c_1)/a1 removes c_1 from row 0
        // and leaves a κ-free pivot a2 a4 / a1 - a5
        let edge = a2 * a4 / a1 - a5;
        diag[0] = edge;
        sup[0] = 0.0;
        rhs[0] -= lower * (self.problem.psi1)(t) / a1;
        diag[n] = edge;
        sub[n - 1] = 0.0;
        rhs[n] -= lower * (self.problem.psi2)(t) / a1;
        TridiagonalSystem { sub, diag, sup, rhs }
    }

    /// System for `c^1`, with `u^{-1} = u^1 - 2Δt φ2` substituted.
    pub fn assemble_first_step(&self) -> Result<TridiagonalSystem> {
        if self.level() != 0 {
            return Err(Error::Precondition(format!(
                "first-step assembly needs exactly one level, have {}",
                self.history.len()
            )));
        }
        let alpha0 = self.weights.alpha0();
        let dt = self.weights.dt();
        let t1 = self.time(1);
        let u0 = &self.values[0];
        let v0 = self.phi2_coeffs.knot_values(&self.stencil);
        let rhs = self
            .source_at(t1)
            .into_iter()
            .zip(u0.iter().zip(&v0))
            .map(|(f, (u, v))| 2.0 * alpha0 * u + 2.0 * dt * alpha0 * v + f)
            .collect();
        Ok(self.close_system(2.0 * alpha0 + self.problem.alpha, rhs, t1))
    }

    /// System for `c^{n+1}`, `n ≥ 1`.
    pub fn assemble_step(&self) -> Result<TridiagonalSystem> {
        let n = self.level();
        if n == 0 {
            return Err(Error::Precondition(
                "regular steps need two levels; use assemble_first_step for n = 0".into(),
            ));
        }
        if n >= self.steps {
            return Err(Error::Precondition(format!("level {n} exceeds the prepared {} steps", self.steps)));
        }
        let alpha0 = self.weights.alpha0();
        let b = self.weights.b();
        let t_next = self.time(n + 1);
        let mut rhs = self.source_at(t_next);
        let (un, unm1) = (&self.values[n], &self.values[n - 1]);
        for (j, r) in rhs.iter_mut().enumerate() {
            *r += alpha0 * (2.0 * un[j] - unm1[j]);
        }
        let mut memory = vec![0.0; rhs.len()];
        for k in 1..=n {
            let d = &self.second_diffs[n - k];
            for (acc, v) in memory.iter_mut().zip(d) {
                *acc += b[k] * v;
            }
        }
        for (r, mem) in rhs.iter_mut().zip(&memory) {
            *r -= alpha0 * mem;
        }
        Ok(self.close_system(alpha0 + self.problem.alpha, rhs, t_next))
    }

    /// Solves for the next level and appends it to the history.
    pub fn step(&mut self) -> Result<()> {
        if self.is_finished() {
            return Err(Error::Precondition(format!("all {} steps already taken", self.steps)));
        }
        let n = self.level();
        let system = if n == 0 { self.assemble_first_step()? } else { self.assemble_step()? };
        let inner = thomas_solve(&system)?;

        let StencilCoefficients { a1, a2, .. } = self.stencil;
        let t = self.time(n + 1);
        let last = inner.len() - 1;
        let mut values = Vec::with_capacity(inner.len() + 2);
        values.push(((self.problem.psi1)(t) - a2 * inner[0] - a1 * inner[1]) / a1);
        values.extend_from_slice(&inner);
        values.push(((self.problem.psi2)(t) - a2 * inner[last] - a1 * inner[last - 1]) / a1);
        let c = CoefficientVector::from_values(values)?;
        let u = c.knot_values(&self.stencil);

        if n == 0 {
            let dt = self.weights.dt();
            let v = self.phi2_coeffs.knot_values(&self.stencil);
            self.aux_level = Some(u.iter().zip(&v).map(|(u1, v)| u1 - 2.0 * dt * v).collect());
        }
        let below = match n {
            0 => self.aux_level.as_ref().expect("set above"),
            _ => &self.values[n - 1],
        };
        let d = u
            .iter()
            .zip(&self.values[n])
            .zip(below)
            .map(|((up, mid), low)| up - 2.0 * mid + low)
            .collect();
        self.second_diffs.push(d);
        self.values.push(u);
        self.history.push(c);
        Ok(())
    }

    pub fn run(mut self) -> Result<SolutionHistory> {
        while !self.is_finished() {
            self.step()?;
        }
        let dt = self.weights.dt();
        Ok(SolutionHistory {
            grid: self.grid,
            dt,
            values: self.values,
            final_coefficients: self.history.pop().expect("history is never empty"),
        })
    }
}

/// Knot values `u_j^n` for `n = 0..=M`.
#[derive(Debug, Clone)]
pub struct SolutionHistory {
    grid: SpatialGrid,
    dt: f64,
    values: Vec<Vec<f64>>,
    final_coefficients: CoefficientVector,
}

impl SolutionHistory {
    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Number of stored levels, `M + 1`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn steps(&self) -> usize {
        self.values.len() - 1
    }

    pub fn time(&self, n: usize) -> f64 {
        n as f64 * self.dt
    }

    pub fn level(&self, n: usize) -> &[f64] {
        &self.values[n]
    }

    pub fn levels(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn final_coefficients(&self) -> &CoefficientVector {
        &self.final_coefficients
    }

    /// Level whose time is closest to `t`, or `None` outside `[0, T]`.
    pub fn nearest_level(&self, t: f64) -> Option<usize> {
        let horizon = self.time(self.steps());
        if !(t >= 0.0 && t <= horizon * (1.0 + 1e-12)) {
            return None;
        }
        Some(((t / self.dt).round() as usize).min(self.steps()))
    }

    pub fn error_report(&self, n: usize, problem: &ProblemSpec) -> Result<ErrorReport> {
        let exact = problem
            .exact
            .as_ref()
            .ok_or_else(|| Error::Precondition(format!("{} has no exact solution", problem.name)))?;
        error_norms(&self.values[n], &**exact, &self.grid, self.time(n), self.steps())
    }
}

/// Runs `M` steps on `N` subintervals up to the problem's horizon.
pub fn solve(problem: &ProblemSpec, n: usize, m: usize) -> Result<SolutionHistory> {
    SolverState::new(problem, n, m)?.run()
}
