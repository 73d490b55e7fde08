//! Problem data, built-in benchmarks, manufactured sources and error norms.

mod config;
pub mod expr;

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::basis::SpatialGrid;
use crate::error::{Error, Result};
use crate::fractime::{gamma_fn, FractionalOrder};

pub use config::{ProblemConfig, ProblemSource, TermConfig};
pub use expr::Expr;

pub type SpaceFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type TimeFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type SpaceTimeFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// `D_t^γ u + α u = u_xx + f` on `[a, b] × [0, T]` with
/// `u(x, 0) = φ1`, `u_t(x, 0) = φ2`, `u(a, t) = ψ1`, `u(b, t) = ψ2`.
///
/// The initial fit needs `φ1'` and `φ2'` at the end points, so both
/// derivatives travel with the data.
#[derive(Clone)]
pub struct ProblemSpec {
    pub name: String,
    pub gamma: FractionalOrder,
    pub alpha: f64,
    pub domain: (f64, f64),
    pub horizon: f64,
    pub phi1: SpaceFn,
    pub phi1_dx: SpaceFn,
    pub phi2: SpaceFn,
    pub phi2_dx: SpaceFn,
    pub psi1: TimeFn,
    pub psi2: TimeFn,
    pub source: SpaceTimeFn,
    pub exact: Option<SpaceTimeFn>,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("name", &self.name)
            .field("gamma", &self.gamma.value())
            .field("alpha", &self.alpha)
            .field("domain", &self.domain)
            .field("horizon", &self.horizon)
            .field("exact", &self.exact.is_some())
            .finish_non_exhaustive()
    }
}

impl ProblemSpec {
    /// Checks parameter ranges, corner compatibility of the initial and
    /// boundary data, and, when an exact solution is attached, that it
    /// reproduces that data.
    pub fn validate(&self) -> Result<()> {
        let (a, b) = self.domain;
        if !(a < b) {
            return Err(Error::InvalidProblem(format!("empty domain [{a}, {b}]")));
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidProblem(format!("reaction coefficient {} < 0", self.alpha)));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(Error::InvalidProblem(format!("horizon {} must be positive", self.horizon)));
        }
        for (x, psi0, side) in [(a, (self.psi1)(0.0), "left"), (b, (self.psi2)(0.0), "right")] {
            let phi = (self.phi1)(x);
            if (phi - psi0).abs() > 1e-12 {
                return Err(Error::InvalidProblem(format!(
                    "{side} corner mismatch: phi1 = {phi}, psi(0) = {psi0}"
                )));
            }
        }
        if let Some(exact) = &self.exact {
            const SAMPLES: usize = 17;
            for k in 0..SAMPLES {
                let s = k as f64 / (SAMPLES - 1) as f64;
                let x = a + s * (b - a);
                let t = s * self.horizon;
                let checks = [
                    ("initial value", exact(x, 0.0), (self.phi1)(x)),
                    ("left boundary", exact(a, t), (self.psi1)(t)),
                    ("right boundary", exact(b, t), (self.psi2)(t)),
                ];
                for (what, u, data) in checks {
                    if (u - data).abs() > 1e-10 {
                        return Err(Error::InvalidProblem(format!(
                            "exact solution disagrees with {what} data: {u} vs {data}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn with_horizon(mut self, horizon: f64) -> Self {
        self.horizon = horizon;
        self
    }
}

fn space(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> SpaceFn {
    Arc::new(f)
}

fn zero_space() -> SpaceFn {
    space(|_| 0.0)
}

fn zero_time() -> TimeFn {
    Arc::new(|_| 0.0)
}

/// The three benchmark problems on `[0, 1] × [0, 1]`.
///
/// 1. `α = 0`, `u = (t² - t) sin(πx)`.
/// 2. `α = 1`, `u = t² x(1 - x)`.
/// 3. `α = 1`, `u = t² sinh(x)`; the source is generated from the exact
///    solution (see [`example3_pi_weighted_source`] for an inconsistent variant).
pub fn builtin_example(id: u32, gamma: FractionalOrder) -> Result<ProblemSpec> {
    let g = gamma.value();
    let gamma3 = gamma_fn(3.0 - g);
    let spec = match id {
        1 => ProblemSpec {
            name: "example-1".into(),
            gamma,
            alpha: 0.0,
            domain: (0.0, 1.0),
            horizon: 1.0,
            phi1: zero_space(),
            phi1_dx: zero_space(),
            phi2: space(|x| -(PI * x).sin()),
            phi2_dx: space(|x| -PI * (PI * x).cos()),
            psi1: zero_time(),
            psi2: zero_time(),
            source: Arc::new(move |x, t| {
                let s = (PI * x).sin();
                2.0 * t.powf(2.0 - g) * s / gamma3 + (t * t - t) * s * PI * PI
            }),
            exact: Some(Arc::new(|x, t| (PI * x).sin() * (t * t - t))),
        },
        2 => ProblemSpec {
            name: "example-2".into(),
            gamma,
            alpha: 1.0,
            domain: (0.0, 1.0),
            horizon: 1.0,
            phi1: zero_space(),
            phi1_dx: zero_space(),
            phi2: zero_space(),
            phi2_dx: zero_space(),
            psi1: zero_time(),
            psi2: zero_time(),
            source: Arc::new(move |x, t| {
                let p = x * (1.0 - x);
                2.0 * t.powf(2.0 - g) * p / gamma3 + t * t * p + 2.0 * t * t
            }),
            exact: Some(Arc::new(|x, t| t * t * x * (1.0 - x))),
        },
        3 => {
            let recipe = SeparableSolution::new(vec![(2.0, "sinh(x)".parse()?)])?;
            recipe.into_problem("example-3", gamma, 1.0, (0.0, 1.0), 1.0)?
        }
        other => return Err(Error::UnknownExample(other)),
    };
    Ok(spec)
}

/// A π-weighted variant of Example 3's source:
/// `π · 2 sinh(x) t^{2-γ} / Γ(3-γ) + (1 - π) t² sinh(x)`.
///
/// It does not satisfy the equation for `u = t² sinh(x)`; kept for the
/// residual comparison only.
pub fn example3_pi_weighted_source(gamma: FractionalOrder) -> SpaceTimeFn {
    let g = gamma.value();
    let gamma3 = gamma_fn(3.0 - g);
    Arc::new(move |x, t| {
        PI * 2.0 * x.sinh() * t.powf(2.0 - g) / gamma3 + (1.0 - PI) * t * t * x.sinh()
    })
}

/// `t^p g(x)` with its first two spatial derivatives pre-computed.
#[derive(Debug, Clone)]
pub struct SeparableTerm {
    pub exponent: f64,
    pub profile: Expr,
    d1: Expr,
    d2: Expr,
}

impl SeparableTerm {
    pub fn new(exponent: f64, profile: Expr) -> Result<Self> {
        if !(exponent == 0.0 || exponent == 1.0 || exponent >= 2.0) || !exponent.is_finite() {
            return Err(Error::UnsupportedExponent(exponent));
        }
        let d1 = profile.derivative();
        let d2 = d1.derivative();
        Ok(Self { exponent, profile, d1, d2 })
    }

    /// Coefficient `C` in `D_t^γ t^p = C t^{p-γ}`; zero for `p ∈ {0, 1}`.
    pub fn caputo_coefficient(&self, gamma: FractionalOrder) -> f64 {
        let p = self.exponent;
        if p < 2.0 {
            0.0
        } else {
            gamma_fn(p + 1.0) / gamma_fn(p + 1.0 - gamma.value())
        }
    }
}

/// `u(x, t) = Σ_k t^{p_k} g_k(x)` with `p_k ∈ {0, 1} ∪ [2, ∞)`.
#[derive(Debug, Clone)]
pub struct SeparableSolution {
    terms: Arc<Vec<SeparableTerm>>,
}

impl SeparableSolution {
    pub fn new(terms: Vec<(f64, Expr)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Config("a separable solution needs at least one term".into()));
        }
        let terms = terms
            .into_iter()
            .map(|(p, g)| SeparableTerm::new(p, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { terms: Arc::new(terms) })
    }

    pub fn terms(&self) -> &[SeparableTerm] {
        &self.terms
    }

    pub fn value(&self, x: f64, t: f64) -> f64 {
        self.terms.iter().map(|k| t.powf(k.exponent) * k.profile.eval(x)).sum()
    }

    fn time_slice(&self, exponent: f64, order: u8) -> SpaceFn {
        let terms = Arc::clone(&self.terms);
        space(move |x| {
            terms
                .iter()
                .filter(|k| k.exponent == exponent)
                .map(|k| match order {
                    0 => k.profile.eval(x),
                    _ => k.d1.eval(x),
                })
                .sum()
        })
    }

    /// Builds the full problem: initial and boundary data are traces of the
    /// solution and the source comes from [`manufactured_source`].
    pub fn into_problem(
        self,
        name: &str,
        gamma: FractionalOrder,
        alpha: f64,
        domain: (f64, f64),
        horizon: f64,
    ) -> Result<ProblemSpec> {
        let source = manufactured_source(&self, alpha, gamma)?;
        let (a, b) = domain;
        let left = self.clone();
        let right = self.clone();
        let exact = self.clone();
        let spec = ProblemSpec {
            name: name.to_string(),
            gamma,
            alpha,
            domain,
            horizon,
            phi1: self.time_slice(0.0, 0),
            phi1_dx: self.time_slice(0.0, 1),
            phi2: self.time_slice(1.0, 0),
            phi2_dx: self.time_slice(1.0, 1),
            psi1: Arc::new(move |t| left.value(a, t)),
            psi2: Arc::new(move |t| right.value(b, t)),
            source,
            exact: Some(Arc::new(move |x, t| exact.value(x, t))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// `f = D_t^γ u + α u - u_xx` for a separable `u`, using
/// `D_t^γ t^p = Γ(p+1)/Γ(p+1-γ) t^{p-γ}` for `p ≥ 2` and `0` for `p ∈ {0, 1}`.
pub fn manufactured_source(
    solution: &SeparableSolution,
    alpha: f64,
    gamma: FractionalOrder,
) -> Result<SpaceTimeFn> {
    let g = FractionalOrder::new(gamma.value())?.value();
    let parts: Vec<(f64, f64, SeparableTerm)> = solution
        .terms()
        .iter()
        .map(|k| (k.exponent, k.caputo_coefficient(gamma), k.clone()))
        .collect();
    for (p, ..) in &parts {
        if !(*p == 0.0 || *p == 1.0 || *p >= 2.0) {
            return Err(Error::UnsupportedExponent(*p));
        }
    }
    Ok(Arc::new(move |x, t| {
        parts
            .iter()
            .map(|(p, coeff, k)| {
                let gx = k.profile.eval(x);
                let caputo = if *coeff == 0.0 { 0.0 } else { coeff * t.powf(p - g) * gx };
                caputo + t.powf(*p) * (alpha * gx - k.d2.eval(x))
            })
            .sum()
    }))
}

/// Grid error norms at one time level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorReport {
    pub l2: f64,
    pub linf: f64,
    pub time: f64,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
}

/// `L∞ = max_j |u(x_j, t) - U_j|`, `L2 = sqrt(h Σ_j |u(x_j, t) - U_j|²)`
/// over the physical knots `j = 0..=N`.
pub fn error_norms(
    numeric: &[f64],
    exact: &dyn Fn(f64, f64) -> f64,
    grid: &SpatialGrid,
    t: f64,
    m: usize,
) -> Result<ErrorReport> {
    if numeric.len() != grid.n() + 1 {
        return Err(Error::LengthMismatch { expected: grid.n() + 1, found: numeric.len() });
    }
    let mut sum_sq = 0.0;
    let mut linf = 0.0f64;
    for (j, u) in numeric.iter().enumerate() {
        let e = (exact(grid.knot(j as i64), t) - u).abs();
        sum_sq += e * e;
        linf = linf.max(e);
    }
    Ok(ErrorReport { l2: (grid.h() * sum_sq).sqrt(), linf, time: t, n: grid.n(), m })
}
