//! Von Neumann analysis of the collocation scheme.
//!
//! Substituting the Fourier mode `E_j^n = ξ_n e^{iβjh}` into the homogeneous
//! scheme and dividing by `α0 (2 a1 cos βh + a2)` gives
//!
//! ```text
//!     ξ_{n+1} = (2/ν) ξ_n - (1/ν) ξ_{n-1} - (1/ν) Σ_{k=1}^{n} b_k (ξ_{n+1-k} - 2ξ_{n-k} + ξ_{n-1-k})
//!     ν = 1 + [2(a1 α - a4) cos βh + (a2 α - a5)] / [α0 (2 a1 cos βh + a2)]
//! ```
//!
//! The recursion needs a starting value `ξ_1` and a convention for the
//! auxiliary `ξ_{-1}`; see [`StartRule`].

use rayon::prelude::*;
use serde::Serialize;

use crate::basis::stencil_coefficients;
use crate::error::{Error, Result};
use crate::fractime::{caputo_weights, CaputoWeights, FractionalOrder};

/// Amplification denominator `ν` for wave number `beta`.
pub fn amplification_nu(beta: f64, h: f64, dt: f64, gamma: FractionalOrder, alpha: f64) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(Error::Domain(format!("reaction coefficient must be >= 0, got {alpha}")));
    }
    let s = stencil_coefficients(h)?;
    let w = caputo_weights(gamma, dt, 0)?;
    let cos = (beta * h).cos();
    let value_symbol = 2.0 * s.a1 * cos + s.a2;
    if value_symbol.abs() < 1e-14 {
        return Err(Error::DegenerateSymbol { beta_h: beta * h });
    }
    let curvature_symbol = 2.0 * s.a4 * cos + s.a5;
    let alpha0 = w.alpha0();
    Ok(1.0 + (alpha * value_symbol - curvature_symbol) / (alpha0 * value_symbol))
}

/// How the recursion is started.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StartRule {
    /// The scheme's own first step: eliminating `u^{-1} = u^1 - 2Δt u_t(0)`
    /// with zero initial-velocity error gives `ξ_{-1} = ξ_1` and a doubled
    /// `α0` on the first step, hence `ξ_1 = 2ξ_0 / (ν + 1)`.
    Scheme,
    /// `ξ_1 = (2/ν) ξ_0` with `ξ_{-1} = 0` throughout.
    Truncated,
}

impl std::str::FromStr for StartRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scheme" => Ok(StartRule::Scheme),
            "truncated" => Ok(StartRule::Truncated),
            other => Err(Error::Config(format!("unknown start rule '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityParams {
    pub gamma: f64,
    pub h: f64,
    pub dt: f64,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityTrace {
    pub nu: f64,
    pub xi: Vec<f64>,
    /// `|ξ_k| ≤ 2|ξ_0|` for every `k`
    pub bound_ok: bool,
    pub start_rule: StartRule,
    pub params: Option<StabilityParams>,
}

impl StabilityTrace {
    pub fn max_abs(&self) -> f64 {
        self.xi.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// Runs the growth-factor recursion up to `ξ_{n_max}`.
pub fn xi_sequence(
    nu: f64,
    weights: &CaputoWeights,
    n_max: usize,
    xi0: f64,
    rule: StartRule,
) -> Result<StabilityTrace> {
    if !(nu >= 1.0) {
        return Err(Error::Domain(format!("recursion requires nu >= 1, got {nu}")));
    }
    if n_max < 1 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    if weights.n_max() < n_max {
        return Err(Error::Precondition(format!(
            "need weights up to b_{n_max}, have b_{}",
            weights.n_max()
        )));
    }
    let b = weights.b();
    let xi1 = match rule {
        StartRule::Scheme => 2.0 * xi0 / (nu + 1.0),
        StartRule::Truncated => 2.0 * xi0 / nu,
    };
    let aux = match rule {
        StartRule::Scheme => xi1,
        StartRule::Truncated => 0.0,
    };
    let mut xi = Vec::with_capacity(n_max + 1);
    xi.push(xi0);
    xi.push(xi1);
    // second differences ξ_{m+1} - 2ξ_m + ξ_{m-1}, m = 0..n-1
    let mut diffs = vec![xi1 - 2.0 * xi0 + aux];
    for n in 1..n_max {
        let memory: f64 = (1..=n).map(|k| b[k] * diffs[n - k]).sum();
        let next = (2.0 * xi[n] - xi[n - 1] - memory) / nu;
        xi.push(next);
        diffs.push(next - 2.0 * xi[n] + xi[n - 1]);
    }
    let bound = 2.0 * xi0.abs();
    let bound_ok = xi.iter().all(|x| x.abs() <= bound);
    Ok(StabilityTrace { nu, xi, bound_ok, start_rule: rule, params: None })
}

/// `ν` and the recursion for one parameter point.
pub fn trace_for(params: StabilityParams, n_max: usize, xi0: f64, rule: StartRule) -> Result<StabilityTrace> {
    let gamma = FractionalOrder::new(params.gamma)?;
    let nu = amplification_nu(params.beta, params.h, params.dt, gamma, params.alpha)?;
    let weights = caputo_weights(gamma, params.dt, n_max)?;
    let mut trace = xi_sequence(nu, &weights, n_max, xi0, rule)?;
    trace.params = Some(params);
    Ok(trace)
}

/// Cartesian sweep of `(γ, h, Δt, α, βh)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRanges {
    pub gammas: Vec<f64>,
    pub hs: Vec<f64>,
    pub dts: Vec<f64>,
    pub alphas: Vec<f64>,
    /// values of `β h`
    pub beta_h: Vec<f64>,
    pub n_max: usize,
    pub xi0: f64,
    pub start_rule: StartRule,
}

impl Default for ScanRanges {
    fn default() -> Self {
        use std::f64::consts::PI;
        Self {
            gammas: vec![1.1, 1.5, 1.9],
            hs: vec![1.0 / 10.0, 1.0 / 80.0],
            dts: vec![1.0 / 10.0, 1.0 / 100.0],
            alphas: vec![0.0, 1.0],
            beta_h: (0..=8).map(|k| k as f64 * PI / 8.0).collect(),
            n_max: 500,
            xi0: 1.0,
            start_rule: StartRule::Scheme,
        }
    }
}

impl ScanRanges {
    pub fn points(&self) -> Vec<StabilityParams> {
        let mut out = Vec::new();
        for &gamma in &self.gammas {
            for &h in &self.hs {
                for &dt in &self.dts {
                    for &alpha in &self.alphas {
                        for &bh in &self.beta_h {
                            out.push(StabilityParams { gamma, h, dt, alpha, beta: bh / h });
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanPoint {
    pub params: StabilityParams,
    pub nu: f64,
    pub max_abs_xi: f64,
    pub bound_ok: bool,
}

impl ScanPoint {
    pub fn is_violation(&self) -> bool {
        !(self.nu >= 1.0) || !self.bound_ok
    }

    /// The classical wave limit, where `ν → 1` modes grow linearly under
    /// [`StartRule::Truncated`].
    pub fn is_wave_corner(&self) -> bool {
        self.params.gamma == 2.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub start_rule: StartRule,
    pub n_max: usize,
    pub points: Vec<ScanPoint>,
}

impl ScanReport {
    pub fn violations(&self) -> impl Iterator<Item = &ScanPoint> {
        self.points.iter().filter(|p| p.is_violation())
    }

    /// Violations with `γ < 2`.
    pub fn fractional_violations(&self) -> impl Iterator<Item = &ScanPoint> {
        self.violations().filter(|p| !p.is_wave_corner())
    }
}

/// Evaluates the recursion at every point of `ranges`, in parallel. Points
/// are reported in the order of [`ScanRanges::points`].
pub fn empirical_stability_scan(ranges: &ScanRanges) -> Result<ScanReport> {
    let points = ranges
        .points()
        .into_par_iter()
        .map(|params| {
            let trace = trace_for(params, ranges.n_max, ranges.xi0, ranges.start_rule)?;
            Ok(ScanPoint {
                params,
                nu: trace.nu,
                max_abs_xi: trace.max_abs(),
                bound_ok: trace.bound_ok,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport { start_rule: ranges.start_rule, n_max: ranges.n_max, points })
}
