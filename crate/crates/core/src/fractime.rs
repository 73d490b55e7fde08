//! Caputo derivative of order `1 < γ ≤ 2` on a uniform time grid.
//!
//! Replacing `u_tt` by a centred second difference on each step and
//! integrating the kernel `(t_{n+1} - s)^{1-γ}` exactly gives
//!
//! ```text
//!     D^γ u(t_{n+1}) ≈ α0 Σ_{j=0}^{n} b_j (u^{n+1-j} - 2u^{n-j} + u^{n-1-j})
//!     b_j = (j+1)^{2-γ} - j^{2-γ},   α0 = 1 / (Δt^γ Γ(3-γ))
//! ```

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Order `γ` of the time derivative, `1 < γ ≤ 2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma > 1.0 && gamma <= 2.0 {
            Ok(Self(gamma))
        } else {
            Err(Error::Domain(format!("fractional order must satisfy 1 < gamma <= 2, got {gamma}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `γ = 2`: the classical wave equation.
    pub fn is_integer(self) -> bool {
        self.0 == 2.0
    }
}

/// `b_j = (j+1)^{2-γ} - j^{2-γ}`.
#[inline]
pub fn weight(gamma: FractionalOrder, j: usize) -> f64 {
    if j == 0 {
        // 0^0 would cancel the leading term at γ = 2
        return 1.0;
    }
    let e = 2.0 - gamma.value();
    let j = j as f64;
    (j + 1.0).powf(e) - j.powf(e)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaputoWeights {
    gamma: FractionalOrder,
    dt: f64,
    b: Vec<f64>,
    alpha0: f64,
}

impl CaputoWeights {
    pub fn gamma(&self) -> FractionalOrder {
        self.gamma
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// `b_0, ..., b_{n_max}`
    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    pub fn n_max(&self) -> usize {
        self.b.len() - 1
    }

    /// Evaluates `(1 - b_1) + Σ_{j=1}^{n-1} (b_j - b_{j+1}) + b_n` over the
    /// stored weights, which telescopes to `b_0 = 1`.
    pub fn telescoped_sum(&self) -> f64 {
        let b = &self.b;
        if b.len() == 1 {
            return b[0];
        }
        let n = b.len() - 1;
        let mut s = 1.0 - b[1];
        for j in 1..n {
            s += b[j] - b[j + 1];
        }
        s + b[n]
    }
}

/// Weights `b_0..=b_{n_max}` and scale `α0` for step `dt`.
pub fn caputo_weights(gamma: FractionalOrder, dt: f64, n_max: usize) -> Result<CaputoWeights> {
    // re-validate in case the order was built from a deserialized value
    let gamma = FractionalOrder::new(gamma.value())?;
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Domain(format!("time step must be positive, got {dt}")));
    }
    let b = (0..=n_max).map(|j| weight(gamma, j)).collect();
    let alpha0 = 1.0 / (dt.powf(gamma.value()) * gamma_fn(3.0 - gamma.value()));
    Ok(CaputoWeights { gamma, dt, b, alpha0 })
}

/// Euler gamma function.
pub fn gamma_fn(x: f64) -> f64 {
    gamma(x)
}

/// Discrete Caputo derivative at the newest level of `history`.
///
/// `history[0]` is the auxiliary level `u^{-1}` and `history[m + 1]` is `u^m`,
/// so a history of `n + 3` snapshots yields `D^γ u(t_{n+1})`.
pub fn discrete_caputo<S: AsRef<[f64]>>(history: &[S], w: &CaputoWeights) -> Result<Vec<f64>> {
    if history.len() < 3 {
        return Err(Error::LengthMismatch { expected: 3, found: history.len() });
    }
    let n = history.len() - 3;
    if n > w.n_max() {
        return Err(Error::Precondition(format!(
            "history needs weights up to b_{n}, only b_{} available",
            w.n_max()
        )));
    }
    let len = history[0].as_ref().len();
    if let Some(bad) = history.iter().find(|s| s.as_ref().len() != len) {
        return Err(Error::LengthMismatch { expected: len, found: bad.as_ref().len() });
    }
    let level = |m: usize| history[m].as_ref(); // m = level + 1
    let mut out = vec![0.0; len];
    for (j, &bj) in w.b[..=n].iter().enumerate() {
        // u^{n+1-j} - 2 u^{n-j} + u^{n-1-j}, shifted by one for u^{-1}
        let (up, mid, low) = (level(n + 2 - j), level(n + 1 - j), level(n - j));
        for (o, ((a, b), c)) in out.iter_mut().zip(up.iter().zip(mid).zip(low)) {
            *o += bj * (a - 2.0 * b + c);
        }
    }
    for o in &mut out {
        *o *= w.alpha0;
    }
    Ok(out)
}
