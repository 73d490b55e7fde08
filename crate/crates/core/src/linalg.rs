//! Tridiagonal systems and the Thomas algorithm.

use crate::error::{Error, Result};

/// Relative pivot threshold of the Thomas sweep.
pub const PIVOT_TOLERANCE: f64 = 1e-14;

/// Row `i` reads `sub[i-1] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>, rhs: Vec<f64>) -> Result<Self> {
        let sys = Self { sub, diag, sup, rhs };
        sys.check_shape()?;
        Ok(sys)
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.diag.len();
        if n == 0 {
            return Err(Error::LengthMismatch { expected: 1, found: 0 });
        }
        for v in [&self.sub, &self.sup] {
            if v.len() != n - 1 {
                return Err(Error::LengthMismatch { expected: n - 1, found: v.len() });
            }
        }
        if self.rhs.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: self.rhs.len() });
        }
        Ok(())
    }

    /// `T x`
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.sub[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.sup[i] * x[i + 1];
                }
                y
            })
            .collect()
    }

    /// `‖T x - rhs‖∞`
    pub fn residual_inf(&self, x: &[f64]) -> f64 {
        self.apply(x)
            .iter()
            .zip(&self.rhs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Solves `T x = rhs` by forward elimination and back substitution.
///
/// Fails when an eliminated pivot falls to `PIVOT_TOLERANCE` times the
/// magnitude of its row or below.
pub fn thomas_solve(sys: &TridiagonalSystem) -> Result<Vec<f64>> {
    sys.check_shape()?;
    let n = sys.len();
    let mut c_prime = vec![0.0; n];
    let mut d_prime = vec![0.0; n];

    for i in 0..n {
        let lower = if i > 0 { sys.sub[i - 1] } else { 0.0 };
        let upper = if i + 1 < n { sys.sup[i] } else { 0.0 };
        let scale = lower.abs().max(sys.diag[i].abs()).max(upper.abs());
        let (pivot, rhs) = if i == 0 {
            (sys.diag[0], sys.rhs[0])
        } else {
            (sys.diag[i] - lower * c_prime[i - 1], sys.rhs[i] - lower * d_prime[i - 1])
        };
        if !pivot.is_finite() || pivot.abs() <= PIVOT_TOLERANCE * scale {
            return Err(Error::SingularPivot { row: i, pivot, scale });
        }
        c_prime[i] = upper / pivot;
        d_prime[i] = rhs / pivot;
    }

    let mut x = d_prime;
    for i in (0..n - 1).rev() {
        x[i] -= c_prime[i] * x[i + 1];
    }
    Ok(x)
}
