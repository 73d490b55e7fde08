//! Cubic trigonometric B-splines on a uniform mesh.
//!
//! `TB_i` is supported on `[x_i, x_{i+4}]` and built from the half-angle
//! sines `p(x_k) = sin((x - x_k)/2)` and `q(x_k) = sin((x_k - x)/2)`,
//! normalised by `w = sin(h/2) sin(h) sin(3h/2)`. Knots outside `[a, b]`
//! are ghost knots obtained by extending the uniform spacing.
//!
//! Spline coefficients are indexed by the *central* knot of their basis
//! function: `c_j` multiplies `TB_{j-2}`, so that at knot `x_j`
//!
//! ```text
//!     u   = a1 c_{j-1} + a2 c_j + a1 c_{j+1}
//!     u'  = -a3 c_{j-1}         + a3 c_{j+1}
//!     u'' = a4 c_{j-1} + a5 c_j + a4 c_{j+1}
//! ```

use std::f64::consts::PI;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Uniform partition of `[a, b]` into `n` subintervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialGrid {
    a: f64,
    b: f64,
    n: usize,
    h: f64,
}

impl SpatialGrid {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a >= b {
            return Err(Error::Domain(format!("need finite a < b, got [{a}, {b}]")));
        }
        if n < 3 {
            return Err(Error::Domain(format!("need at least 3 subintervals, got {n}")));
        }
        let h = (b - a) / n as f64;
        if h >= 2.0 * PI / 3.0 {
            return Err(Error::Domain(format!(
                "mesh width h = {h} must be below 2*pi/3 for the trigonometric basis"
            )));
        }
        Ok(Self { a, b, n, h })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Number of subintervals.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Knot `x_i = a + i h`, for any integer `i` (ghost knots included).
    #[inline]
    pub fn knot(&self, i: i64) -> f64 {
        self.a + i as f64 * self.h
    }

    /// The `n + 1` physical knots `x_0, ..., x_n`.
    pub fn knots(&self) -> Vec<f64> {
        (0..=self.n as i64).map(|i| self.knot(i)).collect()
    }

    /// Index `k` of the interval `[x_k, x_{k+1}]` containing `x`; `x = b` is
    /// mapped to the last interval. Points beyond `[a, b]` land in ghost
    /// intervals.
    pub fn interval_of(&self, x: f64) -> i64 {
        let k = ((x - self.a) / self.h).floor() as i64;
        if k == self.n as i64 && x <= self.b {
            k - 1
        } else {
            k
        }
    }
}

/// Values of a basis function and its first two derivatives at the knots
/// of its support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilCoefficients {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub a5: f64,
}

impl StencilCoefficients {
    /// Knot value of `Σ c_i TB_i` at the `j`-th stencil: `a1 l + a2 c + a1 r`.
    #[inline]
    pub fn value(&self, left: f64, centre: f64, right: f64) -> f64 {
        self.a1 * (left + right) + self.a2 * centre
    }

    #[inline]
    pub fn slope(&self, left: f64, right: f64) -> f64 {
        self.a3 * (right - left)
    }

    #[inline]
    pub fn curvature(&self, left: f64, centre: f64, right: f64) -> f64 {
        self.a4 * (left + right) + self.a5 * centre
    }
}

/// Closed-form knot stencils for mesh width `h`, `0 < h < 2π/3`.
pub fn stencil_coefficients(h: f64) -> Result<StencilCoefficients> {
    if !(h > 0.0 && h < 2.0 * PI / 3.0) {
        return Err(Error::Domain(format!("stencil needs 0 < h < 2*pi/3, got {h}")));
    }
    let s_half = (h / 2.0).sin();
    let a1 = s_half * s_half / (h.sin() * (1.5 * h).sin());
    let a2 = 2.0 / (1.0 + 2.0 * h.cos());
    let a3 = 0.75 / (1.5 * h).sin();
    let a4 = (3.0 + 9.0 * h.cos()) / (4.0 * (h / 2.0).cos() - 4.0 * (2.5 * h).cos());
    let cot_half = 1.0 / (h / 2.0).tan();
    let a5 = -3.0 * cot_half * cot_half / (2.0 + 4.0 * h.cos());
    Ok(StencilCoefficients { a1, a2, a3, a4, a5 })
}

/// One half-angle sine factor `sin(sign * (x - x_{i+offset}) / 2)`.
#[derive(Clone, Copy)]
struct Factor {
    offset: i64,
    sign: f64,
}

const fn p(offset: i64) -> Factor {
    Factor { offset, sign: 1.0 }
}

const fn q(offset: i64) -> Factor {
    Factor { offset, sign: -1.0 }
}

// Each piece is a sum of triple products of half-angle sines.
const PIECE_0: &[[Factor; 3]] = &[[p(0), p(0), p(0)]];
const PIECE_1: &[[Factor; 3]] = &[
    [p(0), p(0), q(2)],
    [p(0), q(3), p(1)],
    [q(4), p(1), p(1)],
];
const PIECE_2: &[[Factor; 3]] = &[
    [q(4), p(1), q(3)],
    [q(4), q(4), p(2)],
    [p(0), q(3), q(3)],
];
const PIECE_3: &[[Factor; 3]] = &[[q(4), q(4), q(4)]];
const PIECES: [&[[Factor; 3]]; 4] = [PIECE_0, PIECE_1, PIECE_2, PIECE_3];

/// Evaluates piece `piece ∈ 0..4` of `TB_i` (or its derivative of `order`)
/// at `x`, regardless of whether `x` lies in that piece's interval.
///
/// Used for one-sided limits at junction knots.
pub fn eval_basis_piece(i: i64, piece: usize, x: f64, grid: &SpatialGrid, order: u8) -> f64 {
    assert!(piece < 4, "piece index {piece} out of range");
    assert!(order <= 2, "derivative order {order} not supported");
    let h = grid.h();
    let w = (h / 2.0).sin() * h.sin() * (1.5 * h).sin();
    let mut acc = 0.0;
    for triple in PIECES[piece] {
        let mut f = [0.0; 3];
        let mut d = [0.0; 3];
        for (m, fac) in triple.iter().enumerate() {
            let arg = fac.sign * (x - grid.knot(i + fac.offset)) / 2.0;
            f[m] = arg.sin();
            d[m] = 0.5 * fac.sign * arg.cos();
        }
        acc += match order {
            0 => f[0] * f[1] * f[2],
            1 => d[0] * f[1] * f[2] + f[0] * d[1] * f[2] + f[0] * f[1] * d[2],
            _ => {
                // f'' = -f/4 for every factor
                -0.75 * f[0] * f[1] * f[2]
                    + 2.0 * (d[0] * d[1] * f[2] + d[0] * f[1] * d[2] + f[0] * d[1] * d[2])
            }
        };
    }
    acc / w
}

fn eval_basis_order(i: i64, x: f64, grid: &SpatialGrid, order: u8) -> f64 {
    if x < grid.knot(i) || x > grid.knot(i + 4) {
        return 0.0;
    }
    let piece = grid.interval_of(x) - i;
    if !(0..4).contains(&piece) {
        return 0.0;
    }
    eval_basis_piece(i, piece as usize, x, grid, order)
}

/// `TB_i(x)`, supported on `[x_i, x_{i+4}]`.
pub fn eval_basis(i: i64, x: f64, grid: &SpatialGrid) -> f64 {
    eval_basis_order(i, x, grid, 0)
}

/// First or second derivative of `TB_i` at `x`.
pub fn eval_basis_derivative(i: i64, x: f64, grid: &SpatialGrid, order: u8) -> Result<f64> {
    match order {
        1 | 2 => Ok(eval_basis_order(i, x, grid, order)),
        _ => Err(Error::Domain(format!("derivative order must be 1 or 2, got {order}"))),
    }
}

/// Spline coefficients `c_{-1}, ..., c_{N+1}` at one time level.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    values: Vec<f64>,
}

impl CoefficientVector {
    pub fn zeros(n: usize) -> Self {
        Self { values: vec![0.0; n + 3] }
    }

    /// Wraps `N + 3` raw values ordered `c_{-1}, ..., c_{N+1}`.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if values.len() < 6 {
            return Err(Error::LengthMismatch { expected: 6, found: values.len() });
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("coefficient at position {bad} is not finite")));
        }
        Ok(Self { values })
    }

    /// Number of subintervals `N` this vector belongs to.
    pub fn n(&self) -> usize {
        self.values.len() - 3
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn get(&self, i: i64) -> Option<f64> {
        usize::try_from(i + 1).ok().and_then(|k| self.values.get(k).copied())
    }

    /// Knot values `u_j = a1 c_{j-1} + a2 c_j + a1 c_{j+1}`, `j = 0..=N`.
    pub fn knot_values(&self, stencil: &StencilCoefficients) -> Vec<f64> {
        self.values.windows(3).map(|w| stencil.value(w[0], w[1], w[2])).collect()
    }

    /// Second-derivative knot values `a4 c_{j-1} + a5 c_j + a4 c_{j+1}`.
    pub fn knot_curvatures(&self, stencil: &StencilCoefficients) -> Vec<f64> {
        self.values.windows(3).map(|w| stencil.curvature(w[0], w[1], w[2])).collect()
    }

    /// `self + scale * other`
    pub fn axpy(&self, scale: f64, other: &CoefficientVector) -> Result<CoefficientVector> {
        if self.values.len() != other.values.len() {
            return Err(Error::LengthMismatch {
                expected: self.values.len(),
                found: other.values.len(),
            });
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + scale * b).collect();
        Ok(CoefficientVector { values })
    }
}

impl Index<i64> for CoefficientVector {
    type Output = f64;

    fn index(&self, i: i64) -> &f64 {
        &self.values[(i + 1) as usize]
    }
}

impl IndexMut<i64> for CoefficientVector {
    fn index_mut(&mut self, i: i64) -> &mut f64 {
        &mut self.values[(i + 1) as usize]
    }
}

/// `Σ_j c_j TB_{j-2}(x)` or its `order`-th derivative (`order ≤ 2`).
pub fn eval_spline(c: &CoefficientVector, x: f64, grid: &SpatialGrid, order: u8) -> Result<f64> {
    if c.n() != grid.n() {
        return Err(Error::LengthMismatch { expected: grid.n() + 3, found: c.as_slice().len() });
    }
    if order > 2 {
        return Err(Error::Domain(format!("derivative order must be 0, 1 or 2, got {order}")));
    }
    let k = grid.interval_of(x);
    let n = grid.n() as i64;
    let mut acc = 0.0;
    for j in (k - 1)..=(k + 2) {
        if !(-1..=n + 1).contains(&j) {
            continue;
        }
        acc += c[j] * eval_basis_order(j - 2, x, grid, order);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn stencil_at_pi_over_three() {
        let s = stencil_coefficients(PI / 3.0).unwrap();
        // half-angle route: sin(π/6) = 1/2, sin(π/3) = √3/2, sin(π/2) = 1
        let sqrt3 = 3f64.sqrt();
        assert!(rel(s.a1, 0.25 / (sqrt3 / 2.0)) < 1e-14);
        assert!(rel(s.a1, 1.0 / (2.0 * sqrt3)) < 1e-14);
        assert!(rel(s.a2, 1.0) < 1e-14);
        assert!(rel(s.a3, 0.75) < 1e-14);
        assert!(rel(s.a4, 7.5 / (4.0 * sqrt3)) < 1e-14);
        assert!(rel(s.a5, -2.25) < 1e-14);
    }

    #[test]
    fn stencil_small_h_limits() {
        let h = 1e-3;
        let s = stencil_coefficients(h).unwrap();
        assert!(rel(s.a1, 1.0 / 6.0) < 1e-5);
        assert!(rel(s.a2, 2.0 / 3.0) < 1e-5);
        assert!(rel(s.a3 * h, 0.5) < 1e-5);
        assert!(rel(s.a4 * h * h, 1.0) < 1e-4);
        assert!(rel(s.a5 * h * h, -2.0) < 1e-4);
    }

    #[test]
    fn stencil_signs_and_domain() {
        for &h in &[1e-3, 0.1, 0.5, 1.0, 2.0] {
            let s = stencil_coefficients(h).unwrap();
            assert!(s.a1 > 0.0 && s.a2 > 0.0 && s.a3 > 0.0 && s.a5 < 0.0, "h = {h}");
        }
        assert!(stencil_coefficients(0.0).is_err());
        assert!(stencil_coefficients(-0.1).is_err());
        assert!(stencil_coefficients(2.0 * PI / 3.0).is_err());
    }

    #[test]
    fn grid_rejects_bad_input() {
        assert!(SpatialGrid::new(1.0, 0.0, 10).is_err());
        assert!(SpatialGrid::new(0.0, 1.0, 2).is_err());
        assert!(SpatialGrid::new(0.0, 10.0, 3).is_err());
        let g = SpatialGrid::new(0.0, 1.0, 10).unwrap();
        assert_eq!(g.interval_of(1.0), 9);
        assert_eq!(g.interval_of(0.0), 0);
        assert_eq!(g.interval_of(-0.05), -1);
        assert_eq!(g.knots().len(), 11);
    }

    #[test]
    fn basis_knot_values_match_stencil() {
        let g = SpatialGrid::new(0.0, 1.0, 10).unwrap();
        let s = stencil_coefficients(g.h()).unwrap();
        for i in -3..=10 {
            assert_eq!(eval_basis(i, g.knot(i), &g), 0.0);
            assert_eq!(eval_basis(i, g.knot(i + 4), &g), 0.0);
            assert!((eval_basis(i, g.knot(i + 1), &g) - s.a1).abs() < 1e-12);
            assert!((eval_basis(i, g.knot(i + 2), &g) - s.a2).abs() < 1e-12);
            assert!((eval_basis(i, g.knot(i + 3), &g) - s.a1).abs() < 1e-12);
        }
    }

    #[test]
    fn basis_derivatives_at_knots() {
        let g = SpatialGrid::new(0.0, 1.0, 10).unwrap();
        let s = stencil_coefficients(g.h()).unwrap();
        let i = 3;
        let d1 = |x| eval_basis_derivative(i, x, &g, 1).unwrap();
        let d2 = |x| eval_basis_derivative(i, x, &g, 2).unwrap();
        assert!(d1(g.knot(i + 2)).abs() < 1e-12);
        // rising flank left of the centre, falling flank right of it
        assert!((d1(g.knot(i + 1)) - s.a3).abs() < 1e-11);
        assert!((d1(g.knot(i + 3)) + s.a3).abs() < 1e-11);
        assert!((d2(g.knot(i + 2)) - s.a5).abs() < 1e-10);
        assert!((d2(g.knot(i + 1)) - s.a4).abs() < 1e-10);
        assert!((d2(g.knot(i + 3)) - s.a4).abs() < 1e-10);
        assert!(eval_basis_derivative(i, 0.3, &g, 3).is_err());
    }

    #[test]
    fn derivatives_match_central_differences() {
        let g = SpatialGrid::new(0.0, 1.0, 10).unwrap();
        let step = 1e-6;
        let i = 2;
        for m in 1..200 {
            // off the knots, where the third derivative jumps
            let x = g.knot(i) + 4.0 * g.h() * (m as f64 + 0.37) / 200.0;
            let fd1 = (eval_basis(i, x + step, &g) - eval_basis(i, x - step, &g)) / (2.0 * step);
            let d1 = eval_basis_derivative(i, x, &g, 1).unwrap();
            assert!((fd1 - d1).abs() <= 1e-6 * (1.0 + d1.abs()), "x = {x}: {fd1} vs {d1}");
            let fd2 = (eval_basis_derivative(i, x + step, &g, 1).unwrap()
                - eval_basis_derivative(i, x - step, &g, 1).unwrap())
                / (2.0 * step);
            let d2 = eval_basis_derivative(i, x, &g, 2).unwrap();
            assert!((fd2 - d2).abs() <= 1e-6 * (1.0 + d2.abs()), "x = {x}: {fd2} vs {d2}");
        }
    }

    #[test]
    fn basis_is_nonnegative_and_compact() {
        let g = SpatialGrid::new(0.0, 1.0, 10).unwrap();
        let i = 4;
        for m in 0..=200 {
            // off the knots, where the third derivative jumps
            let x = g.knot(i) + 4.0 * g.h() * (m as f64 + 0.37) / 200.0;
            assert!(eval_basis(i, x, &g) >= 0.0);
        }
        assert_eq!(eval_basis(i, g.knot(i) - 1e-9, &g), 0.0);
        assert_eq!(eval_basis(i, g.knot(i + 4) + 1e-9, &g), 0.0);
        assert_eq!(eval_basis(i, 0.95, &g), 0.0);
    }

    #[test]
    fn junction_continuity() {
        let g = SpatialGrid::new(0.0, 1.0, 10).unwrap();
        let i = 1;
        for junction in 1..4 {
            let x = g.knot(i + junction as i64);
            for order in 0..=2 {
                let left = eval_basis_piece(i, junction - 1, x, &g, order);
                let right = eval_basis_piece(i, junction, x, &g, order);
                assert!((left - right).abs() < 1e-10, "junction {junction} order {order}");
            }
        }
    }

    #[test]
    fn spline_knot_stencils() {
        let g = SpatialGrid::new(0.0, 1.0, 8).unwrap();
        let s = stencil_coefficients(g.h()).unwrap();
        let values: Vec<f64> = (0..11).map(|k| ((k * 7 + 3) % 5) as f64 - 1.5).collect();
        let c = CoefficientVector::from_values(values).unwrap();
        for j in 0..=8i64 {
            let x = g.knot(j);
            let u = eval_spline(&c, x, &g, 0).unwrap();
            let ux = eval_spline(&c, x, &g, 1).unwrap();
            let uxx = eval_spline(&c, x, &g, 2).unwrap();
            assert!((u - s.value(c[j - 1], c[j], c[j + 1])).abs() < 1e-12);
            assert!((ux - s.slope(c[j - 1], c[j + 1])).abs() < 1e-10);
            assert!((uxx - s.curvature(c[j - 1], c[j], c[j + 1])).abs() < 1e-8);
        }
        let kv = c.knot_values(&s);
        assert_eq!(kv.len(), 9);
        assert!((kv[4] - eval_spline(&c, g.knot(4), &g, 0).unwrap()).abs() < 1e-12);

        let zero = CoefficientVector::zeros(8);
        assert_eq!(eval_spline(&zero, 0.37, &g, 2).unwrap(), 0.0);
        assert!(eval_spline(&CoefficientVector::zeros(7), 0.3, &g, 0).is_err());
    }

    #[test]
    fn coefficient_indexing() {
        let mut c = CoefficientVector::zeros(4);
        c[-1] = 1.0;
        c[5] = 2.0;
        assert_eq!(c.as_slice()[0], 1.0);
        assert_eq!(c.get(5), Some(2.0));
        assert_eq!(c.get(6), None);
        assert_eq!(c.get(-2), None);
        assert!(CoefficientVector::from_values(vec![0.0, f64::NAN, 0.0, 0.0, 0.0, 0.0]).is_err());
    }
}
