//! Coefficient identification for known fractional powers.
//!
//! Dividing the transfer function through by `s^n` (with `n` the integer
//! just above `α`) and integrating twice more gives three equations whose
//! differintegration orders are all negative:
//!
//! ```text
//! D^{-n-i} u = (a1 D^{α-n-i} + a2 D^{β-n-i} + a3 D^{-n-i}) c̄,   i = 0, 1, 2
//! ```
//!
//! Integration attenuates the measurement noise in `c̄` where differentiation
//! would amplify it.

use crate::error::{Error, Result};
use crate::gl::WeightSequence;
use crate::grid::Signal;
use crate::sim::{unit_step, FractionalModel};

/// Pivots below this fraction of the largest row magnitude mean rank < 3.
pub const PIVOT_TOLERANCE: f64 = 1e-12;

/// Three equations in `(a1, a2, a3)`, all terms evaluated at the record's end.
#[derive(Debug, Clone, PartialEq)]
pub struct EquationSystem {
    pub alpha: f64,
    pub beta: f64,
    pub shift: u32,
    pub matrix: [[f64; 3]; 3],
    pub rhs: [f64; 3],
}

impl EquationSystem {
    /// Differintegration orders of row `i`: `[α-n-i, β-n-i, -n-i]`.
    pub fn row_orders(&self, i: usize) -> [f64; 3] {
        row_orders(self.alpha, self.beta, self.shift, i)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentificationResult {
    pub model: FractionalModel,
    /// Largest relative mismatch `|A x - b|_i / |b_i|` of the solution.
    pub residual: f64,
}

/// The integer `n` with `n - 1 < α < n`. Integer `α` maps to `α + 1` so the
/// leading order `α - n` is `-1` rather than a raw read of the record.
pub fn integral_order_shift(alpha: f64) -> Result<u32> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::NonPositiveOrder(alpha));
    }
    let n = if alpha.fract() == 0.0 {
        alpha + 1.0
    } else {
        alpha.ceil()
    };
    Ok(n as u32)
}

fn row_orders(alpha: f64, beta: f64, shift: u32, i: usize) -> [f64; 3] {
    let k = shift as f64 + i as f64;
    [alpha - k, beta - k, -k]
}

fn check_powers(alpha: f64, beta: f64) -> Result<()> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::NonPositiveOrder(beta));
    }
    if !(alpha > beta) || !alpha.is_finite() {
        return Err(Error::InvalidModel(format!(
            "alpha = {alpha} must exceed beta = {beta}"
        )));
    }
    Ok(())
}

/// Right-hand sides `D^{-n-i} u` of the unit step at the record's end.
pub fn step_rhs(record: &Signal, shift: u32) -> [f64; 3] {
    let step = unit_step(*record.grid());
    let n = record.len();
    let mut rhs = [0.0; 3];
    for (i, slot) in rhs.iter_mut().enumerate() {
        let order = -(shift as f64 + i as f64);
        *slot = WeightSequence::new(order, n).differintegrate_at_end(&step);
    }
    rhs
}

/// Assembles the three equations from a (possibly corrupted) unit-step record.
pub fn build_equations(record: &Signal, alpha: f64, beta: f64) -> Result<EquationSystem> {
    check_powers(alpha, beta)?;
    let shift = integral_order_shift(alpha)?;
    let rhs = step_rhs(record, shift);
    build_equations_with_rhs(record, alpha, beta, shift, rhs)
}

pub(crate) fn build_equations_with_rhs(
    record: &Signal,
    alpha: f64,
    beta: f64,
    shift: u32,
    rhs: [f64; 3],
) -> Result<EquationSystem> {
    let n = record.len();
    let mut matrix = [[0.0; 3]; 3];
    for (i, row) in matrix.iter_mut().enumerate() {
        for (slot, order) in row.iter_mut().zip(row_orders(alpha, beta, shift, i)) {
            *slot = WeightSequence::new(order, n).differintegrate_at_end(record);
        }
    }
    Ok(EquationSystem {
        alpha,
        beta,
        shift,
        matrix,
        rhs,
    })
}

/// Solves a 3×3 system by Gaussian elimination with partial pivoting.
pub fn solve_3x3(matrix: &[[f64; 3]; 3], rhs: &[f64; 3]) -> Result<[f64; 3]> {
    let scale = matrix
        .iter()
        .map(|row| row.iter().map(|v| v.abs()).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    let threshold = PIVOT_TOLERANCE * scale;
    let mut a = *matrix;
    let mut b = *rhs;
    for col in 0..3 {
        let pivot_row = (col..3)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        let pivot = a[pivot_row][col];
        if !(pivot.abs() > threshold) {
            return Err(Error::SingularSystem {
                pivot: pivot.abs(),
                threshold,
            });
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in col + 1..3 {
            let factor = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = (row + 1..3).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Ok(x)
}

fn relative_residual(matrix: &[[f64; 3]; 3], rhs: &[f64; 3], x: &[f64; 3]) -> f64 {
    matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let ax: f64 = row.iter().zip(x).map(|(a, x)| a * x).sum();
            let denom = if *b == 0.0 { 1.0 } else { b.abs() };
            (ax - b).abs() / denom
        })
        .fold(0.0, f64::max)
}

/// Solves for `(a1, a2, a3)`; the powers are carried over from the system.
pub fn solve_coefficients(system: &EquationSystem) -> Result<IdentificationResult> {
    let x = solve_3x3(&system.matrix, &system.rhs)?;
    let model = FractionalModel::new(x[0], x[1], x[2], system.alpha, system.beta)?;
    Ok(IdentificationResult {
        model,
        residual: relative_residual(&system.matrix, &system.rhs, &x),
    })
}

/// Builds and solves the equations for fixed `(α, β)`.
pub fn identify_fixed_powers(record: &Signal, alpha: f64, beta: f64) -> Result<IdentificationResult> {
    solve_coefficients(&build_equations(record, alpha, beta)?)
}
