//! Time-domain responses of the three-term model `1/(a1 s^α + a2 s^β + a3)`.
//!
//! The simulator discretizes `r = a1 D^α c + a2 D^β c + a3 c` with the same
//! Grünwald–Letnikov sums as the identifier and solves for the newest output
//! sample at each step. The system is linear, so each step is closed form.

use crate::error::{Error, Result};
use crate::gl::{NeumaierSum, WeightSequence};
use crate::grid::{SamplingGrid, Signal};

/// The five parameters of `1/(a1 s^α + a2 s^β + a3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalModel {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl FractionalModel {
    pub fn new(a1: f64, a2: f64, a3: f64, alpha: f64, beta: f64) -> Result<Self> {
        let model = Self {
            a1,
            a2,
            a3,
            alpha,
            beta,
        };
        model.validate()?;
        Ok(model)
    }

    /// The process used throughout the worked example: `1/(0.8 s^2.23 + 0.5 s^0.88 + 1)`.
    pub fn example() -> Self {
        Self {
            a1: 0.8,
            a2: 0.5,
            a3: 1.0,
            alpha: 2.23,
            beta: 0.88,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.a1, self.a2, self.a3, self.alpha, self.beta];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidModel("parameters must be finite".into()));
        }
        if !(self.beta > 0.0) {
            return Err(Error::InvalidModel(format!("beta = {} must be positive", self.beta)));
        }
        if !(self.alpha > self.beta) {
            return Err(Error::InvalidModel(format!(
                "alpha = {} must exceed beta = {}",
                self.alpha, self.beta
            )));
        }
        if self.a1 == 0.0 {
            return Err(Error::InvalidModel("a1 must be nonzero".into()));
        }
        Ok(())
    }

    pub fn coefficients(&self) -> [f64; 3] {
        [self.a1, self.a2, self.a3]
    }

    /// Steady-state response to a unit step.
    pub fn dc_gain(&self) -> f64 {
        1.0 / self.a3
    }
}

/// Unit step active from the first sample.
pub fn unit_step(grid: SamplingGrid) -> Signal {
    Signal::constant(grid, 1.0).expect("constant signal is valid")
}

/// Response of `model` to `input`, starting from rest.
pub fn simulate_response(model: &FractionalModel, input: &Signal) -> Result<Signal> {
    model.validate()?;
    let grid = *input.grid();
    let n = input.len();
    let period = grid.period();
    let alpha_scale = model.a1 * period.powf(-model.alpha);
    let beta_scale = model.a2 * period.powf(-model.beta);
    let denominator = alpha_scale + beta_scale + model.a3;
    if denominator == 0.0 || !denominator.is_finite() {
        return Err(Error::DegenerateDenominator);
    }

    let wa = WeightSequence::new(model.alpha, n);
    let wb = WeightSequence::new(model.beta, n);
    let kernel: Vec<f64> = wa
        .weights()
        .iter()
        .zip(wb.weights())
        .map(|(a, b)| alpha_scale * a + beta_scale * b)
        .collect();

    // history[n - 1 - k] holds c[k], so the samples c[k-1], c[k-2], ..., c[0]
    // form the contiguous tail history[n - k..] in step with kernel[1..=k].
    let mut history = vec![0.0; n];
    let r = input.values();
    for k in 0..n {
        let memory = dot(&kernel[1..=k], &history[n - k..]);
        let c = (r[k] - memory) / denominator;
        if !c.is_finite() {
            return Err(Error::NonFiniteResponse(k));
        }
        history[n - 1 - k] = c;
    }
    history.reverse();
    Signal::new(grid, history)
}

/// Unit-step response of `model` on `grid`.
pub fn step_response(model: &FractionalModel, grid: SamplingGrid) -> Result<Signal> {
    simulate_response(model, &unit_step(grid))
}

/// Applies `a1 D^α + a2 D^β + a3` to `output` at every sample, i.e. recovers
/// the input that would have produced it. Uses compensated sums so it can
/// audit [`simulate_response`].
pub fn apply_operator(model: &FractionalModel, output: &Signal) -> Vec<f64> {
    let n = output.len();
    let period = output.grid().period();
    let alpha_scale = model.a1 * period.powf(-model.alpha);
    let beta_scale = model.a2 * period.powf(-model.beta);
    let wa = WeightSequence::new(model.alpha, n);
    let wb = WeightSequence::new(model.beta, n);
    let c = output.values();
    (0..n)
        .map(|k| {
            let mut acc = NeumaierSum::default();
            for j in 0..=k {
                let w = alpha_scale * wa.weights()[j] + beta_scale * wb.weights()[j];
                acc.add(w * c[k - j]);
            }
            acc.add(model.a3 * c[k]);
            acc.value()
        })
        .collect()
}

/// Four independent accumulators; keeps the loop vectorizable.
fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut lanes = [0.0f64; 4];
    let ca = a.chunks_exact(4);
    let cb = b.chunks_exact(4);
    let tail: f64 = ca
        .remainder()
        .iter()
        .zip(cb.remainder())
        .map(|(x, y)| x * y)
        .sum();
    for (x, y) in ca.zip(cb) {
        lanes[0] += x[0] * y[0];
        lanes[1] += x[1] * y[1];
        lanes[2] += x[2] * y[2];
        lanes[3] += x[3] * y[3];
    }
    (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]) + tail
}
