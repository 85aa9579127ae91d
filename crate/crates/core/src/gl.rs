//! Grünwald–Letnikov weights and memory-limited differintegrals of sampled
//! signals.
//!
//! Every differintegral uses lower terminal 0 with zero pre-history, so the
//! order-`α` value at sample `k` is
//!
//! ```text
//! D^α x(kT) ≈ T^-α · Σ_{j=0}^{min(k, M)} b_j x[k-j]
//! ```
//!
//! with `b_0 = 1`, `b_j = (1 - (1+α)/j) b_{j-1}` and `M` the memory length in
//! samples (the whole record unless a short memory is requested).

use crate::grid::Signal;

/// Grünwald–Letnikov weights `b_0..b_J` for a fixed order.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence {
    order: f64,
    weights: Vec<f64>,
}

impl WeightSequence {
    /// Runs the weight recursion for `count` terms (at least one).
    pub fn new(order: f64, count: usize) -> Self {
        let count = count.max(1);
        let mut weights = Vec::with_capacity(count);
        weights.push(1.0);
        let shift = 1.0 + order;
        for j in 1..count {
            let prev = weights[j - 1];
            weights.push((1.0 - shift / j as f64) * prev);
        }
        Self { order, weights }
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Differintegral of `x` at its final sample. Uses as many weights as are
    /// available, so a sequence shorter than the record acts as a short memory.
    pub fn differintegrate_at_end(&self, x: &Signal) -> f64 {
        let scale = x.grid().period().powf(-self.order);
        scale * gl_sum(&self.weights, x.values())
    }

    /// Differintegral of `x` at every sample.
    pub fn differintegrate_series(&self, x: &Signal) -> Signal {
        let scale = x.grid().period().powf(-self.order);
        let values = x.values();
        let out = (0..values.len())
            .map(|k| scale * gl_sum(&self.weights, &values[..=k]))
            .collect();
        // Finite inputs and finite weights give finite sums.
        Signal::new(*x.grid(), out).expect("differintegral of a finite signal is finite")
    }
}

/// Weights `b_0..b_{count-1}` for `order`.
pub fn gl_weights(order: f64, count: usize) -> WeightSequence {
    WeightSequence::new(order, count)
}

/// `D^order x` evaluated at the last sample with full memory.
pub fn differintegrate_at_end(x: &Signal, order: f64) -> f64 {
    WeightSequence::new(order, x.len()).differintegrate_at_end(x)
}

/// `D^order x` evaluated at every sample with full memory.
pub fn differintegrate_series(x: &Signal, order: f64) -> Signal {
    WeightSequence::new(order, x.len()).differintegrate_series(x)
}

/// `D^order x` at every sample, remembering only the last `memory` seconds of
/// history (the `t - L` lower limit of the short-memory formula).
pub fn differintegrate_series_short_memory(x: &Signal, order: f64, memory: f64) -> Signal {
    let period = x.grid().period();
    let ratio = memory / period;
    let samples = ((ratio + ratio * 1e-12).floor().max(0.0) as usize).saturating_add(1);
    WeightSequence::new(order, samples.min(x.len())).differintegrate_series(x)
}

/// `Σ_j weights[j] · history[k - j]` where `k` is the last index of
/// `history`, with Neumaier-compensated accumulation.
pub(crate) fn gl_sum(weights: &[f64], history: &[f64]) -> f64 {
    let terms = weights.len().min(history.len());
    let newest = history.len();
    let mut acc = NeumaierSum::default();
    for (j, &w) in weights[..terms].iter().enumerate() {
        acc.add(w * history[newest - 1 - j]);
    }
    acc.value()
}

/// Compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub(crate) fn add(&mut self, term: f64) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.compensation += (self.sum - t) + term;
        } else {
            self.compensation += (term - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::default();
        for term in iter {
            acc.add(term);
        }
        acc
    }
}
