//! Uniform sampling grids and the signals that live on them.

use crate::error::{Error, Result};

/// Uniform discretization shared by every operation: sampling period `T`,
/// memory length `L`, and the derived sample count `floor(L/T) + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingGrid {
    period: f64,
    memory: f64,
    sample_count: usize,
}

impl SamplingGrid {
    pub fn new(period: f64, memory: f64) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::InvalidGrid(format!("period T must be positive, got {period}")));
        }
        if !(memory.is_finite() && memory > 0.0) {
            return Err(Error::InvalidGrid(format!("memory L must be positive, got {memory}")));
        }
        if memory < period {
            return Err(Error::InvalidGrid(format!(
                "memory L = {memory} is shorter than period T = {period}"
            )));
        }
        // L/T is routinely something like 9999.999999999998 in binary.
        let ratio = memory / period;
        let steps = (ratio + ratio * 1e-12).floor();
        if steps > (usize::MAX / 2) as f64 {
            return Err(Error::InvalidGrid(format!("L/T = {ratio} is too large")));
        }
        let sample_count = steps as usize + 1;
        Ok(Self {
            period,
            memory,
            sample_count,
        })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn memory(&self) -> f64 {
        self.memory
    }

    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    /// Time of sample `k`.
    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.period
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.sample_count).map(move |k| self.time(k))
    }
}

/// Samples `x(k T)` for `k = 0..sample_count` on a [`SamplingGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    grid: SamplingGrid,
    values: Vec<f64>,
}

impl Signal {
    pub fn new(grid: SamplingGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.sample_count() {
            return Err(Error::InvalidSignal(format!(
                "expected {} samples, got {}",
                grid.sample_count(),
                values.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSignal(format!("sample {k} is not finite")));
        }
        Ok(Self { grid, values })
    }

    /// Samples `f(t)` at every grid time.
    pub fn from_fn(grid: SamplingGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid, grid.times().map(f).collect())
    }

    pub fn constant(grid: SamplingGrid, value: f64) -> Result<Self> {
        Self::new(grid, vec![value; grid.sample_count()])
    }

    pub fn zeros(grid: SamplingGrid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.sample_count()],
        }
    }

    pub fn grid(&self) -> &SamplingGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn last(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Elementwise `self * scale`.
    pub fn scaled(&self, scale: f64) -> Result<Self> {
        Self::new(self.grid, self.values.iter().map(|v| v * scale).collect())
    }
}
