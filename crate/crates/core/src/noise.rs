//! Reproducible uniform measurement noise.

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::gl::WeightSequence;
use crate::grid::{SamplingGrid, Signal};

/// Generator behind every noise record, named in experiment output.
pub const RNG_ALGORITHM: &str = "ChaCha20Rng(seed_from_u64)";

/// Orders tabulated in the noise attenuation study, derivatives first.
pub const ATTENUATION_ORDERS: [f64; 10] = [1.5, 1.2, 0.9, 0.6, 0.3, -0.3, -0.6, -0.9, -1.2, -1.5];

/// Samples drawn independently from `U[-amplitude, +amplitude]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    amplitude: f64,
    seed: u64,
}

impl NoiseSpec {
    pub fn new(amplitude: f64, seed: u64) -> Result<Self> {
        if !(amplitude >= 0.0) || !amplitude.is_finite() {
            return Err(Error::InvalidSignal(format!(
                "noise amplitude must be non-negative, got {amplitude}"
            )));
        }
        Ok(Self { amplitude, seed })
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

pub fn uniform_noise(spec: NoiseSpec, grid: SamplingGrid) -> Signal {
    let n = grid.sample_count();
    if spec.amplitude == 0.0 {
        return Signal::zeros(grid);
    }
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
    let dist = Uniform::new_inclusive(-spec.amplitude, spec.amplitude);
    let values = (0..n).map(|_| dist.sample(&mut rng)).collect();
    Signal::new(grid, values).expect("uniform samples are finite")
}

/// Elementwise `x + e`.
pub fn corrupt(x: &Signal, e: &Signal) -> Result<Signal> {
    if x.grid() != e.grid() {
        return Err(Error::GridMismatch);
    }
    let values = x.values().iter().zip(e.values()).map(|(a, b)| a + b).collect();
    Signal::new(*x.grid(), values)
}

/// `table[i][j]` is the order-`orders[j]` differintegral at the end of the
/// noise record drawn with `seeds[i]`.
pub fn attenuation_table(
    amplitude: f64,
    seeds: &[u64],
    orders: &[f64],
    grid: SamplingGrid,
) -> Result<Vec<Vec<f64>>> {
    let weights: Vec<WeightSequence> = orders
        .iter()
        .map(|&order| WeightSequence::new(order, grid.sample_count()))
        .collect();
    seeds
        .iter()
        .map(|&seed| {
            let e = uniform_noise(NoiseSpec::new(amplitude, seed)?, grid);
            Ok(weights.iter().map(|w| w.differintegrate_at_end(&e)).collect())
        })
        .collect()
}
