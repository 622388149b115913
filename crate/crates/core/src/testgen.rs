//! Seeded generators for the two experimental matrix families: conditioned
//! SPD matrices with a prescribed geometric spectrum and random Householder
//! eigenvectors, and uniform random patterns.
//!
//! All randomness comes from SplitMix64. A uniform draw on `(-1, 1)` takes the
//! top 53 bits `u` of a 64-bit output and returns `(2u + 1 - 2^53) / 2^53`,
//! which is exact and never reaches either endpoint.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{gram, Matrix, SpdMatrix};

const TWO_POW_53: f64 = 9_007_199_254_740_992.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    /// Derives an independent child seed by running `seed + index` through
    /// the SplitMix64 finalizer.
    pub fn derive(self, index: u64) -> Seed {
        let mut z = self
            .0
            .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        Seed(z ^ (z >> 31))
    }

    pub fn stream(self) -> UniformStream {
        UniformStream::new(self)
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

/// Deterministic stream of uniform reals strictly inside `(-1, 1)`.
#[derive(Debug, Clone)]
pub struct UniformStream {
    rng: SplitMix64,
}

impl UniformStream {
    pub fn new(seed: Seed) -> Self {
        Self {
            rng: SplitMix64::seed_from_u64(seed.0),
        }
    }

    pub fn next_open(&mut self) -> f64 {
        map_open(self.rng.next_u64() >> 11)
    }
}

// |2u + 1 - 2^53| < 2^53, so the numerator is exact in f64.
fn map_open(u: u64) -> f64 {
    let k = 2 * u as i64 + 1 - (1i64 << 53);
    k as f64 / TWO_POW_53
}

/// Draws `count` values from the stream.
pub fn uniform_open(stream: &mut UniformStream, count: usize) -> Vec<f64> {
    (0..count).map(|_| stream.next_open()).collect()
}

/// `H = I - 2 h h' / (h' h)`.
pub fn householder(h: &[f64]) -> Result<Matrix> {
    let norm2: f64 = h.iter().map(|v| v * v).sum();
    if h.is_empty() || !(norm2 > 0.0) || !norm2.is_finite() {
        return Err(Error::InvalidArgument(
            "Householder vector must be nonzero and finite".into(),
        ));
    }
    let scale = 2.0 / norm2;
    Matrix::from_fn(h.len(), h.len(), |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        delta - scale * (h[i] * h[j])
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoreToraldoSpec {
    n: usize,
    kappa: f64,
}

impl MoreToraldoSpec {
    pub fn new(n: usize, kappa: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("n must be >= 2, got {n}")));
        }
        if !(kappa >= 1.0) || !kappa.is_finite() {
            return Err(Error::InvalidArgument(format!("kappa must be >= 1, got {kappa}")));
        }
        Ok(Self { n, kappa })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// `kappa^((i-1)/(n-1))` for `i = 1..=n`, ascending from 1 to `kappa`.
    pub fn spectrum(&self) -> Vec<f64> {
        let last = (self.n - 1) as f64;
        (0..self.n)
            .map(|i| self.kappa.powf(i as f64 / last))
            .collect()
    }
}

/// Returns `(X, Z)` with `X = D^{1/2} H` and `Z = X'X = H D H`, so that `Z` has
/// exactly the spectrum of `spec`.
pub fn more_toraldo(spec: &MoreToraldoSpec, seed: Seed) -> Result<(Matrix, SpdMatrix)> {
    let mut stream = seed.stream();
    let h = loop {
        let h = uniform_open(&mut stream, spec.n);
        if h.iter().any(|v| *v != 0.0) {
            break h;
        }
    };
    let reflector = householder(&h)?;
    let sqrt_d: Vec<f64> = spec.spectrum().into_iter().map(f64::sqrt).collect();
    let x = Matrix::from_fn(spec.n, spec.n, |i, j| sqrt_d[i] * reflector.get(i, j))?;
    let z = gram(&x);
    Ok((x, z))
}

/// `m x n` pattern of independent uniform `(-1, 1)` entries.
pub fn uniform_pattern(m: usize, n: usize, seed: Seed) -> Result<Matrix> {
    if n == 0 || m < n {
        return Err(Error::InvalidArgument(format!(
            "pattern needs m >= n >= 1, got m = {m}, n = {n}"
        )));
    }
    let mut stream = seed.stream();
    Matrix::new(m, n, uniform_open(&mut stream, m * n))
}
