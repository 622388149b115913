//! Linear-transform-invariant matching of an input pattern `X` (m x n) against
//! a model `M`: `T = (X'X)^{-1} X'M` computed with the recurrent inverter,
//! and the residual distance `||XT - M||_F`.
//!
//! The time model counts sequentially dependent network operations: two per
//! inversion update plus a fixed pipeline of seven (`X'X` together with `X'M`,
//! the scale factor, the rescale, the two products giving `T`, `XT`, and the
//! distance).

use crate::error::{Error, Result};
use crate::inverter::{invert, InversionConfig, InversionReport};
use crate::linalg::{gram, Matrix};
use crate::scaling::{rescale, scale_factor, ScaleFactorKind};

pub const OPS_PER_ITERATION: u64 = 2;
pub const PIPELINE_OPS: u64 = 7;
pub const DEFAULT_MS_PER_OP: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineConfig {
    pub scale_kind: ScaleFactorKind,
    pub inversion: InversionConfig,
    ms_per_op: f64,
}

impl PipelineConfig {
    pub fn new(scale_kind: ScaleFactorKind, inversion: InversionConfig, ms_per_op: f64) -> Result<Self> {
        if !(ms_per_op > 0.0) || !ms_per_op.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "ms_per_op must be positive, got {ms_per_op}"
            )));
        }
        Ok(Self {
            scale_kind,
            inversion,
            ms_per_op,
        })
    }

    pub fn with_kind(scale_kind: ScaleFactorKind) -> Self {
        Self {
            scale_kind,
            ..Self::default()
        }
    }

    pub fn ms_per_op(&self) -> f64 {
        self.ms_per_op
    }
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            scale_kind: ScaleFactorKind::GershgorinDiag,
            inversion: InversionConfig::default(),
            ms_per_op: DEFAULT_MS_PER_OP,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MatchResult {
    /// The n x n transform `T`.
    pub transform: Matrix,
    /// `||XT - M||_F`.
    pub distance: f64,
    /// Scale factor used to form `A = alpha X'X`.
    pub alpha: f64,
    pub inversion: InversionReport,
    pub op_count: u64,
    pub est_time_ms: f64,
}

/// Sequentially dependent operations for a solve whose inversion took
/// `iterations` updates.
pub fn op_count(iterations: usize) -> u64 {
    OPS_PER_ITERATION * iterations as u64 + PIPELINE_OPS
}

pub fn estimate_time_ms(ops: u64, ms_per_op: f64) -> f64 {
    ops as f64 * ms_per_op
}

/// Least-squares transform `T` minimizing `||XT - M||_F`.
///
/// Fails with [`Error::SingularSystem`] when `X'X` is rejected by the scale
/// factor or the inversion does not converge.
pub fn solve_transform(x: &Matrix, m: &Matrix, cfg: &PipelineConfig) -> Result<MatchResult> {
    if x.rows() != m.rows() {
        return Err(Error::DimensionMismatch {
            op: "solve_transform",
            left_rows: x.rows(),
            left_cols: x.cols(),
            right_rows: m.rows(),
            right_cols: m.cols(),
        });
    }
    if x.rows() < x.cols() {
        return Err(Error::InvalidArgument(format!(
            "pattern needs at least as many points as dimensions, got {}x{}",
            x.rows(),
            x.cols()
        )));
    }

    let z = gram(x);
    let xtm = x.transpose_multiply(m)?;
    let alpha = scale_factor(cfg.scale_kind, &z).map_err(|e| match e {
        Error::NotPositiveDefinite(msg) => Error::SingularSystem(msg),
        other => other,
    })?;
    let a = rescale(&z, alpha)?;
    let report = match invert(&a, &cfg.inversion) {
        Ok(r) if r.converged => r,
        Ok(r) => {
            return Err(Error::SingularSystem(format!(
                "inversion stopped after {} iterations with residual {:e}",
                r.iterations, r.final_residual
            )))
        }
        Err(Error::NonFinite { iteration }) => {
            return Err(Error::SingularSystem(format!(
                "inversion diverged at iteration {iteration}"
            )))
        }
        Err(e) => return Err(e),
    };

    let transform = report.inverse.scaled(alpha).multiply(&xtm)?;
    let distance = x.multiply(&transform)?.frobenius_distance(m)?;
    let ops = op_count(report.iterations);
    Ok(MatchResult {
        transform,
        distance,
        alpha,
        inversion: report,
        op_count: ops,
        est_time_ms: estimate_time_ms(ops, cfg.ms_per_op),
    })
}
