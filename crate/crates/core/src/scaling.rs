//! Scale factors that place the spectrum of `alpha * Z` inside `(0, 2)`.
//!
//! * [`ScaleFactorKind::Optimal`]: `2 / (lambda_min + lambda_max)`, needs the extreme eigenvalues.
//! * [`ScaleFactorKind::Trace`]: `2 / trace(Z)`, exact optimum for `n = 2`.
//! * [`ScaleFactorKind::GershgorinDiag`]: `2 / (min_i z_ii + ||Z||_inf)`, never above the optimum.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{EigenDecomposition, SpdMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ScaleFactorKind {
    #[serde(rename = "alpha0")]
    Optimal,
    #[serde(rename = "alpha1")]
    Trace,
    #[serde(rename = "alpha2")]
    GershgorinDiag,
}

impl ScaleFactorKind {
    pub const ALL: [ScaleFactorKind; 3] = [
        ScaleFactorKind::Optimal,
        ScaleFactorKind::Trace,
        ScaleFactorKind::GershgorinDiag,
    ];

    pub fn token(self) -> &'static str {
        match self {
            ScaleFactorKind::Optimal => "alpha0",
            ScaleFactorKind::Trace => "alpha1",
            ScaleFactorKind::GershgorinDiag => "alpha2",
        }
    }
}

impl fmt::Display for ScaleFactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for ScaleFactorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha0" => Ok(ScaleFactorKind::Optimal),
            "alpha1" => Ok(ScaleFactorKind::Trace),
            "alpha2" => Ok(ScaleFactorKind::GershgorinDiag),
            other => Err(Error::InvalidArgument(format!(
                "unknown scale factor {other:?}, expected alpha0, alpha1 or alpha2"
            ))),
        }
    }
}

/// A scale factor together with the rescaled eigenvalue farthest from 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleDiagnostics {
    pub alpha: f64,
    pub kind: ScaleFactorKind,
    /// Eigenvalue of `alpha * Z` most different from 1; the smaller one on a tie.
    pub omega: f64,
    /// `|1 - omega|`, the spectral norm of `I - alpha * Z`.
    pub contraction: f64,
}

impl ScaleDiagnostics {
    fn from_spectrum(kind: ScaleFactorKind, alpha: f64, eig: &EigenDecomposition) -> Self {
        let low = alpha * eig.min();
        let high = alpha * eig.max();
        let omega = if (1.0 - high).abs() > (1.0 - low).abs() {
            high
        } else {
            low
        };
        Self {
            alpha,
            kind,
            omega,
            contraction: (1.0 - omega).abs(),
        }
    }
}

/// `2 / (lambda_min + lambda_max)` from the extreme eigenvalues.
pub fn optimal_alpha(lambda_min: f64, lambda_max: f64) -> Result<f64> {
    if !(lambda_min > 0.0) || lambda_max < lambda_min {
        return Err(Error::NotPositiveDefinite(format!(
            "extreme eigenvalues ({lambda_min}, {lambda_max})"
        )));
    }
    Ok(2.0 / (lambda_min + lambda_max))
}

/// `2 / trace(Z)`; touches only the diagonal.
pub fn trace_alpha(z: &SpdMatrix) -> Result<f64> {
    let trace = z.trace();
    if !(trace > 0.0) {
        return Err(Error::NotPositiveDefinite(format!("trace {trace}")));
    }
    Ok(2.0 / trace)
}

/// `2 / (min_i z_ii + max_i sum_j |z_ij|)`.
pub fn gershgorin_alpha(z: &SpdMatrix) -> Result<f64> {
    let min_diag = z.min_diagonal();
    let denom = min_diag + z.infinity_norm();
    if !(min_diag > 0.0) || !(denom > 0.0) {
        return Err(Error::NotPositiveDefinite(format!(
            "min diagonal {min_diag}, denominator {denom}"
        )));
    }
    Ok(2.0 / denom)
}

/// Optimal scale factor with its diagnostics. `omega` is reported as the
/// smallest rescaled eigenvalue, which ties with the largest in distance from 1.
pub fn alpha_optimal(eig: &EigenDecomposition) -> Result<ScaleDiagnostics> {
    let (lo, hi) = (eig.min(), eig.max());
    let alpha = optimal_alpha(lo, hi)?;
    let omega = 2.0 * lo / (hi + lo);
    Ok(ScaleDiagnostics {
        alpha,
        kind: ScaleFactorKind::Optimal,
        omega,
        contraction: (1.0 - omega).abs(),
    })
}

pub fn alpha_trace(z: &SpdMatrix) -> Result<ScaleDiagnostics> {
    let alpha = trace_alpha(z)?;
    Ok(ScaleDiagnostics::from_spectrum(ScaleFactorKind::Trace, alpha, &z.eigen()?))
}

pub fn alpha_gershgorin(z: &SpdMatrix) -> Result<ScaleDiagnostics> {
    let alpha = gershgorin_alpha(z)?;
    Ok(ScaleDiagnostics::from_spectrum(
        ScaleFactorKind::GershgorinDiag,
        alpha,
        &z.eigen()?,
    ))
}

/// Diagnostics for any kind, given the spectrum of `z`.
pub fn diagnostics(kind: ScaleFactorKind, z: &SpdMatrix, eig: &EigenDecomposition) -> Result<ScaleDiagnostics> {
    match kind {
        ScaleFactorKind::Optimal => alpha_optimal(eig),
        ScaleFactorKind::Trace => Ok(ScaleDiagnostics::from_spectrum(kind, trace_alpha(z)?, eig)),
        ScaleFactorKind::GershgorinDiag => {
            Ok(ScaleDiagnostics::from_spectrum(kind, gershgorin_alpha(z)?, eig))
        }
    }
}

/// Scale factor of the given kind without diagnostics. Only `Optimal` runs an
/// eigensolve.
pub fn scale_factor(kind: ScaleFactorKind, z: &SpdMatrix) -> Result<f64> {
    match kind {
        ScaleFactorKind::Optimal => {
            let eig = z.eigen()?;
            optimal_alpha(eig.min(), eig.max())
        }
        ScaleFactorKind::Trace => trace_alpha(z),
        ScaleFactorKind::GershgorinDiag => gershgorin_alpha(z),
    }
}

/// `alpha * Z`.
pub fn rescale(z: &SpdMatrix, alpha: f64) -> Result<SpdMatrix> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "scale factor must be positive and finite, got {alpha}"
        )));
    }
    Ok(z.scaled(alpha))
}
