//! Recurrent two-layer inversion of a rescaled SPD matrix `A`:
//!
//! ```text
//! V_0     = I
//! U_{t+1} = 2I - V_t A
//! V_{t+1} = U_{t+1} V_t
//! ```
//!
//! When the spectrum of `A` lies in `(0, 2)`, `V_t` equals the first `2^t`
//! terms of the Neumann series of `A^{-1}` and the residual `I - V_t A` has
//! spectral norm `|1 - omega|^(2^t)`.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SpdMatrix};

pub const DEFAULT_EPSILON: f64 = 1e-6;
pub const DEFAULT_MAX_ITERATIONS: usize = 200;
/// Largest `t` accepted by [`neumann_partial_sum`] (`2^t` terms).
pub const NEUMANN_MAX_T: u32 = 20;
/// Consecutive growing residuals above 1 after which the process is abandoned.
const DIVERGENCE_RUN: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionConfig {
    epsilon: f64,
    max_iterations: usize,
}

impl InversionConfig {
    pub fn new(epsilon: f64, max_iterations: usize) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "epsilon must lie in (0, 1), got {epsilon}"
            )));
        }
        if max_iterations == 0 {
            return Err(Error::InvalidArgument("max_iterations must be at least 1".into()));
        }
        Ok(Self {
            epsilon,
            max_iterations,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn max_iterations(&self) -> usize {
        self.max_iterations
    }
}

impl Default for InversionConfig {
    fn default() -> Self {
        Self {
            epsilon: DEFAULT_EPSILON,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

#[derive(Debug, Clone)]
pub struct InversionReport {
    /// Final iterate `V_t`.
    pub inverse: Matrix,
    /// Number of `(U, V)` updates performed.
    pub iterations: usize,
    /// `max |I - V_t A|` for `t = 0..=iterations`.
    pub residual_history: Vec<f64>,
    pub converged: bool,
    pub final_residual: f64,
}

/// Step-by-step view of the process, exposing every iterate.
#[derive(Debug, Clone)]
pub struct InversionProcess<'a> {
    a: &'a Matrix,
    v: Matrix,
    t: usize,
}

impl<'a> InversionProcess<'a> {
    pub fn new(a: &'a SpdMatrix) -> Self {
        Self {
            a: a.as_matrix(),
            v: Matrix::identity(a.order()),
            t: 0,
        }
    }

    /// Index `t` of the current iterate.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Current `V_t`.
    pub fn iterate(&self) -> &Matrix {
        &self.v
    }

    /// `I - V_t A`.
    pub fn residual(&self) -> Matrix {
        self.product().shifted_identity_minus(1.0)
    }

    fn product(&self) -> Matrix {
        self.v.multiply(self.a).expect("square operands of equal order")
    }

    /// Advances to `V_{t+1}` given `V_t A`, returning the new iterate.
    fn advance_with(&mut self, va: &Matrix) -> &Matrix {
        let u = va.shifted_identity_minus(2.0);
        self.v = u.multiply(&self.v).expect("square operands of equal order");
        self.t += 1;
        &self.v
    }

    /// Advances one update and returns `V_{t+1}`.
    pub fn step(&mut self) -> &Matrix {
        let va = self.product();
        self.advance_with(&va)
    }
}

/// Runs the process until `max |I - V_t A| < epsilon`.
///
/// The residual of `V_t` is `U_{t+1} - I`, so each stop test reuses the product
/// `V_t A` needed for the next update. `A = I` stops at `t = 0`.
pub fn invert(a: &SpdMatrix, cfg: &InversionConfig) -> Result<InversionReport> {
    let mut process = InversionProcess::new(a);
    let mut history = Vec::new();
    let mut growing = 0;

    loop {
        let t = process.t();
        let va = process.product();
        let residual = va.shifted_identity_minus(1.0).entrywise_max_abs();
        if !residual.is_finite() || !va.is_finite() {
            return Err(Error::NonFinite { iteration: t });
        }
        if let Some(&prev) = history.last() {
            if residual > prev && residual > 1.0 {
                growing += 1;
            } else {
                growing = 0;
            }
        }
        history.push(residual);

        let converged = residual < cfg.epsilon;
        if converged || t == cfg.max_iterations || growing >= DIVERGENCE_RUN {
            return Ok(InversionReport {
                inverse: process.v,
                iterations: t,
                residual_history: history,
                converged,
                final_residual: residual,
            });
        }
        process.advance_with(&va);
    }
}

/// `sum_{i=0}^{2^t - 1} (I - A)^i`, accumulated term by term.
pub fn neumann_partial_sum(a: &SpdMatrix, t: u32) -> Result<Matrix> {
    if t > NEUMANN_MAX_T {
        return Err(Error::InvalidArgument(format!(
            "t = {t} exceeds the cap of {NEUMANN_MAX_T}"
        )));
    }
    let n = a.order();
    let b = a.as_matrix().shifted_identity_minus(1.0);
    let mut term = Matrix::identity(n);
    let mut sum = Matrix::identity(n);
    for _ in 1..(1u64 << t) {
        term = term.multiply(&b)?;
        sum = sum.add(&term)?;
    }
    Ok(sum)
}

fn check_unit_interval(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must lie in (0, 1), got {value}")))
    }
}

/// Smallest real `t` with `contraction^(2^t) <= epsilon`, i.e.
/// `log2(ln epsilon / ln contraction)`, clamped at 0. A zero contraction
/// returns 0.
pub fn iteration_bound(contraction: f64, epsilon: f64) -> Result<f64> {
    check_unit_interval("epsilon", epsilon)?;
    if contraction == 0.0 {
        return Ok(0.0);
    }
    check_unit_interval("contraction", contraction)?;
    Ok((epsilon.ln() / contraction.ln()).log2().max(0.0))
}

/// Asymptotic count with the optimal scale factor:
/// `log2|ln epsilon| + log2(kappa + 1) - 1`.
pub fn predicted_iterations_optimal(kappa: f64, epsilon: f64) -> Result<f64> {
    check_unit_interval("epsilon", epsilon)?;
    if !(kappa >= 1.0) {
        return Err(Error::InvalidArgument(format!("kappa must be >= 1, got {kappa}")));
    }
    Ok(epsilon.ln().abs().log2() + (kappa + 1.0).log2() - 1.0)
}

/// Asymptotic upper bound with the trace scale factor:
/// `log2|ln epsilon| + log2 kappa + log2 n - 1`.
pub fn predicted_iterations_trace_upper(kappa: f64, n: usize, epsilon: f64) -> Result<f64> {
    check_unit_interval("epsilon", epsilon)?;
    if !(kappa >= 1.0) {
        return Err(Error::InvalidArgument(format!("kappa must be >= 1, got {kappa}")));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be >= 2, got {n}")));
    }
    Ok(epsilon.ln().abs().log2() + kappa.log2() + (n as f64).log2() - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn spd(m: Matrix) -> SpdMatrix {
        SpdMatrix::new(m).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(InversionConfig::new(0.0, 10).is_err());
        assert!(InversionConfig::new(1.0, 10).is_err());
        assert!(InversionConfig::new(1e-6, 0).is_err());
        let cfg = InversionConfig::default();
        assert_eq!((cfg.epsilon(), cfg.max_iterations()), (1e-6, 200));
    }

    #[test]
    fn identity_is_fixed_at_start() {
        let r = invert(&SpdMatrix::identity(3), &InversionConfig::default()).unwrap();
        assert_eq!(r.iterations, 0);
        assert!(r.converged);
        assert_eq!(r.inverse, Matrix::identity(3));
        assert_eq!(r.residual_history, vec![0.0]);
        assert_eq!(r.final_residual, 0.0);
    }

    #[test]
    fn half_identity_by_hand() {
        let a = spd(Matrix::identity(2).scaled(0.5));
        let mut p = InversionProcess::new(&a);
        assert_eq!(p.step(), &Matrix::identity(2).scaled(1.5));
        assert_eq!(p.step(), &Matrix::identity(2).scaled(1.875));
        let r = invert(&a, &InversionConfig::default()).unwrap();
        assert!(r.converged);
        assert_abs_diff_eq!(r.inverse.get(0, 0), 2.0, epsilon = 1e-6);
        assert_eq!(r.residual_history.len(), r.iterations + 1);
    }

    #[test]
    fn two_by_two_optimal_stops_at_four() {
        // spectrum (1, 2) rescaled by 2/3 -> (2/3, 4/3), contraction 1/3
        let a = spd(Matrix::diagonal_from(&[2.0 / 3.0, 4.0 / 3.0]).unwrap());
        let r = invert(&a, &InversionConfig::default()).unwrap();
        assert_eq!(r.iterations, 4);
        assert!(r.converged);
        for (t, res) in r.residual_history.iter().enumerate() {
            let expected = (1.0f64 / 3.0).powi(1 << t);
            assert_relative_eq!(*res, expected, max_relative = 1e-8);
        }
    }

    #[test]
    fn fixed_point_is_kept() {
        let a = spd(Matrix::diagonal_from(&[0.5, 0.25, 1.0]).unwrap());
        let inv = Matrix::diagonal_from(&[2.0, 4.0, 1.0]).unwrap();
        let mut p = InversionProcess {
            a: a.as_matrix(),
            v: inv.clone(),
            t: 0,
        };
        assert_eq!(p.residual().entrywise_max_abs(), 0.0);
        assert_eq!(p.step(), &inv);
    }

    #[test]
    fn iteration_cap_reports_unconverged() {
        let a = spd(Matrix::diagonal_from(&[1e-3, 1.0]).unwrap());
        let cfg = InversionConfig::new(1e-6, 3).unwrap();
        let r = invert(&a, &cfg).unwrap();
        assert!(!r.converged);
        assert_eq!(r.iterations, 3);
        assert_eq!(r.residual_history.len(), 4);
        assert!(r.final_residual >= cfg.epsilon());
    }

    #[test]
    fn misscaled_input_diverges() {
        let a = spd(Matrix::diagonal_from(&[0.5, 2.5]).unwrap());
        let r = invert(&a, &InversionConfig::default()).unwrap();
        assert!(!r.converged);
        assert!(r.iterations < 10);
        assert!(r.final_residual > 1.0);
    }

    #[test]
    fn neumann_examples() {
        let a = spd(Matrix::identity(3).scaled(0.5));
        assert_eq!(neumann_partial_sum(&a, 0).unwrap(), Matrix::identity(3));
        assert_eq!(neumann_partial_sum(&a, 2).unwrap(), Matrix::identity(3).scaled(1.875));
        assert!(neumann_partial_sum(&a, NEUMANN_MAX_T + 1).is_err());
    }

    #[test]
    fn bound_examples() {
        let b = iteration_bound(1.0 / 3.0, 1e-6).unwrap();
        // log2(ln 1e-6 / ln(1/3)) = log2(12.5754...)
        assert_relative_eq!(b, (1e-6f64.ln() / (1.0f64 / 3.0).ln()).log2(), max_relative = 1e-15);
        assert_abs_diff_eq!(b, 3.652, epsilon = 1e-3);
        assert_eq!(b.ceil(), 4.0);
        assert_eq!(iteration_bound(0.25, 0.25).unwrap(), 0.0);
        let b = iteration_bound(63.0 / 65.0, 1e-6).unwrap();
        assert_abs_diff_eq!(b, 8.788, epsilon = 1e-3);
        assert_eq!(b.ceil(), 9.0);
        assert_eq!(iteration_bound(0.0, 1e-6).unwrap(), 0.0);
        // contraction below epsilon clamps at zero
        assert_eq!(iteration_bound(1e-9, 1e-6).unwrap(), 0.0);
        assert!(iteration_bound(1.0, 1e-6).is_err());
        assert!(iteration_bound(0.5, 0.0).is_err());
    }

    #[test]
    fn predictor_examples() {
        let base = 1e-6f64.ln().abs().log2();
        assert_abs_diff_eq!(base, 3.788, epsilon = 1e-3);
        assert_abs_diff_eq!(predicted_iterations_optimal(1.0, 1e-6).unwrap(), base, epsilon = 1e-12);
        let big = predicted_iterations_optimal(2f64.powi(20), 1e-6).unwrap();
        assert_abs_diff_eq!(big, 22.79, epsilon = 1e-2);
        let exact = iteration_bound(1.0 - 2.0 / (2f64.powi(20) + 1.0), 1e-6).unwrap();
        assert_abs_diff_eq!(big, exact, epsilon = 1e-3);
        let e = (-1.0f64).exp();
        assert_abs_diff_eq!(
            predicted_iterations_optimal(7.0, e).unwrap(),
            3.0 - 1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            predicted_iterations_trace_upper(64.0, 16, 1e-6).unwrap(),
            base + 6.0 + 4.0 - 1.0,
            epsilon = 1e-12
        );
        assert!(predicted_iterations_trace_upper(64.0, 1, 1e-6).is_err());
        assert!(predicted_iterations_optimal(0.5, 1e-6).is_err());
    }

    #[test]
    fn trace_upper_exceeds_optimal() {
        for n in [2usize, 3, 16, 256] {
            for k in [1.0, 1.5, 64.0, 1e6] {
                let hi = predicted_iterations_trace_upper(k, n, 1e-6).unwrap();
                let lo = predicted_iterations_optimal(k, 1e-6).unwrap();
                assert!(hi >= lo - 1e-12, "n={n} kappa={k}");
            }
        }
    }
}
