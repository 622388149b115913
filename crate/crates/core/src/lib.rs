//! Least-squares pattern matching on top of a recurrent, quadratically
//! convergent inversion of symmetric positive definite matrices.
//!
//! * [`linalg`]: dense matrices, Gram products, norms, a cyclic Jacobi eigensolver.
//! * [`scaling`]: the three scale factors placing `alpha * X'X` in the convergence region.
//! * [`inverter`]: the `V <- (2I - VA) V` process, its Neumann-series oracle and iteration predictors.
//! * [`lsq`]: `T = (X'X)^{-1} X'M`, the matching distance and the sequential-operation time model.
//! * [`testgen`]: seeded conditioned SPD matrices and uniform patterns.
//! * [`bench`]: experiment suites, law fits, CSV output.
//!
//! ```
//! use sigmapi_core::lsq::{solve_transform, PipelineConfig};
//! use sigmapi_core::testgen::uniform_pattern;
//! use sigmapi_core::{Matrix, Seed};
//!
//! let x = uniform_pattern(64, 4, Seed(1)).unwrap();
//! let t0 = Matrix::from_rows(&[[1.0], [-1.0], [0.5], [2.0]]).unwrap();
//! let m = x.multiply(&t0).unwrap();
//!
//! let result = solve_transform(&x, &m, &PipelineConfig::default()).unwrap();
//! assert!(result.transform.sub(&t0).unwrap().entrywise_max_abs() < 1e-5);
//! assert_eq!(result.op_count, 2 * result.inversion.iterations as u64 + 7);
//! ```

// `!(x > 0.0)` style guards are used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod error;
pub mod inverter;
pub mod linalg;
pub mod lsq;
pub mod scaling;
pub mod testgen;

pub use error::{Error, Result};
pub use inverter::{invert, InversionConfig, InversionReport};
pub use linalg::{gram, EigenDecomposition, Matrix, SpdMatrix};
pub use lsq::{solve_transform, MatchResult, PipelineConfig};
pub use scaling::{ScaleDiagnostics, ScaleFactorKind};
pub use testgen::{MoreToraldoSpec, Seed};
