//! Experiment runner: iteration counts on conditioned test matrices and on
//! uniform random patterns, the empirical iteration-count laws, and checks
//! against them.

mod io;

pub use io::{
    load_fits, load_records, read_fits_csv, read_records_csv, save_fits, save_records,
    write_fits_csv, write_fits_json, write_records_csv, write_records_json, OutputFormat,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inverter::{invert, InversionConfig};
use crate::linalg::{gram, SpdMatrix};
use crate::scaling::{gershgorin_alpha, optimal_alpha, rescale, trace_alpha, ScaleFactorKind};
use crate::testgen::{more_toraldo, uniform_pattern, MoreToraldoSpec, Seed};

/// Empirical offset of the `N2` law.
pub const N2_OFFSET: f64 = 2.433;

pub const TABLE1_N: [usize; 5] = [4, 8, 16, 32, 64];
pub const TABLE1_RATIOS: [usize; 7] = [1, 2, 4, 8, 16, 32, 64];
pub const TABLE1_KINDS: [ScaleFactorKind; 2] = [ScaleFactorKind::Trace, ScaleFactorKind::GershgorinDiag];

/// Published reference `(mean, spread)` of iteration counts on uniform
/// patterns, indexed `[ratio][n][kind]` over [`TABLE1_RATIOS`], [`TABLE1_N`]
/// and [`TABLE1_KINDS`].
const TABLE1_REFERENCE: [[[(f64, f64); 2]; 5]; 7] = [
    [[(11.1, 3.2), (10.9, 3.4)], [(13.7, 2.8), (13.1, 3.2)], [(16.8, 3.2), (15.5, 3.1)], [(18.4, 2.1), (16.4, 2.1)], [(24.1, 6.1), (21.3, 6.3)]],
    [[(7.8, 0.6), (7.3, 0.9)], [(8.8, 0.8), (7.7, 0.9)], [(10.0, 0.5), (8.2, 0.4)], [(11.4, 0.5), (9.2, 0.4)], [(12.3, 0.5), (9.0, 0.0)]],
    [[(6.0, 0.5), (5.5, 0.5)], [(7.6, 0.5), (6.1, 0.7)], [(9.1, 0.3), (7.0, 0.5)], [(10.0, 0.0), (7.0, 0.0)], [(11.0, 0.0), (7.2, 0.4)]],
    [[(5.9, 0.3), (5.0, 0.0)], [(7.0, 0.0), (5.2, 0.6)], [(8.0, 0.0), (5.8, 0.4)], [(9.0, 0.0), (6.0, 0.0)], [(10.0, 0.0), (6.1, 0.3)]],
    [[(5.2, 0.4), (4.2, 0.4)], [(7.0, 0.0), (5.0, 0.0)], [(8.0, 0.0), (5.0, 0.0)], [(9.0, 0.0), (5.0, 0.0)], [(10.0, 0.0), (6.0, 0.0)]],
    [[(5.1, 0.3), (4.0, 0.5)], [(6.3, 0.5), (4.1, 0.3)], [(7.9, 0.3), (4.4, 0.5)], [(9.0, 0.0), (5.0, 0.0)], [(10.0, 0.0), (5.0, 0.0)]],
    [[(5.0, 0.0), (3.5, 0.5)], [(6.0, 0.0), (4.0, 0.0)], [(7.0, 0.0), (4.0, 0.0)], [(8.1, 0.3), (4.0, 0.0)], [(9.0, 0.0), (4.6, 0.5)]],
];

/// Reference `(mean, spread)` for a uniform-pattern cell, if it is on the grid.
pub fn table1_reference(ratio: usize, n: usize, kind: ScaleFactorKind) -> Option<(f64, f64)> {
    let r = TABLE1_RATIOS.iter().position(|&v| v == ratio)?;
    let c = TABLE1_N.iter().position(|&v| v == n)?;
    let k = TABLE1_KINDS.iter().position(|&v| v == kind)?;
    Some(TABLE1_REFERENCE[r][c][k])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Mt,
    Uniform,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Mt => "mt",
            Family::Uniform => "uniform",
        })
    }
}

/// One inversion run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub family: Family,
    pub n: usize,
    /// Pattern rows; equals `n` for conditioned matrices.
    pub m: usize,
    /// Exact for `mt`, measured by the eigensolver for `uniform`.
    pub kappa: f64,
    #[serde(rename = "alpha")]
    pub scale_kind: ScaleFactorKind,
    pub iterations: usize,
    pub converged: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Law {
    N0,
    N1,
    N2,
}

impl Law {
    pub fn for_kind(kind: ScaleFactorKind) -> Law {
        match kind {
            ScaleFactorKind::Optimal => Law::N0,
            ScaleFactorKind::Trace => Law::N1,
            ScaleFactorKind::GershgorinDiag => Law::N2,
        }
    }

    /// Empirical iteration count for a conditioned matrix of order `n`:
    ///
    /// * `N0 = log2 kappa + 3`
    /// * `N1 = log2 kappa + log2 n + 1`
    /// * `N2 = log2 kappa + log2(n) / 3 + 2.433`
    pub fn predict(self, kappa: f64, n: usize) -> f64 {
        let lk = kappa.log2();
        let ln = (n as f64).log2();
        match self {
            Law::N0 => lk + 3.0,
            Law::N1 => lk + ln + 1.0,
            Law::N2 => lk + ln / 3.0 + N2_OFFSET,
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawFit {
    pub law: Law,
    /// Mean of observed minus predicted.
    #[serde(rename = "mean_dev")]
    pub mean_deviation: f64,
    #[serde(rename = "max_abs_dev")]
    pub max_abs_deviation: f64,
    pub trials: usize,
}

/// A list of `(n, kappa)` cells for the conditioned-matrix suite.
#[derive(Debug, Clone, PartialEq)]
pub struct MtGrid(pub Vec<(usize, f64)>);

impl MtGrid {
    /// `n in {16, 64, 256}` x `kappa in {2^6, 2^10, 2^14, 2^20}`; with 10 trials
    /// per cell this is 120 matrices.
    pub fn standard() -> Self {
        Self::product(&[16, 64, 256], &[6, 10, 14, 20])
    }

    /// `n in {16, 64}` x `kappa in {2^6, 2^10, 2^20}`.
    pub fn quick() -> Self {
        Self::product(&[16, 64], &[6, 10, 20])
    }

    pub fn product(ns: &[usize], log2_kappas: &[i32]) -> Self {
        Self(
            ns.iter()
                .flat_map(|&n| log2_kappas.iter().map(move |&e| (n, 2f64.powi(e))))
                .collect(),
        )
    }
}

impl FromStr for MtGrid {
    type Err = Error;

    /// `default`, `quick`, or a comma-separated list of `n:kappa` cells.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => return Ok(Self::standard()),
            "quick" => return Ok(Self::quick()),
            _ => {}
        }
        let bad = || Error::InvalidArgument(format!("bad grid {s:?}, expected default, quick or n:kappa[,n:kappa...]"));
        let cells = s
            .split(',')
            .map(|cell| {
                let (n, k) = cell.trim().split_once(':').ok_or_else(bad)?;
                let n = n.parse::<usize>().map_err(|_| bad())?;
                let k = k.parse::<f64>().map_err(|_| bad())?;
                MoreToraldoSpec::new(n, k)?;
                Ok((n, k))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self(cells))
    }
}

fn run_one(a: &SpdMatrix, cfg: &InversionConfig) -> Result<(usize, bool)> {
    match invert(a, cfg) {
        Ok(r) => Ok((r.iterations, r.converged)),
        Err(Error::NonFinite { iteration }) => Ok((iteration, false)),
        Err(e) => Err(e),
    }
}

/// Runs every kind on `trials` conditioned matrices per cell. The optimal scale
/// factor uses the known extreme eigenvalues `1` and `kappa`.
///
/// Trial `j` of cell `i` uses `seed.derive(i).derive(j)`, shared by all kinds.
pub fn run_mt_suite(
    grid: &MtGrid,
    trials: usize,
    kinds: &[ScaleFactorKind],
    cfg: &InversionConfig,
    seed: Seed,
) -> Result<Vec<TrialRecord>> {
    if grid.0.is_empty() {
        return Err(Error::InvalidArgument("empty grid".into()));
    }
    let mut records = Vec::with_capacity(grid.0.len() * trials * kinds.len());
    for (ci, &(n, kappa)) in grid.0.iter().enumerate() {
        let spec = MoreToraldoSpec::new(n, kappa)?;
        for trial in 0..trials {
            let trial_seed = seed.derive(ci as u64).derive(trial as u64);
            let (_, z) = more_toraldo(&spec, trial_seed)?;
            for &kind in kinds {
                let alpha = match kind {
                    ScaleFactorKind::Optimal => optimal_alpha(1.0, kappa)?,
                    ScaleFactorKind::Trace => trace_alpha(&z)?,
                    ScaleFactorKind::GershgorinDiag => gershgorin_alpha(&z)?,
                };
                let (iterations, converged) = run_one(&rescale(&z, alpha)?, cfg)?;
                records.push(TrialRecord {
                    family: Family::Mt,
                    n,
                    m: n,
                    kappa,
                    scale_kind: kind,
                    iterations,
                    converged,
                    seed: trial_seed.0,
                });
            }
        }
    }
    Ok(records)
}

/// Runs the trace and Gershgorin factors on uniform `(-1, 1)` patterns of
/// size `(ratio * n) x n`. Trial `j` of cell `i` (row-major over ratios, then
/// `n`) uses `seed.derive(i).derive(j)`.
pub fn run_table1_suite(
    n_values: &[usize],
    ratios: &[usize],
    trials: usize,
    cfg: &InversionConfig,
    seed: Seed,
) -> Result<Vec<TrialRecord>> {
    if n_values.is_empty() || ratios.is_empty() {
        return Err(Error::InvalidArgument("empty table grid".into()));
    }
    let mut records = Vec::with_capacity(n_values.len() * ratios.len() * trials * 2);
    let cells = ratios
        .iter()
        .flat_map(|&r| n_values.iter().map(move |&n| (r, n)));
    for (ci, (ratio, n)) in cells.enumerate() {
        if ratio == 0 {
            return Err(Error::InvalidArgument("m/n ratio must be positive".into()));
        }
        let m = ratio * n;
        for trial in 0..trials {
            let trial_seed = seed.derive(ci as u64).derive(trial as u64);
            let x = uniform_pattern(m, n, trial_seed)?;
            let z = gram(&x);
            let kappa = z.eigen()?.condition_number();
            for kind in TABLE1_KINDS {
                let alpha = match kind {
                    ScaleFactorKind::Trace => trace_alpha(&z),
                    _ => gershgorin_alpha(&z),
                };
                let (iterations, converged) = match alpha {
                    Ok(alpha) => run_one(&rescale(&z, alpha)?, cfg)?,
                    Err(Error::NotPositiveDefinite(_)) => (0, false),
                    Err(e) => return Err(e),
                };
                records.push(TrialRecord {
                    family: Family::Uniform,
                    n,
                    m,
                    kappa,
                    scale_kind: kind,
                    iterations,
                    converged,
                    seed: trial_seed.0,
                });
            }
        }
    }
    Ok(records)
}

/// Compares converged `mt` records with the law for their scale factor.
/// Laws appear in `N0`, `N1`, `N2` order, only for kinds present.
pub fn fit_laws(records: &[TrialRecord]) -> Result<Vec<LawFit>> {
    let usable: Vec<&TrialRecord> = records
        .iter()
        .filter(|r| r.family == Family::Mt && r.converged)
        .collect();
    if usable.is_empty() {
        return Err(Error::Empty("no converged conditioned-matrix records to fit"));
    }
    let mut fits = Vec::new();
    for kind in ScaleFactorKind::ALL {
        let law = Law::for_kind(kind);
        let devs: Vec<f64> = usable
            .iter()
            .filter(|r| r.scale_kind == kind)
            .map(|r| r.iterations as f64 - law.predict(r.kappa, r.n))
            .collect();
        if devs.is_empty() {
            continue;
        }
        fits.push(LawFit {
            law,
            mean_deviation: devs.iter().sum::<f64>() / devs.len() as f64,
            max_abs_deviation: devs.iter().fold(0.0, |acc, d| acc.max(d.abs())),
            trials: devs.len(),
        });
    }
    Ok(fits)
}

/// Per-cell statistics over converged trials.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    /// Cell condition number for `mt`; mean measured value for `uniform`.
    pub kappa: f64,
    pub scale_kind: ScaleFactorKind,
    pub mean: f64,
    /// Population standard deviation.
    pub sd: f64,
    pub trials: usize,
    pub nonconverged: usize,
}

/// Groups records by family, shape, kind and (for `mt`) condition number,
/// in order of first appearance.
pub fn summarize(records: &[TrialRecord]) -> Vec<CellSummary> {
    type Key = (Family, usize, usize, ScaleFactorKind, u64);
    let key = |r: &TrialRecord| -> Key {
        let k = if r.family == Family::Mt { r.kappa.to_bits() } else { 0 };
        (r.family, r.n, r.m, r.scale_kind, k)
    };
    let mut order: Vec<Key> = Vec::new();
    for r in records {
        let k = key(r);
        if !order.contains(&k) {
            order.push(k);
        }
    }
    order
        .into_iter()
        .map(|k| {
            let cell: Vec<&TrialRecord> = records.iter().filter(|r| key(r) == k).collect();
            let its: Vec<f64> = cell
                .iter()
                .filter(|r| r.converged)
                .map(|r| r.iterations as f64)
                .collect();
            let (mean, sd) = mean_sd(&its);
            let kappa = cell.iter().map(|r| r.kappa).sum::<f64>() / cell.len() as f64;
            CellSummary {
                family: k.0,
                n: k.1,
                m: k.2,
                kappa,
                scale_kind: k.3,
                mean,
                sd,
                trials: its.len(),
                nonconverged: cell.len() - its.len(),
            }
        })
        .collect()
}

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Outcome of one acceptance check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

/// Tolerances for the conditioned-matrix laws.
pub const EXACT_LAW_TRIAL_TOL: f64 = 1.0;
pub const EXACT_LAW_CELL_MEAN_TOL: f64 = 0.2;
pub const N2_OFFSET_TOL: f64 = 0.7;

/// Checks `mt` records against the three laws: every trial within
/// [`EXACT_LAW_TRIAL_TOL`] and every cell mean within
/// [`EXACT_LAW_CELL_MEAN_TOL`] for `N0` and `N1`, and the pooled mean of
/// `iterations - log2 kappa - log2(n)/3` within [`N2_OFFSET_TOL`] of 2.433.
/// Any non-converged trial fails the kind it belongs to.
pub fn check_mt(records: &[TrialRecord]) -> Vec<Check> {
    let mut checks = Vec::new();
    for kind in ScaleFactorKind::ALL {
        let law = Law::for_kind(kind);
        let rows: Vec<&TrialRecord> = records
            .iter()
            .filter(|r| r.family == Family::Mt && r.scale_kind == kind)
            .collect();
        if rows.is_empty() {
            continue;
        }
        let nonconverged = rows.iter().filter(|r| !r.converged).count();
        match law {
            Law::N0 | Law::N1 => {
                let worst_trial = rows
                    .iter()
                    .filter(|r| r.converged)
                    .map(|r| (r.iterations as f64 - law.predict(r.kappa, r.n)).abs())
                    .fold(0.0, f64::max);
                let cells = summarize(&rows.iter().map(|r| (*r).clone()).collect::<Vec<_>>());
                let mut worst_cell = 0.0_f64;
                let mut worst_label = String::new();
                for c in &cells {
                    let dev = (c.mean - law.predict(c.kappa, c.n)).abs();
                    if !(dev <= worst_cell) {
                        worst_cell = dev;
                        worst_label = format!("n={} kappa={}", c.n, c.kappa);
                    }
                }
                checks.push(Check {
                    name: format!("{law} per-trial"),
                    passed: nonconverged == 0 && worst_trial <= EXACT_LAW_TRIAL_TOL,
                    detail: format!(
                        "max |observed - law| = {worst_trial} (tol {EXACT_LAW_TRIAL_TOL}), non-converged {nonconverged}"
                    ),
                });
                checks.push(Check {
                    name: format!("{law} cell mean"),
                    passed: nonconverged == 0 && worst_cell <= EXACT_LAW_CELL_MEAN_TOL,
                    detail: format!(
                        "max |cell mean - law| = {worst_cell:.3} at {worst_label} (tol {EXACT_LAW_CELL_MEAN_TOL})"
                    ),
                });
            }
            Law::N2 => {
                let offsets: Vec<f64> = rows
                    .iter()
                    .filter(|r| r.converged)
                    .map(|r| r.iterations as f64 - r.kappa.log2() - (r.n as f64).log2() / 3.0)
                    .collect();
                let (mean, _) = mean_sd(&offsets);
                checks.push(Check {
                    name: "N2 offset".into(),
                    passed: nonconverged == 0 && (mean - N2_OFFSET).abs() <= N2_OFFSET_TOL,
                    detail: format!(
                        "mean offset {mean:.3} vs {N2_OFFSET} (tol {N2_OFFSET_TOL}), non-converged {nonconverged}"
                    ),
                });
            }
        }
    }
    checks
}

/// Spot cells `(ratio, n, kind, target mean, tolerance)` for uniform patterns.
pub const TABLE1_SPOT_CELLS: [(usize, usize, ScaleFactorKind, f64, f64); 4] = [
    (8, 16, ScaleFactorKind::Trace, 8.0, 1.0),
    (8, 16, ScaleFactorKind::GershgorinDiag, 5.8, 1.0),
    (64, 8, ScaleFactorKind::GershgorinDiag, 4.0, 1.0),
    (1, 4, ScaleFactorKind::GershgorinDiag, 10.9, 3.5),
];

/// Checks the spot cells present in `records`.
pub fn check_table1(records: &[TrialRecord]) -> Vec<Check> {
    let summaries = summarize(records);
    TABLE1_SPOT_CELLS
        .iter()
        .filter_map(|&(ratio, n, kind, target, tol)| {
            let cell = summaries.iter().find(|c| {
                c.family == Family::Uniform && c.n == n && c.m == ratio * n && c.scale_kind == kind
            })?;
            Some(Check {
                name: format!("m={ratio}n n={n} {kind}"),
                passed: cell.nonconverged == 0 && (cell.mean - target).abs() <= tol,
                detail: format!(
                    "mean {:.2} (sd {:.2}) vs {target} +- {tol}, non-converged {}",
                    cell.mean, cell.sd, cell.nonconverged
                ),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(kind: ScaleFactorKind, n: usize, kappa: f64, iterations: usize) -> TrialRecord {
        TrialRecord {
            family: Family::Mt,
            n,
            m: n,
            kappa,
            scale_kind: kind,
            iterations,
            converged: true,
            seed: 0,
        }
    }

    #[test]
    fn law_predictions() {
        assert_eq!(Law::N0.predict(64.0, 16), 9.0);
        assert_eq!(Law::N1.predict(64.0, 16), 11.0);
        assert!((Law::N2.predict(64.0, 16) - (6.0 + 4.0 / 3.0 + 2.433)).abs() < 1e-12);
    }

    #[test]
    fn reference_lookup() {
        assert_eq!(table1_reference(8, 16, ScaleFactorKind::Trace), Some((8.0, 0.0)));
        assert_eq!(table1_reference(8, 16, ScaleFactorKind::GershgorinDiag), Some((5.8, 0.4)));
        assert_eq!(table1_reference(64, 8, ScaleFactorKind::GershgorinDiag), Some((4.0, 0.0)));
        assert_eq!(table1_reference(1, 4, ScaleFactorKind::GershgorinDiag), Some((10.9, 3.4)));
        assert_eq!(table1_reference(3, 4, ScaleFactorKind::Trace), None);
        assert_eq!(table1_reference(1, 4, ScaleFactorKind::Optimal), None);
    }

    #[test]
    fn fit_aggregates_per_law() {
        let records = vec![
            rec(ScaleFactorKind::Optimal, 16, 64.0, 9),
            rec(ScaleFactorKind::Optimal, 16, 64.0, 10),
            rec(ScaleFactorKind::Trace, 16, 64.0, 11),
            TrialRecord {
                converged: false,
                ..rec(ScaleFactorKind::Trace, 16, 64.0, 200)
            },
        ];
        let fits = fit_laws(&records).unwrap();
        assert_eq!(fits.len(), 2);
        assert_eq!(fits[0].law, Law::N0);
        assert_eq!(fits[0].trials, 2);
        assert_eq!(fits[0].mean_deviation, 0.5);
        assert_eq!(fits[0].max_abs_deviation, 1.0);
        assert_eq!(fits[1].law, Law::N1);
        assert_eq!(fits[1].trials, 1);
        assert_eq!(fits[1].max_abs_deviation, 0.0);
    }

    #[test]
    fn fit_rejects_empty() {
        assert!(matches!(fit_laws(&[]), Err(Error::Empty(_))));
        let uniform = TrialRecord {
            family: Family::Uniform,
            ..rec(ScaleFactorKind::Trace, 4, 10.0, 5)
        };
        assert!(fit_laws(&[uniform]).is_err());
    }

    #[test]
    fn summary_groups_and_population_sd() {
        let records = vec![
            rec(ScaleFactorKind::Trace, 16, 64.0, 5),
            rec(ScaleFactorKind::Trace, 16, 64.0, 6),
            rec(ScaleFactorKind::Trace, 16, 1024.0, 7),
        ];
        let s = summarize(&records);
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].mean, 5.5);
        assert_eq!(s[0].sd, 0.5);
        assert_eq!(s[1].trials, 1);
    }

    #[test]
    fn grid_parsing() {
        assert_eq!("default".parse::<MtGrid>().unwrap().0.len(), 12);
        assert_eq!("quick".parse::<MtGrid>().unwrap().0.len(), 6);
        let g: MtGrid = "16:64, 32:1024".parse().unwrap();
        assert_eq!(g.0, vec![(16, 64.0), (32, 1024.0)]);
        assert!("16".parse::<MtGrid>().is_err());
        assert!("1:64".parse::<MtGrid>().is_err());
        assert!("16:0.5".parse::<MtGrid>().is_err());
    }

    #[test]
    fn small_mt_suite_is_reproducible() {
        let grid = MtGrid(vec![(4, 16.0)]);
        let cfg = InversionConfig::default();
        let a = run_mt_suite(&grid, 3, &ScaleFactorKind::ALL, &cfg, Seed(1)).unwrap();
        let b = run_mt_suite(&grid, 3, &ScaleFactorKind::ALL, &cfg, Seed(1)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 9);
        assert!(a.iter().all(|r| r.converged));
        // N0 = log2 16 + 3
        assert!(a
            .iter()
            .filter(|r| r.scale_kind == ScaleFactorKind::Optimal)
            .all(|r| r.iterations == 7));
        assert!(run_mt_suite(&MtGrid(vec![]), 1, &ScaleFactorKind::ALL, &cfg, Seed(1)).is_err());
    }

    #[test]
    fn small_table1_suite() {
        let r = run_table1_suite(&[4], &[2, 8], 2, &InversionConfig::default(), Seed(5)).unwrap();
        assert_eq!(r.len(), 2 * 2 * 2);
        assert!(r.iter().all(|t| t.family == Family::Uniform && t.kappa >= 1.0));
        assert_eq!(r[0].m, 8);
        assert_eq!(r[4].m, 32);
    }
}
