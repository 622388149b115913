use proptest::prelude::*;
use sigmapi_core::inverter::{
    invert, iteration_bound, neumann_partial_sum, predicted_iterations_trace_upper, InversionProcess,
};
use sigmapi_core::lsq::{solve_transform, PipelineConfig};
use sigmapi_core::scaling::{rescale, scale_factor};
use sigmapi_core::testgen::{more_toraldo, uniform_pattern, MoreToraldoSpec};
use sigmapi_core::{gram, Error, InversionConfig, Matrix, ScaleFactorKind, Seed, SpdMatrix};

fn conditioned(n: usize, kappa: f64, seed: u64) -> SpdMatrix {
    more_toraldo(&MoreToraldoSpec::new(n, kappa).unwrap(), Seed(seed)).unwrap().1
}

fn iterations(z: &SpdMatrix, kind: ScaleFactorKind) -> usize {
    let a = rescale(z, scale_factor(kind, z).unwrap()).unwrap();
    let r = invert(&a, &InversionConfig::default()).unwrap();
    assert!(r.converged);
    r.iterations
}

#[test]
fn converged_inverse_matches_true_inverse() {
    let z = conditioned(10, 50.0, 4);
    let alpha = scale_factor(ScaleFactorKind::Optimal, &z).unwrap();
    let cfg = InversionConfig::new(1e-12, 200).unwrap();
    let r = invert(&rescale(&z, alpha).unwrap(), &cfg).unwrap();
    let zinv = r.inverse.scaled(alpha);
    let err = zinv.multiply(z.as_matrix()).unwrap().sub(&Matrix::identity(10)).unwrap();
    assert!(err.entrywise_max_abs() < 1e-10);
}

#[test]
fn trace_factor_never_exceeds_its_upper_bound() {
    for (i, &(n, lk)) in [(8usize, 6), (16, 10), (32, 14), (64, 8)].iter().enumerate() {
        let kappa = 2f64.powi(lk);
        for s in 0..3 {
            let z = conditioned(n, kappa, 100 * i as u64 + s);
            let bound = predicted_iterations_trace_upper(kappa, n, 1e-6).unwrap();
            assert!(iterations(&z, ScaleFactorKind::Trace) as f64 <= bound.ceil() + 1.0);
        }
    }
}

#[test]
fn iterations_grow_with_condition_number() {
    for kind in ScaleFactorKind::ALL {
        let counts: Vec<usize> = [4, 8, 12, 16]
            .iter()
            .map(|&lk| iterations(&conditioned(16, 2f64.powi(lk), 3), kind))
            .collect();
        assert!(counts.windows(2).all(|w| w[0] < w[1]), "{kind}: {counts:?}");
    }
}

#[test]
fn gershgorin_factor_beats_trace_factor_on_large_orders() {
    for s in 0..5 {
        let z = conditioned(64, 1024.0, s);
        assert!(iterations(&z, ScaleFactorKind::GershgorinDiag) <= iterations(&z, ScaleFactorKind::Trace));
    }
}

#[test]
fn unscaled_ill_conditioned_input_diverges() {
    let z = conditioned(6, 100.0, 2);
    let r = invert(&z, &InversionConfig::default());
    match r {
        Ok(report) => assert!(!report.converged),
        Err(e) => assert!(matches!(e, Error::NonFinite { .. })),
    }
}

#[test]
fn solve_is_independent_of_scale_factor() {
    let x = uniform_pattern(40, 5, Seed(21)).unwrap();
    let m = uniform_pattern(40, 2, Seed(22)).unwrap();
    let ts: Vec<Matrix> = ScaleFactorKind::ALL
        .iter()
        .map(|&k| solve_transform(&x, &m, &PipelineConfig::with_kind(k)).unwrap().transform)
        .collect();
    for t in &ts[1..] {
        assert!(t.sub(&ts[0]).unwrap().entrywise_max_abs() < 1e-5);
    }
}

#[test]
fn residual_is_orthogonal_to_pattern_columns() {
    let x = uniform_pattern(48, 6, Seed(31)).unwrap();
    let m = uniform_pattern(48, 3, Seed(32)).unwrap();
    let r = solve_transform(&x, &m, &PipelineConfig::default()).unwrap();
    let residual = x.multiply(&r.transform).unwrap().sub(&m).unwrap();
    let normal = x.transpose_multiply(&residual).unwrap();
    assert!(normal.entrywise_max_abs() < 1e-4 * m.frobenius_norm());
    assert!((r.distance - residual.frobenius_norm()).abs() < 1e-12);
}

fn spd_strategy() -> impl Strategy<Value = SpdMatrix> {
    (2usize..7, 1u32..8, any::<u64>(), any::<bool>()).prop_map(|(n, lk, seed, tall)| {
        let z = if tall {
            gram(&uniform_pattern(3 * n, n, Seed(seed)).unwrap())
        } else {
            conditioned(n, 2f64.powi(lk as i32), seed)
        };
        rescale(&z, scale_factor(ScaleFactorKind::GershgorinDiag, &z).unwrap()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn iterate_is_a_neumann_partial_sum(a in spd_strategy()) {
        let mut process = InversionProcess::new(&a);
        for t in 1..=4u32 {
            let v = process.step().clone();
            let s = neumann_partial_sum(&a, t).unwrap();
            prop_assert!(v.sub(&s).unwrap().entrywise_max_abs() < 1e-10);
        }
    }

    #[test]
    fn stop_index_respects_spectral_bound(a in spd_strategy()) {
        let eig = a.eigen().unwrap();
        let c = (1.0 - eig.min()).abs().max((1.0 - eig.max()).abs());
        prop_assume!(c > 0.0 && c < 1.0);
        let r = invert(&a, &InversionConfig::default()).unwrap();
        prop_assert!(r.converged);
        prop_assert!(r.iterations as f64 <= iteration_bound(c, 1e-6).unwrap().ceil());
    }

    #[test]
    fn spectral_residual_shrinks_monotonically(a in spd_strategy()) {
        let mut process = InversionProcess::new(&a);
        let mut prev = process.residual().spectral_norm().unwrap();
        for _ in 0..4 {
            process.step();
            let next = process.residual().spectral_norm().unwrap();
            prop_assert!(next <= prev * (1.0 + 1e-9) + 1e-14, "{next} > {prev}");
            prev = next;
        }
    }
}
