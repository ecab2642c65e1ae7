mod common;

use common::*;
use lmg_variance::noise::{corrupt, mitigate, ReadoutError, ReadoutNoiseModel};
use lmg_variance::seed;
use lmg_variance::simulator::ShotHistogram;
use lmg_variance::vqe::{eigenstate_points, Estimator, EstimatorConfig};
use nalgebra::DMatrix;
use proptest::prelude::*;

/// Per-qubit 2×2 confusion matrices combined by Kronecker product.
fn kron_confusion(model: &ReadoutNoiseModel) -> DMatrix<f64> {
    model.qubits().iter().fold(DMatrix::from_element(1, 1, 1.0), |acc, e| {
        acc.kronecker(&DMatrix::from_row_slice(2, 2, &[1.0 - e.p01, e.p10, e.p01, 1.0 - e.p10]))
    })
}

fn max_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).abs().max()
}

#[test]
fn composition_is_matrix_product() {
    let grid = [0.0, 0.02, 0.3, 0.5, 1.0];
    for &a01 in &grid {
        for &a10 in &grid {
            for &b01 in &grid {
                for &b10 in &grid {
                    let a = ReadoutNoiseModel::uniform(1, a01, a10).unwrap();
                    let b = ReadoutNoiseModel::uniform(1, b01, b10).unwrap();
                    let ab = a.then(&b).unwrap();
                    let prod = b.calibration_matrix().matrix() * a.calibration_matrix().matrix();
                    assert!(max_diff(ab.calibration_matrix().matrix(), &prod) < 1e-15);
                }
            }
        }
    }
    for &x in &grid {
        for &y in &grid {
            let a = ReadoutNoiseModel::new(vec![ReadoutError { p01: x, p10: y }, ReadoutError { p01: y, p10: 0.1 }]).unwrap();
            let b = ReadoutNoiseModel::new(vec![ReadoutError { p01: 0.05, p10: x }, ReadoutError { p01: x, p10: y }]).unwrap();
            let ab = a.then(&b).unwrap();
            assert!(max_diff(ab.calibration_matrix().matrix(), &(kron_confusion(&b) * kron_confusion(&a))) < 1e-15);
        }
    }
}

#[test]
fn calibration_matches_kron_oracle() {
    let m = ReadoutNoiseModel::new(vec![ReadoutError { p01: 0.01, p10: 0.07 }, ReadoutError { p01: 0.03, p10: 0.05 }]).unwrap();
    assert!(max_diff(m.calibration_matrix().matrix(), &kron_confusion(&m)) < 1e-15);
}

fn all_zero(shots: u64) -> ShotHistogram {
    ShotHistogram::from_counts(2, vec![shots, 0, 0, 0]).unwrap()
}

#[test]
fn binomial_corruption() {
    let shots = 20_000u64;
    let model = ReadoutNoiseModel::uniform(2, 0.02, 0.0).unwrap();
    let noisy = corrupt(&all_zero(shots), &model, 5).unwrap();
    let n = shots as f64;
    for (bits, p) in [("00", 0.98 * 0.98), ("01", 0.98 * 0.02), ("10", 0.02 * 0.98), ("11", 0.02 * 0.02)] {
        let mean = n * p;
        let sd = (n * p * (1.0 - p)).sqrt();
        let got = noisy.count(bits) as f64;
        assert!((got - mean).abs() <= 5.0 * sd, "{bits}: {got} vs {mean} ± {sd}");
    }
    assert_eq!(noisy.shots(), shots);
}

#[test]
fn exact_recovery_from_expected_counts() {
    let model = ReadoutNoiseModel::uniform(2, 0.02, 0.03).unwrap();
    let a = model.calibration_matrix();
    let truth = [0.5, 0.1, 0.3, 0.1];
    let observed = a.forward(&truth);
    let scale = 1_000_000.0;
    let counts: Vec<u64> = observed.iter().map(|p| (p * scale).round() as u64).collect();
    let hist = ShotHistogram::from_counts(2, counts).unwrap();
    let recovered = mitigate(&hist, &a).unwrap();
    for (r, t) in recovered.iter().zip(truth) {
        assert!((r - t).abs() < 1e-5);
    }
}

#[test]
fn mitigated_ground_population() {
    let shots = 20_000u64;
    let model = ReadoutNoiseModel::uniform(2, 0.02, 0.0).unwrap();
    let a = model.calibration_matrix();
    let mut total = 0.0;
    let seeds = 20;
    for s in 0..seeds {
        let noisy = corrupt(&all_zero(shots), &model, seed::derive(77, s)).unwrap();
        let p = mitigate(&noisy, &a).unwrap();
        assert!(p[0] >= 0.999 - 3.0 / (shots as f64).sqrt(), "seed {s}: {}", p[0]);
        total += p[0];
    }
    assert!(total / seeds as f64 >= 0.999);
}

#[test]
fn singular_calibration_is_rejected() {
    let model = ReadoutNoiseModel::uniform(2, 0.5, 0.5).unwrap();
    assert!(mitigate(&all_zero(100), &model.calibration_matrix()).is_err());
}

#[test]
fn mitigation_improves_energy_at_eigenstates() {
    let h = lmg3_exact();
    let model = ReadoutNoiseModel::uniform(2, 0.02, 0.02).unwrap();
    let raw = Estimator::new(&h, &EstimatorConfig::shots(20_000, 0).with_noise(model.clone(), false)).unwrap();
    let mit = Estimator::new(&h, &EstimatorConfig::shots(20_000, 0).with_noise(model, true)).unwrap();
    let points = eigenstate_points(&h).unwrap();
    assert_eq!(points.len(), 4);
    for (exact, theta) in points {
        let (mut dr, mut dm) = (0.0, 0.0);
        for s in 0..50 {
            let sd = seed::derive(1234, s);
            dr += (raw.energy(theta, sd).unwrap() - exact).abs();
            dm += (mit.energy(theta, sd).unwrap() - exact).abs();
        }
        assert!(dm < dr, "E = {exact}: mitigated {dm} vs raw {dr}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn mitigated_output_is_a_distribution(
        counts in prop::collection::vec(0u64..500, 4),
        p01 in 0.0f64..0.2,
        p10 in 0.0f64..0.2,
    ) {
        prop_assume!(counts.iter().sum::<u64>() > 0);
        let hist = ShotHistogram::from_counts(2, counts).unwrap();
        let a = ReadoutNoiseModel::uniform(2, p01, p10).unwrap().calibration_matrix();
        let p = mitigate(&hist, &a).unwrap();
        prop_assert!(p.iter().all(|&x| x >= 0.0));
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
