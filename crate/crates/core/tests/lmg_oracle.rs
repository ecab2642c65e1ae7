//! The quasispin matrix against an independent Jordan-Wigner construction of
//! the full fermionic Hamiltonian on `2N` modes.
mod common;

use lmg_variance::encoder::{spectrum, DenseHermitian};
use lmg_variance::lmg::{build_fock_sector, build_quasispin, LmgParams};
use lmg_variance::seed;
use nalgebra::DMatrix;
use rand::Rng;

/// Annihilator for `mode` on `modes` fermionic modes, mode 0 the leftmost factor.
fn annihilator(mode: usize, modes: usize) -> DMatrix<f64> {
    let z = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
    let id = DMatrix::<f64>::identity(2, 2);
    // |0⟩ empty, |1⟩ occupied; a = |0⟩⟨1|
    let lower = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
    (0..modes).fold(DMatrix::from_element(1, 1, 1.0), |acc, k| {
        let f = match k.cmp(&mode) {
            std::cmp::Ordering::Less => &z,
            std::cmp::Ordering::Equal => &lower,
            std::cmp::Ordering::Greater => &id,
        };
        acc.kronecker(f)
    })
}

/// Eigenvalues of the fermionic Hamiltonian restricted to `N` particles.
fn jordan_wigner_sector(p: &LmgParams) -> Vec<f64> {
    let n = p.n;
    let modes = 2 * n;
    let dim = 1usize << modes;
    // mode 2k is (k, σ = −1), 2k + 1 is (k, σ = +1)
    let a: Vec<DMatrix<f64>> = (0..modes).map(|m| annihilator(m, modes)).collect();
    let ad: Vec<DMatrix<f64>> = a.iter().map(|x| x.transpose()).collect();
    let mut jz = DMatrix::zeros(dim, dim);
    let mut jp = DMatrix::zeros(dim, dim);
    for k in 0..n {
        let (dn, up) = (2 * k, 2 * k + 1);
        jz += (&ad[up] * &a[up] - &ad[dn] * &a[dn]) * 0.5;
        jp += &ad[up] * &a[dn];
    }
    let jm = jp.transpose();
    let h = &jz * p.epsilon
        + (&jp * &jp + &jm * &jm) * (0.5 * p.v)
        + (&jp * &jm + &jm * &jp) * (0.5 * p.w);
    let sector: Vec<usize> = (0..dim).filter(|s| s.count_ones() as usize == n).collect();
    let block = DMatrix::from_fn(sector.len(), sector.len(), |i, j| h[(sector[i], sector[j])]);
    spectrum(&DenseHermitian::from_real(&block).unwrap())
}

fn contained(needles: &[f64], haystack: &[f64], tol: f64) -> bool {
    needles.iter().all(|e| haystack.iter().any(|f| (e - f).abs() < tol))
}

#[test]
fn quasispin_levels_appear_in_jordan_wigner_sector() {
    let mut rng = seed::rng(31);
    for n in 1..=3 {
        for _ in 0..10 {
            let p = LmgParams::new(n, 1.0, rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)).unwrap();
            let q = spectrum(&build_quasispin(&p).unwrap());
            let oracle = jordan_wigner_sector(&p);
            assert!(contained(&q, &oracle, 1e-9), "N={n} {p:?}: {q:?} not in {oracle:?}");
        }
    }
}

#[test]
fn library_fock_sector_matches_jordan_wigner() {
    let mut rng = seed::rng(32);
    for n in 1..=3 {
        for _ in 0..5 {
            let p = LmgParams::new(n, 1.0, rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)).unwrap();
            let lib = spectrum(&build_fock_sector(&p).unwrap());
            let oracle = jordan_wigner_sector(&p);
            assert_eq!(lib.len(), oracle.len());
            for (a, b) in lib.iter().zip(&oracle) {
                assert!((a - b).abs() < 1e-9, "N={n}: {lib:?} vs {oracle:?}");
            }
        }
    }
}

#[test]
fn three_particle_reference_levels() {
    let p = LmgParams::new(3, 1.0, 0.5, 0.0).unwrap();
    let fock = spectrum(&build_fock_sector(&p).unwrap());
    assert_eq!(fock.len(), 20);
    assert!(contained(&common::LMG3_PRINTED, &fock, 1e-3));
    assert!(contained(&common::LMG3_EXACT, &fock, 1e-9));
}

#[test]
fn two_particle_example() {
    let p = LmgParams::new(2, 1.0, 0.3, 0.1).unwrap();
    let q = build_quasispin(&p).unwrap();
    let diag: Vec<f64> = (0..3).map(|i| q.get(i, i).re).collect();
    for (d, want) in diag.iter().zip([-0.9, 0.2, 1.1]) {
        assert!((d - want).abs() < 1e-12);
    }
    assert!((q.get(2, 0).re.abs() - 0.3).abs() < 1e-12);
    assert!(contained(&spectrum(&q), &jordan_wigner_sector(&p), 1e-9));
}
