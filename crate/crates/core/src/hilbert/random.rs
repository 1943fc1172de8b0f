use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{vecops, StateVector, UnitaryMatrix, C64};

/// Deterministic generator for a given seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Uniformly distributed point on the unit sphere of `C^dim`.
pub fn random_state_from<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> StateVector {
    assert!(dim >= 1, "random_state needs dim >= 1");
    loop {
        let v: Vec<C64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        if vecops::norm(&v) > 1e-12 {
            return StateVector::normalized(v).expect("nonzero gaussian vector normalizes");
        }
    }
}

pub fn random_state(dim: usize, seed: u64) -> StateVector {
    random_state_from(&mut seeded_rng(seed), dim)
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// diagonal of `R` made real-positive.
pub fn random_unitary_from<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> UnitaryMatrix {
    assert!(dim >= 1, "random_unitary needs dim >= 1");
    let g = DMatrix::<C64>::from_fn(dim, dim, |_, _| complex_gaussian(rng));
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let mut entries = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let rjj = r[(j, j)];
            let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { C64::new(1.0, 0.0) };
            entries.push(q[(i, j)] * phase);
        }
    }
    UnitaryMatrix::from_entries_unchecked(dim, entries)
}

pub fn random_unitary(dim: usize, seed: u64) -> UnitaryMatrix {
    random_unitary_from(&mut seeded_rng(seed), dim)
}
