//! Fixtures shared by the benchmarks.

use modp_satake_core::ffield::{FieldMatrix, FieldSpec};
use modp_satake_core::gl2ind::HeckePoly;
use modp_satake_core::weights::Weight;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn weight(p: u64, r: u32) -> Weight {
    Weight::new(&FieldSpec::prime(p).expect("prime"), r, 0).expect("weight")
}

pub fn phi_pow(w: &Weight, n: usize) -> HeckePoly {
    HeckePoly::phi_pow(w.field(), n)
}

/// A seeded random square matrix.
pub fn random_matrix(field: &FieldSpec, n: usize, seed: u64) -> FieldMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..n).map(|_| (0..n).map(|_| field.from_index(rng.gen_range(0..field.order()))).collect()).collect();
    FieldMatrix::from_rows(field, rows).expect("square")
}
