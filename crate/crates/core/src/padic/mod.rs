//! GL2 over Z[1/p]: exact scalars, matrices, the Iwasawa decomposition and
//! normal forms for the coset spaces used by induced representations.

mod borel;
mod coset;
mod gmatrix;
mod scalar;

pub use borel::{canonical_borel, BorelCoset, BorelDoubleCoset};
pub use coset::{canonical_vertex, enumerate_ucosets, neighbour_steps, ucoset_shell, UCoset, VertexCoset};
pub use gmatrix::GMatrix;
pub use scalar::PScalar;

use rand::Rng;

/// A random element of GL2(Z_p) with small integer entries, built as a word
/// in elementary and diagonal-unit generators.
pub fn random_gl2_zp<R: Rng>(p: u64, rng: &mut R, length: usize) -> GMatrix {
    let pi = p as i64;
    let mut g = GMatrix::identity(p);
    for _ in 0..length {
        let t = rng.gen_range(0..pi.max(2));
        let s = match rng.gen_range(0..4) {
            0 => GMatrix::from_ints(p, [[1, t], [0, 1]]),
            1 => GMatrix::from_ints(p, [[1, 0], [t, 1]]),
            2 => GMatrix::from_ints(p, [[0, 1], [1, 0]]),
            _ => {
                let u = rng.gen_range(1..pi.max(2));
                GMatrix::from_ints(p, [[u + pi * t, 0], [0, 1]])
            }
        };
        g = g.mul(&s);
    }
    g
}

/// A random element of ZK: a GL2(Z_p) word times a central power of p.
pub fn random_zk<R: Rng>(p: u64, rng: &mut R) -> GMatrix {
    let n = rng.gen_range(-2..=2);
    random_gl2_zp(p, rng, 6).scale(&PScalar::p_power(p, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn random_g(p: u64, rng: &mut ChaCha8Rng) -> GMatrix {
        let a = rng.gen_range(-2..=2);
        let b = rng.gen_range(-2..=2);
        let u = PScalar::fraction(p, rng.gen_range(0..(p * p) as i64), 2);
        random_gl2_zp(p, rng, 3)
            .mul(&GMatrix::diag_p(p, a, b))
            .mul(&GMatrix::unipotent(&u))
            .mul(&random_gl2_zp(p, rng, 3))
    }

    #[test]
    fn words_of_length_two_reach_ten_vertices() {
        let p = 2;
        let steps = neighbour_steps(p);
        let mut seen = BTreeSet::from([VertexCoset::origin(p)]);
        for s in &steps {
            seen.insert(canonical_vertex(s).0);
            for t in &steps {
                seen.insert(canonical_vertex(&s.mul(t)).0);
            }
        }
        assert_eq!(seen.len(), 1 + 3 + 6);
    }

    proptest! {
        #[test]
        fn zk_invariance(p in prop_oneof![Just(2u64), Just(3), Just(5)], seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_g(p, &mut rng);
            let h = random_zk(p, &mut rng);
            let (v, rest) = canonical_vertex(&g);
            prop_assert!(rest.in_zk());
            prop_assert_eq!(v.rep().mul(&rest), g.clone());
            prop_assert_eq!(canonical_vertex(&g.mul(&h)).0, v);
        }

        #[test]
        fn iwasawa_round_trip(p in prop_oneof![Just(2u64), Just(3), Just(5), Just(7)], seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_g(p, &mut rng);
            let (b, k) = g.iwasawa();
            prop_assert!(b.is_upper_triangular());
            prop_assert!(k.in_gl2_zp());
            prop_assert_eq!(b.mul(&k), g);
        }

        #[test]
        fn distinct_cosets_get_distinct_vertices(p in prop_oneof![Just(2u64), Just(3)], seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_g(p, &mut rng);
            let h = random_g(p, &mut rng);
            // adj(g) differs from g^-1 by a central scalar
            let same = g.adjugate().mul(&h).in_zk();
            prop_assert_eq!(same, canonical_vertex(&g).0 == canonical_vertex(&h).0);
        }
    }
}
