//! The weights `Sym^r(k^2) ⊗ det^e` of GL2(Z_p), acting through GL2(F_p),
//! extended to ZK by letting the central element p act by a scalar ζ
//! (trivially unless set with [`Weight::with_central`]).
//!
//! Basis order is `x^r, x^(r-1) y, ..., y^r`; column j of an action matrix is
//! the image of `x^(r-j) y^j` under `f(x, y) ↦ det^e f(ax + cy, bx + dy)`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffield::{Cokernel, FieldElement, FieldMatrix, FieldSpec};
use crate::padic::GMatrix;
use crate::torus::UnitCharacter;

/// Which line the second projection `Y` lands on. The first projection `X`
/// reads the `x^r` coefficient; `Y` reads the `y^r` coefficient (for r = 1
/// this is the `y` line, and in general it is the line the Hecke operator
/// needs for the standard formula).
pub const Y_PROJECTION_TARGET: &str = "y^r";

pub type WeightVector = Vec<FieldElement>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Weight {
    field: FieldSpec,
    r: u32,
    e: u32,
    central: FieldElement,
}

fn poly_mul(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a * b) % p;
        }
    }
    out
}

fn poly_pow(f: &[u64], n: u32, p: u64) -> Vec<u64> {
    (0..n).fold(vec![1 % p], |acc, _| poly_mul(&acc, f, p))
}

impl Weight {
    pub fn new(field: &FieldSpec, r: u32, e: u32) -> Result<Self> {
        let p = field.p();
        if r as u64 > p - 1 {
            return Err(Error::InvalidParameters(format!("weight needs 0 <= r <= p-1, got r={r}, p={p}")));
        }
        let e = (e as u64 % (p - 1).max(1)) as u32;
        Ok(Weight { field: field.clone(), r, e, central: field.one() })
    }

    /// The same weight with p acting by `zeta`.
    pub fn with_central(&self, zeta: &FieldElement) -> Result<Self> {
        if zeta.is_zero() || zeta.field() != &self.field {
            return Err(Error::InvalidParameters(format!("central scalar must be a unit of the weight's field, got {zeta}")));
        }
        Ok(Weight { central: zeta.clone(), ..self.clone() })
    }

    pub fn central(&self) -> &FieldElement {
        &self.central
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn dim(&self) -> usize {
        self.r as usize + 1
    }

    pub fn zero_vector(&self) -> WeightVector {
        vec![self.field.zero(); self.dim()]
    }

    /// The monomial `x^(r-i) y^i`.
    pub fn basis_vector(&self, i: usize) -> WeightVector {
        let mut v = self.zero_vector();
        v[i] = self.field.one();
        v
    }

    pub fn x_r(&self) -> WeightVector {
        self.basis_vector(0)
    }

    pub fn y_r(&self) -> WeightVector {
        self.basis_vector(self.r as usize)
    }

    /// Action of a matrix in GL2(F_p) given by residues `[a, b, c, d]`.
    pub fn action_from_residues(&self, m: [u64; 4]) -> FieldMatrix {
        let p = self.p();
        let [a, b, c, d] = m.map(|x| x % p);
        let det = (a * d % p + p - b * c % p) % p;
        let scale = self.field.from_int(det as i64).pow(self.e as u64);
        let r = self.r;
        let cols: Vec<WeightVector> = (0..=r)
            .map(|j| {
                let f = poly_mul(&poly_pow(&[a, c], r - j, p), &poly_pow(&[b, d], j, p), p);
                f.iter().map(|&x| &self.field.from_int(x as i64) * &scale).collect()
            })
            .collect();
        FieldMatrix::from_columns(&self.field, self.dim(), &cols)
    }

    /// Action of an element of ZK.
    pub fn action(&self, g: &GMatrix) -> Result<FieldMatrix> {
        let (kappa, n) = g.zk_split().ok_or_else(|| Error::NotInZK(g.to_string()))?;
        let m = self.action_from_residues(kappa.residues().expect("integral"));
        Ok(if self.central.is_one() { m } else { m.scale(&self.central.powi(n).expect("nonzero")) })
    }

    pub fn act(&self, g: &GMatrix, v: &[FieldElement]) -> Result<WeightVector> {
        self.action(g)?.mul_vec(v)
    }

    /// Action of the generator `[[1, 1], [0, 1]]` of K_U.
    pub fn gamma(&self) -> FieldMatrix {
        self.action_from_residues([1, 1, 0, 1])
    }

    pub fn proj_x(&self, v: &[FieldElement]) -> FieldElement {
        v[0].clone()
    }

    pub fn proj_y(&self, v: &[FieldElement]) -> FieldElement {
        v[self.r as usize].clone()
    }

    /// The K_U-coinvariant projection; `(γ - 1)` has image spanned by every
    /// monomial but `y^r`, so this is the `y^r` coordinate.
    pub fn eta(&self, v: &[FieldElement]) -> FieldElement {
        self.proj_y(v)
    }

    pub fn ku_invariants(&self) -> Vec<WeightVector> {
        self.gamma().sub(&FieldMatrix::identity(&self.field, self.dim())).expect("square").kernel()
    }

    pub fn ku_coinvariants(&self) -> Cokernel {
        self.gamma().sub(&FieldMatrix::identity(&self.field, self.dim())).expect("square").cokernel()
    }

    /// Torus units acting on the invariant line `x^r`.
    pub fn invariant_character(&self) -> UnitCharacter {
        UnitCharacter::new(self.p(), self.e as i64 + self.r as i64, self.e as i64)
    }

    /// Torus units acting on the coinvariant line spanned by the image of `y^r`.
    pub fn coinvariant_character(&self) -> UnitCharacter {
        UnitCharacter::new(self.p(), self.e as i64, self.e as i64 + self.r as i64)
    }

    pub fn to_json(&self) -> Value {
        json!({"r": self.r, "e": self.e, "p": self.p(), "k": self.field.degree(), "central": self.central.to_compact_json()})
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::random_gl2_zp;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ints(f: &FieldSpec, v: &[i64]) -> WeightVector {
        v.iter().map(|&x| f.from_int(x)).collect()
    }

    #[test]
    fn explicit_actions() {
        let f = FieldSpec::prime(3).unwrap();
        let w = Weight::new(&f, 2, 0).unwrap();
        assert_eq!(w.act(&GMatrix::identity(3), &w.y_r()).unwrap(), w.y_r());
        let g = GMatrix::from_ints(3, [[1, 1], [0, 1]]);
        assert_eq!(w.act(&g, &w.y_r()).unwrap(), ints(&f, &[1, 2, 1]));

        let f5 = FieldSpec::prime(5).unwrap();
        let w = Weight::new(&f5, 1, 0).unwrap();
        let m = GMatrix::from_ints(5, [[2, 0], [0, 3]]);
        assert_eq!(w.act(&m, &w.x_r()).unwrap(), ints(&f5, &[2, 0]));
        assert_eq!(w.act(&m, &w.y_r()).unwrap(), ints(&f5, &[0, 3]));
        // central p acts trivially
        let z = GMatrix::diag_p(5, 1, 1);
        assert_eq!(w.act(&z, &w.y_r()).unwrap(), w.y_r());
        assert!(w.act(&GMatrix::diag_p(5, 1, 0), &w.y_r()).is_err());
    }

    #[test]
    fn projections() {
        let f = FieldSpec::prime(7).unwrap();
        for r in 0..7 {
            let w = Weight::new(&f, r, 0).unwrap();
            let ones = w.act(&GMatrix::from_ints(7, [[1, 1], [0, 1]]), &w.x_r()).unwrap();
            assert!(w.proj_x(&w.x_r()).is_one());
            assert!(w.proj_y(&w.y_r()).is_one());
            if r >= 1 {
                assert!(w.proj_y(&w.x_r()).is_zero());
            }
            // for r = 1 the monomial x^{r-1} y is y^r itself
            if r >= 2 {
                assert!(w.eta(&w.basis_vector(1)).is_zero());
            }
            // (x + y)^r
            let xy = w.act(&GMatrix::from_ints(7, [[1, 1], [0, 1]]), &w.y_r()).unwrap();
            assert!(w.proj_x(&xy).is_one());
            assert_eq!(ones, w.x_r());
        }
    }

    #[test]
    fn invariants_and_coinvariants() {
        for p in [2u64, 3, 5, 7] {
            let f = FieldSpec::prime(p).unwrap();
            for r in 0..p as u32 {
                let w = Weight::new(&f, r, 0).unwrap();
                let inv = w.ku_invariants();
                assert_eq!(inv.len(), 1);
                assert!(inv[0][1..].iter().all(FieldElement::is_zero));
                let co = w.ku_coinvariants();
                assert_eq!(co.dim, 1);
                assert_eq!(co.complement, vec![r as usize]);
                let n = w.gamma().sub(&FieldMatrix::identity(&f, w.dim())).unwrap();
                assert!(n.pow(r as u64 + 1).unwrap().is_zero());
                assert!(!n.pow(r as u64).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn torus_characters() {
        let f = FieldSpec::prime(5).unwrap();
        let w = Weight::new(&f, 2, 1).unwrap();
        assert_eq!(w.invariant_character(), UnitCharacter::new(5, 3, 1));
        assert_eq!(w.coinvariant_character(), UnitCharacter::new(5, 1, 3));
        let t = Weight::new(&f, 0, 0).unwrap();
        assert_eq!(t.invariant_character(), UnitCharacter::new(5, 0, 0));
        // direct check on the invariant line: diag(2, 3) acts by 2^{3} 3^{1}
        let m = GMatrix::from_ints(5, [[2, 0], [0, 3]]);
        let v = w.act(&m, &w.x_r()).unwrap();
        assert_eq!(v[0], f.from_int(8 * 3));
    }

    #[test]
    fn homomorphism_and_coinvariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [3u64, 5] {
            let f = FieldSpec::prime(p).unwrap();
            for r in 0..p as u32 {
                let w = Weight::new(&f, r, 1).unwrap();
                for _ in 0..10 {
                    let g = random_gl2_zp(p, &mut rng, 5);
                    let h = random_gl2_zp(p, &mut rng, 5);
                    let lhs = w.action(&g.mul(&h)).unwrap();
                    let rhs = w.action(&g).unwrap().mul(&w.action(&h).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                    let v: WeightVector = (0..w.dim()).map(|i| f.from_int((i * 3 + 1) as i64)).collect();
                    let t = rand::Rng::gen_range(&mut rng, 0..p as i64);
                    let u = GMatrix::from_ints(p, [[1, t], [0, 1]]);
                    assert_eq!(w.eta(&w.act(&u, &v).unwrap()), w.eta(&v));
                }
            }
        }
    }
}
