use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use super::scalar::PScalar;
use crate::error::{Error, Result};

/// An invertible 2x2 matrix with entries in Z[1/p], stored as `[[a, b], [c, d]]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GMatrix {
    p: u64,
    e: [PScalar; 4],
}

impl GMatrix {
    pub fn new(p: u64, a: PScalar, b: PScalar, c: PScalar, d: PScalar) -> Result<Self> {
        let m = GMatrix { p, e: [a, b, c, d] };
        if m.e.iter().any(|x| x.p() != p) {
            return Err(Error::InvalidParameters("entries over mixed primes".into()));
        }
        if m.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(m)
    }

    /// Builds from integer entries; panics on singular input (use `new` for checked construction).
    pub fn from_ints(p: u64, rows: [[i64; 2]; 2]) -> Self {
        let s = |n| PScalar::from_int(p, n);
        Self::new(p, s(rows[0][0]), s(rows[0][1]), s(rows[1][0]), s(rows[1][1])).expect("singular integer matrix")
    }

    pub fn identity(p: u64) -> Self {
        Self::diag(p, PScalar::one(p), PScalar::one(p))
    }

    pub fn diag(p: u64, x: PScalar, y: PScalar) -> Self {
        Self::new(p, x, PScalar::zero(p), PScalar::zero(p), y).expect("diagonal entries must be nonzero")
    }

    /// `diag(p^i, p^j)`.
    pub fn diag_p(p: u64, i: i64, j: i64) -> Self {
        Self::diag(p, PScalar::p_power(p, i), PScalar::p_power(p, j))
    }

    /// `[[1, u], [0, 1]]`.
    pub fn unipotent(u: &PScalar) -> Self {
        let p = u.p();
        GMatrix { p, e: [PScalar::one(p), u.clone(), PScalar::zero(p), PScalar::one(p)] }
    }

    /// `[[x, y], [0, z]]`.
    pub fn upper(x: PScalar, y: PScalar, z: PScalar) -> Self {
        let p = x.p();
        Self::new(p, x, y, PScalar::zero(p), z).expect("diagonal entries must be nonzero")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> &PScalar {
        &self.e[0]
    }
    pub fn b(&self) -> &PScalar {
        &self.e[1]
    }
    pub fn c(&self) -> &PScalar {
        &self.e[2]
    }
    pub fn d(&self) -> &PScalar {
        &self.e[3]
    }

    pub fn entries(&self) -> &[PScalar; 4] {
        &self.e
    }

    pub fn det(&self) -> PScalar {
        &(&self.e[0] * &self.e[3]) - &(&self.e[1] * &self.e[2])
    }

    pub fn mul(&self, rhs: &GMatrix) -> GMatrix {
        assert_eq!(self.p, rhs.p, "matrices over different primes");
        let [a, b, c, d] = &self.e;
        let [x, y, z, w] = &rhs.e;
        GMatrix {
            p: self.p,
            e: [&(a * x) + &(b * z), &(a * y) + &(b * w), &(c * x) + &(d * z), &(c * y) + &(d * w)],
        }
    }

    pub fn scale(&self, s: &PScalar) -> GMatrix {
        assert!(!s.is_zero(), "scaling by zero");
        GMatrix { p: self.p, e: self.e.clone().map(|x| &x * s) }
    }

    pub fn adjugate(&self) -> GMatrix {
        let [a, b, c, d] = &self.e;
        GMatrix { p: self.p, e: [d.clone(), -b, -c, a.clone()] }
    }

    /// Inverse inside GL2(Z[1/p]); exists exactly when det is ±p^k.
    pub fn inverse(&self) -> Option<GMatrix> {
        let det = self.det();
        let n = det.num();
        if !(n.is_one() || (-n).is_one()) {
            return None;
        }
        let inv = PScalar::new(self.p, n.clone(), -det.pexp());
        Some(self.adjugate().scale(&inv))
    }

    pub fn is_integral(&self) -> bool {
        self.e.iter().all(PScalar::is_integral)
    }

    /// Membership in GL2(Z_p).
    pub fn in_gl2_zp(&self) -> bool {
        self.is_integral() && self.det().is_unit()
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.e[2].is_zero()
    }

    pub fn is_diagonal(&self) -> bool {
        self.e[1].is_zero() && self.e[2].is_zero()
    }

    /// Writes `self = p^n * kappa` with kappa in GL2(Z_p), when `self` lies in ZK.
    pub fn zk_split(&self) -> Option<(GMatrix, i64)> {
        let v = self.det().pexp();
        if v % 2 != 0 {
            return None;
        }
        let n = v / 2;
        let kappa = self.scale(&PScalar::p_power(self.p, -n));
        kappa.in_gl2_zp().then_some((kappa, n))
    }

    pub fn in_zk(&self) -> bool {
        self.zk_split().is_some()
    }

    /// Residues mod p of an integral matrix, row-major.
    pub fn residues(&self) -> Option<[u64; 4]> {
        let r: Option<Vec<u64>> = self.e.iter().map(PScalar::residue).collect();
        r.map(|v| [v[0], v[1], v[2], v[3]])
    }

    /// `self = b * kappa` with `b` upper triangular and `kappa` in GL2(Z_p).
    pub fn iwasawa(&self) -> (GMatrix, GMatrix) {
        let p = self.p;
        if self.is_upper_triangular() {
            return (self.clone(), GMatrix::identity(p));
        }
        if self.in_gl2_zp() {
            return (GMatrix::identity(p), self.clone());
        }
        let (c, d) = (self.c(), self.d());
        let beta0 = match (c.val(), d.val()) {
            (Some(x), Some(y)) => x.min(y),
            (Some(x), None) => x,
            _ => unreachable!("c is nonzero here"),
        };
        let big_c = c.shift(-beta0).to_integer().expect("integral after shift");
        let big_d = d.shift(-beta0).to_integer().expect("integral after shift");
        let g0 = big_c.gcd(&big_d);
        let (c1, d1) = (&big_c / &g0, &big_d / &g0);
        // x*d1 - y*c1 = 1
        let eg = d1.extended_gcd(&c1);
        let (mut x, mut y) = (eg.x, -eg.y);
        if eg.gcd.is_negative() {
            x = -x;
            y = -y;
        }
        debug_assert_eq!(&x * &d1 - &y * &c1, BigInt::one());
        let s = |n: &BigInt| PScalar::from_bigint(p, n.clone());
        let kappa = GMatrix { p, e: [s(&x), s(&y), s(&c1), s(&d1)] };
        let kappa_inv = GMatrix { p, e: [s(&d1), s(&-&y), s(&-&c1), s(&x)] };
        let b = self.mul(&kappa_inv);
        debug_assert!(b.is_upper_triangular());
        (b, kappa)
    }

    pub fn to_json(&self) -> Value {
        let [a, b, c, d] = &self.e;
        json!([[a.to_json(), b.to_json()], [c.to_json(), d.to_json()]])
    }

    pub fn from_json(p: u64, v: &Value) -> Result<Self> {
        let entry = |i: usize, j: usize| -> Result<PScalar> {
            let x = v.get(i).and_then(|r| r.get(j)).ok_or_else(|| Error::Parse(format!("bad matrix {v}")))?;
            PScalar::from_json(p, x)
        };
        Self::new(p, entry(0, 0)?, entry(0, 1)?, entry(1, 0)?, entry(1, 1)?)
    }
}

impl fmt::Display for GMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.e;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl fmt::Debug for GMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
