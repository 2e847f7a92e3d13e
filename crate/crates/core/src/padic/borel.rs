//! Cosets of the upper triangular Borel B modulo its integral points K_B.

use std::fmt;

use super::gmatrix::GMatrix;
use super::scalar::PScalar;
use crate::error::{Error, Result};

/// A coset `g K_B`, represented by `[[p^i, beta], [0, p^j]]` with `beta` in `[0, p^i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BorelCoset {
    pub i: i64,
    pub j: i64,
    pub beta: PScalar,
}

impl BorelCoset {
    pub fn new(i: i64, j: i64, beta: PScalar) -> Self {
        BorelCoset { i, j, beta: beta.reduce_mod(i) }
    }

    pub fn rep(&self) -> GMatrix {
        let p = self.beta.p();
        GMatrix::upper(PScalar::p_power(p, self.i), self.beta.clone(), PScalar::p_power(p, self.j))
    }

    /// The class in `K_U \ B / K_B`: `beta` only matters mod `p^min(i, j)`.
    pub fn double_coset(&self) -> BorelDoubleCoset {
        let m = self.i.min(self.j);
        BorelDoubleCoset { i: self.i, j: self.j, beta: self.beta.reduce_mod(m) }
    }
}

impl fmt::Debug for BorelCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({}, {}, {})", self.i, self.j, self.beta)
    }
}

/// A double coset `K_U g K_B`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BorelDoubleCoset {
    pub i: i64,
    pub j: i64,
    pub beta: PScalar,
}

impl BorelDoubleCoset {
    pub fn rep(&self) -> GMatrix {
        BorelCoset { i: self.i, j: self.j, beta: self.beta.clone() }.rep()
    }
}

/// Splits an upper triangular `g = rep * k` with `k` in `K_B`.
pub fn canonical_borel(g: &GMatrix) -> Result<(BorelCoset, GMatrix)> {
    if !g.is_upper_triangular() {
        return Err(Error::InvalidParameters(format!("{g} is not upper triangular")));
    }
    let (i, j) = (g.a().pexp(), g.d().pexp());
    let beta = g.b().reduce_times_unit_inverse(g.d().num(), i);
    let c = BorelCoset { i, j, beta };
    let k = c.rep().inverse().expect("p-power determinant").mul(g);
    debug_assert!(k.in_gl2_zp() && k.is_upper_triangular());
    Ok((c, k))
}
