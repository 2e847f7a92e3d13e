use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::gmatrix::GMatrix;
use super::scalar::PScalar;
use crate::error::{Error, Result};

/// A vertex of the tree, i.e. a coset `g ZK`, represented by
/// `[[p^a, u], [0, 1]]` with `u` reduced into `[0, p^a)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexCoset {
    pub a: i64,
    pub u: PScalar,
}

impl VertexCoset {
    pub fn new(a: i64, u: PScalar) -> Self {
        let u = u.reduce_mod(a);
        VertexCoset { a, u }
    }

    pub fn origin(p: u64) -> Self {
        VertexCoset { a: 0, u: PScalar::zero(p) }
    }

    pub fn p(&self) -> u64 {
        self.u.p()
    }

    pub fn rep(&self) -> GMatrix {
        let p = self.p();
        GMatrix::upper(PScalar::p_power(p, self.a), self.u.clone(), PScalar::one(p))
    }

    /// Number of edges to the origin.
    pub fn distance(&self) -> i64 {
        let vu = self.u.val().unwrap_or(i64::MAX);
        self.a - 2 * self.a.min(vu).min(0)
    }

    /// The p+1 adjacent vertices.
    pub fn neighbours(&self) -> Vec<VertexCoset> {
        let rep = self.rep();
        neighbour_steps(self.p()).iter().map(|s| canonical_vertex(&rep.mul(s)).0).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({"a": self.a, "u": self.u.to_json()})
    }

    pub fn from_json(p: u64, v: &Value) -> Result<Self> {
        let a = v.get("a").and_then(Value::as_i64).ok_or_else(|| Error::Parse(format!("bad vertex {v}")))?;
        let u = PScalar::from_json(p, v.get("u").ok_or_else(|| Error::Parse(format!("bad vertex {v}")))?)?;
        Ok(Self::new(a, u))
    }
}

impl fmt::Display for VertexCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.u)
    }
}

impl fmt::Debug for VertexCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Right multipliers taking the origin to its neighbours: `[[p, i], [0, 1]]`
/// for `0 <= i < p`, and `diag(1, p)`.
pub fn neighbour_steps(p: u64) -> Vec<GMatrix> {
    let mut out: Vec<GMatrix> = (0..p as i64).map(|i| GMatrix::from_ints(p, [[p as i64, i], [0, 1]])).collect();
    out.push(GMatrix::diag_p(p, 0, 1));
    out
}

/// Splits `g = rep(v) * h` with `h` in ZK.
pub fn canonical_vertex(g: &GMatrix) -> (VertexCoset, GMatrix) {
    let (b, _) = g.iwasawa();
    let (alpha, beta, delta) = (b.a(), b.b(), b.d());
    let i = alpha.pexp();
    let j = delta.pexp();
    let a = i - j;
    let u = beta.shift(-j).reduce_times_unit_inverse(delta.num(), a);
    let v = VertexCoset { a, u };
    let h = v.rep().inverse().expect("vertex reps have p-power determinant").mul(g);
    debug_assert!(h.in_zk(), "canonical_vertex: remainder {h} not in ZK for {g}");
    (v, h)
}

/// A class in `U / K_U`, i.e. `u mod Z_p` with `u` in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct UCoset {
    pub u: PScalar,
}

impl UCoset {
    pub fn new(u: &PScalar) -> Self {
        UCoset { u: u.reduce_mod(0) }
    }

    pub fn matrix(&self) -> GMatrix {
        GMatrix::unipotent(&self.u)
    }

    /// Depth of the class: 0 for the trivial class, else `-val(u)`.
    pub fn depth(&self) -> i64 {
        self.u.val().map_or(0, |v| -v)
    }
}

/// The `p^n` classes `j / p^n`, `0 <= j < p^n`, in increasing order.
pub fn enumerate_ucosets(p: u64, n: u32) -> Vec<UCoset> {
    let count = p.checked_pow(n).expect("depth too large");
    (0..count)
        .map(|j| UCoset { u: PScalar::new(p, BigInt::from(j), -(n as i64)) })
        .collect()
}

/// The classes of depth exactly `n` (valuation `-n`).
pub fn ucoset_shell(p: u64, n: u32) -> Vec<UCoset> {
    enumerate_ucosets(p, n).into_iter().filter(|c| c.depth() == n as i64).collect()
}
