//! Smooth characters of Q_p^x and of the diagonal torus, the Laurent Hecke
//! variable acting on `ind_{ZK_T}^T` of a unit character, and cokernels and
//! localizations of such modules.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::ffield::{Embedding, FieldElement, FieldMatrix, FieldSpec};
use crate::padic::{GMatrix, PScalar};

fn modp1(p: u64, e: i64) -> u32 {
    let m = (p as i64 - 1).max(1);
    e.rem_euclid(m) as u32
}

/// Teichmüller character of a unit, as an element of the prime field inside `field`.
fn omega(field: &FieldSpec, unit: &PScalar) -> FieldElement {
    let r = unit.num() % num_bigint::BigInt::from(field.p());
    field.from_int(i64::try_from(r).expect("small residue"))
}

/// A character of the torus units `diag(u1, u2) ↦ ω(u1)^e1 ω(u2)^e2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct UnitCharacter {
    pub p: u64,
    pub e1: u32,
    pub e2: u32,
}

impl UnitCharacter {
    pub fn new(p: u64, e1: i64, e2: i64) -> Self {
        UnitCharacter { p, e1: modp1(p, e1), e2: modp1(p, e2) }
    }

    pub fn twist(&self, e: i64) -> Self {
        Self::new(self.p, self.e1 as i64 + e, self.e2 as i64 + e)
    }
}

/// `μ_λ ω^e`: `x ↦ λ^{val(x)} ω(x p^{-val(x)})^e`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PadicCharacter {
    pub lambda: FieldElement,
    pub e: u32,
}

impl PadicCharacter {
    pub fn new(lambda: FieldElement, e: i64) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidParameters("character value at p must be nonzero".into()));
        }
        let p = lambda.field().p();
        Ok(PadicCharacter { e: modp1(p, e), lambda })
    }

    pub fn trivial(field: &FieldSpec) -> Self {
        PadicCharacter { lambda: field.one(), e: 0 }
    }

    pub fn omega(field: &FieldSpec) -> Self {
        PadicCharacter { lambda: field.one(), e: modp1(field.p(), 1) }
    }

    pub fn omega_pow(field: &FieldSpec, e: i64) -> Self {
        PadicCharacter { lambda: field.one(), e: modp1(field.p(), e) }
    }

    pub fn mu(lambda: FieldElement) -> Result<Self> {
        Self::new(lambda, 0)
    }

    pub fn field(&self) -> &FieldSpec {
        self.lambda.field()
    }

    pub fn p(&self) -> u64 {
        self.field().p()
    }

    pub fn eval(&self, x: &PScalar) -> Result<FieldElement> {
        let v = x.val().ok_or_else(|| Error::InvalidParameters("character evaluated at 0".into()))?;
        let at_p = self.lambda.powi(v).expect("lambda is a unit");
        Ok(&at_p * &omega(self.field(), x).pow(self.e as u64))
    }

    pub fn mul(&self, other: &Self) -> Self {
        PadicCharacter { lambda: &self.lambda * &other.lambda, e: modp1(self.p(), self.e as i64 + other.e as i64) }
    }

    pub fn inv(&self) -> Self {
        PadicCharacter { lambda: self.lambda.inv().expect("unit"), e: modp1(self.p(), -(self.e as i64)) }
    }

    pub fn embed(&self, emb: &Embedding) -> Self {
        PadicCharacter { lambda: emb.apply(&self.lambda), e: self.e }
    }

    pub fn to_json(&self) -> Value {
        json!({"lambda": self.lambda.to_compact_json(), "e": self.e})
    }
}

impl fmt::Display for PadicCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lambda.is_one(), self.e) {
            (true, 0) => write!(f, "1"),
            (true, e) => write!(f, "ω^{e}"),
            (false, 0) => write!(f, "μ_{}", self.lambda),
            (false, e) => write!(f, "μ_{} ω^{e}", self.lambda),
        }
    }
}

impl fmt::Debug for PadicCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `χ1 ⊠ χ2: diag(a, d) ↦ χ1(a) χ2(d)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorusCharacter {
    pub chi1: PadicCharacter,
    pub chi2: PadicCharacter,
}

impl TorusCharacter {
    pub fn new(chi1: PadicCharacter, chi2: PadicCharacter) -> Self {
        assert_eq!(chi1.field(), chi2.field(), "torus character factors over different fields");
        TorusCharacter { chi1, chi2 }
    }

    pub fn field(&self) -> &FieldSpec {
        self.chi1.field()
    }

    pub fn eval(&self, m: &GMatrix) -> Result<FieldElement> {
        if !m.is_diagonal() {
            return Err(Error::InvalidParameters(format!("{m} is not diagonal")));
        }
        Ok(&self.chi1.eval(m.a())? * &self.chi2.eval(m.d())?)
    }

    pub fn units(&self) -> UnitCharacter {
        UnitCharacter { p: self.chi1.p(), e1: self.chi1.e, e2: self.chi2.e }
    }

    pub fn central(&self) -> PadicCharacter {
        self.chi1.mul(&self.chi2)
    }

    /// `(χ ⊠ χ) ⊗ self`.
    pub fn twist(&self, chi: &PadicCharacter) -> Self {
        TorusCharacter { chi1: self.chi1.mul(chi), chi2: self.chi2.mul(chi) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        TorusCharacter { chi1: self.chi1.mul(&other.chi1), chi2: self.chi2.mul(&other.chi2) }
    }

    pub fn embed(&self, emb: &Embedding) -> Self {
        TorusCharacter { chi1: self.chi1.embed(emb), chi2: self.chi2.embed(emb) }
    }

    pub fn to_json(&self) -> Value {
        json!({"chi1": self.chi1.to_json(), "chi2": self.chi2.to_json()})
    }
}

impl fmt::Display for TorusCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊠ {}", self.chi1, self.chi2)
    }
}

impl fmt::Debug for TorusCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A Laurent polynomial in X, where X acts on `ind_{ZK_T}^T` by left
/// translation by `diag(p, 1)^{-1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeLaurent {
    field: FieldSpec,
    coeffs: BTreeMap<i64, FieldElement>,
}

impl HeckeLaurent {
    pub fn zero(field: &FieldSpec) -> Self {
        HeckeLaurent { field: field.clone(), coeffs: BTreeMap::new() }
    }

    pub fn monomial(c: FieldElement, n: i64) -> Self {
        let mut out = Self::zero(&c.field().clone());
        out.add_term(n, c);
        out
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::monomial(field.one(), 0)
    }

    pub fn x_pow(field: &FieldSpec, n: i64) -> Self {
        Self::monomial(field.one(), n)
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::monomial(c, 0)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn add_term(&mut self, n: i64, c: FieldElement) {
        let entry = self.coeffs.entry(n).or_insert_with(|| c.field().zero());
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn coeff(&self, n: i64) -> FieldElement {
        self.coeffs.get(&n).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &FieldElement)> {
        self.coeffs.iter().map(|(&n, c)| (n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in other.terms() {
            out.add_term(n, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let mut out = Self::zero(&self.field);
        for (n, a) in self.terms() {
            out.add_term(n, a * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.field);
        for (n, a) in self.terms() {
            for (m, b) in other.terms() {
                out.add_term(n + m, a * b);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(&self.field), |acc, _| acc.mul(self))
    }

    /// `X^n ↦ X^{-n}`.
    pub fn invert_variable(&self) -> Self {
        let mut out = Self::zero(&self.field);
        for (n, c) in self.terms() {
            out.add_term(-n, c.clone());
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (n, c) in self.terms() {
            m.insert(format!("X^{n}"), c.to_compact_json());
        }
        Value::Object(m)
    }

    pub fn from_json(field: &FieldSpec, v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse(format!("Laurent polynomial must be an object: {v}")))?;
        let mut out = Self::zero(field);
        for (k, c) in obj {
            let n: i64 = k
                .strip_prefix("X^")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad monomial key {k}")))?;
            out.add_term(n, field.element_from_json(c)?);
        }
        Ok(out)
    }
}

impl fmt::Display for HeckeLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(n, c)| match (n, c.is_one()) {
                (0, _) => format!("{c}"),
                (_, true) => format!("X^{n}"),
                _ => format!("{c}·X^{n}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for HeckeLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The cokernel of `op - λ` on `ind_{ZK_T}^T(σ)` with central character ζ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IndCokernel {
    Zero,
    Character(TorusCharacter),
    /// Finite-dimensional but not a character: X acts by `x_action`
    /// on the basis `X^lo, ..., X^{hi-1}`.
    Module { dim: usize, x_action: FieldMatrix },
}

impl IndCokernel {
    pub fn character(&self) -> Option<&TorusCharacter> {
        match self {
            IndCokernel::Character(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, IndCokernel::Zero)
    }

    pub fn dim(&self) -> usize {
        match self {
            IndCokernel::Zero => 0,
            IndCokernel::Character(_) => 1,
            IndCokernel::Module { dim, .. } => *dim,
        }
    }

    pub fn twist(&self, chi: &PadicCharacter) -> Self {
        match self {
            IndCokernel::Character(c) => IndCokernel::Character(c.twist(chi)),
            other => other.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            IndCokernel::Zero => Value::from(0),
            IndCokernel::Character(c) => c.to_json(),
            IndCokernel::Module { dim, x_action } => json!({"dim": dim, "X": x_action.to_json()}),
        }
    }
}

impl fmt::Display for IndCokernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndCokernel::Zero => write!(f, "0"),
            IndCokernel::Character(c) => write!(f, "{c}"),
            IndCokernel::Module { dim, .. } => write!(f, "<module of dim {dim}>"),
        }
    }
}

pub fn ind_cokernel(op: &HeckeLaurent, lambda: &FieldElement, units: UnitCharacter, central: &PadicCharacter) -> Result<IndCokernel> {
    let field = op.field();
    if lambda.field() != field || central.field() != field {
        return Err(Error::FieldMismatch("operator, shift and central character must share a field".into()));
    }
    if (units.e1 + units.e2) % (field.p() as u32 - 1).max(1) != central.e {
        return Err(Error::Inconsistent(format!(
            "central character {central} disagrees with unit character ω^{} ⊠ ω^{}",
            units.e1, units.e2
        )));
    }
    let q = op.sub(&HeckeLaurent::constant(lambda.clone()));
    let (Some(lo), Some(hi)) = (q.min_exp(), q.max_exp()) else {
        return Err(Error::InvalidParameters("op - λ vanishes; the cokernel is the whole induced module".into()));
    };
    let dim = (hi - lo) as usize;
    match dim {
        0 => Ok(IndCokernel::Zero),
        1 => {
            // X = ξ in the quotient; X is translation by diag(p,1)^{-1}
            let xi = -&(&q.coeff(lo) * &q.coeff(hi).inv().expect("leading coefficient"));
            let chi1 = PadicCharacter::new(xi.inv().expect("ξ is a unit"), units.e1 as i64)?;
            let chi2 = PadicCharacter::new(&central.lambda * &xi, units.e2 as i64)?;
            Ok(IndCokernel::Character(TorusCharacter::new(chi1, chi2)))
        }
        _ => {
            let lead_inv = q.coeff(hi).inv().expect("leading coefficient");
            let mut x = FieldMatrix::zeros(field, dim, dim);
            for i in 0..dim - 1 {
                x[(i + 1, i)] = field.one();
            }
            for i in 0..dim {
                x[(i, dim - 1)] = -&(&q.coeff(lo + i as i64) * &lead_inv);
            }
            Ok(IndCokernel::Module { dim, x_action: x })
        }
    }
}

/// Basis of the eventual image `im(z^n)`, n = dim.
pub fn eventual_image(z: &FieldMatrix) -> Result<Vec<Vec<FieldElement>>> {
    if !z.is_square() {
        return Err(Error::DimensionMismatch("localization needs a square matrix".into()));
    }
    Ok(z.pow(z.rows() as u64)?.image())
}

/// Dimension of `V[z^{-1}]` for a finite-dimensional V.
pub fn localize_finite(z: &FieldMatrix) -> Result<usize> {
    Ok(eventual_image(z)?.len())
}

/// The canonical map `V → V[z^{-1}]`, realized as the projection onto the
/// eventual image along the generalized kernel, in coordinates of
/// `eventual_image(z)`.
pub fn localization_map(z: &FieldMatrix) -> Result<FieldMatrix> {
    let field = z.field().clone();
    let n = z.rows();
    let zn = z.pow(n as u64)?;
    let e = zn.image();
    let k = zn.kernel();
    let mut cols = e.clone();
    cols.extend(k);
    let basis = FieldMatrix::from_columns(&field, n, &cols);
    let inv = basis.inverse()?;
    let rows: Vec<Vec<FieldElement>> = (0..e.len()).map(|i| inv.row(i).to_vec()).collect();
    if rows.is_empty() {
        return Ok(FieldMatrix::zeros(&field, 0, n));
    }
    FieldMatrix::from_rows(&field, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn character_values() {
        let k = f(7);
        let lam = k.from_int(3);
        let mu = PadicCharacter::mu(lam.clone()).unwrap();
        assert_eq!(mu.eval(&PScalar::from_int(7, 7)).unwrap(), lam);
        let w = PadicCharacter::omega(&k);
        assert!(w.eval(&PScalar::from_int(7, 7)).unwrap().is_one());
        let chi = PadicCharacter::new(lam, 2).unwrap();
        assert_eq!(chi.eval(&PScalar::from_int(7, 3)).unwrap(), k.from_int(9));
        assert_eq!(chi.eval(&PScalar::from_int(7, 10)).unwrap(), k.from_int(9));
        assert!(chi.eval(&PScalar::zero(7)).is_err());
    }

    #[test]
    fn cokernel_examples() {
        for p in [3u64, 5, 7] {
            let k = f(p);
            for r in 0..p as i64 {
                let central = PadicCharacter::omega_pow(&k, r);
                for l in 1..p as i64 {
                    let lam = k.from_int(l);
                    let lam_inv = lam.inv().unwrap();
                    let got = ind_cokernel(&HeckeLaurent::x_pow(&k, 1), &lam, UnitCharacter::new(p, 0, r), &central).unwrap();
                    let want = TorusCharacter::new(
                        PadicCharacter::mu(lam_inv.clone()).unwrap(),
                        PadicCharacter::new(lam.clone(), r).unwrap(),
                    );
                    assert_eq!(got, IndCokernel::Character(want));
                    let got = ind_cokernel(&HeckeLaurent::x_pow(&k, -1), &lam, UnitCharacter::new(p, r + 1, -1), &central).unwrap();
                    let want = TorusCharacter::new(
                        PadicCharacter::new(lam.clone(), r + 1).unwrap(),
                        PadicCharacter::new(lam_inv, -1).unwrap(),
                    );
                    assert_eq!(got, IndCokernel::Character(want));
                }
                let z = ind_cokernel(&HeckeLaurent::x_pow(&k, 1), &k.zero(), UnitCharacter::new(p, 0, r), &central).unwrap();
                assert!(z.is_zero());
            }
        }
    }

    #[test]
    fn cokernel_twisting() {
        // shifting λ by c under a μ_c twist of the module
        let p = 5;
        let k = f(p);
        for c in 1..p as i64 {
            let c = k.from_int(c);
            for l in 1..p as i64 {
                let lam = k.from_int(l);
                let base = ind_cokernel(&HeckeLaurent::x_pow(&k, 1), &lam, UnitCharacter::new(p, 0, 2), &PadicCharacter::omega_pow(&k, 2)).unwrap();
                // after twisting by μ_c ⊠ μ_c the old translation X becomes c·X
                // and the central value at p picks up c^2
                let op = HeckeLaurent::monomial(c.clone(), 1);
                let central = PadicCharacter::new(&c * &c, 2).unwrap();
                let twisted = ind_cokernel(&op, &lam, UnitCharacter::new(p, 0, 2), &central).unwrap();
                assert_eq!(twisted, base.twist(&PadicCharacter::mu(c.clone()).unwrap()));
            }
        }
    }

    #[test]
    fn higher_cokernels() {
        let k = f(3);
        let op = HeckeLaurent::x_pow(&k, 2);
        let m = ind_cokernel(&op, &k.one(), UnitCharacter::new(3, 0, 0), &PadicCharacter::trivial(&k)).unwrap();
        assert_eq!(m.dim(), 2);
        let bad = ind_cokernel(&op, &k.one(), UnitCharacter::new(3, 1, 0), &PadicCharacter::trivial(&k));
        assert!(bad.is_err());
    }

    #[test]
    fn localization_dims() {
        let k = f(5);
        assert_eq!(localize_finite(&FieldMatrix::identity(&k, 3)).unwrap(), 3);
        let nil = FieldMatrix::from_ints(&k, &[vec![0, 1], vec![0, 0]]);
        assert_eq!(localize_finite(&nil).unwrap(), 0);
        let d = FieldMatrix::from_ints(&k, &[vec![1, 0], vec![0, 0]]);
        assert_eq!(localize_finite(&d).unwrap(), 1);
    }

    #[test]
    fn laurent_json() {
        let k = f(5);
        let l = HeckeLaurent::x_pow(&k, 1);
        assert_eq!(l.to_json().to_string(), r#"{"X^1":1}"#);
        assert_eq!(HeckeLaurent::from_json(&k, &l.to_json()).unwrap(), l);
        assert_eq!(l.mul(&HeckeLaurent::x_pow(&k, -1)), HeckeLaurent::one(&k));
    }
}
