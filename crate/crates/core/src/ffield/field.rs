use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde_json::Value;

use super::poly;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
struct Inner {
    p: u32,
    k: usize,
    /// Monic modulus, low degree first, length k + 1.
    modulus: Vec<u32>,
}

/// The finite field F_{p^k} = F_p[x]/(modulus). Cheap to clone.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.k, self.0.modulus)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Builds F_{p^k} with the lexicographically smallest monic irreducible
    /// modulus, ordering by (c_{k-1}, ..., c_0). For k = 1 the modulus is x.
    pub fn new(p: u64, k: usize) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidDegree(k));
        }
        let total = (p as u128).checked_pow(k as u32).filter(|&q| q < 1 << 40);
        let Some(total) = total else {
            return Err(Error::InvalidDegree(k));
        };
        for n in 0..total as u64 {
            // digit i (least significant first) is c_i, so c_{k-1} is most significant
            let mut f: Vec<u64> = (0..k).map(|i| n / p.pow(i as u32) % p).collect();
            f.push(1);
            if poly::is_irreducible(&f, p) {
                return Ok(Self::with_modulus_unchecked(p as u32, f.iter().map(|&c| c as u32).collect()));
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    /// Uses an explicit modulus (monic, low degree first), checking irreducibility.
    pub fn with_modulus(p: u64, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidParameters("modulus must be monic of degree >= 1".into()));
        }
        let f: Vec<u64> = modulus.iter().map(|&c| c as u64 % p).collect();
        if !poly::is_irreducible(&f, p) {
            return Err(Error::InvalidParameters(format!("modulus {modulus:?} is reducible mod {p}")));
        }
        Ok(Self::with_modulus_unchecked(p as u32, f.iter().map(|&c| c as u32).collect()))
    }

    fn with_modulus_unchecked(p: u32, modulus: Vec<u32>) -> Self {
        let k = modulus.len() - 1;
        FieldSpec(Arc::new(Inner { p, k, modulus }))
    }

    pub fn p(&self) -> u64 {
        self.0.p as u64
    }

    pub fn degree(&self) -> usize {
        self.0.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn order(&self) -> u64 {
        self.p().pow(self.degree() as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), coeffs: vec![0; self.degree()] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.p() as i64;
        let mut e = self.zero();
        e.coeffs[0] = n.rem_euclid(p) as u32;
        e
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.degree() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.degree()
            )));
        }
        let mut e = self.zero();
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = (c % self.p()) as u32;
        }
        Ok(e)
    }

    /// Element with base-p digits of `index` as coefficients; a bijection [0, q) -> F_q.
    pub fn from_index(&self, mut index: u64) -> FieldElement {
        let p = self.p();
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = (index % p) as u32;
            index /= p;
        }
        e
    }

    /// The class of x in F_p[x]/(modulus); equals 0 for the prime field.
    pub fn generator(&self) -> FieldElement {
        if self.degree() == 1 {
            return self.zero();
        }
        let mut e = self.zero();
        e.coeffs[1] = 1;
        e
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |i| self.from_index(i))
    }

    pub fn units(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.order()).map(move |i| self.from_index(i))
    }

    pub fn element_from_json(&self, v: &Value) -> Result<FieldElement> {
        match v {
            Value::Number(n) => {
                let n = n.as_i64().ok_or_else(|| Error::Parse(format!("bad coefficient {n}")))?;
                Ok(self.from_int(n))
            }
            Value::Array(items) => {
                let coeffs = items
                    .iter()
                    .map(|c| c.as_u64().ok_or_else(|| Error::Parse(format!("bad coefficient {c}"))))
                    .collect::<Result<Vec<_>>>()?;
                self.from_coeffs(&coeffs)
            }
            other => Err(Error::Parse(format!("expected coefficient list, got {other}"))),
        }
    }

    /// Finds a field embedding self -> target by locating a root of this
    /// field's modulus in `target`.
    pub fn embedding_into(&self, target: &FieldSpec) -> Result<Embedding> {
        if self.p() != target.p() || !target.degree().is_multiple_of(self.degree()) {
            return Err(Error::FieldMismatch(format!("{self:?} does not embed into {target:?}")));
        }
        let image_of_x = if self.degree() == 1 {
            target.zero()
        } else {
            target
                .elements()
                .find(|a| {
                    let mut acc = target.zero();
                    for &c in self.modulus().iter().rev() {
                        acc = &(&acc * a) + &target.from_int(c as i64);
                    }
                    acc.is_zero()
                })
                .ok_or_else(|| Error::FieldMismatch("no root of modulus in target".into()))?
        };
        Ok(Embedding { source: self.clone(), target: target.clone(), image_of_x })
    }
}

/// A field homomorphism F_{p^k} -> F_{p^k'} determined by the image of x.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: FieldSpec,
    target: FieldSpec,
    image_of_x: FieldElement,
}

impl Embedding {
    pub fn source(&self) -> &FieldSpec {
        &self.source
    }

    pub fn target(&self) -> &FieldSpec {
        &self.target
    }

    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        assert_eq!(a.field, self.source, "embedding applied to foreign element");
        let mut acc = self.target.zero();
        let mut power = self.target.one();
        for &c in &a.coeffs {
            acc = &acc + &(&power * &self.target.from_int(c as i64));
            power = &power * &self.image_of_x;
        }
        acc
    }
}

/// An element of F_{p^k}, coefficients in [0, p) reduced modulo the modulus.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldSpec,
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Inverse of [`FieldSpec::from_index`].
    pub fn index(&self) -> u64 {
        let p = self.field.p();
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * p + c as u64)
    }

    /// Some(c) when the element lies in the prime subfield.
    pub fn as_prime(&self) -> Option<u64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0] as u64)
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents invert. None for 0 to a negative power.
    pub fn powi(&self, exp: i64) -> Option<FieldElement> {
        if exp >= 0 {
            Some(self.pow(exp as u64))
        } else {
            self.inv().map(|i| i.pow(exp.unsigned_abs()))
        }
    }

    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        Some(self.pow(self.field.order() - 2))
    }

    pub fn frobenius(&self) -> FieldElement {
        self.pow(self.field.p())
    }

    /// A square root, if one exists in this field.
    pub fn sqrt(&self) -> Option<FieldElement> {
        self.field.elements().find(|y| &(y * y) == self)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(|&c| Value::from(c)).collect())
    }

    /// Integer for prime fields, coefficient list otherwise.
    pub fn to_compact_json(&self) -> Value {
        if self.field.degree() == 1 {
            Value::from(self.coeffs[0])
        } else {
            self.to_json()
        }
    }

    fn check(&self, other: &FieldElement) {
        assert!(self.field == other.field, "mixed-field arithmetic: {:?} vs {:?}", self.field, other.field);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_prime() {
            return write!(f, "{c}");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "a")?,
                (1, _) => write!(f, "{c}a")?,
                (_, 1) => write!(f, "a^{i}")?,
                _ => write!(f, "{c}a^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        let p = self.field.0.p;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| (a + b) % p).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        let p = self.field.0.p;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| (a + p - b) % p).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.field.0.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        let p = self.field.0.p as u64;
        let k = self.field.0.k;
        if k == 1 {
            let c = (self.coeffs[0] as u64 * rhs.coeffs[0] as u64 % p) as u32;
            return FieldElement { field: self.field.clone(), coeffs: vec![c] };
        }
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a as u64 * b as u64) % p;
            }
        }
        let modulus = &self.field.0.modulus;
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for (j, &m) in modulus.iter().take(k).enumerate() {
                let idx = i - k + j;
                prod[idx] = (prod[idx] + p - c * m as u64 % p) % p;
            }
            prod[i] = 0;
        }
        let coeffs = prod[..k].iter().map(|&c| c as u32).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
