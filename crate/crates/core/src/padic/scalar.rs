use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// An element `num * p^pexp` of Z[1/p] with `p ∤ num`; zero is `(0, 0)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PScalar {
    p: u64,
    num: BigInt,
    pexp: i64,
}

pub(crate) fn p_pow(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

impl PScalar {
    pub fn new(p: u64, num: BigInt, pexp: i64) -> Self {
        let mut s = PScalar { p, num, pexp };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.pexp = 0;
            return;
        }
        let pb = BigInt::from(self.p);
        loop {
            let (q, r) = self.num.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            self.num = q;
            self.pexp += 1;
        }
    }

    pub fn zero(p: u64) -> Self {
        PScalar { p, num: BigInt::zero(), pexp: 0 }
    }

    pub fn one(p: u64) -> Self {
        Self::from_int(p, 1)
    }

    pub fn from_int(p: u64, n: i64) -> Self {
        Self::new(p, BigInt::from(n), 0)
    }

    pub fn from_bigint(p: u64, n: BigInt) -> Self {
        Self::new(p, n, 0)
    }

    /// `p^e` for any integer e.
    pub fn p_power(p: u64, e: i64) -> Self {
        PScalar { p, num: BigInt::one(), pexp: e }
    }

    /// `n / p^e`.
    pub fn fraction(p: u64, n: i64, e: u32) -> Self {
        Self::new(p, BigInt::from(n), -(e as i64))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The p-free part; coprime to p unless the scalar is zero.
    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn pexp(&self) -> i64 {
        self.pexp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.pexp == 0
    }

    /// p-adic valuation; None for zero.
    pub fn val(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.pexp)
    }

    pub fn is_integral(&self) -> bool {
        self.is_zero() || self.pexp >= 0
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.pexp == 0
    }

    /// The integer value when integral.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integral().then(|| &self.num * p_pow(self.p, self.pexp.max(0) as u32))
    }

    /// Multiplication by p^e.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        PScalar { p: self.p, num: self.num.clone(), pexp: self.pexp + e }
    }

    /// The unique representative in `[0, p^a) ∩ Z[1/p]` of `self mod p^a Z_p`.
    pub fn reduce_mod(&self, a: i64) -> Self {
        self.reduce_times_unit_inverse(&BigInt::one(), a)
    }

    /// `self * unit^{-1} mod p^a Z_p` for an integer `unit` prime to p,
    /// as the representative in `[0, p^a)`.
    pub fn reduce_times_unit_inverse(&self, unit: &BigInt, a: i64) -> Self {
        debug_assert!(!(unit % BigInt::from(self.p)).is_zero(), "unit must be prime to p");
        if self.is_zero() || self.pexp >= a {
            return Self::zero(self.p);
        }
        let t = (a - self.pexp) as u32;
        let modulus = p_pow(self.p, t);
        let inv = unit.mod_floor(&modulus).modinv(&modulus).expect("unit is invertible mod p^t");
        let y = (&self.num * inv).mod_floor(&modulus);
        Self::new(self.p, y, self.pexp)
    }

    /// Residue mod p of an integral scalar.
    pub fn residue(&self) -> Option<u64> {
        if !self.is_integral() {
            return None;
        }
        if self.is_zero() || self.pexp > 0 {
            return Some(0);
        }
        let r = self.num.mod_floor(&BigInt::from(self.p));
        Some(u64::try_from(r).expect("residue fits"))
    }

    pub fn to_json(&self) -> Value {
        json!({"num": self.num.to_string(), "pexp": self.pexp})
    }

    pub fn from_json(p: u64, v: &Value) -> Result<Self> {
        let num = v
            .get("num")
            .and_then(Value::as_str)
            .and_then(|s| s.parse::<BigInt>().ok())
            .ok_or_else(|| Error::Parse(format!("bad scalar {v}")))?;
        let pexp = v.get("pexp").and_then(Value::as_i64).ok_or_else(|| Error::Parse(format!("bad scalar {v}")))?;
        Ok(Self::new(p, num, pexp))
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.p, other.p, "scalars over different primes");
    }
}

impl fmt::Display for PScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pexp >= 0 {
            write!(f, "{}", self.to_integer().unwrap())
        } else {
            write!(f, "{}/{}", self.num, p_pow(self.p, (-self.pexp) as u32))
        }
    }
}

impl fmt::Debug for PScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &PScalar {
    type Output = PScalar;
    fn add(self, rhs: &PScalar) -> PScalar {
        self.check(rhs);
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.pexp.min(rhs.pexp);
        let lhs = &self.num * p_pow(self.p, (self.pexp - e) as u32);
        let r = &rhs.num * p_pow(self.p, (rhs.pexp - e) as u32);
        PScalar::new(self.p, lhs + r, e)
    }
}

impl Neg for &PScalar {
    type Output = PScalar;
    fn neg(self) -> PScalar {
        PScalar { p: self.p, num: -&self.num, pexp: self.pexp }
    }
}

impl Sub for &PScalar {
    type Output = PScalar;
    fn sub(self, rhs: &PScalar) -> PScalar {
        self + &(-rhs)
    }
}

impl Mul for &PScalar {
    type Output = PScalar;
    fn mul(self, rhs: &PScalar) -> PScalar {
        self.check(rhs);
        if self.is_zero() || rhs.is_zero() {
            return PScalar::zero(self.p);
        }
        // product of p-free parts stays p-free
        PScalar { p: self.p, num: &self.num * &rhs.num, pexp: self.pexp + rhs.pexp }
    }
}

impl PScalar {
    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_zero() {
        let s = PScalar::from_int(5, 50);
        assert_eq!((s.num().clone(), s.pexp()), (BigInt::from(2), 2));
        let z = &s - &s;
        assert_eq!(z, PScalar::zero(5));
        assert_eq!(z.pexp(), 0);
    }

    #[test]
    fn reduction_mod_powers() {
        // 7/25 mod 5^-1 Z_5: 7/25 = 2/25 + 1/5 -> digits at -2 and -1 survive mod Z_5... but mod 5^-1 only -2 survives
        let x = PScalar::fraction(5, 7, 2);
        assert_eq!(x.reduce_mod(0), PScalar::fraction(5, 7, 2));
        assert_eq!(x.reduce_mod(-1), PScalar::fraction(5, 2, 2));
        assert_eq!(PScalar::from_int(5, 13).reduce_mod(1), PScalar::from_int(5, 3));
        assert_eq!(PScalar::from_int(5, -1).reduce_mod(2), PScalar::from_int(5, 24));
        // 1 * 2^{-1} mod 5 = 3
        assert_eq!(PScalar::one(5).reduce_times_unit_inverse(&BigInt::from(2), 1), PScalar::from_int(5, 3));
    }

    #[test]
    fn json_shape() {
        let x = PScalar::fraction(3, -4, 2);
        assert_eq!(x.to_json().to_string(), r#"{"num":"-4","pexp":-2}"#);
        assert_eq!(PScalar::from_json(3, &x.to_json()).unwrap(), x);
    }
}
