//! Exact arithmetic in F_{p^k} and dense linear algebra over it.

mod field;
mod matrix;
pub(crate) mod poly;

pub use field::{is_prime, Embedding, FieldElement, FieldSpec};
pub use matrix::{span_contains, Cokernel, Echelon, FieldMatrix};

/// Smallest primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let order = p - 1;
    let mut factors = Vec::new();
    let mut n = order;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            factors.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| poly::pow_mod(g, order / q, p) != 1))
        .expect("primes have primitive roots")
}

/// The exponent e in [0, p-1) with g^e = value, for g the smallest primitive
/// root mod p; None if value is not in F_p^x.
pub fn discrete_log_prime(value: &FieldElement) -> Option<u64> {
    let p = value.field().p();
    let v = value.as_prime().filter(|&v| v != 0)?;
    let g = primitive_root(p);
    let mut acc = 1 % p;
    for e in 0..(p - 1).max(1) {
        if acc == v % p {
            return Some(e);
        }
        acc = acc * g % p;
    }
    None
}
