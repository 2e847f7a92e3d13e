//! Dense polynomials over the prime field, used only to find and certify
//! irreducible moduli. Coefficients are stored low degree first.

pub(crate) fn trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub(crate) fn sub(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let n = f.len().max(g.len());
    let out = (0..n)
        .map(|i| {
            let a = f.get(i).copied().unwrap_or(0);
            let b = g.get(i).copied().unwrap_or(0);
            (a + p - b) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn mul(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a * b) % p;
        }
    }
    trim(out)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let g = trim(g.to_vec());
    assert!(!g.is_empty(), "polynomial division by zero");
    let mut r = trim(f.to_vec());
    let lead_inv = inv_mod(*g.last().unwrap(), p);
    while r.len() >= g.len() {
        let shift = r.len() - g.len();
        let c = r.last().unwrap() * lead_inv % p;
        for (j, &b) in g.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * b % p) % p;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn gcd(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(f.to_vec());
    let mut b = trim(g.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let li = inv_mod(lead, p);
        for c in a.iter_mut() {
            *c = *c * li % p;
        }
    }
    a
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `f` of degree k is irreducible iff x^(p^k) = x mod f and
/// gcd(x^(p^(k/q)) - x, f) = 1 for every prime q dividing k.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    let k = match f.len() {
        0 | 1 => return false,
        n => n - 1,
    };
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    // frob[i] = x^(p^i) mod f
    let mut frob = vec![rem(&x, &f, p)];
    for _ in 0..k {
        let prev = frob.last().unwrap();
        let mut acc = vec![1u64];
        let mut base = prev.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &base, p), &f, p);
            }
            base = rem(&mul(&base, &base, p), &f, p);
            e >>= 1;
        }
        frob.push(acc);
    }
    if sub(&frob[k], &x, p).iter().any(|&c| c != 0) {
        return false;
    }
    prime_divisors(k)
        .into_iter()
        .all(|q| gcd(&sub(&frob[k / q], &x, p), &f, p).len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has_root(f: &[u64], p: u64) -> bool {
        (0..p).any(|x| f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) == 0)
    }

    #[test]
    fn rabin_matches_root_test_for_low_degree() {
        for p in [2u64, 3, 5, 7] {
            for k in 2..=3usize {
                for n in 0..p.pow(k as u32) {
                    let mut f: Vec<u64> = (0..k).map(|i| n / p.pow(i as u32) % p).collect();
                    f.push(1);
                    assert_eq!(is_irreducible(&f, p), !has_root(&f, p), "p={p} f={f:?}");
                }
            }
        }
    }

    #[test]
    fn quartic_reducible_without_roots() {
        // (x^2+1)^2 over F_3 has no roots but is reducible.
        let f = mul(&[1, 0, 1], &[1, 0, 1], 3);
        assert!(!has_root(&f, 3));
        assert!(!is_irreducible(&f, 3));
    }
}
