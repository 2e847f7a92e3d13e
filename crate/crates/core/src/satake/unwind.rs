//! `K_U`-invariants of `ind_{K_B}^B W`, spanned by the sums
//! `[K_U g, w] = Σ_{u ∈ K_U / (K_U ∩ g K_B g^{-1})} [u g, w]`, and the map
//! `[K_U g, w] ↦ [pr_T(g), μ_g(w)]` into `ind_{K_T}^T H⁰(K_U, W)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FieldMatrix};
use crate::padic::{canonical_borel, BorelCoset, BorelDoubleCoset, GMatrix, PScalar};
use crate::weights::{Weight, WeightVector};

use super::mu::{in_p_plus, mu_domain, mu_projection};

fn val(x: &PScalar) -> i64 {
    x.val().expect("nonzero")
}

/// A finitely supported element of `ind_{K_B}^B W`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BorelIndElement {
    weight: Weight,
    terms: BTreeMap<BorelCoset, WeightVector>,
}

impl BorelIndElement {
    pub fn zero(weight: &Weight) -> Self {
        BorelIndElement { weight: weight.clone(), terms: BTreeMap::new() }
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BorelCoset, &WeightVector)> {
        self.terms.iter()
    }

    fn add_canonical(&mut self, c: BorelCoset, w: WeightVector) {
        let entry = self.terms.entry(c.clone()).or_insert_with(|| vec![self.weight.field().zero(); w.len()]);
        for (a, b) in entry.iter_mut().zip(&w) {
            *a = &*a + b;
        }
        if entry.iter().all(FieldElement::is_zero) {
            self.terms.remove(&c);
        }
    }

    /// Adds `[b, w]`.
    pub fn add_term(&mut self, b: &GMatrix, w: &[FieldElement]) -> Result<()> {
        let (c, k) = canonical_borel(b)?;
        let kw = self.weight.act(&k, w)?;
        self.add_canonical(c, kw);
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, w) in other.terms() {
            out.add_canonical(c.clone(), w.clone());
        }
        out
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        let mut out = Self::zero(&self.weight);
        for (c, w) in self.terms() {
            out.add_canonical(c.clone(), w.iter().map(|x| x * s).collect());
        }
        out
    }

    pub fn left_mul(&self, b: &GMatrix) -> Result<Self> {
        let mut out = Self::zero(&self.weight);
        for (c, w) in self.terms() {
            out.add_term(&b.mul(&c.rep()), w)?;
        }
        Ok(out)
    }

    /// `m ⋆ f = Σ_{u ∈ K_U / m K_U m^{-1}} u m f` for positive diagonal `m`.
    pub fn hecke_star(&self, m: &GMatrix) -> Result<Self> {
        if !m.is_diagonal() || val(m.a()) < val(m.d()) {
            return Err(Error::NotPositive(m.to_string()));
        }
        let p = m.p();
        let index = p.pow((val(m.a()) - val(m.d())) as u32);
        let mut out = Self::zero(&self.weight);
        for y in 0..index {
            let um = GMatrix::unipotent(&PScalar::from_int(p, y as i64)).mul(m);
            out = out.add(&self.left_mul(&um)?);
        }
        Ok(out)
    }
}

/// `[K_U g, w]` with `w ∈ H⁰(K_U^g ∩ K_B, W)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generator {
    pub g: GMatrix,
    pub w: WeightVector,
}

impl Generator {
    pub fn new(g: &GMatrix, w: &[FieldElement]) -> Self {
        Generator { g: g.clone(), w: w.to_vec() }
    }

    pub fn expand(&self, weight: &Weight) -> Result<BorelIndElement> {
        let p = self.g.p();
        let spread = (val(self.g.a()) - val(self.g.d())).max(0) as u32;
        let mut out = BorelIndElement::zero(weight);
        for x in 0..p.pow(spread) {
            out.add_term(&GMatrix::unipotent(&PScalar::from_int(p, x as i64)).mul(&self.g), &self.w)?;
        }
        Ok(out)
    }

    /// `[pr_T(g), μ_g(w)]`, read on the invariant line `x^r`.
    pub fn unwind(&self, weight: &Weight) -> Result<TorusValues> {
        let g = &self.g;
        let p = g.p();
        let (i, j) = (val(g.a()), val(g.d()));
        let reach = [0, j - i, g.b().val().map_or(0, |v| j - v)].into_iter().max().unwrap();
        let m = GMatrix::diag_p(p, reach, 0);
        debug_assert!(in_p_plus(&m.mul(g)));
        let mu = mu_projection(weight, &m, g, &self.w)?;
        let units = GMatrix::diag(p, g.a().shift(-i), g.d().shift(-j));
        let v = weight.act(&units, &mu)?;
        if v[1..].iter().any(|x| !x.is_zero()) {
            return Err(Error::Inconsistent(format!("μ_g(w) = {mu:?} is not K_U-invariant")));
        }
        let mut out = TorusValues::zero(weight);
        out.add((i, j), v[0].clone());
        Ok(out)
    }
}

/// Writes a `K_U`-invariant element as a sum of generators, one per double
/// coset, and checks the decomposition reproduces it.
pub fn decompose(f: &BorelIndElement) -> Result<Vec<Generator>> {
    let weight = f.weight();
    let cosets: BTreeSet<BorelDoubleCoset> = f.terms().map(|(c, _)| c.double_coset()).collect();
    let mut gens = Vec::new();
    let mut rebuilt = BorelIndElement::zero(weight);
    for dc in cosets {
        let key = BorelCoset::new(dc.i, dc.j, dc.beta.clone());
        let Some(w) = f.terms.get(&key) else {
            return Err(Error::Inconsistent(format!("no value at the representative of {dc:?}")));
        };
        let gen = Generator::new(&dc.rep(), w);
        rebuilt = rebuilt.add(&gen.expand(weight)?);
        gens.push(gen);
    }
    if &rebuilt != f {
        return Err(Error::Inconsistent("element is not K_U-invariant".into()));
    }
    Ok(gens)
}

pub fn unwind(f: &BorelIndElement) -> Result<TorusValues> {
    let mut out = TorusValues::zero(f.weight());
    for gen in decompose(f)? {
        out = out.sum(&gen.unwind(f.weight())?);
    }
    Ok(out)
}

/// An element of `ind_{K_T}^T` of the invariant line, by its values at
/// `diag(p^i, p^j)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusValues {
    weight: Weight,
    pub terms: BTreeMap<(i64, i64), FieldElement>,
}

impl TorusValues {
    pub fn zero(weight: &Weight) -> Self {
        TorusValues { weight: weight.clone(), terms: BTreeMap::new() }
    }

    fn add(&mut self, key: (i64, i64), c: FieldElement) {
        let e = self.terms.entry(key).or_insert_with(|| c.field().zero());
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add(k, c.clone());
        }
        out
    }

    /// Left translation by a diagonal `m`.
    pub fn translate(&self, m: &GMatrix) -> Result<Self> {
        if !m.is_diagonal() {
            return Err(Error::InvalidParameters(format!("{m} is not diagonal")));
        }
        let p = m.p();
        let (a, b) = (val(m.a()), val(m.d()));
        let units = GMatrix::diag(p, m.a().shift(-a), m.d().shift(-b));
        let chi = self.weight.act(&units, &self.weight.x_r())?[0].clone();
        let mut out = Self::zero(&self.weight);
        for (&(i, j), c) in &self.terms {
            out.add((i + a, j + b), c * &chi);
        }
        Ok(out)
    }
}

/// The generators of `H⁰(K_U, ind_{K_B}^B W)` over double cosets
/// `(i, j, β)` with `|i|, |j| ≤ R` and `β ∈ p^{-R} Z_p`.
pub struct UnwindBox {
    pub weight: Weight,
    pub radius: i64,
    pub generators: Vec<Generator>,
    pub targets: Vec<(i64, i64)>,
}

impl UnwindBox {
    pub fn new(weight: &Weight, radius: u32) -> Result<Self> {
        let p = weight.p();
        let r = radius as i64;
        let mut generators = Vec::new();
        let mut targets = Vec::new();
        for i in -r..=r {
            for j in -r..=r {
                targets.push((i, j));
                let classes = p.pow((i.min(j) + r).max(0) as u32);
                for k in 0..classes {
                    let beta = PScalar::fraction(p, k as i64, radius);
                    let g = BorelCoset::new(i, j, beta).double_coset().rep();
                    for w in mu_domain(weight, &g)? {
                        generators.push(Generator::new(&g, &w));
                    }
                }
            }
        }
        Ok(UnwindBox { weight: weight.clone(), radius: r, generators, targets })
    }

    /// Columns are generators, rows are the torus classes of the box.
    pub fn matrix(&self) -> Result<FieldMatrix> {
        let k = self.weight.field();
        let index: BTreeMap<(i64, i64), usize> = self.targets.iter().enumerate().map(|(n, &t)| (t, n)).collect();
        let mut cols = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let image = g.unwind(&self.weight)?;
            let mut col = vec![k.zero(); self.targets.len()];
            for (key, c) in image.terms {
                let row = index.get(&key).ok_or_else(|| Error::Inconsistent(format!("image {key:?} leaves the box")))?;
                col[*row] = c;
            }
            cols.push(col);
        }
        Ok(FieldMatrix::from_columns(k, self.targets.len(), &cols))
    }

    /// The element `Σ c_n gen_n`.
    pub fn combination(&self, coeffs: &[FieldElement]) -> Result<BorelIndElement> {
        let mut out = BorelIndElement::zero(&self.weight);
        for (g, c) in self.generators.iter().zip(coeffs) {
            if !c.is_zero() {
                out = out.add(&g.expand(&self.weight)?.scale(c));
            }
        }
        Ok(out)
    }
}

/// Sorts the elements `n(x) diag(p^a A, p^b D)` with `|a|, |b| ≤ R` and
/// `x ∈ p^{-R} Z_p / p^R` into double cosets `K_U \ B / K_B` and checks
/// that those inside `P⁺` correspond one-to-one with `M⁺ / K_M`.
/// Returns the number of `P⁺` double cosets.
pub fn double_coset_partition(p: u64, radius: u32) -> Result<usize> {
    let r = radius as i64;
    let mut kinds: BTreeMap<BorelDoubleCoset, (bool, BTreeSet<(i64, i64)>)> = BTreeMap::new();
    for a in -r..=r {
        for b in -r..=r {
            for big_a in 1..p as i64 {
                for big_d in 1..p as i64 {
                    let m = GMatrix::diag(p, PScalar::from_int(p, big_a).shift(a), PScalar::from_int(p, big_d).shift(b));
                    for k in 0..p.pow(2 * radius) {
                        let g = GMatrix::unipotent(&PScalar::fraction(p, k as i64, radius)).mul(&m);
                        let dc = canonical_borel(&g)?.0.double_coset();
                        let plus = in_p_plus(&g);
                        let entry = kinds.entry(dc.clone()).or_insert_with(|| (plus, BTreeSet::new()));
                        if entry.0 != plus {
                            return Err(Error::Inconsistent(format!("{dc:?} meets P⁺ and its complement")));
                        }
                        if plus {
                            entry.1.insert((a, b));
                        }
                    }
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for (dc, (plus, labels)) in &kinds {
        if !plus {
            continue;
        }
        count += 1;
        if labels.len() != 1 {
            return Err(Error::Inconsistent(format!("{dc:?} meets several torus classes {labels:?}")));
        }
        if !seen.insert(*labels.iter().next().unwrap()) {
            return Err(Error::Inconsistent(format!("two P⁺ double cosets over {labels:?}")));
        }
    }
    let expected: BTreeSet<(i64, i64)> = (-r..=r).flat_map(|a| (-r..=a).map(move |b| (a, b))).collect();
    if seen != expected {
        return Err(Error::Inconsistent("P⁺ double cosets miss part of M⁺/K_M".into()));
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FieldSpec;

    fn weight(p: u64, r: u32) -> Weight {
        Weight::new(&FieldSpec::prime(p).unwrap(), r, 0).unwrap()
    }

    #[test]
    fn identity_generator_unwinds_to_itself() {
        let w = weight(3, 2);
        let gen = Generator::new(&GMatrix::identity(3), &w.x_r());
        let image = gen.unwind(&w).unwrap();
        assert_eq!(image.terms, BTreeMap::from([((0, 0), w.field().one())]));
    }

    #[test]
    fn hecke_formula_at_the_origin() {
        let p = 3;
        let w = weight(p, 2);
        let m = GMatrix::diag_p(p, 1, 0);
        let f = Generator::new(&GMatrix::identity(p), &w.x_r()).expand(&w).unwrap();
        let lhs = f.hecke_star(&m).unwrap();
        let rhs = Generator::new(&m, &w.x_r()).expand(&w).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(unwind(&lhs).unwrap(), unwind(&f).unwrap().translate(&m).unwrap());
    }

    #[test]
    fn decomposition_rejects_non_invariant_elements() {
        let p = 3;
        let w = weight(p, 1);
        let mut f = BorelIndElement::zero(&w);
        f.add_term(&GMatrix::diag_p(p, 1, 0), &w.x_r()).unwrap();
        assert!(decompose(&f).is_err());
    }

    #[test]
    fn p_plus_double_cosets() {
        assert_eq!(double_coset_partition(3, 1).unwrap(), 6);
        assert_eq!(double_coset_partition(2, 2).unwrap(), 15);
    }
}
