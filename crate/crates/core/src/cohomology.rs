//! Cohomology of `K_U = [[1, Z_p], [0, 1]] ≅ Z_p` with coefficients in
//! finite-dimensional smooth modules, written in terms of the topological
//! generator `γ = [[1, 1], [0, 1]]`:
//! `H^0 = ker(γ - 1)` and `H^1 = coker(γ - 1)` (a class is `c(γ)` mod `(γ - 1)V`).
//!
//! The open subgroups are `p^a K_U`, generated by `γ^{p^a}`. A positive torus
//! element `m = diag(m1, m2)` with `m1/m2 = p^a ε` conjugates `K_U` onto `p^a K_U`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::ffield::{Cokernel, FieldElement, FieldMatrix, FieldSpec};
use crate::padic::{GMatrix, PScalar};
use crate::torus::TorusCharacter;
use crate::weights::Weight;

/// Largest finite quotient the brute-force oracles will enumerate.
pub const ORACLE_GROUP_BOUND: u64 = 1 << 15;

/// A finite-dimensional smooth representation of `K_U`, optionally with a
/// compatible action of (part of) the diagonal torus.
pub trait KuModule {
    fn field(&self) -> &FieldSpec;
    fn dim(&self) -> usize;
    fn gamma(&self) -> FieldMatrix;
    /// Action of a diagonal matrix; modules that only see part of the torus
    /// return an error outside it.
    fn torus(&self, m: &GMatrix) -> Result<FieldMatrix>;
}

/// A bare `Z_p`-module given by the matrix of `γ`.
#[derive(Clone, Debug)]
pub struct SmoothZpModule {
    gamma: FieldMatrix,
    level: u32,
}

impl SmoothZpModule {
    pub fn new(gamma: FieldMatrix) -> Result<Self> {
        let level = smooth_level(&gamma)?;
        Ok(SmoothZpModule { gamma, level })
    }

    pub fn trivial(field: &FieldSpec, dim: usize) -> Self {
        SmoothZpModule { gamma: FieldMatrix::identity(field, dim), level: 0 }
    }

    pub fn level(&self) -> u32 {
        self.level
    }
}

impl KuModule for SmoothZpModule {
    fn field(&self) -> &FieldSpec {
        self.gamma.field()
    }
    fn dim(&self) -> usize {
        self.gamma.rows()
    }
    fn gamma(&self) -> FieldMatrix {
        self.gamma.clone()
    }
    fn torus(&self, m: &GMatrix) -> Result<FieldMatrix> {
        Err(Error::InvalidParameters(format!("bare Z_p-module carries no action of {m}")))
    }
}

/// A character of T inflated to the Borel: `K_U` acts trivially.
#[derive(Clone, Debug)]
pub struct InflatedCharacter {
    pub chi: TorusCharacter,
}

impl InflatedCharacter {
    pub fn new(chi: TorusCharacter) -> Self {
        InflatedCharacter { chi }
    }

    pub fn trivial(field: &FieldSpec) -> Self {
        let one = crate::torus::PadicCharacter::trivial(field);
        InflatedCharacter { chi: TorusCharacter::new(one.clone(), one) }
    }
}

impl KuModule for InflatedCharacter {
    fn field(&self) -> &FieldSpec {
        self.chi.field()
    }
    fn dim(&self) -> usize {
        1
    }
    fn gamma(&self) -> FieldMatrix {
        FieldMatrix::identity(self.field(), 1)
    }
    fn torus(&self, m: &GMatrix) -> Result<FieldMatrix> {
        let v = self.chi.eval(m)?;
        FieldMatrix::from_rows(self.field(), vec![vec![v]])
    }
}

impl KuModule for Weight {
    fn field(&self) -> &FieldSpec {
        Weight::field(self)
    }
    fn dim(&self) -> usize {
        Weight::dim(self)
    }
    fn gamma(&self) -> FieldMatrix {
        Weight::gamma(self)
    }
    fn torus(&self, m: &GMatrix) -> Result<FieldMatrix> {
        if !m.is_diagonal() {
            return Err(Error::InvalidParameters(format!("{m} is not diagonal")));
        }
        self.action(m)
    }
}

/// Smallest n with `γ^{p^n} = 1`; an error when no such n exists.
pub fn smooth_level(gamma: &FieldMatrix) -> Result<u32> {
    let field = gamma.field();
    let d = gamma.rows();
    let id = FieldMatrix::identity(field, d);
    let p = field.p();
    let mut g = gamma.clone();
    let mut n = 0u32;
    loop {
        if g == id {
            return Ok(n);
        }
        // unipotent matrices of size d satisfy γ^{p^n} = 1 once p^n >= d
        if p.checked_pow(n).is_none_or(|q| q >= d as u64) {
            return Err(Error::NotSmooth("γ does not have p-power order".into()));
        }
        g = g.pow(p)?;
        n += 1;
    }
}

/// Positivity data of a diagonal `m = diag(m1, m2)`: `m1/m2 = p^a ε`.
struct Positive {
    a: u32,
    eps_num: BigInt,
    eps_den: BigInt,
}

fn positivity(m: &GMatrix) -> Result<Positive> {
    if !m.is_diagonal() {
        return Err(Error::NotPositive(format!("{m} is not diagonal")));
    }
    let a = m.a().pexp() - m.d().pexp();
    if a < 0 {
        return Err(Error::NotPositive(format!("{m} does not contract K_U")));
    }
    Ok(Positive { a: a as u32, eps_num: m.a().num().clone(), eps_den: m.d().num().clone() })
}

/// `ε^{-1} mod p^t` as an integer in `[0, p^t)`.
fn eps_inverse_mod(pos: &Positive, p: u64, t: u32) -> u64 {
    let modulus = BigInt::from(p).pow(t);
    let inv = pos.eps_num.mod_floor(&modulus).modinv(&modulus).expect("unit");
    (&pos.eps_den * inv).mod_floor(&modulus).to_u64().expect("fits")
}

fn columns_matrix(field: &FieldSpec, rows: usize, cols: &[Vec<FieldElement>]) -> FieldMatrix {
    FieldMatrix::from_columns(field, rows, cols)
}

/// `H^*(K_U, V)` for a fixed module, with the maps between the cohomology of
/// `K_U` and of its open subgroups.
pub struct KuCohomology<'a, M: KuModule + ?Sized> {
    module: &'a M,
    field: FieldSpec,
    dim: usize,
    gamma: FieldMatrix,
    level: u32,
    /// Exponent M with `γ^{p^M} = 1` and `Σ_{i < p^M} γ^i = 0`.
    stable: u32,
    h0: Vec<Vec<FieldElement>>,
    h1: Cokernel,
}

impl<'a, M: KuModule + ?Sized> KuCohomology<'a, M> {
    pub fn new(module: &'a M) -> Result<Self> {
        let field = module.field().clone();
        let dim = module.dim();
        let gamma = module.gamma();
        let level = smooth_level(&gamma)?;
        let id = FieldMatrix::identity(&field, dim);
        let nilp = gamma.sub(&id)?;
        let p = field.p();
        let mut stable = level;
        // Σ_{i < p^M} γ^i = (γ - 1)^{p^M - 1} in characteristic p
        while !nilp.pow(p.pow(stable) - 1)?.is_zero() && dim > 0 {
            stable += 1;
        }
        let h0 = nilp.kernel();
        let h1 = nilp.cokernel();
        Ok(KuCohomology { module, field, dim, gamma, level, stable, h0, h1 })
    }

    pub fn module(&self) -> &M {
        self.module
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn stable_exponent(&self) -> u32 {
        self.stable
    }

    pub fn h0_basis(&self) -> &[Vec<FieldElement>] {
        &self.h0
    }

    pub fn h0_dim(&self) -> usize {
        self.h0.len()
    }

    pub fn h1_dim(&self) -> usize {
        self.h1.dim
    }

    pub fn dim(&self, degree: usize) -> usize {
        match degree {
            0 => self.h0_dim(),
            1 => self.h1_dim(),
            _ => 0,
        }
    }

    pub fn h1_cokernel(&self) -> &Cokernel {
        &self.h1
    }

    /// Coordinates of an invariant vector in the H^0 basis.
    pub fn h0_coords(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        solve_in_span(&self.field, self.dim, &self.h0, v)
    }

    /// The class of `v` (read as `c(γ)`) in H^1 coordinates.
    pub fn h1_class(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        self.h1.projection.mul_vec(v).expect("dimension")
    }

    fn h1_section(&self) -> FieldMatrix {
        section(&self.field, self.dim, &self.h1)
    }

    /// `Σ_{i < n} γ^i` on V, for `γ^{power}` in place of γ.
    fn norm(&self, gen: &FieldMatrix, n: u64) -> FieldMatrix {
        let mut acc = FieldMatrix::zeros(&self.field, self.dim, self.dim);
        let mut g = FieldMatrix::identity(&self.field, self.dim);
        for _ in 0..n {
            acc = acc.add(&g).expect("square");
            g = g.mul(gen).expect("square");
        }
        acc
    }

    fn sub_gamma(&self, a: u32) -> FieldMatrix {
        self.gamma.pow(self.field.p().pow(a)).expect("square")
    }

    fn sub_h1(&self, a: u32) -> Cokernel {
        let id = FieldMatrix::identity(&self.field, self.dim);
        self.sub_gamma(a).sub(&id).expect("square").cokernel()
    }

    fn sub_h0(&self, a: u32) -> Vec<Vec<FieldElement>> {
        let id = FieldMatrix::identity(&self.field, self.dim);
        self.sub_gamma(a).sub(&id).expect("square").kernel()
    }

    /// Dimension of `H^1(p^a K_U, V)`.
    pub fn sub_h1_dim(&self, a: u32) -> usize {
        self.sub_h1(a).dim
    }

    /// Restriction `H^1(K_U) → H^1(p^a K_U)`: `[v] ↦ [Σ_{i < p^a} γ^i v]`.
    pub fn res(&self, a: u32) -> FieldMatrix {
        let n = self.norm(&self.gamma, self.field.p().pow(a));
        let target = self.sub_h1(a);
        target.projection.mul(&n).and_then(|m| m.mul(&self.h1_section())).expect("dims")
    }

    /// Corestriction `H^1(p^a K_U) → H^1(K_U)`: the transfer of `γ` is `γ^{p^a}`,
    /// so a class `[w]` goes to `[w]`.
    pub fn cores(&self, a: u32) -> FieldMatrix {
        let source = self.sub_h1(a);
        self.h1.projection.mul(&section(&self.field, self.dim, &source)).expect("dims")
    }

    /// Conjugation `H^i(K_U) → H^i(m K_U m^{-1})` in coordinates.
    pub fn conj(&self, m: &GMatrix, degree: usize) -> Result<FieldMatrix> {
        let pos = positivity(m)?;
        let tm = self.module.torus(m)?;
        match degree {
            0 => {
                let target = self.sub_h0(pos.a);
                let cols: Vec<Vec<FieldElement>> = self
                    .h0
                    .iter()
                    .map(|v| solve_in_span(&self.field, self.dim, &target, &tm.mul_vec(v)?))
                    .collect::<Result<_>>()?;
                Ok(columns_matrix(&self.field, target.len(), &cols))
            }
            1 => {
                // (conj c)(γ^{p^a}) = m c(m^{-1} γ^{p^a} m) = m c(γ^{ε^{-1}})
                let x = eps_inverse_mod(&pos, self.field.p(), self.stable);
                let nx = self.norm(&self.gamma, x);
                let target = self.sub_h1(pos.a);
                Ok(target.projection.mul(&tm)?.mul(&nx)?.mul(&self.h1_section())?)
            }
            _ => Ok(FieldMatrix::zeros(&self.field, 0, 0)),
        }
    }

    /// The Hecke action of a positive `m` on `H^i(K_U, V)`.
    pub fn hecke(&self, m: &GMatrix, degree: usize) -> Result<FieldMatrix> {
        let pos = positivity(m)?;
        match degree {
            0 => {
                let tm = self.module.torus(m)?;
                let n = self.norm(&self.gamma, self.field.p().pow(pos.a));
                let op = n.mul(&tm)?;
                let cols: Vec<Vec<FieldElement>> = self
                    .h0
                    .iter()
                    .map(|v| self.h0_coords(&op.mul_vec(v)?))
                    .collect::<Result<_>>()?;
                Ok(columns_matrix(&self.field, self.h0_dim(), &cols))
            }
            1 => self.cores(pos.a).mul(&self.conj(m, 1)?),
            _ => Ok(FieldMatrix::zeros(&self.field, 0, 0)),
        }
    }
}

fn section(field: &FieldSpec, dim: usize, ck: &Cokernel) -> FieldMatrix {
    let cols: Vec<Vec<FieldElement>> = ck
        .complement
        .iter()
        .map(|&i| {
            let mut v = vec![field.zero(); dim];
            v[i] = field.one();
            v
        })
        .collect();
    FieldMatrix::from_columns(field, dim, &cols)
}

fn solve_in_span(field: &FieldSpec, dim: usize, basis: &[Vec<FieldElement>], v: &[FieldElement]) -> Result<Vec<FieldElement>> {
    if basis.is_empty() {
        return if v.iter().all(FieldElement::is_zero) {
            Ok(Vec::new())
        } else {
            Err(Error::Inconsistent("vector outside the expected subspace".into()))
        };
    }
    columns_matrix(field, dim, basis)
        .solve(v)?
        .ok_or_else(|| Error::Inconsistent("vector outside the expected subspace".into()))
}

/// The character `δ` of T read off from the Hecke action on `H^1(K_U, 1)`:
/// `δ(m)` is the inverse of the scalar by which `m` acts, extended from the
/// positive monoid to all diagonal matrices.
pub fn delta_from_cohomology(field: &FieldSpec, m: &GMatrix) -> Result<FieldElement> {
    if !m.is_diagonal() {
        return Err(Error::InvalidParameters(format!("{m} is not diagonal")));
    }
    let p = field.p();
    let a = m.a().pexp() - m.d().pexp();
    if a < 0 {
        // m = m_+ · diag(p^n, 1)^{-1}
        let n = -a;
        let m_plus = m.mul(&GMatrix::diag_p(p, n, 0));
        let base = delta_from_cohomology(field, &GMatrix::diag_p(p, n, 0))?;
        return Ok(&delta_from_cohomology(field, &m_plus)? * &base.inv().ok_or(Error::DivisionByZero)?);
    }
    let trivial = InflatedCharacter::trivial(field);
    let coh = KuCohomology::new(&trivial)?;
    let h = coh.hecke(m, 1)?;
    h[(0, 0)].inv().ok_or_else(|| Error::Inconsistent(format!("{m} acts by zero on top cohomology")))
}

/// The character `δ` as an element of T's character group, by evaluating
/// `delta_from_cohomology` on `diag(p, 1)`, `diag(1, p)` and unit generators.
pub fn delta_character(field: &FieldSpec) -> Result<TorusCharacter> {
    use crate::ffield::discrete_log_prime;
    use crate::torus::PadicCharacter;
    let p = field.p();
    let g = crate::ffield::primitive_root(p) as i64;
    let factor = |at_p: GMatrix, at_unit: GMatrix| -> Result<PadicCharacter> {
        let lambda = delta_from_cohomology(field, &at_p)?;
        let value = delta_from_cohomology(field, &at_unit)?;
        let e = discrete_log_prime(&value)
            .ok_or_else(|| Error::Inconsistent(format!("δ takes value {value} outside F_p on a unit")))?;
        PadicCharacter::new(lambda, e as i64)
    };
    let s = |n: i64| PScalar::from_int(p, n);
    let chi1 = factor(GMatrix::diag_p(p, 1, 0), GMatrix::diag(p, s(g), s(1)))?;
    let chi2 = factor(GMatrix::diag_p(p, 0, 1), GMatrix::diag(p, s(1), s(g)))?;
    Ok(TorusCharacter::new(chi1, chi2))
}

/// Brute-force `(dim H^0, dim H^1)` through the finite cyclic quotient
/// `Z/p^m`, using the full inhomogeneous cocycle and coboundary spaces.
pub fn cocycle_oracle<M: KuModule + ?Sized>(module: &M) -> Result<(usize, usize)> {
    let field = module.field().clone();
    let d = module.dim();
    let gamma = module.gamma();
    let level = smooth_level(&gamma)?;
    let p = field.p();
    let id = FieldMatrix::identity(&field, d);
    let mut m = level;
    let n = loop {
        let n = p.checked_pow(m).filter(|&n| n <= ORACLE_GROUP_BOUND).ok_or_else(|| {
            Error::NoAdmissibleQuotient(format!("no Z/p^m with vanishing norm and p^m <= {ORACLE_GROUP_BOUND}"))
        })?;
        let powers = powers_of(&gamma, n);
        let norm = powers.iter().fold(FieldMatrix::zeros(&field, d, d), |acc, g| acc.add(g).expect("square"));
        if norm.is_zero() && powers.last().is_none_or(|g| g.mul(&gamma).expect("square") == id) {
            break n;
        }
        m += 1;
    };
    let n = n as usize;
    let powers = powers_of(&gamma, n as u64);
    if d == 0 {
        return Ok((0, 0));
    }
    // H^0: vectors fixed by every group element
    let mut fixed_rows = Vec::new();
    for g in &powers {
        let diff = g.sub(&id)?;
        for i in 0..d {
            fixed_rows.push(diff.row(i).to_vec());
        }
    }
    let h0 = d - FieldMatrix::from_rows(&field, fixed_rows)?.rank();
    // Z^1: unknowns f(γ^s), s < n, with f(1) = 0 and f(γ^{s+1}) = f(γ) + γ f(γ^s)
    let unknowns = n * d;
    let mut rows = Vec::new();
    for i in 0..d {
        let mut row = vec![field.zero(); unknowns];
        row[i] = field.one();
        rows.push(row);
    }
    for s in 0..n {
        let next = (s + 1) % n;
        for i in 0..d {
            let mut row = vec![field.zero(); unknowns];
            row[next * d + i] = &row[next * d + i] + &field.one();
            row[d + i] = &row[d + i] - &field.one();
            for j in 0..d {
                let c = &gamma[(i, j)];
                row[s * d + j] = &row[s * d + j] - c;
            }
            rows.push(row);
        }
    }
    let z1 = unknowns - FieldMatrix::from_rows(&field, rows)?.rank();
    // B^1: v ↦ (γ^s v - v)_s
    let mut cols = Vec::new();
    for j in 0..d {
        let mut col = Vec::with_capacity(unknowns);
        for g in &powers {
            let diff = g.sub(&id)?;
            col.extend(diff.column(j));
        }
        cols.push(col);
    }
    let b1 = FieldMatrix::from_columns(&field, unknowns, &cols).rank();
    Ok((h0, z1 - b1))
}

fn powers_of(g: &FieldMatrix, n: u64) -> Vec<FieldMatrix> {
    let mut out = Vec::with_capacity(n as usize);
    let mut acc = FieldMatrix::identity(g.field(), g.rows());
    for _ in 0..n {
        out.push(acc.clone());
        acc = acc.mul(g).expect("square");
    }
    out
}

/// A cocycle on `Z/n`, given by its values `f(γ^s)`.
type Cocycle = Vec<Vec<FieldElement>>;

fn cocycle_from_value(powers: &[FieldMatrix], step: usize, v: &[FieldElement], len: usize) -> Cocycle {
    // f(g^s) = Σ_{i<s} g^i v where g = γ^step
    let field = v[0].field().clone();
    let mut out = Vec::with_capacity(len);
    let mut acc = vec![field.zero(); v.len()];
    let n = powers.len();
    for s in 0..len {
        out.push(acc.clone());
        let gv = powers[(s * step) % n].mul_vec(v).expect("dims");
        acc = acc.iter().zip(&gv).map(|(a, b)| a + b).collect();
    }
    out
}

/// The transfer of a cocycle `f` on `H' = <γ^{p^a}>` to `G = <γ> ≅ Z/n`, using
/// the transversal `γ^j`, `j < p^a`: `(cor f)(g) = Σ_j t_{j'} f(h_j)` where
/// `g t_j = t_{j'} h_j`.
fn transfer(powers: &[FieldMatrix], index: usize, f: &Cocycle) -> Result<Cocycle> {
    let n = powers.len();
    let sub_order = n / index;
    let d = f[0].len();
    let field = powers[0].field().clone();
    let mut out = Vec::with_capacity(n);
    for s in 0..n {
        let mut acc = vec![field.zero(); d];
        for j in 0..index {
            let total = s + j;
            let jp = total % index;
            let q = (total / index) % sub_order;
            let term = powers[jp].mul_vec(&f[q])?;
            acc = acc.iter().zip(&term).map(|(a, b)| a + b).collect();
        }
        out.push(acc);
    }
    // sanity: cor f must be a cocycle on G
    for s in 0..n {
        let lhs = &out[(s + 1) % n];
        let g_f = powers[1 % n].mul_vec(&out[s])?;
        let rhs: Vec<FieldElement> = out[1 % n].iter().zip(&g_f).map(|(a, b)| a + b).collect();
        if *lhs != rhs {
            return Err(Error::Inconsistent("transferred cochain is not a cocycle".into()));
        }
    }
    Ok(out)
}

/// Degree-1 corestriction from `p^a K_U` computed from full cocycles on a
/// finite quotient and the general transfer formula.
pub fn transfer_cores_oracle<M: KuModule + ?Sized>(coh: &KuCohomology<'_, M>, a: u32) -> Result<FieldMatrix> {
    let (powers, index) = oracle_group(coh, a)?;
    let source = coh.sub_h1(a);
    let sub_order = powers.len() / index;
    let cols: Vec<Vec<FieldElement>> = source
        .complement
        .iter()
        .map(|&i| {
            let mut w = vec![coh.field.zero(); coh.dim];
            w[i] = coh.field.one();
            let f = cocycle_from_value(&powers, index, &w, sub_order);
            let cor = transfer(&powers, index, &f)?;
            Ok(coh.h1_class(&cor[1 % powers.len()]))
        })
        .collect::<Result<_>>()?;
    Ok(columns_matrix(&coh.field, coh.h1_dim(), &cols))
}

/// The degree-1 Hecke action of a positive `m`, computed by conjugating full
/// cocycles through the group law and transferring them back.
pub fn transfer_hecke_oracle<M: KuModule + ?Sized>(coh: &KuCohomology<'_, M>, m: &GMatrix) -> Result<FieldMatrix> {
    let pos = positivity(m)?;
    let tm = coh.module.torus(m)?;
    let (powers, index) = oracle_group(coh, pos.a)?;
    let n = powers.len();
    let sub_order = n / index;
    let x = eps_inverse_mod(&pos, coh.field.p(), pos.a + coh.stable) as usize;
    let section = coh.h1_section();
    let cols: Vec<Vec<FieldElement>> = (0..coh.h1_dim())
        .map(|k| {
            let v = section.column(k);
            let c = cocycle_from_value(&powers, 1, &v, n);
            // (conj c)(γ'^j) = m c(m^{-1} γ'^j m) = m c(γ^{j ε^{-1}})
            let conj: Cocycle = (0..sub_order).map(|j| tm.mul_vec(&c[(j * x) % n])).collect::<Result<_>>()?;
            let cor = transfer(&powers, index, &conj)?;
            Ok(coh.h1_class(&cor[1 % n]))
        })
        .collect::<Result<_>>()?;
    Ok(columns_matrix(&coh.field, coh.h1_dim(), &cols))
}

fn oracle_group<M: KuModule + ?Sized>(coh: &KuCohomology<'_, M>, a: u32) -> Result<(Vec<FieldMatrix>, usize)> {
    let p = coh.field.p();
    let m = a + coh.stable;
    let n = p
        .checked_pow(m)
        .filter(|&n| n <= ORACLE_GROUP_BOUND)
        .ok_or_else(|| Error::NoAdmissibleQuotient(format!("p^{m} exceeds {ORACLE_GROUP_BOUND}")))?;
    Ok((powers_of(&coh.gamma, n), p.pow(a) as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::PadicCharacter;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn basic_dimensions() {
        let k = f(5);
        let t = SmoothZpModule::trivial(&k, 3);
        let c = KuCohomology::new(&t).unwrap();
        assert_eq!((c.h0_dim(), c.h1_dim()), (3, 3));
        let w = Weight::new(&k, 3, 0).unwrap();
        let c = KuCohomology::new(&w).unwrap();
        assert_eq!((c.h0_dim(), c.h1_dim()), (1, 1));
        assert_eq!(c.h1_cokernel().complement, vec![3]);
        let one = InflatedCharacter::trivial(&k);
        assert_eq!(cocycle_oracle(&one).unwrap(), (1, 1));
        let k3 = f(3);
        assert_eq!(cocycle_oracle(&Weight::new(&k3, 1, 0).unwrap()).unwrap(), (1, 1));
    }

    #[test]
    fn non_smooth_rejected() {
        let k = f(5);
        let g = FieldMatrix::from_ints(&k, &[vec![2]]);
        assert!(matches!(SmoothZpModule::new(g), Err(Error::NotSmooth(_))));
        let zero = SmoothZpModule::new(FieldMatrix::zeros(&k, 0, 0)).unwrap();
        assert_eq!(cocycle_oracle(&zero).unwrap(), (0, 0));
    }

    #[test]
    fn res_and_cores_trivial() {
        let k = f(3);
        let one = InflatedCharacter::trivial(&k);
        let c = KuCohomology::new(&one).unwrap();
        assert_eq!(c.res(0), FieldMatrix::identity(&k, 1));
        assert_eq!(c.cores(0), FieldMatrix::identity(&k, 1));
        assert!(c.res(1).is_zero());
        assert_eq!(c.cores(1).rank(), 1);
        assert_eq!(transfer_cores_oracle(&c, 1).unwrap(), c.cores(1));
    }

    #[test]
    fn delta_values() {
        for p in [3u64, 5] {
            let k = f(p);
            for u in 1..p as i64 {
                let uu = PScalar::from_int(p, u + p as i64);
                let one = PScalar::one(p);
                let want = k.from_int(u);
                assert_eq!(delta_from_cohomology(&k, &GMatrix::diag(p, uu.clone(), one.clone())).unwrap(), want);
                assert_eq!(delta_from_cohomology(&k, &GMatrix::diag(p, one.clone(), uu.clone())).unwrap(), want.inv().unwrap());
                assert!(delta_from_cohomology(&k, &GMatrix::diag(p, uu.clone(), uu)).unwrap().is_one());
            }
            assert!(delta_from_cohomology(&k, &GMatrix::diag_p(p, 1, 0)).unwrap().is_one());
            assert!(delta_from_cohomology(&k, &GMatrix::diag_p(p, 0, 1)).unwrap().is_one());
            let want = TorusCharacter::new(PadicCharacter::omega(&k), PadicCharacter::omega_pow(&k, -1));
            assert_eq!(delta_character(&k).unwrap(), want);
        }
    }

    #[test]
    fn hecke_on_h0_examples() {
        let k = f(5);
        let w = Weight::new(&k, 2, 1).unwrap();
        let c = KuCohomology::new(&w).unwrap();
        let m = GMatrix::from_ints(5, [[2, 0], [0, 3]]);
        // x^2 ↦ 2^2 (2·3)^1 x^2
        assert_eq!(c.hecke(&m, 0).unwrap()[(0, 0)], k.from_int(24));
        let chi = TorusCharacter::new(PadicCharacter::mu(k.from_int(2)).unwrap(), PadicCharacter::omega(&k));
        let inf = InflatedCharacter::new(chi);
        let c = KuCohomology::new(&inf).unwrap();
        assert!(c.hecke(&GMatrix::diag_p(5, 1, 0), 0).unwrap().is_zero());
        assert!(c.hecke(&GMatrix::diag_p(5, 0, 1), 0).is_err());
        let one = InflatedCharacter::trivial(&k);
        let c = KuCohomology::new(&one).unwrap();
        assert!(c.hecke(&GMatrix::diag_p(5, 1, 0), 1).unwrap()[(0, 0)].is_one());
    }
}
