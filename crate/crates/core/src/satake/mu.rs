//! The projections `μ_{m,g}: H⁰(K_U^g ∩ K_B, W) → H⁰(K_U^{mg} ∩ K_B, W)`,
//! `w ↦ Σ u·w` over `u ∈ (K_U^{mg} ∩ K_B) / (K_U^g ∩ K_B)`, where
//! `K_U^g = g^{-1} K_U g`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FieldMatrix, FieldSpec};
use crate::padic::{GMatrix, PScalar};
use crate::weights::Weight;

/// A finite-dimensional representation of the integral Borel `K_B`.
pub trait BorelModule {
    fn field(&self) -> &FieldSpec;
    fn dim(&self) -> usize;
    fn act_kb(&self, k: &GMatrix) -> Result<FieldMatrix>;
}

fn check_kb(k: &GMatrix) -> Result<()> {
    if k.is_upper_triangular() && k.in_gl2_zp() {
        Ok(())
    } else {
        Err(Error::InvalidParameters(format!("{k} is not in the integral Borel")))
    }
}

impl BorelModule for Weight {
    fn field(&self) -> &FieldSpec {
        Weight::field(self)
    }
    fn dim(&self) -> usize {
        Weight::dim(self)
    }
    fn act_kb(&self, k: &GMatrix) -> Result<FieldMatrix> {
        check_kb(k)?;
        self.action(k)
    }
}

/// Permutation module on `Z/p^L` with `[[a, b], [0, d]]` acting by
/// `x ↦ (a x + b) / d`. Unlike a weight, `γ^p` acts nontrivially once L ≥ 2.
#[derive(Clone, Debug)]
pub struct AffineModule {
    field: FieldSpec,
    level: u32,
    modulus: u64,
}

impl AffineModule {
    pub fn new(field: &FieldSpec, level: u32) -> Self {
        AffineModule { field: field.clone(), level, modulus: field.p().pow(level) }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    fn residue(&self, x: &PScalar) -> u64 {
        let r = x.reduce_mod(self.level as i64).to_integer().expect("integral");
        r.mod_floor(&BigInt::from(self.modulus)).to_u64().expect("small")
    }
}

impl BorelModule for AffineModule {
    fn field(&self) -> &FieldSpec {
        &self.field
    }
    fn dim(&self) -> usize {
        self.modulus as usize
    }
    fn act_kb(&self, k: &GMatrix) -> Result<FieldMatrix> {
        check_kb(k)?;
        let n = self.modulus;
        let (a, b, d) = (self.residue(k.a()), self.residue(k.b()), self.residue(k.d()));
        let d_inv = BigInt::from(d).modinv(&BigInt::from(n)).and_then(|x| x.to_u64()).expect("unit");
        let mut m = FieldMatrix::zeros(&self.field, n as usize, n as usize);
        for x in 0..n {
            let y = ((a * x + b) % n) * d_inv % n;
            m[(y as usize, x as usize)] = self.field.one();
        }
        Ok(m)
    }
}

fn val(x: &PScalar) -> i64 {
    x.val().expect("nonzero diagonal")
}

/// `c` with `K_U^g ∩ K_B = n(p^c Z_p)`, for upper triangular `g`.
pub fn c_level(g: &GMatrix) -> u32 {
    (val(g.d()) - val(g.a())).max(0) as u32
}

/// Membership in `P⁺ = K_U M⁺`.
pub fn in_p_plus(g: &GMatrix) -> bool {
    g.is_upper_triangular() && val(g.a()) >= val(g.d()) && g.b().val().is_none_or(|v| v >= val(g.d()))
}

fn positive(m: &GMatrix) -> Result<()> {
    if m.is_diagonal() && val(m.a()) >= val(m.d()) {
        Ok(())
    } else {
        Err(Error::NotPositive(format!("{m}")))
    }
}

fn gamma_power<M: BorelModule + ?Sized>(module: &M, p: u64, s: u64) -> Result<FieldMatrix> {
    module.act_kb(&GMatrix::unipotent(&PScalar::from_int(p, s as i64)))
}

/// A basis of `H⁰(K_U^g ∩ K_B, W) = ker(γ^{p^c} - 1)`.
pub fn mu_domain<M: BorelModule + ?Sized>(module: &M, g: &GMatrix) -> Result<Vec<Vec<FieldElement>>> {
    let p = g.p();
    let c = c_level(g);
    let step = gamma_power(module, p, p.pow(c))?;
    Ok(step.sub(&FieldMatrix::identity(module.field(), module.dim()))?.kernel())
}

/// `μ_{m,g}(w)` for positive diagonal `m` and upper triangular `g`.
pub fn mu_projection<M: BorelModule + ?Sized>(module: &M, m: &GMatrix, g: &GMatrix, w: &[FieldElement]) -> Result<Vec<FieldElement>> {
    positive(m)?;
    if !g.is_upper_triangular() {
        return Err(Error::InvalidParameters(format!("{g} is not upper triangular")));
    }
    let p = g.p();
    let (c, c2) = (c_level(g), c_level(&m.mul(g)));
    debug_assert!(c2 <= c);
    if gamma_power(module, p, p.pow(c))?.mul_vec(w)? != w {
        return Err(Error::InvalidParameters("vector is not invariant under K_U^g ∩ K_B".into()));
    }
    let base = p.pow(c2);
    let mut out = vec![module.field().zero(); module.dim()];
    for j in 0..p.pow(c - c2) {
        let v = gamma_power(module, p, base * j)?.mul_vec(w)?;
        for (o, x) in out.iter_mut().zip(&v) {
            *o = &*o + x;
        }
    }
    Ok(out)
}
