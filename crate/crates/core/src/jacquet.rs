//! `L^0(U, V)` and `L^{-1}(U, V)` for the irreducible smooth representations
//! of GL2(Q_p) with central character, through the presentation
//! `0 → ind W → ind W → V(r, λ) → 0` by `Φ - λ` and its Satake images.

use std::fmt;

use serde_json::{json, Value};

use crate::cohomology::{delta_character, InflatedCharacter, KuCohomology, KuModule};
use crate::error::{Error, Result};
use crate::ffield::{discrete_log_prime, primitive_root, Embedding, FieldElement, FieldSpec};
use crate::gl2ind::HeckePoly;
use crate::padic::{GMatrix, PScalar};
use crate::satake::{satake_checked, Degree};
use crate::torus::{ind_cokernel, localize_finite, IndCokernel, PadicCharacter, TorusCharacter};
use crate::weights::Weight;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IrreducibleLabel {
    /// `χ ∘ det`
    Character { chi: PadicCharacter },
    /// `(χ ∘ det) ⊗ Sp`
    Special { chi: PadicCharacter },
    /// `i_T^G(χ1 ⊠ χ2)` with `χ1 ≠ χ2`
    Principal { chi1: PadicCharacter, chi2: PadicCharacter },
    /// `V(r, 0, χ)`
    Supersingular { r: u32, chi: PadicCharacter },
}

impl IrreducibleLabel {
    pub fn kind(&self) -> &'static str {
        match self {
            IrreducibleLabel::Character { .. } => "character",
            IrreducibleLabel::Special { .. } => "special",
            IrreducibleLabel::Principal { .. } => "principal",
            IrreducibleLabel::Supersingular { .. } => "supersingular",
        }
    }

    pub fn field(&self) -> &FieldSpec {
        match self {
            IrreducibleLabel::Character { chi } | IrreducibleLabel::Special { chi } | IrreducibleLabel::Supersingular { chi, .. } => {
                chi.field()
            }
            IrreducibleLabel::Principal { chi1, .. } => chi1.field(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            IrreducibleLabel::Principal { chi1, chi2 } => {
                if chi1.field() != chi2.field() {
                    return Err(Error::FieldMismatch("principal series characters over different fields".into()));
                }
                if chi1 == chi2 {
                    return Err(Error::InvalidParameters(
                        "i_T^G(χ ⊠ χ) is reducible; the principal series needs χ1 ≠ χ2".into(),
                    ));
                }
                Ok(())
            }
            IrreducibleLabel::Supersingular { r, chi } => {
                let p = chi.p();
                if *r as u64 > p - 1 {
                    return Err(Error::InvalidParameters(format!("V(r, 0, χ) needs 0 <= r <= p-1, got r={r}")));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn twist(&self, psi: &PadicCharacter) -> Self {
        match self {
            IrreducibleLabel::Character { chi } => IrreducibleLabel::Character { chi: chi.mul(psi) },
            IrreducibleLabel::Special { chi } => IrreducibleLabel::Special { chi: chi.mul(psi) },
            IrreducibleLabel::Principal { chi1, chi2 } => IrreducibleLabel::Principal { chi1: chi1.mul(psi), chi2: chi2.mul(psi) },
            IrreducibleLabel::Supersingular { r, chi } => IrreducibleLabel::Supersingular { r: *r, chi: chi.mul(psi) },
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            IrreducibleLabel::Character { chi } | IrreducibleLabel::Special { chi } => json!({"type": self.kind(), "chi": chi.to_json()}),
            IrreducibleLabel::Principal { chi1, chi2 } => json!({"type": self.kind(), "chi1": chi1.to_json(), "chi2": chi2.to_json()}),
            IrreducibleLabel::Supersingular { r, chi } => json!({"type": self.kind(), "r": r, "chi": chi.to_json()}),
        }
    }
}

impl fmt::Display for IrreducibleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrreducibleLabel::Character { chi } => write!(f, "({chi})∘det"),
            IrreducibleLabel::Special { chi } => write!(f, "({chi})∘det ⊗ Sp"),
            IrreducibleLabel::Principal { chi1, chi2 } => write!(f, "i_T^G({chi1} ⊠ {chi2})"),
            IrreducibleLabel::Supersingular { r, chi } => write!(f, "V({r}, 0, {chi})"),
        }
    }
}

/// `L^0(U, V)` and `L^{-1}(U, V)`, each zero or a character of T.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JacquetResult {
    pub l0: Option<TorusCharacter>,
    pub l1: Option<TorusCharacter>,
}

impl JacquetResult {
    pub fn zero() -> Self {
        JacquetResult { l0: None, l1: None }
    }

    /// `L^{-i}(U, V)`; zero outside `i ∈ {0, 1}`.
    pub fn degree(&self, i: i64) -> Option<&TorusCharacter> {
        match i {
            0 => self.l0.as_ref(),
            1 => self.l1.as_ref(),
            _ => None,
        }
    }

    /// Twist by `χ ⊠ χ`, moving to the larger of the two coefficient fields.
    pub fn twist(&self, chi: &PadicCharacter) -> Result<Self> {
        let (base, chi) = match self.field() {
            Some(f) if f != chi.field() => {
                if f.degree() % chi.field().degree() == 0 {
                    (self.clone(), chi.embed(&chi.field().embedding_into(f)?))
                } else {
                    (self.embed(&f.embedding_into(chi.field())?), chi.clone())
                }
            }
            _ => (self.clone(), chi.clone()),
        };
        Ok(JacquetResult { l0: base.l0.as_ref().map(|c| c.twist(&chi)), l1: base.l1.as_ref().map(|c| c.twist(&chi)) })
    }

    pub fn embed(&self, emb: &Embedding) -> Self {
        JacquetResult { l0: self.l0.as_ref().map(|c| c.embed(emb)), l1: self.l1.as_ref().map(|c| c.embed(emb)) }
    }

    fn field(&self) -> Option<&FieldSpec> {
        self.l0.as_ref().or(self.l1.as_ref()).map(TorusCharacter::field)
    }

    /// Equality after embedding the smaller coefficient field into the larger.
    pub fn agrees_with(&self, other: &Self) -> bool {
        match (self.field(), other.field()) {
            (Some(a), Some(b)) if a != b => {
                if b.degree() % a.degree() == 0 {
                    a.embedding_into(b).map(|e| &self.embed(&e) == other).unwrap_or(false)
                } else {
                    b.embedding_into(a).map(|e| self == &other.embed(&e)).unwrap_or(false)
                }
            }
            _ => self == other,
        }
    }

    pub fn to_json(&self) -> Value {
        let c = |x: &Option<TorusCharacter>| x.as_ref().map_or(Value::from(0), TorusCharacter::to_json);
        json!({"L^-1": c(&self.l1), "L^0": c(&self.l0)})
    }
}

impl fmt::Display for JacquetResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |x: &Option<TorusCharacter>| x.as_ref().map_or("0".to_string(), |c| c.to_string());
        write!(f, "L^-1 = {}, L^0 = {}", c(&self.l1), c(&self.l0))
    }
}

fn as_character(c: IndCokernel) -> Result<Option<TorusCharacter>> {
    match c {
        IndCokernel::Zero => Ok(None),
        IndCokernel::Character(t) => Ok(Some(t)),
        IndCokernel::Module { dim, .. } => Err(Error::Inconsistent(format!("cokernel of dimension {dim} is not a character"))),
    }
}

/// `L(U, V(r, λ, χ))` as the cokernels of `S^i(Φ) - λ`, twisted by `χ`.
pub fn jacquet_of_presentation(r: u32, lambda: &FieldElement, chi: &PadicCharacter) -> Result<JacquetResult> {
    let field = lambda.field();
    if chi.field() != field {
        return Err(Error::FieldMismatch("λ and χ must share a coefficient field".into()));
    }
    let w = Weight::new(field, r, 0)?;
    let phi = HeckePoly::phi_pow(field, 1);
    let mut out = JacquetResult::zero();
    for degree in [Degree::Zero, Degree::Top] {
        let run = satake_checked(degree, &phi, &w)?;
        let coker = as_character(ind_cokernel(&run.laurent, lambda, run.image.units, &run.image.central)?)?;
        let twisted = coker.map(|c| c.twist(chi));
        match degree {
            Degree::Zero => out.l0 = twisted,
            Degree::Top => out.l1 = twisted,
        }
    }
    Ok(out)
}

/// The character by which `T` acts on a one-dimensional localized
/// cohomology group, read from Hecke operators of positive elements.
fn localized_character<M: KuModule + ?Sized>(coh: &KuCohomology<'_, M>, degree: usize) -> Result<Option<TorusCharacter>> {
    let field = coh.field().clone();
    let p = field.p();
    let z = GMatrix::diag_p(p, 1, 0);
    let dim = localize_finite(&coh.hecke(&z, degree)?)?;
    match (dim, coh.dim(degree)) {
        (0, _) => return Ok(None),
        (1, 1) => {}
        (d, full) => {
            return Err(Error::Inconsistent(format!("localized H^{degree} has dimension {d} inside {full}")));
        }
    }
    let value = |m: GMatrix| -> Result<FieldElement> { Ok(coh.hecke(&m, degree)?[(0, 0)].clone()) };
    let g = PScalar::from_int(p, primitive_root(p) as i64);
    let one = PScalar::one(p);
    let dlog = |v: FieldElement| -> Result<i64> {
        discrete_log_prime(&v)
            .map(|e| e as i64)
            .ok_or_else(|| Error::Inconsistent(format!("unit acts by {v}, which is not in F_p^×")))
    };
    let at_p1 = value(z.clone())?;
    let at_pp = value(GMatrix::diag_p(p, 1, 1))?;
    let ratio = &at_pp * &at_p1.inv().ok_or(Error::DivisionByZero)?;
    let chi1 = PadicCharacter::new(at_p1, dlog(value(GMatrix::diag(p, g.clone(), one.clone()))?)?)?;
    let chi2 = PadicCharacter::new(ratio, dlog(value(GMatrix::diag(p, one, g))?)?)?;
    Ok(Some(TorusCharacter::new(chi1, chi2)))
}

/// `L(U, χ ∘ det)` from `H^{1-i}(K_U, δ ⊗ χ)` localized at `diag(p, 1)`.
pub fn character_row(chi: &PadicCharacter) -> Result<JacquetResult> {
    let field = chi.field();
    let delta = delta_character(field)?;
    let module = InflatedCharacter::new(delta.mul(&TorusCharacter::new(chi.clone(), chi.clone())));
    let coh = KuCohomology::new(&module)?;
    Ok(JacquetResult { l0: localized_character(&coh, 1)?, l1: localized_character(&coh, 0)? })
}

fn square_root(x: &FieldElement) -> Option<FieldElement> {
    x.field().elements().find(|y| &(y * y) == x)
}

/// `i_T^G(χ1 ⊠ χ2) ≅ V(r2 - r1, λ2/λ, μ_λ ω^{r1})` with `λ² = λ1 λ2`, moving
/// to a quadratic extension when the square root is missing.
pub fn principal_row(chi1: &PadicCharacter, chi2: &PadicCharacter) -> Result<JacquetResult> {
    IrreducibleLabel::Principal { chi1: chi1.clone(), chi2: chi2.clone() }.validate()?;
    let base = chi1.field();
    let prod = &chi1.lambda * &chi2.lambda;
    let (chi1, chi2, lambda) = match square_root(&prod) {
        Some(l) => (chi1.clone(), chi2.clone(), l),
        None => {
            let ext = FieldSpec::new(base.p(), 2 * base.degree())?;
            let emb = base.embedding_into(&ext)?;
            let l = square_root(&emb.apply(&prod)).ok_or_else(|| Error::Inconsistent("no square root in the quadratic extension".into()))?;
            (chi1.embed(&emb), chi2.embed(&emb), l)
        }
    };
    let p = base.p() as i64;
    let r = (chi2.e as i64 - chi1.e as i64).rem_euclid((p - 1).max(1)) as u32;
    let lam2 = &chi2.lambda * &lambda.inv().ok_or(Error::DivisionByZero)?;
    let psi = PadicCharacter::new(lambda, chi1.e as i64)?;
    jacquet_of_presentation(r, &lam2, &psi)
}

/// For `0 → S → V → Q → 0`, recovers `L(U, S)` from the long exact
/// sequence when it is forced by `L(U, V)` and `L(U, Q)`.
pub fn sub_from_les(v: &JacquetResult, q: &JacquetResult) -> Result<JacquetResult> {
    if q.l1.is_some() {
        return Err(Error::Inconsistent("L^{-1} of the quotient is nonzero; the connecting map is not determined".into()));
    }
    // L^0 V → L^0 Q is onto
    let l0 = match (&v.l0, &q.l0) {
        (_, None) => v.l0.clone(),
        (Some(a), Some(b)) if a == b => None,
        (Some(a), Some(b)) => return Err(Error::Inconsistent(format!("L^0 V = {a} cannot surject onto L^0 Q = {b}"))),
        (None, Some(b)) => return Err(Error::Inconsistent(format!("L^0 V = 0 cannot surject onto L^0 Q = {b}"))),
    };
    Ok(JacquetResult { l0, l1: v.l1.clone() })
}

/// `L(U, (χ ∘ det) ⊗ Sp)` from `0 → Sp → V(0, 1) → 1 → 0` at `χ = 1`,
/// then twisted by `χ`.
pub fn special_series_via_les(chi: &PadicCharacter) -> Result<JacquetResult> {
    let field = chi.field();
    let one = PadicCharacter::trivial(field);
    let v = jacquet_of_presentation(0, &field.one(), &one)?;
    let q = character_row(&one)?;
    sub_from_les(&v, &q)?.twist(chi)
}

/// The four rows, each computed from presentations and cohomology.
pub fn table1(label: &IrreducibleLabel) -> Result<JacquetResult> {
    label.validate()?;
    match label {
        IrreducibleLabel::Character { chi } => character_row(chi),
        IrreducibleLabel::Special { chi } => {
            // the twisted sequence 0 → χ Sp → V(0, 1, χ) → χ ∘ det → 0 directly
            let v = jacquet_of_presentation(0, &chi.field().one(), chi)?;
            sub_from_les(&v, &character_row(chi)?)
        }
        IrreducibleLabel::Principal { chi1, chi2 } => principal_row(chi1, chi2),
        IrreducibleLabel::Supersingular { r, chi } => jacquet_of_presentation(*r, &chi.field().zero(), chi),
    }
}

/// Closed forms for `V(r, λ, χ)`: `(χμ_{1/λ} ⊠ χμ_λ ω^r, χμ_λ ω^{r+1} ⊠ χμ_{1/λ} ω^{-1})`
/// when `λ ≠ 0`, zero otherwise.
pub fn presentation_closed_form(r: u32, lambda: &FieldElement, chi: &PadicCharacter) -> Result<JacquetResult> {
    let Some(inv) = lambda.inv() else {
        return Ok(JacquetResult::zero());
    };
    let mu = |l: &FieldElement, e: i64| -> Result<PadicCharacter> { Ok(PadicCharacter::new(l.clone(), e)?.mul(chi)) };
    let l0 = TorusCharacter::new(mu(&inv, 0)?, mu(lambda, r as i64)?);
    let l1 = TorusCharacter::new(mu(lambda, r as i64 + 1)?, mu(&inv, -1)?);
    Ok(JacquetResult { l0: Some(l0), l1: Some(l1) })
}

/// The table entries written out directly from the labels.
pub fn table1_closed_form(label: &IrreducibleLabel) -> Result<JacquetResult> {
    label.validate()?;
    let omega = |f: &FieldSpec, e: i64| PadicCharacter::omega_pow(f, e);
    Ok(match label {
        IrreducibleLabel::Character { chi } => JacquetResult { l0: Some(TorusCharacter::new(chi.clone(), chi.clone())), l1: None },
        IrreducibleLabel::Special { chi } => {
            let f = chi.field();
            JacquetResult { l0: None, l1: Some(TorusCharacter::new(chi.mul(&omega(f, 1)), chi.mul(&omega(f, -1)))) }
        }
        IrreducibleLabel::Principal { chi1, chi2 } => {
            let f = chi1.field();
            JacquetResult {
                l0: Some(TorusCharacter::new(chi1.clone(), chi2.clone())),
                l1: Some(TorusCharacter::new(chi2.mul(&omega(f, 1)), chi1.mul(&omega(f, -1)))),
            }
        }
        IrreducibleLabel::Supersingular { .. } => JacquetResult::zero(),
    })
}
