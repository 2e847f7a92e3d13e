//! Satake maps in degree 0 and top degree, computed by summing the induced
//! function over `U/K_U` cosets, plus the μ-projection calculus and the
//! unwinding of `K_U`-invariants of Borel inductions.

mod mu;
mod unwind;

pub use mu::{c_level, in_p_plus, mu_domain, mu_projection, AffineModule, BorelModule};
pub use unwind::{decompose, double_coset_partition, unwind, BorelIndElement, Generator, TorusValues, UnwindBox};

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FieldSpec};
use crate::gl2ind::{HeckePoly, IndElement, Phi};
use crate::padic::{enumerate_ucosets, ucoset_shell, GMatrix, VertexCoset};
use crate::torus::{HeckeLaurent, PadicCharacter, UnitCharacter};
use crate::weights::{Weight, WeightVector};

/// Which explicit Satake formula to use: `Zero` sums `f(u m)` and reads the
/// coinvariant `η`; `Top` sums `f(m u)` on the `K_U`-invariant line.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Degree {
    Zero,
    Top,
}

impl Degree {
    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            0 => Ok(Degree::Zero),
            1 => Ok(Degree::Top),
            _ => Err(Error::InvalidDegree(i as usize)),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Degree::Zero => 0,
            Degree::Top => 1,
        }
    }
}

/// A function on `T / Z K_T` given by its values at `diag(p^n, 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusIndElement {
    pub terms: BTreeMap<i64, FieldElement>,
    pub units: UnitCharacter,
    pub central: PadicCharacter,
}

impl TorusIndElement {
    pub fn to_laurent(&self, field: &FieldSpec) -> HeckeLaurent {
        let mut out = HeckeLaurent::zero(field);
        for (&n, c) in &self.terms {
            out.add_term(n, c.clone());
        }
        out
    }
}

/// A certified Satake computation.
#[derive(Clone, Debug)]
pub struct SatakeRun {
    pub degree: Degree,
    pub image: TorusIndElement,
    pub laurent: HeckeLaurent,
    pub depth: u32,
    /// Number of shell cosets checked to contribute nothing.
    pub shell_checked: usize,
}

impl SatakeRun {
    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree.index(),
            "laurent": self.laurent.to_json(),
            "depth": self.depth,
            "shell_checked": self.shell_checked,
            "units": [self.image.units.e1, self.image.units.e2],
            "central": self.image.central.to_json(),
        })
    }
}

/// Truncation depth large enough that every support vertex of `f` is hit
/// by some coset of depth below it, for both formulas.
pub fn required_depth(f: &IndElement) -> u32 {
    let need = f
        .support()
        .map(|v: &VertexCoset| {
            let val_u = v.u.val().unwrap_or(i64::MAX / 4);
            [v.a - val_u, -val_u, -v.a, 0].into_iter().max().unwrap()
        })
        .max()
        .unwrap_or(0);
    need as u32 + 1
}

fn coset_matrix(degree: Degree, p: u64, n: i64, u: &GMatrix) -> GMatrix {
    let m = GMatrix::diag_p(p, n, 0);
    match degree {
        Degree::Zero => u.mul(&m),
        Degree::Top => m.mul(u),
    }
}

fn add_into(acc: &mut WeightVector, v: &[FieldElement]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a = &*a + b;
    }
}

fn source_vector(degree: Degree, w: &Weight) -> WeightVector {
    match degree {
        Degree::Zero => w.y_r(),
        Degree::Top => w.x_r(),
    }
}

fn image_characters(degree: Degree, w: &Weight) -> (UnitCharacter, PadicCharacter) {
    let central = PadicCharacter::new(w.central().clone(), 2 * w.e() as i64 + w.r() as i64).expect("unit");
    let units = match degree {
        Degree::Zero => w.coinvariant_character(),
        // twisted by δ = ω ⊠ ω^{-1}
        Degree::Top => {
            let c = w.invariant_character();
            UnitCharacter::new(w.p(), c.e1 as i64 + 1, c.e2 as i64 - 1)
        }
    };
    (units, central)
}

/// Fails if any coset of depth `depth + 1` meets the support of `f`.
fn satake_of_element(degree: Degree, f: &IndElement, w: &Weight, depth: u32) -> Result<SatakeRun> {
    let p = w.p();
    let (units, central) = image_characters(degree, w);
    let mut image = TorusIndElement { terms: BTreeMap::new(), units, central };
    if f.is_zero() {
        return Ok(SatakeRun { degree, laurent: image.to_laurent(w.field()), image, depth, shell_checked: 0 });
    }
    let ns: Vec<i64> = f.support().map(|v| -v.a).collect();
    let (lo, hi) = (ns.iter().min().unwrap() - 1, ns.iter().max().unwrap() + 1);
    let cosets: Vec<GMatrix> = enumerate_ucosets(p, depth).iter().map(|c| c.matrix()).collect();
    let shell: Vec<GMatrix> = ucoset_shell(p, depth + 1).iter().map(|c| c.matrix()).collect();
    let mut shell_checked = 0;
    for n in lo..=hi {
        for u in &shell {
            let t = coset_matrix(degree, p, n, u);
            if f.evaluate(&t).iter().any(|x| !x.is_zero()) {
                return Err(Error::TruncationUnsound(format!("coset u = {} at n = {n} meets the support beyond depth {depth}", u.b())));
            }
            shell_checked += 1;
        }
    }
    for n in lo..=hi {
        let mut total = w.zero_vector();
        for u in &cosets {
            add_into(&mut total, &f.evaluate(&coset_matrix(degree, p, n, u)));
        }
        let c = match degree {
            Degree::Zero => w.eta(&total),
            Degree::Top => {
                if total[1..].iter().any(|x| !x.is_zero()) {
                    return Err(Error::Inconsistent(format!("top-degree sum at n = {n} is not K_U-invariant: {total:?}")));
                }
                total[0].clone()
            }
        };
        if !c.is_zero() {
            image.terms.insert(n, c);
        }
    }
    Ok(SatakeRun { degree, laurent: image.to_laurent(w.field()), image, depth, shell_checked })
}

/// Satake image of `q(Φ)`, summed over cosets of depth at most `depth`
/// (chosen from the support when `None`).
pub fn satake(degree: Degree, q: &HeckePoly, w: &Weight, depth: Option<u32>) -> Result<SatakeRun> {
    let f = Phi::new(w).apply_poly(q, &IndElement::basic(w, &GMatrix::identity(w.p()), &source_vector(degree, w))?);
    let depth = depth.unwrap_or_else(|| required_depth(&f));
    satake_of_element(degree, &f, w, depth)
}

pub fn satake0(q: &HeckePoly, w: &Weight, depth: Option<u32>) -> Result<HeckeLaurent> {
    Ok(satake(Degree::Zero, q, w, depth)?.laurent)
}

pub fn satake1(q: &HeckePoly, w: &Weight, depth: Option<u32>) -> Result<HeckeLaurent> {
    Ok(satake(Degree::Top, q, w, depth)?.laurent)
}

/// Runs at the default depth and again one level deeper; the two must agree.
pub fn satake_checked(degree: Degree, q: &HeckePoly, w: &Weight) -> Result<SatakeRun> {
    let run = satake(degree, q, w, None)?;
    let deeper = satake(degree, q, w, Some(run.depth + 1))?;
    if deeper.laurent != run.laurent {
        return Err(Error::TruncationUnsound(format!(
            "depth {} gives {} but depth {} gives {}",
            run.depth,
            run.laurent,
            deeper.depth,
            deeper.laurent
        )));
    }
    Ok(run)
}
