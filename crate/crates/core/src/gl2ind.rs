//! `ind_{ZK}^G W` for a weight W, as finitely supported sums `Σ [g, w]`
//! with `[g h, w] = [g, h w]` for `h ∈ ZK`, `g'·[g, w] = [g' g, w]` and
//! `[s, w](t) = t s · w` when `t s ∈ ZK` (zero otherwise).

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FieldMatrix, FieldSpec};
use crate::padic::{canonical_vertex, GMatrix, VertexCoset};
use crate::weights::{Weight, WeightVector};

#[derive(Clone, PartialEq, Eq)]
pub struct IndElement {
    weight: Weight,
    terms: BTreeMap<VertexCoset, WeightVector>,
}

fn add_vec(a: &[FieldElement], b: &[FieldElement]) -> WeightVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl IndElement {
    pub fn zero(weight: &Weight) -> Self {
        IndElement { weight: weight.clone(), terms: BTreeMap::new() }
    }

    /// `[g, w]`.
    pub fn basic(weight: &Weight, g: &GMatrix, w: &[FieldElement]) -> Result<Self> {
        let mut out = Self::zero(weight);
        out.add_term(g, w)?;
        Ok(out)
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn field(&self) -> &FieldSpec {
        self.weight.field()
    }

    pub fn p(&self) -> u64 {
        self.weight.p()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&VertexCoset, &WeightVector)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &VertexCoset> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, v: &VertexCoset) -> Option<&WeightVector> {
        self.terms.get(v)
    }

    fn add_canonical(&mut self, v: VertexCoset, w: WeightVector) {
        if w.iter().all(FieldElement::is_zero) {
            return;
        }
        match self.terms.get_mut(&v) {
            Some(existing) => {
                *existing = add_vec(existing, &w);
                if existing.iter().all(FieldElement::is_zero) {
                    self.terms.remove(&v);
                }
            }
            None => {
                self.terms.insert(v, w);
            }
        }
    }

    /// Adds `[g, w]`, rewriting it as `[rep(v), h w]`.
    pub fn add_term(&mut self, g: &GMatrix, w: &[FieldElement]) -> Result<()> {
        if w.len() != self.weight.dim() {
            return Err(Error::DimensionMismatch(format!("vector of length {} for a weight of dim {}", w.len(), self.weight.dim())));
        }
        let (v, h) = canonical_vertex(g);
        let hw = self.weight.act(&h, w)?;
        self.add_canonical(v, hw);
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, w) in other.terms() {
            out.add_canonical(v.clone(), w.clone());
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let mut out = Self::zero(&self.weight);
        for (v, w) in self.terms() {
            out.add_canonical(v.clone(), w.iter().map(|x| x * c).collect());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-self.field().one()))
    }

    pub fn act_g(&self, g: &GMatrix) -> Self {
        let mut out = Self::zero(&self.weight);
        for (v, w) in self.terms() {
            out.add_term(&g.mul(&v.rep()), w).expect("dimensions agree");
        }
        out
    }

    /// `f(t)`: the term at the vertex of `t^{-1}` contributes `(t rep) w`.
    pub fn evaluate(&self, t: &GMatrix) -> WeightVector {
        // adj(t) is a central multiple of t^{-1}, so it names the same vertex
        let (v, _) = canonical_vertex(&t.adjugate());
        match self.terms.get(&v) {
            Some(w) => self.weight.act(&t.mul(&v.rep()), w).expect("t·rep lies in ZK"),
            None => self.weight.zero_vector(),
        }
    }

    /// Largest tree distance from the origin over the support.
    pub fn radius(&self) -> i64 {
        self.support().map(VertexCoset::distance).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .map(|(v, w)| json!({"vertex": v.to_json(), "coeffs": w.iter().map(FieldElement::to_json).collect::<Vec<_>>()}))
                .collect(),
        )
    }

    pub fn from_json(weight: &Weight, v: &Value) -> Result<Self> {
        let items = v.as_array().ok_or_else(|| Error::Parse("induced element must be a list".into()))?;
        let mut out = Self::zero(weight);
        for item in items {
            let vertex = VertexCoset::from_json(weight.p(), &item["vertex"])?;
            let coeffs = item["coeffs"]
                .as_array()
                .ok_or_else(|| Error::Parse("coeffs must be a list".into()))?
                .iter()
                .map(|c| weight.field().element_from_json(c))
                .collect::<Result<Vec<_>>>()?;
            out.add_term(&vertex.rep(), &coeffs)?;
        }
        Ok(out)
    }
}

impl fmt::Debug for IndElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms().map(|(v, w)| format!("[{v}, {w:?}]")).collect();
        write!(f, "{}", if parts.is_empty() { "0".to_string() } else { parts.join(" + ") })
    }
}

/// The Hecke operator `Φ`, stored by its value on `[1, w]`:
/// `Φ([1, w]) = [diag(p,1)^{-1}, Y(w)] + Σ_i [[[1,i],[0,p]]^{-1}, X(u_i w)]`.
#[derive(Clone, Debug)]
pub struct Phi {
    weight: Weight,
    steps: Vec<(GMatrix, FieldMatrix)>,
}

impl Phi {
    pub fn new(weight: &Weight) -> Self {
        let p = weight.p();
        let field = weight.field();
        let d = weight.dim();
        let r = weight.r() as usize;
        let mut steps = Vec::new();
        // w ↦ Y(w) y^r
        let mut y = FieldMatrix::zeros(field, d, d);
        y[(r, r)] = field.one();
        steps.push((GMatrix::diag_p(p, -1, 0), y));
        for i in 0..p as i64 {
            let s = GMatrix::from_ints(p, [[1, i], [0, p as i64]]).inverse().expect("p-power determinant");
            let ui = weight.action_from_residues([1, i as u64, 0, 1]);
            // w ↦ X(u_i w) x^r
            let mut x = FieldMatrix::zeros(field, d, d);
            for j in 0..d {
                x[(0, j)] = ui[(0, j)].clone();
            }
            steps.push((s, x));
        }
        Phi { weight: weight.clone(), steps }
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn apply(&self, f: &IndElement) -> IndElement {
        let mut out = IndElement::zero(&self.weight);
        for (v, w) in f.terms() {
            let rep = v.rep();
            for (s, lin) in &self.steps {
                let image = lin.mul_vec(w).expect("dims");
                if image.iter().all(FieldElement::is_zero) {
                    continue;
                }
                out.add_term(&rep.mul(s), &image).expect("dims");
            }
        }
        out
    }

    pub fn apply_poly(&self, q: &HeckePoly, f: &IndElement) -> IndElement {
        // Horner: q(Φ) f = c0 f + Φ(c1 f + Φ(c2 f + ...))
        let mut acc = IndElement::zero(&self.weight);
        for c in q.coeffs.iter().rev() {
            acc = self.apply(&acc).add(&f.scale(c));
        }
        acc
    }
}

/// A polynomial `Σ c_i Φ^i`.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckePoly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl HeckePoly {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        HeckePoly { field: field.clone(), coeffs }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::new(field, vec![field.one()])
    }

    pub fn phi_pow(field: &FieldSpec, n: usize) -> Self {
        let mut c = vec![field.zero(); n + 1];
        c[n] = field.one();
        Self::new(field, c)
    }

    /// `Φ - λ`.
    pub fn phi_minus(lambda: &FieldElement) -> Self {
        let field = lambda.field();
        Self::new(field, vec![-lambda, field.one()])
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(&self.field, Vec::new());
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Self::new(&self.field, c)
    }

    /// Parses `phi`, `phi^n`, or a sum like `2+3*phi+phi^2` (coefficients are
    /// integers reduced mod p, or bracketed coefficient lists in `F_{p^k}`).
    pub fn parse(field: &FieldSpec, s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty operator".into()));
        }
        let mut coeffs: Vec<FieldElement> = Vec::new();
        for raw in split_terms(&s) {
            let (neg, term) = match raw.strip_prefix('-') {
                Some(t) => (true, t),
                None => (false, raw.strip_prefix('+').unwrap_or(raw)),
            };
            let (coef, power) = parse_term(field, term)?;
            let coef = if neg { -coef } else { coef };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, field.zero());
            }
            coeffs[power] = &coeffs[power] + &coef;
        }
        Ok(Self::new(field, coeffs))
    }
}

fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut depth = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            '+' | '-' if depth == 0 && i > start && !s[..i].ends_with('^') => {
                out.push(&s[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_coefficient(field: &FieldSpec, s: &str) -> Result<FieldElement> {
    if s.starts_with('[') {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad coefficient {s}: {e}")))?;
        return field.element_from_json(&v);
    }
    s.parse::<i64>().map(|n| field.from_int(n)).map_err(|_| Error::Parse(format!("bad coefficient {s}")))
}

fn parse_term(field: &FieldSpec, term: &str) -> Result<(FieldElement, usize)> {
    let lower = term.to_ascii_lowercase();
    let Some(pos) = lower.find("phi") else {
        return Ok((parse_coefficient(field, term)?, 0));
    };
    let coef = match term[..pos].trim_end_matches('*') {
        "" => field.one(),
        c => parse_coefficient(field, c)?,
    };
    let rest = &term[pos + 3..];
    let power = match rest.strip_prefix('^') {
        Some(n) => n.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent in {term}")))?,
        None if rest.is_empty() => 1,
        None => return Err(Error::Parse(format!("unexpected trailing text in {term}"))),
    };
    Ok((coef, power))
}

impl fmt::Display for HeckePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match (i, c.is_one()) {
                (0, _) => format!("{c}"),
                (1, true) => "phi".to_string(),
                (_, true) => format!("phi^{i}"),
                (1, false) => format!("{c}*phi"),
                _ => format!("{c}*phi^{i}"),
            })
            .collect();
        write!(f, "{}", if parts.is_empty() { "0".to_string() } else { parts.join("+") })
    }
}

impl fmt::Debug for HeckePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{random_gl2_zp, PScalar};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn weight(p: u64, r: u32) -> Weight {
        Weight::new(&FieldSpec::prime(p).unwrap(), r, 0).unwrap()
    }

    fn n_i(p: u64, i: i64) -> GMatrix {
        GMatrix::from_ints(p, [[1, i], [0, p as i64]]).inverse().unwrap()
    }

    #[test]
    fn phi_on_basic_vectors() {
        let p = 5;
        for r in 1..p as u32 {
            let w = weight(p, r);
            let phi = Phi::new(&w);
            let f = IndElement::basic(&w, &GMatrix::identity(p), &w.x_r()).unwrap();
            let mut want = IndElement::zero(&w);
            for i in 0..p as i64 {
                want.add_term(&n_i(p, i), &w.x_r()).unwrap();
            }
            assert_eq!(phi.apply(&f), want);

            let f = IndElement::basic(&w, &GMatrix::identity(p), &w.y_r()).unwrap();
            let mut want = IndElement::basic(&w, &GMatrix::diag_p(p, -1, 0), &w.y_r()).unwrap();
            for i in 0..p as i64 {
                let c = w.field().from_int(i).pow(r as u64);
                want.add_term(&n_i(p, i), &w.x_r().iter().map(|x| x * &c).collect::<Vec<_>>()).unwrap();
            }
            assert_eq!(phi.apply(&f), want);
        }
        let w = weight(3, 0);
        let out = Phi::new(&w).apply(&IndElement::basic(&w, &GMatrix::identity(3), &w.x_r()).unwrap());
        assert_eq!(out.len(), 4);
        assert!(out.terms().all(|(_, c)| c[0].is_one()));
    }

    #[test]
    fn evaluation() {
        let p = 3;
        let w = weight(p, 2);
        let v = vec![w.field().from_int(1), w.field().from_int(2), w.field().from_int(0)];
        let f = IndElement::basic(&w, &GMatrix::identity(p), &v).unwrap();
        assert_eq!(f.evaluate(&GMatrix::identity(p)), v);
        assert_eq!(f.evaluate(&GMatrix::diag_p(p, 1, 0)), w.zero_vector());
        let g = IndElement::basic(&w, &GMatrix::diag_p(p, -1, 0), &v).unwrap();
        assert_eq!(g.evaluate(&GMatrix::diag_p(p, 1, 0)), v);
        // translation moves the support one step
        let moved = f.act_g(&GMatrix::diag_p(p, 1, 0));
        assert_eq!(moved.support().map(VertexCoset::distance).collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn poly_parsing() {
        let k = FieldSpec::prime(5).unwrap();
        assert_eq!(HeckePoly::parse(&k, "phi").unwrap(), HeckePoly::phi_pow(&k, 1));
        assert_eq!(HeckePoly::parse(&k, "phi^3").unwrap(), HeckePoly::phi_pow(&k, 3));
        let q = HeckePoly::parse(&k, "2+3*phi-phi^2").unwrap();
        assert_eq!(q.coeffs(), &[k.from_int(2), k.from_int(3), k.from_int(4)]);
        assert!(HeckePoly::parse(&k, "phi^x").is_err());
        let k2 = FieldSpec::new(5, 2).unwrap();
        let q = HeckePoly::parse(&k2, "[1,2]*phi").unwrap();
        assert_eq!(q.coeffs()[1], k2.from_coeffs(&[1, 2]).unwrap());
    }

    fn random_element(w: &Weight, rng: &mut ChaCha8Rng) -> IndElement {
        let p = w.p();
        let mut f = IndElement::zero(w);
        for _ in 0..3 {
            let g = GMatrix::diag_p(p, rng.gen_range(-2..=2), 0)
                .mul(&GMatrix::unipotent(&PScalar::fraction(p, rng.gen_range(0..p as i64 * 3), 1)))
                .mul(&random_gl2_zp(p, rng, 3));
            let v: Vec<FieldElement> = (0..w.dim()).map(|_| w.field().from_int(rng.gen_range(0..p as i64))).collect();
            f.add_term(&g, &v).unwrap();
        }
        f
    }

    #[test]
    fn equivariance_and_injectivity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [2u64, 3, 5] {
            for r in 0..p as u32 {
                let w = weight(p, r);
                let phi = Phi::new(&w);
                let gens = [
                    GMatrix::diag_p(p, 1, 0),
                    GMatrix::diag_p(p, 0, -1),
                    GMatrix::from_ints(p, [[0, 1], [1, 0]]),
                    GMatrix::from_ints(p, [[1, 1], [0, 1]]),
                    GMatrix::from_ints(p, [[1, 0], [1, 1]]),
                    random_gl2_zp(p, &mut rng, 4),
                ];
                for _ in 0..2 {
                    let f = random_element(&w, &mut rng);
                    for g in &gens {
                        assert_eq!(phi.apply(&f.act_g(g)), phi.apply(&f).act_g(g));
                        // adj(g) = det(g) g^{-1} and det(g) lies in ZK
                        assert_eq!(f.act_g(g).act_g(&g.adjugate()), f.act_g(&g.adjugate().mul(g)));
                    }
                    for l in 0..p as i64 {
                        let q = HeckePoly::phi_minus(&w.field().from_int(l));
                        if !f.is_zero() {
                            assert!(!phi.apply_poly(&q, &f).is_zero());
                        }
                    }
                }
            }
        }
    }

    /// `Φ - λ` is injective on the span of `[g, v]` with g in the ball of
    /// radius 3, checked by a rank computation.
    #[test]
    fn phi_minus_lambda_injective_on_ball() {
        for p in [2u64, 3] {
            let mut ball = vec![VertexCoset::origin(p)];
            let mut frontier = ball.clone();
            for _ in 0..3 {
                let mut next = Vec::new();
                for v in &frontier {
                    for n in v.neighbours() {
                        if !ball.contains(&n) && !next.contains(&n) {
                            next.push(n);
                        }
                    }
                }
                ball.extend(next.iter().cloned());
                frontier = next;
            }
            assert_eq!(ball.len() as u64, 1 + (p + 1) * (1 + p + p * p));
            for r in 0..p as u32 {
                let w = weight(p, r);
                let phi = Phi::new(&w);
                for l in 0..p as i64 {
                    let q = HeckePoly::phi_minus(&w.field().from_int(l));
                    let mut rows: BTreeMap<(VertexCoset, usize), usize> = BTreeMap::new();
                    let mut cols = Vec::new();
                    for v in &ball {
                        for i in 0..w.dim() {
                            let image = phi.apply_poly(&q, &IndElement::basic(&w, &v.rep(), &w.basis_vector(i)).unwrap());
                            let mut col = Vec::new();
                            for (u, vec) in image.terms() {
                                for (j, c) in vec.iter().enumerate() {
                                    let n = rows.len();
                                    col.push((*rows.entry((u.clone(), j)).or_insert(n), c.clone()));
                                }
                            }
                            cols.push(col);
                        }
                    }
                    let dense: Vec<Vec<FieldElement>> = cols
                        .iter()
                        .map(|col| {
                            let mut d = vec![w.field().zero(); rows.len()];
                            for (i, c) in col {
                                d[*i] = c.clone();
                            }
                            d
                        })
                        .collect();
                    let m = FieldMatrix::from_columns(w.field(), rows.len(), &dense);
                    assert_eq!(m.rank(), cols.len(), "p={p} r={r} λ={l}");
                }
            }
        }
    }

    #[test]
    fn ku_invariance_and_radius() {
        for p in [3u64, 5] {
            for r in 0..p as u32 {
                let w = weight(p, r);
                let phi = Phi::new(&w);
                let base = IndElement::basic(&w, &GMatrix::identity(p), &w.x_r()).unwrap();
                let image = phi.apply(&base);
                for t in 0..p as i64 {
                    assert_eq!(image.act_g(&GMatrix::from_ints(p, [[1, t], [0, 1]])), image);
                }
                let mut f = IndElement::basic(&w, &GMatrix::identity(p), &w.y_r()).unwrap();
                for n in 1..=3 {
                    f = phi.apply(&f);
                    assert!(f.radius() <= n);
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let w = weight(3, 1);
        let f = Phi::new(&w).apply(&IndElement::basic(&w, &GMatrix::identity(3), &w.y_r()).unwrap());
        let back = IndElement::from_json(&w, &f.to_json()).unwrap();
        assert_eq!(back, f);
    }
}
