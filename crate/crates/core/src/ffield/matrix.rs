use std::fmt;
use std::ops::{Index, IndexMut};

use serde_json::Value;

use super::field::{FieldElement, FieldSpec};
use crate::error::{Error, Result};

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Result of row reduction: the reduced row echelon form and its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: FieldMatrix,
    pub pivots: Vec<usize>,
}

/// `coker(M) = k^rows / im(M)` with an explicit complement.
///
/// The complement is spanned by the standard basis vectors at `complement`;
/// `projection` (dim x rows) is the projection onto it along `im(M)`, so
/// `projection * M = 0` and `projection` restricted to the complement is the identity.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub dim: usize,
    pub complement: Vec<usize>,
    pub projection: FieldMatrix,
}

impl FieldMatrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        FieldMatrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: &FieldSpec, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data: Vec<FieldElement> = rows.into_iter().flatten().collect();
        if data.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch("matrix entry from another field".into()));
        }
        Ok(FieldMatrix { field: field.clone(), rows: nrows, cols: ncols, data })
    }

    /// Convenience constructor from integer entries in the prime subfield.
    pub fn from_ints(field: &FieldSpec, rows: &[Vec<i64>]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
        Self::from_rows(field, rows).expect("rectangular integer rows")
    }

    pub fn from_columns(field: &FieldSpec, nrows: usize, cols: &[Vec<FieldElement>]) -> Self {
        let mut m = Self::zeros(field, nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * &rhs[(l, j)];
                    out[(i, j)] = &out[(i, j)] + &prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("{} columns vs vector of length {}", self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    fn zip_with(&self, rhs: &FieldMatrix, f: impl Fn(&FieldElement, &FieldElement) -> FieldElement) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch("shape mismatch".into()));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(FieldMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, rhs: &FieldMatrix) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &FieldMatrix) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let data = self.data.iter().map(|a| a * c).collect();
        FieldMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, mut exp: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(&self.field, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..self.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..self.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..self.cols {
                    let t = &factor * &m[(r, j)];
                    m[(i, j)] = &m[(i, j)] - &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the null space, one vector per free column (with a 1 there).
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let Echelon { reduced, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&reduced[(row, f)];
                }
                v
            })
            .collect()
    }

    /// Basis of the column space (the pivot columns of `self`).
    pub fn image(&self) -> Vec<Vec<FieldElement>> {
        self.echelon().pivots.iter().map(|&c| self.column(c)).collect()
    }

    pub fn cokernel(&self) -> Cokernel {
        let left = self.transpose().kernel();
        let Echelon { pivots, .. } = self.transpose().echelon();
        let complement: Vec<usize> = (0..self.rows).filter(|c| !pivots.contains(c)).collect();
        let projection = if left.is_empty() {
            Self::zeros(&self.field, 0, self.rows)
        } else {
            Self::from_rows(&self.field, left).expect("kernel vectors share length")
        };
        Cokernel { dim: complement.len(), complement, projection }
    }

    /// A particular solution of `self * x = b`, `Ok(None)` when inconsistent.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Option<Vec<FieldElement>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("{} rows vs right-hand side of length {}", self.rows, b.len())));
        }
        let mut aug = Self::zeros(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced[(row, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let cols: Vec<Vec<FieldElement>> = (0..n)
            .map(|j| {
                let mut e = vec![self.field.zero(); n];
                e[j] = self.field.one();
                self.solve(&e)?.ok_or(Error::Singular)
            })
            .collect::<Result<_>>()?;
        Ok(Self::from_columns(&self.field, n, &cols))
    }

    pub fn to_json(&self) -> Value {
        Value::Array((0..self.rows).map(|i| Value::Array(self.row(i).iter().map(FieldElement::to_json).collect())).collect())
    }

    pub fn from_json(field: &FieldSpec, v: &Value) -> Result<Self> {
        let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be a list of rows".into()))?;
        let rows = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Parse("row must be a list".into()))?
                    .iter()
                    .map(|e| field.element_from_json(e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(field, rows)
    }
}

impl Index<(usize, usize)> for FieldMatrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for FieldMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{} over {:?}]", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// True when every vector of `vs` lies in the span of `basis`.
pub fn span_contains(field: &FieldSpec, basis: &[Vec<FieldElement>], vs: &[Vec<FieldElement>]) -> bool {
    let Some(n) = basis.first().or(vs.first()).map(Vec::len) else {
        return true;
    };
    let base_rank = if basis.is_empty() { 0 } else { FieldMatrix::from_columns(field, n, basis).rank() };
    let mut all = basis.to_vec();
    all.extend_from_slice(vs);
    FieldMatrix::from_columns(field, n, &all).rank() == base_rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f5() -> FieldSpec {
        FieldSpec::new(5, 1).unwrap()
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert!(FieldMatrix::identity(&f5(), 3).kernel().is_empty());
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        assert_eq!(FieldMatrix::zeros(&f5(), 2, 2).kernel().len(), 2);
    }

    #[test]
    fn unipotent_on_sym2_minus_one() {
        // x^2 -> x^2, xy -> x^2 + xy, y^2 -> x^2 + 2xy + y^2, in columns; minus the identity
        let f = f5();
        let gamma = FieldMatrix::from_ints(&f, &[vec![1, 1, 1], vec![0, 1, 2], vec![0, 0, 1]]);
        let m = gamma.sub(&FieldMatrix::identity(&f, 3)).unwrap();
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0], vec![f.one(), f.zero(), f.zero()]);
    }

    #[test]
    fn cokernel_dimensions() {
        let f = f5();
        assert_eq!(FieldMatrix::identity(&f, 4).cokernel().dim, 0);
        let z = FieldMatrix::zeros(&f, 3, 3);
        let ck = z.cokernel();
        assert_eq!(ck.dim, 3);
        assert_eq!(ck.projection, FieldMatrix::identity(&f, 3));
    }

    #[test]
    fn cokernel_projection_kills_image_and_fixes_complement() {
        let f = f5();
        let m = FieldMatrix::from_ints(&f, &[vec![1, 2], vec![2, 4], vec![0, 1]]);
        let ck = m.cokernel();
        assert_eq!(ck.dim, 1);
        assert!(ck.projection.mul(&m).unwrap().is_zero());
        for (i, &c) in ck.complement.iter().enumerate() {
            let mut e = vec![f.zero(); 3];
            e[c] = f.one();
            let img = ck.projection.mul_vec(&e).unwrap();
            for (j, x) in img.iter().enumerate() {
                assert_eq!(x.is_one(), i == j);
            }
        }
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let f = f5();
        let b: Vec<_> = [1, 2, 3].iter().map(|&x| f.from_int(x)).collect();
        assert_eq!(FieldMatrix::identity(&f, 3).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(FieldMatrix::zeros(&f, 3, 3).solve(&b).unwrap(), None);
        assert!(matches!(FieldMatrix::zeros(&f, 2, 3).solve(&b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn solve_random_invertible_over_f7() {
        let f = FieldSpec::new(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut solved = 0;
        while solved < 20 {
            let rows: Vec<Vec<i64>> = (0..4).map(|_| (0..4).map(|_| rng.gen_range(0..7)).collect()).collect();
            let m = FieldMatrix::from_ints(&f, &rows);
            if m.rank() < 4 {
                continue;
            }
            let b: Vec<_> = (0..4).map(|_| f.from_int(rng.gen_range(0..7))).collect();
            let x = m.solve(&b).unwrap().unwrap();
            assert_eq!(m.mul_vec(&x).unwrap(), b);
            assert_eq!(m.mul(&m.inverse().unwrap()).unwrap(), FieldMatrix::identity(&f, 4));
            solved += 1;
        }
    }

    #[test]
    fn cokernel_of_jordan_block_is_one_dimensional() {
        // (gamma - 1) on Sym^r with r <= p - 1 has rank r; brute-force via binomials
        for p in [2u64, 3, 5, 7] {
            let f = FieldSpec::new(p, 1).unwrap();
            for r in 0..p as usize {
                let mut g = FieldMatrix::zeros(&f, r + 1, r + 1);
                // column j = x^{r-j} (x+y)^j, basis x^{r-i} y^i
                for j in 0..=r {
                    for i in 0..=j {
                        g[(i, j)] = f.from_int(binom(j, i) as i64);
                    }
                }
                let m = g.sub(&FieldMatrix::identity(&f, r + 1)).unwrap();
                assert_eq!(m.rank(), r);
                assert_eq!(m.cokernel().dim, 1);
            }
        }
    }

    fn binom(n: usize, k: usize) -> u64 {
        (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
    }

    #[test]
    fn json_layout_is_row_major() {
        let f = f5();
        let m = FieldMatrix::from_ints(&f, &[vec![1, 2], vec![3, 4]]);
        assert_eq!(m.to_json().to_string(), "[[[1],[2]],[[3],[4]]]");
        assert_eq!(FieldMatrix::from_json(&f, &m.to_json()).unwrap(), m);
    }
}
