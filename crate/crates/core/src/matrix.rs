//! Small dense square matrices over a [`FieldCtx`].

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::weyl::WeylElement;

/// Row-major `n x n` matrix. Carries no field; every operation takes the
/// field explicitly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix { n, data: vec![FieldElement::ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: r.len() });
            }
            data.extend(r);
        }
        Ok(Matrix { n, data })
    }

    /// Permutation matrix with column `j` equal to `e_{w(j)}`.
    pub fn permutation(w: &WeylElement) -> Self {
        let n = w.n();
        let mut m = Matrix::zero(n);
        for j in 0..n {
            m.set(w.apply(j + 1) - 1, j, FieldElement::ONE);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> FieldElement {
        self.data[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: FieldElement) {
        self.data[row * self.n + col] = v;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn column(&self, col: usize) -> Vec<FieldElement> {
        (0..self.n).map(|r| self.get(r, col)).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldElement]> {
        self.data.chunks(self.n.max(1))
    }

    pub fn map(&self, f: impl Fn(FieldElement) -> FieldElement) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    pub fn mul(&self, other: &Matrix, field: &FieldCtx) -> Result<Matrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = field.add(out.get(i, j), field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self, field: &FieldCtx) -> usize {
        let mut basis = Echelon::new(self.n);
        (0..self.n).filter(|&c| basis.insert(self.column(c), field)).count()
    }

    pub fn is_invertible(&self, field: &FieldCtx) -> bool {
        self.rank(field) == self.n
    }

    pub fn inverse(&self, field: &FieldCtx) -> Result<Matrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let s = field.inv(a.get(col, col)).expect("nonzero pivot");
            a.scale_row(col, s, field);
            inv.scale_row(col, s, field);
            for r in 0..n {
                if r != col {
                    let f = a.get(r, col);
                    if !f.is_zero() {
                        a.add_row_multiple(r, col, field.neg(f), field);
                        inv.add_row_multiple(r, col, field.neg(f), field);
                    }
                }
            }
        }
        Ok(inv)
    }

    /// Upper triangular with nonzero diagonal.
    pub fn is_invertible_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| !self.get(i, i).is_zero() && (0..i).all(|j| self.get(i, j).is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.n {
                self.data.swap(a * self.n + c, b * self.n + c);
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: FieldElement, field: &FieldCtx) {
        for c in 0..self.n {
            let v = field.mul(self.get(r, c), s);
            self.set(r, c, v);
        }
    }

    /// `row[dst] += f * row[src]`
    fn add_row_multiple(&mut self, dst: usize, src: usize, f: FieldElement, field: &FieldCtx) {
        for c in 0..self.n {
            let v = field.add(self.get(dst, c), field.mul(f, self.get(src, c)));
            self.set(dst, c, v);
        }
    }
}

/// Incremental row-echelon basis of a subspace of `F^n`.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    /// (pivot coordinate, vector normalized to 1 at the pivot and reduced
    /// against every earlier pivot)
    rows: Vec<(usize, Vec<FieldElement>)>,
}

impl Echelon {
    pub(crate) fn new(_n: usize) -> Self {
        Echelon { rows: Vec::new() }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub(crate) fn insert(&mut self, mut v: Vec<FieldElement>, field: &FieldCtx) -> bool {
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if !c.is_zero() {
                let neg = field.neg(c);
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = field.add(*x, field.mul(neg, r));
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(pivot) => {
                let s = field.inv(v[pivot]).expect("nonzero");
                for x in v.iter_mut() {
                    *x = field.mul(*x, s);
                }
                self.rows.push((pivot, v));
                true
            }
        }
    }
}
