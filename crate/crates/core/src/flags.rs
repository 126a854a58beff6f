//! Complete flags in `F_q^n`, standing in for the Borel subgroups of `GL_n`.
//!
//! A flag is the coset `mB` of an invertible matrix modulo the
//! upper-triangular group; its `i`-th subspace is the span of the first `i`
//! columns. The standard flag is the identity matrix (the upper-triangular
//! Borel), and the flag of the permutation matrix of `w` plays the role of
//! `wB`.

use std::cmp::Reverse;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::matrix::{Echelon, Matrix};
use crate::weyl::{self, WeylElement, Word};

/// A complete flag in canonical coset normal form.
///
/// In each column the lowest nonzero entry (the pivot) is 1, pivots sit in
/// distinct rows, and every entry to the right of a pivot in its row is 0.
/// This is the unique such representative of `mB`, so equality of flags is
/// equality of matrices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flag {
    mat: Matrix,
}

impl Flag {
    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    /// Pivot row (0-based) of every column.
    pub fn pivot_rows(&self) -> Vec<usize> {
        (0..self.n())
            .map(|c| {
                (0..self.n())
                    .rev()
                    .find(|&r| !self.mat.get(r, c).is_zero())
                    .expect("canonical flags have a pivot in every column")
            })
            .collect()
    }
}

/// A tuple of flags `(B_0, ..., B_r)` together with the word whose
/// position conditions it is meant to satisfy.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PositionTuple {
    pub word: Word,
    pub flags: Vec<Flag>,
}

impl PositionTuple {
    pub fn first(&self) -> &Flag {
        &self.flags[0]
    }

    pub fn last(&self) -> &Flag {
        self.flags.last().expect("tuples are nonempty")
    }
}

/// Flags of `F^n` over a fixed field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagSpace {
    n: usize,
    field: FieldCtx,
}

impl FlagSpace {
    pub fn new(n: usize, field: FieldCtx) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("flags need n >= 1".into()));
        }
        Ok(FlagSpace { n, field })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    /// Field size `q`.
    pub fn q(&self) -> u64 {
        self.field.size() as u64
    }

    fn check(&self, m: &Matrix) -> Result<()> {
        if m.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: m.n() });
        }
        if m.entries().iter().any(|x| x.index() >= self.field.size()) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// The unique canonical representative of the coset `mB`.
    pub fn canonical_form(&self, m: &Matrix) -> Result<Flag> {
        self.check(m)?;
        let n = self.n;
        let f = &self.field;
        let mut cols: Vec<Vec<FieldElement>> = Vec::with_capacity(n);
        let mut pivots: Vec<usize> = Vec::with_capacity(n);
        for j in 0..n {
            let mut v = m.column(j);
            // Clearing pivot row r only disturbs rows above r.
            let mut order: Vec<usize> = (0..j).collect();
            order.sort_by_key(|&i| Reverse(pivots[i]));
            for i in order {
                let c = v[pivots[i]];
                if !c.is_zero() {
                    let neg = f.neg(c);
                    for (x, &y) in v.iter_mut().zip(&cols[i]) {
                        *x = f.add(*x, f.mul(neg, y));
                    }
                }
            }
            let piv = v.iter().rposition(|x| !x.is_zero()).ok_or(Error::SingularMatrix)?;
            let s = f.inv(v[piv]).expect("nonzero pivot");
            for x in v.iter_mut() {
                *x = f.mul(*x, s);
            }
            pivots.push(piv);
            cols.push(v);
        }
        let mut mat = Matrix::zero(n);
        for (j, col) in cols.iter().enumerate() {
            for (r, &x) in col.iter().enumerate() {
                mat.set(r, j, x);
            }
        }
        Ok(Flag { mat })
    }

    /// The flag of the identity matrix.
    pub fn standard_flag(&self) -> Flag {
        Flag { mat: Matrix::identity(self.n) }
    }

    /// The flag spanned by `e_{w(1)}, ..., e_{w(n)}`.
    pub fn permuted_flag(&self, w: &WeylElement) -> Result<Flag> {
        if w.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: w.n() });
        }
        Ok(Flag { mat: Matrix::permutation(w) })
    }

    /// All complete flags, sorted.
    ///
    /// Built cell by cell: for each pivot pattern `w` the free entries are
    /// the positions above a pivot and outside earlier pivot rows, `l(w)`
    /// of them.
    pub fn enumerate_flags(&self) -> Vec<Flag> {
        let q = self.field.size();
        let mut out = Vec::new();
        for w in weyl::all_elements(self.n) {
            let base = Matrix::permutation(&w);
            let mut free = Vec::new();
            let mut used = vec![false; self.n];
            for j in 0..self.n {
                let piv = w.apply(j + 1) - 1;
                free.extend((0..piv).filter(|&r| !used[r]).map(|r| (r, j)));
                used[piv] = true;
            }
            let mut digits = vec![0u32; free.len()];
            loop {
                let mut mat = base.clone();
                for (&(r, c), &d) in free.iter().zip(&digits) {
                    mat.set(r, c, self.field.element(d).expect("digit below q"));
                }
                out.push(Flag { mat });
                // odometer
                let mut k = 0;
                while k < digits.len() && digits[k] + 1 == q {
                    digits[k] = 0;
                    k += 1;
                }
                if k == digits.len() {
                    break;
                }
                digits[k] += 1;
            }
        }
        out.sort();
        out
    }

    /// `prod_{i=1..n} (q^i - 1)/(q - 1)`.
    pub fn flag_count(&self) -> u64 {
        let q = self.q();
        (1..=self.n as u32).map(|i| (q.pow(i) - 1) / (q - 1)).product()
    }

    /// `dim(F_i ∩ G_j)` for all `0 <= i, j <= n`.
    pub fn intersection_dims(&self, a: &Flag, b: &Flag) -> Result<Vec<Vec<usize>>> {
        self.check(&a.mat)?;
        self.check(&b.mat)?;
        let n = self.n;
        let mut d = vec![vec![0usize; n + 1]; n + 1];
        let mut prefix = Echelon::new(n);
        for i in 0..=n {
            if i > 0 {
                prefix.insert(a.mat.column(i - 1), &self.field);
            }
            let mut span = prefix.clone();
            for j in 1..=n {
                span.insert(b.mat.column(j - 1), &self.field);
                d[i][j] = i + j - span.dim();
            }
        }
        Ok(d)
    }

    /// The Weyl element `w` with `(a, b)` in the orbit of `(B, wB)`.
    ///
    /// Read off from the rank jumps of `d_ij = dim(a_i ∩ b_j)`: `w(j) = i`
    /// exactly where `d_ij - d_{i-1,j} - d_{i,j-1} + d_{i-1,j-1} = 1`.
    pub fn relative_position(&self, a: &Flag, b: &Flag) -> Result<WeylElement> {
        let d = self.intersection_dims(a, b)?;
        let n = self.n;
        let mut one_line = vec![0usize; n];
        for i in 1..=n {
            for j in 1..=n {
                let jump = d[i][j] + d[i - 1][j - 1] - d[i - 1][j] - d[i][j - 1];
                if jump == 1 {
                    one_line[j - 1] = i;
                }
            }
        }
        Ok(WeylElement::from_vec_unchecked(one_line))
    }

    /// `g · F`.
    pub fn act(&self, g: &Matrix, flag: &Flag) -> Result<Flag> {
        self.check(g)?;
        if !g.is_invertible(&self.field) {
            return Err(Error::SingularMatrix);
        }
        self.canonical_form(&g.mul(&flag.mat, &self.field)?)
    }

    /// Entrywise `x -> x^q`. Fixes exactly the flags defined over `F_q`.
    pub fn frobenius_flag(&self, flag: &Flag, q: u64) -> Result<Flag> {
        self.field.subfield_degree(q)?;
        let mat = flag.mat.map(|x| self.field.pow(x, q));
        self.canonical_form(&mat)
    }

    /// Whether every entry of the canonical matrix lies in `F_q`.
    pub fn is_rational(&self, flag: &Flag, q: u64) -> Result<bool> {
        self.field.subfield_degree(q)?;
        Ok(flag.mat.entries().iter().all(|&x| self.field.pow(x, q) == x))
    }

    /// Matrices `p` whose cosets `pB` run once over `P_i / B`, where `P_i`
    /// is the parabolic generated by `B` and `s_i`: the identity, and for
    /// each `t` the identity with the block at `(i, i+1)` replaced by
    /// `[[t, 1], [1, 0]]`.
    pub fn parabolic_coset_reps(&self, i: usize) -> Result<Vec<Matrix>> {
        if i == 0 || i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        let mut reps = vec![Matrix::identity(self.n)];
        for t in self.field.elements() {
            let mut p = Matrix::identity(self.n);
            p.set(i - 1, i - 1, t);
            p.set(i - 1, i, FieldElement::ONE);
            p.set(i, i - 1, FieldElement::ONE);
            p.set(i, i, FieldElement::ZERO);
            reps.push(p);
        }
        Ok(reps)
    }

    /// All flags agreeing with `flag` except possibly in the `i`-dimensional
    /// subspace: `q + 1` of them, `flag` included. Sorted.
    pub fn line_through(&self, flag: &Flag, i: usize) -> Result<Vec<Flag>> {
        let mut out = self
            .parabolic_coset_reps(i)?
            .iter()
            .map(|p| self.canonical_form(&flag.mat.mul(p, &self.field)?))
            .collect::<Result<Vec<_>>>()?;
        out.sort();
        Ok(out)
    }

    /// Row-major entries rendered with the field's element syntax.
    pub fn flag_rows(&self, flag: &Flag) -> Vec<Vec<String>> {
        flag.mat.rows().map(|r| r.iter().map(|&x| self.field.format(x)).collect()).collect()
    }

    /// Parses row-major entries and canonicalizes.
    pub fn parse_flag(&self, rows: &[Vec<String>]) -> Result<Flag> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| self.field.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        self.canonical_form(&Matrix::from_rows(rows)?)
    }

    pub fn tuple_record(&self, t: &PositionTuple) -> TupleRecord {
        TupleRecord {
            word: t.word.clone(),
            flags: t.flags.iter().map(|f| self.flag_rows(f)).collect(),
        }
    }
}

/// Serializable form of a [`PositionTuple`].
#[derive(Clone, Debug, Serialize)]
pub struct TupleRecord {
    pub word: Word,
    pub flags: Vec<Vec<Vec<String>>>,
}
