//! Integer polynomials in an indeterminate `q`, used to carry point counts.

use std::fmt;
use std::ops::{Add, Mul};

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};

/// Integer-coefficient polynomial; `coeffs()[i]` is the coefficient of `q^i`.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct CountPoly {
    coeffs: Vec<i64>,
}

impl CountPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        CountPoly { coeffs }
    }

    pub fn zero() -> Self {
        CountPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        CountPoly { coeffs: vec![1] }
    }

    /// The monomial `c * q^d`.
    pub fn monomial(c: i64, d: usize) -> Self {
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = c;
        CountPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, q: i64) -> i128 {
        self.coeffs
            .iter()
            .rev()
            .fold(0i128, |acc, &c| acc * q as i128 + c as i128)
    }

    /// Coefficients read the same in both directions.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Exact interpolation through `(q, value)` pairs.
    ///
    /// Fails if two sample abscissae coincide or if the unique interpolant
    /// of degree `< points.len()` has a non-integer coefficient.
    pub fn interpolate(points: &[(i64, i128)]) -> Result<CountPoly> {
        for (i, (x, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|(y, _)| y == x) {
                return Err(Error::DuplicateSample(*x as u64));
            }
        }
        // Newton divided differences.
        let m = points.len();
        let mut table: Vec<Ratio<i128>> = points.iter().map(|&(_, v)| Ratio::from_integer(v)).collect();
        for level in 1..m {
            for i in (level..m).rev() {
                let dx = (points[i].0 - points[i - level].0) as i128;
                table[i] = (table[i] - table[i - 1]) / Ratio::from_integer(dx);
            }
        }
        // Expand sum_i table[i] * prod_{j<i} (q - x_j) by Horner from the top.
        let mut acc: Vec<Ratio<i128>> = Vec::new();
        for i in (0..m).rev() {
            let x = Ratio::from_integer(points[i].0 as i128);
            let mut next = vec![Ratio::from_integer(0); acc.len() + 1];
            for (d, c) in acc.iter().enumerate() {
                next[d + 1] += *c;
                next[d] -= *c * x;
            }
            next[0] += table[i];
            acc = next;
        }
        let coeffs = acc
            .into_iter()
            .map(|c| {
                if c.is_integer() {
                    i64::try_from(c.to_integer()).map_err(|_| Error::NonIntegerInterpolant)
                } else {
                    Err(Error::NonIntegerInterpolant)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CountPoly::new(coeffs))
    }
}

impl Add for &CountPoly {
    type Output = CountPoly;
    fn add(self, rhs: &CountPoly) -> CountPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.coeffs.get(i).unwrap_or(&0) + rhs.coeffs.get(i).unwrap_or(&0))
            .collect();
        CountPoly::new(coeffs)
    }
}

impl Mul for &CountPoly {
    type Output = CountPoly;
    fn mul(self, rhs: &CountPoly) -> CountPoly {
        if self.is_zero() || rhs.is_zero() {
            return CountPoly::zero();
        }
        let mut coeffs = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        CountPoly::new(coeffs)
    }
}

impl fmt::Display for CountPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "{}", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match d {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    write!(f, "q")?;
                    if d > 1 {
                        write!(f, "^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
