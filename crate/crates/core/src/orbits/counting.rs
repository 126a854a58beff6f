use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::CountPoly;
use crate::weyl::Word;

use super::tuples::walk;
use super::BorelVariety;

/// Field sizes used when interpolating count polynomials.
pub const DEFAULT_Q_SAMPLES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// `F_q`-point counts of `O̅(s⃗)` and of its strict part `O(s⃗)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PointCounts {
    pub q: u64,
    pub total: u128,
    pub open: u128,
}

impl PointCounts {
    /// `|O̅(s⃗) ∖ O(s⃗)|`.
    pub fn boundary(&self) -> u128 {
        self.total - self.open
    }
}

/// Counts points by enumeration over `GF(q)`, `q` a prime power.
pub fn count_points(word: &Word, n: usize, q: u64) -> Result<PointCounts> {
    let var = BorelVariety::over(n, q)?;
    count_in(&var, word)
}

pub(crate) fn count_in(var: &BorelVariety, word: &Word) -> Result<PointCounts> {
    let (mut total, mut open) = (0u128, 0u128);
    walk(var, word, false, |t| {
        total += 1;
        // Along a line the position is s_i unless the flag did not move.
        if t.windows(2).all(|p| p[0] != p[1]) {
            open += 1;
        }
    })?;
    Ok(PointCounts { q: var.q(), total, open })
}

fn expected_degree(word: &Word, n: usize) -> usize {
    word.len() + n * (n - 1) / 2
}

fn sample_counts(word: &Word, n: usize, samples: &[u64]) -> Result<Vec<PointCounts>> {
    let needed = expected_degree(word, n) + 1;
    if samples.len() < needed {
        return Err(Error::InsufficientSamples { needed, got: samples.len() });
    }
    word.check(n)?;
    samples.iter().map(|&q| count_points(word, n, q)).collect()
}

fn interpolate(counts: &[PointCounts], value: impl Fn(&PointCounts) -> u128) -> Result<CountPoly> {
    let pts: Vec<(i64, i128)> = counts.iter().map(|c| (c.q as i64, value(c) as i128)).collect();
    CountPoly::interpolate(&pts)
}

/// Interpolates `q -> |O̅(s⃗)(F_q)|` through enumerated counts.
///
/// Needs at least `r + n(n-1)/2 + 1` samples for a word of length `r`.
pub fn count_poly_of_variety(word: &Word, n: usize, samples: &[u64]) -> Result<CountPoly> {
    interpolate(&sample_counts(word, n, samples)?, |c| c.total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryReport {
    pub total: CountPoly,
    pub boundary: CountPoly,
    /// `deg(boundary) < deg(total)`.
    pub dense: bool,
}

/// Compares the count polynomials of `O̅(s⃗)` and of `O̅(s⃗) ∖ O(s⃗)`.
pub fn closure_boundary_check(word: &Word, n: usize, samples: &[u64]) -> Result<BoundaryReport> {
    let counts = sample_counts(word, n, samples)?;
    let total = interpolate(&counts, |c| c.total)?;
    let boundary = interpolate(&counts, |c| c.boundary())?;
    let dense = match (boundary.degree(), total.degree()) {
        (None, Some(_)) => true,
        (Some(b), Some(t)) => b < t,
        _ => false,
    };
    Ok(BoundaryReport { total, boundary, dense })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::poincare_poly;

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn counts_match_closed_forms() {
        let c = count_points(&word("1,2"), 3, 2).unwrap();
        assert_eq!(c.total, 189);
        // O(s1 s2) is the orbit of a reduced word: 21 * 2 * 2.
        assert_eq!(c.open, 84);
        assert_eq!(count_points(&word("1"), 2, 3).unwrap().total, 16);
        assert_eq!(count_points(&word(""), 3, 4).unwrap().total, 5 * 21);
    }

    #[test]
    fn polynomials_for_short_words() {
        let flags = poincare_poly(3);
        let samples = [2, 3, 5, 7];
        assert_eq!(count_poly_of_variety(&word(""), 3, &samples).unwrap(), flags);
        let p = count_poly_of_variety(&word("1"), 3, &[2, 3, 4, 5, 7]).unwrap();
        assert_eq!(p, &flags * &CountPoly::new(vec![1, 1]));
        let p = count_poly_of_variety(&word("1,2"), 3, &DEFAULT_Q_SAMPLES).unwrap();
        assert_eq!(p.degree(), Some(5));
        assert_eq!(p.leading_coeff(), 1);
    }

    #[test]
    fn too_few_samples() {
        assert_eq!(
            count_poly_of_variety(&word("1,2"), 3, &[2, 3, 5]),
            Err(Error::InsufficientSamples { needed: 6, got: 3 })
        );
    }

    #[test]
    fn boundary_is_lower_dimensional() {
        let r = closure_boundary_check(&word("1"), 2, &[2, 3, 5]).unwrap();
        // The boundary of O̅(s) in GL_2 is the diagonal, counted by 1 + q.
        assert_eq!(r.boundary, CountPoly::new(vec![1, 1]));
        assert!(r.dense);
        for w in ["1,2", "1,1"] {
            assert!(closure_boundary_check(&word(w), 3, &DEFAULT_Q_SAMPLES).unwrap().dense, "{w}");
        }
        let r = closure_boundary_check(&word(""), 2, &[2, 3]).unwrap();
        assert!(r.boundary.is_zero() && r.dense);
    }
}
