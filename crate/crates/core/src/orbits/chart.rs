//! Group-theoretic parameterizations: coset sequences for the fiber over
//! the standard flag, the big-cell chart `U(w)`, and the local
//! trivialization of `π_1` over the big cell.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flags::{Flag, FlagSpace, PositionTuple};
use crate::matrix::Matrix;
use crate::weyl::{CoxeterGroup, TypeA, WeylElement, Word};

use super::tuples::closed_indices;
use super::{orbit_pairs, BorelVariety, PositionTable};

#[derive(Clone, Debug)]
pub struct CosetParameterization {
    /// Number of representative sequences `(p_1, ..., p_r)`, `(q+1)^r`.
    pub sequences: usize,
    /// Distinct tuples `(B, p_1 B, p_1 p_2 B, ...)`, sorted.
    pub tuples: Vec<PositionTuple>,
    /// The tuples are exactly the points of `O̅(s⃗)` starting at `B`.
    pub fills_fiber: bool,
}

/// Builds the fiber of `(B_0, ..., B_r) -> B_0` over the standard flag from
/// sequences of coset representatives of `P_{s_i} / B`.
pub fn coset_parameterization(var: &BorelVariety, word: &Word) -> Result<CosetParameterization> {
    var.check_word(word)?;
    let space = var.space();
    let start = var.index_of(&space.standard_flag()).expect("standard flag is enumerated");
    let mut states: Vec<(Matrix, Vec<u32>)> = vec![(Matrix::identity(var.n()), vec![start])];
    for &letter in word.letters() {
        let reps = space.parabolic_coset_reps(letter)?;
        let mut next = Vec::with_capacity(states.len() * reps.len());
        for (prod, idx) in &states {
            for p in &reps {
                let prod = prod.mul(p, space.field())?;
                let flag = space.canonical_form(&prod)?;
                let mut idx = idx.clone();
                idx.push(var.index_of(&flag).expect("flags are enumerated"));
                next.push((prod, idx));
            }
        }
        states = next;
    }
    let sequences = states.len();
    let distinct: BTreeSet<Vec<u32>> = states.into_iter().map(|(_, idx)| idx).collect();
    let fiber: BTreeSet<Vec<u32>> =
        closed_indices(var, word)?.into_iter().filter(|t| t[0] == start).collect();
    Ok(CosetParameterization {
        sequences,
        fills_fiber: distinct == fiber,
        tuples: distinct.iter().map(|t| var.to_tuple(word, t)).collect(),
    })
}

/// The relation `h ~ h'` on sequences of parabolic elements: for every
/// `i`, `(p_1 ⋯ p_i)^{-1} (p'_1 ⋯ p'_i)` lies in `B`.
pub fn coset_equivalent(space: &FlagSpace, h: &[Matrix], h2: &[Matrix]) -> Result<bool> {
    if h.len() != h2.len() {
        return Err(Error::DimensionMismatch { expected: h.len(), got: h2.len() });
    }
    let f = space.field();
    let (mut a, mut b) = (Matrix::identity(space.n()), Matrix::identity(space.n()));
    for (p, p2) in h.iter().zip(h2) {
        a = a.mul(p, f)?;
        b = b.mul(p2, f)?;
        if !a.inverse(f)?.mul(&b, f)?.is_invertible_upper_triangular() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lower unitriangular matrices: the unipotent radical `N'` of the
/// opposite Borel.
pub fn big_cell_matrices(space: &FlagSpace) -> Vec<Matrix> {
    let n = space.n();
    let q = space.field().size();
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|r| (0..r).map(move |c| (r, c))).collect();
    let total = (q as u64).pow(slots.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut m = Matrix::identity(n);
            for &(r, c) in &slots {
                m.set(r, c, space.field().element((code % q as u64) as u32).expect("digit"));
                code /= q as u64;
            }
            m
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartReport {
    pub w: WeylElement,
    /// Generators of the parabolic used for `P_w`.
    pub support: Vec<usize>,
    /// `|N'| * |P_w / B|`.
    pub domain: usize,
    pub chart_points: usize,
    /// `q^{#positive roots} * sum_{v in W_support} q^{l(v)}`.
    pub expected: u128,
    pub injective: bool,
    /// Every chart point lies in `O̅(w)`. Always true for simple `w`.
    pub within_closure: bool,
    #[serde(skip)]
    pub pairs: Vec<(Flag, Flag)>,
}

/// Coset representatives for `P_w / B`.
///
/// For simple `w` these are the explicit `q + 1` matrices of
/// [`FlagSpace::parabolic_coset_reps`]. Otherwise `P_w` is taken to be the
/// standard parabolic of the support of `w`, and its cosets are the flags
/// in relative position `v ∈ W_support` to the standard flag.
fn chart_reps(var: &BorelVariety, w: &WeylElement) -> Result<(Vec<usize>, Vec<Matrix>)> {
    let g = TypeA::new(var.n());
    let mut support: Vec<usize> = g.reduced_word(w).letters().to_vec();
    support.sort_unstable();
    support.dedup();
    if let [i] = support[..] {
        return Ok((support, var.space().parabolic_coset_reps(i)?));
    }
    let std = var.space().standard_flag();
    let reps = var
        .flags()
        .iter()
        .filter(|f| {
            let v = var.space().relative_position(&std, f).expect("same space");
            g.reduced_word(&v).letters().iter().all(|l| support.contains(l))
        })
        .map(|f| f.matrix().clone())
        .collect();
    Ok((support, reps))
}

/// Enumerates `U(w) = {(nB, npB) : n ∈ N', p ∈ P_w}` and checks that
/// `(n, pB) -> (nB, npB)` is injective.
pub fn big_cell_chart(var: &BorelVariety, w: &WeylElement) -> Result<ChartReport> {
    if w.n() != var.n() {
        return Err(Error::RankMismatch { left: w.n(), right: var.n() });
    }
    let space = var.space();
    let f = space.field();
    let (support, reps) = chart_reps(var, w)?;
    let unipotent = big_cell_matrices(space);
    let mut pairs = Vec::with_capacity(unipotent.len() * reps.len());
    for n in &unipotent {
        let a = space.canonical_form(n)?;
        for p in &reps {
            pairs.push((a.clone(), space.canonical_form(&n.mul(p, f)?)?));
        }
    }
    let domain = pairs.len();
    let distinct: HashSet<&(Flag, Flag)> = pairs.iter().collect();
    let chart_points = distinct.len();
    let q = var.q() as u128;
    let g = TypeA::new(var.n());
    let parabolic: u128 = g
        .elements()
        .iter()
        .filter(|v| g.reduced_word(v).letters().iter().all(|l| support.contains(l)))
        .map(|v| q.pow(v.length() as u32))
        .sum();
    let within_closure = pairs
        .iter()
        .map(|(a, b)| super::pair_in_o(space, a, b, w, true))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|x| x);
    pairs.sort();
    pairs.dedup();
    Ok(ChartReport {
        w: w.clone(),
        support,
        domain,
        chart_points,
        expected: q.pow(g.positive_roots() as u32) * parabolic,
        injective: chart_points == domain,
        within_closure,
        pairs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivializationReport {
    pub letter: usize,
    /// `|N' × P^1|`.
    pub domain: usize,
    /// `|π_1^{-1}(big cell)|` inside `O̅(s)`, from relative positions.
    pub target: usize,
    pub bijective: bool,
    /// `π_1 ∘ φ = pr_1`.
    pub commutes: bool,
}

impl TrivializationReport {
    pub fn holds(&self) -> bool {
        self.bijective && self.commutes
    }
}

/// Checks on points that `φ(n, x) = (nB, n ψ(x) B)` is a bijection
/// `N' × P^1 -> π_1^{-1}(N'B)` over `O̅(s_i)` commuting with the projections.
///
/// This is evidence over the big cell only; it says nothing about
/// compatibility of charts.
pub fn bundle_trivialization_check(var: &BorelVariety, table: &PositionTable, letter: usize) -> Result<TrivializationReport> {
    let space = var.space();
    let f = space.field();
    let reps = space.parabolic_coset_reps(letter)?;
    let unipotent = big_cell_matrices(space);
    let mut cell = HashSet::new();
    let mut image = HashSet::new();
    let mut domain = 0;
    let mut commutes = true;
    for n in &unipotent {
        let base = var.index_of(&space.canonical_form(n)?).expect("enumerated");
        cell.insert(base);
        for p in &reps {
            domain += 1;
            let a = var.index_of(&space.canonical_form(n)?).expect("enumerated");
            let b = var.index_of(&space.canonical_form(&n.mul(p, f)?)?).expect("enumerated");
            commutes &= a == base;
            image.insert((a, b));
        }
    }
    let s = WeylElement::simple(var.n(), letter)?;
    let target: HashSet<(u32, u32)> =
        orbit_pairs(var, table, &s, true)?.into_iter().filter(|(a, _)| cell.contains(a)).collect();
    Ok(TrivializationReport {
        letter,
        domain,
        target: target.len(),
        bijective: image.len() == domain && image == target,
        commutes,
    })
}
