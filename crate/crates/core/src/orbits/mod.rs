//! Varieties of flags in relative position, as finite point sets.
//!
//! [`BorelVariety`] enumerates `𝓑(F_q)` once and indexes it, so that tuple
//! varieties can be handled as vectors of flag indices. Public operations
//! convert back to [`PositionTuple`]s at the edges.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flags::{Flag, FlagSpace, PositionTuple};
use crate::gf::{prime_power, FieldCtx};
use crate::weyl::{self, WeylElement, Word};

mod chart;
mod counting;
mod resolution;
mod tuples;

pub use chart::{
    big_cell_chart, bundle_trivialization_check, coset_equivalent, coset_parameterization,
    big_cell_matrices, ChartReport, CosetParameterization, TrivializationReport,
};
pub use counting::{
    closure_boundary_check, count_points, count_poly_of_variety, BoundaryReport, PointCounts,
    DEFAULT_Q_SAMPLES,
};
pub(crate) use tuples::walk;
pub use resolution::{resolution_map, resolution_report, ResolutionReport};
pub use tuples::{
    enumerate_open_tuple_variety, enumerate_tuple_variety, enumerate_tuple_variety_oracle,
    fiber_product_gluing, fiber_report, pi_fiber_summary, point_graph_components, project_pi_n, translate,
    FiberReport, FiberSummary, GluingReport,
};

/// Oracle enumeration refuses to scan more candidate tuples than this.
pub const DEFAULT_COST_BOUND: u128 = 10_000_000;

/// `𝓑(F_q)` for `GL_n`, with an index and the `q + 1`-point lines through
/// every flag.
#[derive(Clone, Debug)]
pub struct BorelVariety {
    space: FlagSpace,
    flags: Vec<Flag>,
    index: HashMap<Flag, u32>,
    /// `lines[f * (n - 1) + (i - 1)]`: sorted indices of `line_through(f, i)`.
    lines: Vec<Vec<u32>>,
}

impl BorelVariety {
    pub fn new(space: FlagSpace) -> Result<Self> {
        let flags = space.enumerate_flags();
        let index: HashMap<Flag, u32> =
            flags.iter().enumerate().map(|(i, f)| (f.clone(), i as u32)).collect();
        let n = space.n();
        let mut lines = Vec::with_capacity(flags.len() * (n - 1));
        for f in &flags {
            for i in 1..n {
                let mut line: Vec<u32> =
                    space.line_through(f, i)?.iter().map(|g| index[g]).collect();
                line.sort_unstable();
                lines.push(line);
            }
        }
        Ok(BorelVariety { space, flags, index, lines })
    }

    /// `GL_n` flags over `GF(q)` for a prime power `q`.
    pub fn over(n: usize, q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrime(q as u32))?;
        BorelVariety::new(FlagSpace::new(n, FieldCtx::new(p, k)?)?)
    }

    pub fn space(&self) -> &FlagSpace {
        &self.space
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn q(&self) -> u64 {
        self.space.q()
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn flag(&self, idx: u32) -> &Flag {
        &self.flags[idx as usize]
    }

    pub fn index_of(&self, flag: &Flag) -> Option<u32> {
        self.index.get(flag).copied()
    }

    /// Sorted indices of the flags on the `s_i`-line through `f`.
    pub fn line(&self, f: u32, i: usize) -> &[u32] {
        &self.lines[f as usize * (self.n() - 1) + (i - 1)]
    }

    pub fn relative_position(&self, a: u32, b: u32) -> WeylElement {
        self.space
            .relative_position(self.flag(a), self.flag(b))
            .expect("indexed flags share the space")
    }

    pub fn check_word(&self, word: &Word) -> Result<()> {
        word.check(self.n())
    }

    pub(crate) fn to_tuple(&self, word: &Word, idx: &[u32]) -> PositionTuple {
        PositionTuple { word: word.clone(), flags: idx.iter().map(|&i| self.flag(i).clone()).collect() }
    }

    /// Relative positions of all ordered pairs, `|𝓑|^2` computations.
    pub fn position_table(&self) -> PositionTable {
        let elements = weyl::all_elements(self.n());
        let ids: HashMap<&WeylElement, u16> =
            elements.iter().enumerate().map(|(i, w)| (w, i as u16)).collect();
        let m = self.len();
        let mut table = Vec::with_capacity(m * m);
        for a in 0..m as u32 {
            for b in 0..m as u32 {
                table.push(ids[&self.relative_position(a, b)]);
            }
        }
        PositionTable { elements, m, table }
    }
}

/// Cached relative positions for every ordered pair of flags.
#[derive(Clone, Debug)]
pub struct PositionTable {
    elements: Vec<WeylElement>,
    m: usize,
    table: Vec<u16>,
}

impl PositionTable {
    pub fn get(&self, a: u32, b: u32) -> &WeylElement {
        &self.elements[self.id(a, b) as usize]
    }

    pub(crate) fn id(&self, a: u32, b: u32) -> u16 {
        self.table[a as usize * self.m + b as usize]
    }

    /// `allowed[id]` is whether a pair in position `elements[id]` satisfies
    /// the condition for `w` (equality, or Bruhat-below when `closed`).
    pub(crate) fn condition_mask(&self, w: &WeylElement, closed: bool) -> Result<Vec<bool>> {
        self.elements
            .iter()
            .map(|v| if closed { weyl::bruhat_leq(v, w) } else { Ok(v == w) })
            .collect()
    }
}

/// Which variety of tuples: a sequence of positions and whether each
/// condition is the orbit (`closed = false`) or its closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSpec {
    pub positions: Vec<WeylElement>,
    pub closed: bool,
}

impl OrbitSpec {
    pub fn from_word(n: usize, word: &Word, closed: bool) -> Result<Self> {
        Ok(OrbitSpec { positions: word.to_elements(n)?, closed })
    }

    pub fn from_elements(positions: Vec<WeylElement>, closed: bool) -> Self {
        OrbitSpec { positions, closed }
    }
}

/// Membership of `(a, b)` in `O(w)` or, when `closed`, in its closure.
pub fn pair_in_o(space: &FlagSpace, a: &Flag, b: &Flag, w: &WeylElement, closed: bool) -> Result<bool> {
    let pos = space.relative_position(a, b)?;
    if closed {
        weyl::bruhat_leq(&pos, w)
    } else {
        Ok(pos == *w)
    }
}

/// All pairs in `O(w)` or its closure, sorted.
pub fn orbit_pairs(var: &BorelVariety, table: &PositionTable, w: &WeylElement, closed: bool) -> Result<Vec<(u32, u32)>> {
    let mask = table.condition_mask(w, closed)?;
    let m = var.len() as u32;
    Ok((0..m)
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .filter(|&(a, b)| mask[table.id(a, b) as usize])
        .collect())
}
