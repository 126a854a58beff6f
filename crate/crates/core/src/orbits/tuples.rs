use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::flags::{Flag, PositionTuple};
use crate::weyl::{WeylElement, Word};

use super::{orbit_pairs, BorelVariety, OrbitSpec, PositionTable};

/// Depth-first walk over `O̅(s⃗)` (or `O(s⃗)` when `strict`) by extending
/// each flag along the line for the next letter.
pub(crate) fn walk(var: &BorelVariety, word: &Word, strict: bool, mut visit: impl FnMut(&[u32])) -> Result<()> {
    var.check_word(word)?;
    fn go(var: &BorelVariety, letters: &[usize], strict: bool, buf: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        let depth = buf.len() - 1;
        if depth == letters.len() {
            visit(buf);
            return;
        }
        let last = buf[depth];
        for &next in var.line(last, letters[depth]) {
            if strict && next == last {
                continue;
            }
            buf.push(next);
            go(var, letters, strict, buf, visit);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(word.len() + 1);
    for b0 in 0..var.len() as u32 {
        buf.push(b0);
        go(var, word.letters(), strict, &mut buf, &mut visit);
        buf.pop();
    }
    Ok(())
}

pub(crate) fn closed_indices(var: &BorelVariety, word: &Word) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    walk(var, word, false, |t| out.push(t.to_vec()))?;
    Ok(out)
}

/// `O̅(s_1, ..., s_r)`: tuples with each consecutive pair in `O̅(s_i)`.
///
/// Built by line extension from every `B_0`; sorted.
pub fn enumerate_tuple_variety(var: &BorelVariety, word: &Word) -> Result<Vec<PositionTuple>> {
    Ok(closed_indices(var, word)?.iter().map(|t| var.to_tuple(word, t)).collect())
}

/// `O(s_1, ..., s_r)`: consecutive flags in position exactly `s_i`.
pub fn enumerate_open_tuple_variety(var: &BorelVariety, word: &Word) -> Result<Vec<PositionTuple>> {
    let mut out = Vec::new();
    walk(var, word, true, |t| out.push(var.to_tuple(word, t)))?;
    Ok(out)
}

pub(crate) fn oracle_indices(
    var: &BorelVariety,
    table: &PositionTable,
    spec: &OrbitSpec,
    cost_bound: u128,
) -> Result<Vec<Vec<u32>>> {
    let m = var.len() as u128;
    let len = spec.positions.len() + 1;
    let needed = (0..len).try_fold(1u128, |acc, _| acc.checked_mul(m)).unwrap_or(u128::MAX);
    if needed > cost_bound {
        return Err(Error::CostBound { needed, bound: cost_bound });
    }
    for w in &spec.positions {
        if w.n() != var.n() {
            return Err(Error::RankMismatch { left: w.n(), right: var.n() });
        }
    }
    let masks = spec
        .positions
        .iter()
        .map(|w| table.condition_mask(w, spec.closed))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    let mut cand = vec![0u32; len];
    'outer: loop {
        if (1..len).all(|i| masks[i - 1][table.id(cand[i - 1], cand[i]) as usize]) {
            out.push(cand.clone());
        }
        // odometer, last coordinate fastest so output is sorted
        let mut k = len;
        while k > 0 {
            k -= 1;
            cand[k] += 1;
            if (cand[k] as u128) < m {
                continue 'outer;
            }
            cand[k] = 0;
        }
        break;
    }
    Ok(out)
}

/// Brute-force filter of `𝓑^{r+1}` against the conditions in `spec`.
///
/// Tuples are labeled with the word of the positions when every position
/// is a simple reflection, and with the empty word otherwise.
pub fn enumerate_tuple_variety_oracle(
    var: &BorelVariety,
    table: &PositionTable,
    spec: &OrbitSpec,
    cost_bound: u128,
) -> Result<Vec<PositionTuple>> {
    let label = simple_word(&spec.positions).unwrap_or_default();
    Ok(oracle_indices(var, table, spec, cost_bound)?.iter().map(|t| var.to_tuple(&label, t)).collect())
}

fn simple_word(positions: &[WeylElement]) -> Option<Word> {
    positions
        .iter()
        .map(|w| {
            let one = w.one_line();
            let moved: Vec<usize> = (0..one.len()).filter(|&i| one[i] != i + 1).collect();
            match moved[..] {
                [a, b] if b == a + 1 => Some(a + 1),
                _ => None,
            }
        })
        .collect::<Option<Vec<_>>>()
        .map(Word::new)
}

/// Drops the last flag (and the last letter).
pub fn project_pi_n(t: &PositionTuple) -> Result<PositionTuple> {
    if t.word.is_empty() || t.flags.len() < 2 {
        return Err(Error::EmptyWord);
    }
    Ok(PositionTuple {
        word: t.word.prefix(t.word.len() - 1),
        flags: t.flags[..t.flags.len() - 1].to_vec(),
    })
}

/// One fiber of the last projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub base: PositionTuple,
    pub size: usize,
    /// Last flags of the tuples over `base`, sorted.
    pub fiber: Vec<Flag>,
    /// The fiber matches `{B : (B_{r-1}, B) ∈ O̅(s_r)}` under
    /// `(B'_0, ..., B'_r) -> (B'_{r-1}, B'_r)`.
    pub matches_pair_fiber: bool,
}

/// Fibers of `π_r : O̅(s_1..s_r) -> O̅(s_1..s_{r-1})`, one per base point.
///
/// The comparison fiber is computed from relative positions, not lines.
pub fn fiber_report(var: &BorelVariety, table: &PositionTable, word: &Word) -> Result<Vec<FiberReport>> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let letter = *word.letters().last().unwrap();
    let mask = table.condition_mask(&WeylElement::simple(var.n(), letter)?, true)?;
    let mut groups: BTreeMap<Vec<u32>, Vec<u32>> = BTreeMap::new();
    for t in closed_indices(var, word)? {
        let (last, base) = t.split_last().unwrap();
        groups.entry(base.to_vec()).or_default().push(*last);
    }
    let base_word = word.prefix(word.len() - 1);
    let m = var.len() as u32;
    Ok(groups
        .into_iter()
        .map(|(base, mut fiber)| {
            fiber.sort_unstable();
            let anchor = *base.last().unwrap();
            let pair_fiber: Vec<u32> = (0..m).filter(|&b| mask[table.id(anchor, b) as usize]).collect();
            FiberReport {
                base: var.to_tuple(&base_word, &base),
                size: fiber.len(),
                matches_pair_fiber: pair_fiber == fiber,
                fiber: fiber.iter().map(|&i| var.flag(i).clone()).collect(),
            }
        })
        .collect())
}

/// Fiber statistics of `π_k` on `O̅(s_1..s_k)` for one `k`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FiberSummary {
    pub k: usize,
    pub points: usize,
    /// Distinct images.
    pub base_points: usize,
    /// `|O̅(s_1..s_{k-1})|`.
    pub base_total: usize,
    pub min_fiber: usize,
    pub max_fiber: usize,
    pub surjective: bool,
}

/// Fiber statistics for every prefix projection `π_1, ..., π_r`.
pub fn pi_fiber_summary(var: &BorelVariety, word: &Word) -> Result<Vec<FiberSummary>> {
    var.check_word(word)?;
    let mut out = Vec::new();
    let mut base_total = var.len();
    for k in 1..=word.len() {
        let mut counts: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut points = 0;
        walk(var, &word.prefix(k), false, |t| {
            points += 1;
            *counts.entry(t[..k].to_vec()).or_default() += 1;
        })?;
        let min_fiber = counts.values().copied().min().unwrap_or(0);
        let max_fiber = counts.values().copied().max().unwrap_or(0);
        out.push(FiberSummary {
            k,
            points,
            base_points: counts.len(),
            base_total,
            min_fiber,
            max_fiber,
            surjective: counts.len() == base_total,
        });
        base_total = points;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GluingReport {
    pub direct: usize,
    pub glued: usize,
    pub equal: bool,
}

/// Compares `O̅(w_1..w_r)` with `O̅(w_1..w_{r-1}) ×_𝓑 O̅(w_r)` (last flag of
/// the left factor glued to the first flag of the pair).
pub fn fiber_product_gluing(
    var: &BorelVariety,
    table: &PositionTable,
    positions: &[WeylElement],
    cost_bound: u128,
) -> Result<GluingReport> {
    let (last, init) = positions.split_last().ok_or(Error::EmptyWord)?;
    let direct = oracle_indices(var, table, &OrbitSpec::from_elements(positions.to_vec(), true), cost_bound)?;
    let left = oracle_indices(var, table, &OrbitSpec::from_elements(init.to_vec(), true), cost_bound)?;
    let mut right: HashMap<u32, Vec<u32>> = HashMap::new();
    for (a, b) in orbit_pairs(var, table, last, true)? {
        right.entry(a).or_default().push(b);
    }
    let mut glued = BTreeSet::new();
    for t in left {
        for &b in right.get(t.last().unwrap()).map(Vec::as_slice).unwrap_or(&[]) {
            let mut g = t.clone();
            g.push(b);
            glued.insert(g);
        }
    }
    let direct_set: BTreeSet<Vec<u32>> = direct.into_iter().collect();
    Ok(GluingReport { direct: direct_set.len(), glued: glued.len(), equal: direct_set == glued })
}

/// `g` applied to every flag of the tuple.
pub fn translate(var: &BorelVariety, g: &crate::matrix::Matrix, t: &PositionTuple) -> Result<PositionTuple> {
    let flags = t.flags.iter().map(|f| var.space().act(g, f)).collect::<Result<Vec<_>>>()?;
    Ok(PositionTuple { word: t.word.clone(), flags })
}

/// Connected components of the graph on `O̅(s⃗)` joining tuples that differ
/// in a single flag moved along one of its lines.
pub fn point_graph_components(var: &BorelVariety, word: &Word) -> Result<usize> {
    let tuples = closed_indices(var, word)?;
    let pos: HashMap<&[u32], usize> = tuples.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let mut parent: Vec<usize> = (0..tuples.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut scratch = Vec::new();
    for (idx, t) in tuples.iter().enumerate() {
        for j in 0..t.len() {
            for i in 1..var.n() {
                for &g in var.line(t[j], i) {
                    scratch.clear();
                    scratch.extend_from_slice(t);
                    scratch[j] = g;
                    if let Some(&other) = pos.get(scratch.as_slice()) {
                        let (ra, rb) = (find(&mut parent, idx), find(&mut parent, other));
                        if ra != rb {
                            parent[ra] = rb;
                        }
                    }
                }
            }
        }
    }
    Ok((0..tuples.len()).filter(|&x| find(&mut parent, x) == x).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::all_elements;

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn tuple_counts_n3_q2() {
        let var = BorelVariety::over(3, 2).unwrap();
        assert_eq!(enumerate_tuple_variety(&var, &word("")).unwrap().len(), 21);
        assert_eq!(enumerate_tuple_variety(&var, &word("1")).unwrap().len(), 63);
        assert_eq!(enumerate_tuple_variety(&var, &word("1,2")).unwrap().len(), 189);
        assert!(matches!(
            enumerate_tuple_variety(&var, &word("3")),
            Err(Error::LetterOutOfRange { .. })
        ));
    }

    #[test]
    fn output_is_sorted_and_distinct() {
        let var = BorelVariety::over(3, 2).unwrap();
        let ts = enumerate_tuple_variety(&var, &word("1,2,1")).unwrap();
        assert!(ts.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ts.len(), 567);
    }

    #[test]
    fn oracle_small_cases() {
        let var = BorelVariety::over(2, 2).unwrap();
        let table = var.position_table();
        let spec = OrbitSpec::from_word(2, &word("1"), true).unwrap();
        let ts = enumerate_tuple_variety_oracle(&var, &table, &spec, 1000).unwrap();
        assert_eq!(ts.len(), 9);
        assert_eq!(ts[0].word, word("1"));

        let var3 = BorelVariety::over(3, 2).unwrap();
        let table3 = var3.position_table();
        let w0 = OrbitSpec::from_elements(vec![WeylElement::longest(3)], true);
        let ts = enumerate_tuple_variety_oracle(&var3, &table3, &w0, 1000).unwrap();
        assert_eq!(ts.len(), 441);
        assert!(ts[0].word.is_empty());
    }

    #[test]
    fn oracle_cost_guard() {
        let var = BorelVariety::over(3, 2).unwrap();
        let table = var.position_table();
        let spec = OrbitSpec::from_word(3, &word("1,2,1"), true).unwrap();
        assert_eq!(
            enumerate_tuple_variety_oracle(&var, &table, &spec, 1000),
            Err(Error::CostBound { needed: 21u128.pow(4), bound: 1000 })
        );
    }

    #[test]
    fn fast_builder_matches_oracle_short_words() {
        let var = BorelVariety::over(3, 2).unwrap();
        let table = var.position_table();
        for len in 0..=2 {
            for w in Word::all_of_length(3, len) {
                let fast = enumerate_tuple_variety(&var, &w).unwrap();
                let spec = OrbitSpec::from_word(3, &w, true).unwrap();
                let slow = enumerate_tuple_variety_oracle(&var, &table, &spec, 1_000_000).unwrap();
                assert_eq!(fast, slow, "word {w}");
                let open = enumerate_open_tuple_variety(&var, &w).unwrap();
                let spec = OrbitSpec::from_word(3, &w, false).unwrap();
                let slow = enumerate_tuple_variety_oracle(&var, &table, &spec, 1_000_000).unwrap();
                assert_eq!(open, slow, "open word {w}");
            }
        }
    }

    #[test]
    fn projection() {
        let var = BorelVariety::over(3, 2).unwrap();
        let ts = enumerate_tuple_variety(&var, &word("1")).unwrap();
        let p = project_pi_n(&ts[5]).unwrap();
        assert_eq!(p.flags, vec![ts[5].flags[0].clone()]);
        assert!(p.word.is_empty());
        assert_eq!(project_pi_n(&p), Err(Error::EmptyWord));
    }

    #[test]
    fn fiber_reports() {
        let var = BorelVariety::over(2, 2).unwrap();
        let table = var.position_table();
        let r = fiber_report(&var, &table, &word("1")).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|f| f.size == 3 && f.matches_pair_fiber));

        let var = BorelVariety::over(3, 2).unwrap();
        let table = var.position_table();
        let r = fiber_report(&var, &table, &word("1,2")).unwrap();
        assert_eq!(r.len(), 63);
        assert!(r.iter().all(|f| f.size == 3 && f.matches_pair_fiber));

        let var = BorelVariety::over(3, 3).unwrap();
        let table = var.position_table();
        let r = fiber_report(&var, &table, &word("1,1")).unwrap();
        assert_eq!(r.len(), 52 * 4);
        assert!(r.iter().all(|f| f.size == 4 && f.matches_pair_fiber));
        assert_eq!(fiber_report(&var, &table, &Word::empty()), Err(Error::EmptyWord));
    }

    #[test]
    fn prefix_projections_grow_by_q_plus_one() {
        let var = BorelVariety::over(3, 2).unwrap();
        let s = pi_fiber_summary(&var, &word("1,2,1")).unwrap();
        let points: Vec<_> = s.iter().map(|f| f.points).collect();
        assert_eq!(points, vec![63, 189, 567]);
        assert!(s.iter().all(|f| f.surjective && f.min_fiber == 3 && f.max_fiber == 3));
    }

    #[test]
    fn gluing_all_pairs_of_elements() {
        let var = BorelVariety::over(3, 2).unwrap();
        let table = var.position_table();
        let all = all_elements(3);
        for a in &all {
            for b in &all {
                let r = fiber_product_gluing(&var, &table, &[a.clone(), b.clone()], 1_000_000).unwrap();
                assert!(r.equal, "{a} {b}");
            }
        }
    }

    #[test]
    fn varieties_are_stable_under_gl3() {
        use crate::matrix::Matrix;
        use rand::{Rng, SeedableRng};
        let var = BorelVariety::over(3, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut tried = 0;
        while tried < 10 {
            let rows = (0..3)
                .map(|_| (0..3).map(|_| var.space().field().element(rng.gen_range(0..2)).unwrap()).collect())
                .collect();
            let g = Matrix::from_rows(rows).unwrap();
            if !g.is_invertible(var.space().field()) {
                continue;
            }
            tried += 1;
            for w in ["1", "1,2", "2,1,2"] {
                let pts = enumerate_tuple_variety(&var, &word(w)).unwrap();
                let mut moved: Vec<_> = pts.iter().map(|t| translate(&var, &g, t).unwrap()).collect();
                moved.sort();
                assert_eq!(moved, pts);
            }
        }
    }

    #[test]
    fn point_graph_components_track_the_shared_subspace() {
        let var = BorelVariety::over(3, 2).unwrap();
        assert_eq!(point_graph_components(&var, &word("")).unwrap(), 1);
        // A single-flag move keeps the pair condition only if the common
        // subspace stays put: one component per plane (resp. line) of F_2^3.
        assert_eq!(point_graph_components(&var, &word("1")).unwrap(), 7);
        assert_eq!(point_graph_components(&var, &word("2")).unwrap(), 7);
    }
}
