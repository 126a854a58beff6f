//! Deligne–Lusztig point sets `X̄(s⃗)`: tuples in `O̅(s⃗)` over `F_{q^m}`
//! whose last flag is the Frobenius image of the first.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flags::{FlagSpace, PositionTuple};
use crate::gf::FieldCtx;
use crate::orbits::BorelVariety;
use crate::weyl::Word;

/// `GL_n` over `F_{q^m}` with `q = p^k`, and a word in the simple reflections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DLSpec {
    pub n: usize,
    pub p: u32,
    pub k: u32,
    pub m: u32,
    pub word: Word,
}

impl DLSpec {
    pub fn new(n: usize, p: u32, k: u32, m: u32, word: Word) -> Result<Self> {
        if k == 0 || m == 0 {
            return Err(Error::ZeroDegree);
        }
        word.check(n)?;
        Ok(DLSpec { n, p, k, m, word })
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }

    /// Flag space over `F_{q^m}`.
    pub fn space(&self) -> Result<FlagSpace> {
        FlagSpace::new(self.n, FieldCtx::new(self.p, self.k * self.m)?)
    }

    /// Number of candidate tuples the line-extension builder visits.
    pub fn cost(&self) -> Result<u128> {
        let space = self.space()?;
        let line = space.q() as u128 + 1;
        Ok((0..self.word.len()).fold(space.flag_count() as u128, |acc, _| acc.saturating_mul(line)))
    }
}

/// `𝓑(F_{q^m})` together with the Frobenius permutation of its flags.
#[derive(Clone, Debug)]
pub struct DLVariety {
    spec: DLSpec,
    var: BorelVariety,
    frob: Vec<u32>,
}

impl DLVariety {
    pub fn new(spec: DLSpec) -> Result<Self> {
        let var = BorelVariety::new(spec.space()?)?;
        let q = spec.q();
        let frob = var
            .flags()
            .iter()
            .map(|f| {
                let g = var.space().frobenius_flag(f, q)?;
                Ok(var.index_of(&g).expect("Frobenius permutes the flags"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DLVariety { spec, var, frob })
    }

    pub fn spec(&self) -> &DLSpec {
        &self.spec
    }

    pub fn variety(&self) -> &BorelVariety {
        &self.var
    }

    /// Index of `F(B)` for the flag with index `f`.
    pub fn frobenius_index(&self, f: u32) -> u32 {
        self.frob[f as usize]
    }

    fn indices(&self, strict: bool) -> Result<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        crate::orbits::walk(&self.var, &self.spec.word, strict, |t| {
            if *t.last().unwrap() == self.frob[t[0] as usize] {
                out.push(t.to_vec());
            }
        })?;
        Ok(out)
    }

    fn tuples(&self, idx: Vec<Vec<u32>>) -> Vec<PositionTuple> {
        idx.iter()
            .map(|t| PositionTuple {
                word: self.spec.word.clone(),
                flags: t.iter().map(|&i| self.var.flag(i).clone()).collect(),
            })
            .collect()
    }

    /// `X̄(s⃗)(F_{q^m})`, sorted.
    pub fn xbar(&self) -> Result<Vec<PositionTuple>> {
        Ok(self.tuples(self.indices(false)?))
    }

    /// Tuples with every consecutive position exactly `s_i`, sorted.
    pub fn x_open(&self) -> Result<Vec<PositionTuple>> {
        Ok(self.tuples(self.indices(true)?))
    }

    pub fn counts(&self) -> Result<DLCountRow> {
        Ok(DLCountRow {
            word: self.spec.word.clone(),
            n: self.spec.n,
            q: self.spec.q(),
            m: self.spec.m,
            xbar: self.indices(false)?.len() as u128,
            x_open: self.indices(true)?.len() as u128,
        })
    }

    /// Applying `F` to every flag maps `X̄(s⃗)` into itself.
    pub fn frobenius_stable(&self) -> Result<bool> {
        let points = self.indices(false)?;
        let set: HashSet<&[u32]> = points.iter().map(|t| t.as_slice()).collect();
        Ok(points.iter().all(|t| {
            let image: Vec<u32> = t.iter().map(|&i| self.frob[i as usize]).collect();
            set.contains(image.as_slice())
        }))
    }
}

pub fn enumerate_xbar(spec: &DLSpec) -> Result<Vec<PositionTuple>> {
    DLVariety::new(spec.clone())?.xbar()
}

pub fn enumerate_x_open(spec: &DLSpec) -> Result<Vec<PositionTuple>> {
    DLVariety::new(spec.clone())?.x_open()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DLCountRow {
    pub word: Word,
    pub n: usize,
    pub q: u64,
    pub m: u32,
    pub xbar: u128,
    pub x_open: u128,
}

/// One row per `(word, m)`, in the order given; refuses specs whose
/// enumeration would exceed `cost_bound` candidate tuples.
pub fn dl_count_table(n: usize, p: u32, k: u32, words: &[Word], ms: &[u32], cost_bound: u128) -> Result<Vec<DLCountRow>> {
    let mut rows = Vec::new();
    for word in words {
        for &m in ms {
            let spec = DLSpec::new(n, p, k, m, word.clone())?;
            let needed = spec.cost()?;
            if needed > cost_bound {
                return Err(Error::CostBound { needed, bound: cost_bound });
            }
            rows.push(DLVariety::new(spec)?.counts()?);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::bruhat_leq;

    fn spec(n: usize, w: &str, m: u32) -> DLSpec {
        DLSpec::new(n, 2, 1, m, w.parse().unwrap()).unwrap()
    }

    /// Filters all of `𝓑^{r+1}` directly.
    fn oracle(spec: &DLSpec, strict: bool) -> Vec<PositionTuple> {
        let space = spec.space().unwrap();
        let flags = space.enumerate_flags();
        let conds = spec.word.to_elements(spec.n).unwrap();
        let len = conds.len() + 1;
        let mut out = Vec::new();
        let mut cand = vec![0usize; len];
        loop {
            let fl: Vec<_> = cand.iter().map(|&i| flags[i].clone()).collect();
            let ok = (1..len).all(|i| {
                let pos = space.relative_position(&fl[i - 1], &fl[i]).unwrap();
                if strict {
                    pos == conds[i - 1]
                } else {
                    bruhat_leq(&pos, &conds[i - 1]).unwrap()
                }
            }) && fl[len - 1] == space.frobenius_flag(&fl[0], spec.q()).unwrap();
            if ok {
                out.push(PositionTuple { word: spec.word.clone(), flags: fl });
            }
            let mut k = len;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                cand[k] += 1;
                if cand[k] < flags.len() {
                    break;
                }
                cand[k] = 0;
            }
        }
    }

    #[test]
    fn gl2_projective_line() {
        for (m, total, open) in [(1, 3, 0), (2, 5, 2), (3, 9, 6)] {
            let c = DLVariety::new(spec(2, "1", m)).unwrap().counts().unwrap();
            assert_eq!((c.xbar, c.x_open), (total, open), "m = {m}");
        }
    }

    #[test]
    fn matches_oracle() {
        for (n, w, m) in [(2, "1", 1), (2, "1", 2), (2, "1,1", 2), (3, "1,2", 1), (3, "2", 1), (3, "1", 2)] {
            let s = spec(n, w, m);
            let dl = DLVariety::new(s.clone()).unwrap();
            assert_eq!(dl.xbar().unwrap(), oracle(&s, false), "{n} {w} {m}");
            assert_eq!(dl.x_open().unwrap(), oracle(&s, true), "{n} {w} {m}");
        }
    }

    #[test]
    fn gl3_rational_word_12() {
        // B_2 = B_0 forces B_1 onto both lines through B_0, so B_1 = B_0.
        let c = DLVariety::new(spec(3, "1,2", 1)).unwrap().counts().unwrap();
        assert_eq!((c.xbar, c.x_open), (21, 0));
    }

    #[test]
    fn open_part_and_closed_conditions() {
        for (n, w, m) in [(2, "1", 2), (2, "1", 3), (3, "1,2", 2), (3, "2,1", 1)] {
            let s = spec(n, w, m);
            let dl = DLVariety::new(s.clone()).unwrap();
            let space = dl.variety().space();
            let xbar = dl.xbar().unwrap();
            let conds = s.word.to_elements(n).unwrap();
            for t in &xbar {
                for (i, c) in conds.iter().enumerate() {
                    let pos = space.relative_position(&t.flags[i], &t.flags[i + 1]).unwrap();
                    assert!(bruhat_leq(&pos, c).unwrap());
                }
                assert_eq!(*t.last(), space.frobenius_flag(t.first(), 2).unwrap());
            }
            for t in dl.x_open().unwrap() {
                assert!(xbar.binary_search(&t).is_ok());
            }
        }
    }

    #[test]
    fn frobenius_stable_gl2() {
        for m in 1..=3 {
            assert!(DLVariety::new(spec(2, "1", m)).unwrap().frobenius_stable().unwrap());
        }
        assert!(DLVariety::new(spec(3, "1,2", 2)).unwrap().frobenius_stable().unwrap());
    }

    #[test]
    fn counts_grow_with_m() {
        let rows = dl_count_table(2, 2, 1, &["1".parse().unwrap()], &[1, 2, 3, 4], u128::MAX).unwrap();
        let xs: Vec<u128> = rows.iter().map(|r| r.xbar).collect();
        assert_eq!(xs, [3, 5, 9, 17]);
        assert!(xs.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn cost_guard_and_spec_errors() {
        let words = ["1,2,1".parse().unwrap()];
        assert!(matches!(dl_count_table(3, 2, 1, &words, &[2], 1000), Err(Error::CostBound { .. })));
        assert!(DLSpec::new(2, 2, 1, 0, Word::empty()).is_err());
        assert!(DLSpec::new(2, 2, 1, 1, "2".parse().unwrap()).is_err());
    }
}
