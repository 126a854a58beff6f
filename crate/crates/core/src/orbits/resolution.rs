use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::Result;
use crate::flags::{Flag, PositionTuple};
use crate::weyl::{self, WeylElement, Word};

use super::tuples::walk;
use super::{orbit_pairs, BorelVariety, PositionTable};

/// `(B_0, ..., B_r) -> (B_0, B_r)`.
pub fn resolution_map(t: &PositionTuple) -> (Flag, Flag) {
    (t.first().clone(), t.last().clone())
}

/// Image and fiber statistics of the resolution map on `O̅(s⃗)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionReport {
    pub word: Word,
    pub reduced: bool,
    /// Demazure product of the word.
    pub target: WeylElement,
    pub domain: usize,
    pub image: usize,
    /// `|O̅(target)|`, from relative positions.
    pub closure: usize,
    pub image_equals_closure: bool,
    /// `|O(target)|`.
    pub open: usize,
    /// Every point of `O(target)` has exactly one preimage.
    pub bijective_over_open: bool,
    /// Every image point has exactly one preimage.
    pub injective: bool,
}

pub fn resolution_report(var: &BorelVariety, table: &PositionTable, word: &Word) -> Result<ResolutionReport> {
    var.check_word(word)?;
    let n = var.n();
    let target = weyl::demazure_product(n, word)?;
    let mut preimages: HashMap<(u32, u32), usize> = HashMap::new();
    let mut domain = 0;
    walk(var, word, false, |t| {
        domain += 1;
        *preimages.entry((t[0], *t.last().unwrap())).or_default() += 1;
    })?;
    let image: BTreeSet<(u32, u32)> = preimages.keys().copied().collect();
    let closure: BTreeSet<(u32, u32)> = orbit_pairs(var, table, &target, true)?.into_iter().collect();
    let open = orbit_pairs(var, table, &target, false)?;
    Ok(ResolutionReport {
        word: word.clone(),
        reduced: weyl::is_reduced(n, word)?,
        target,
        domain,
        image: image.len(),
        closure: closure.len(),
        image_equals_closure: image == closure,
        open: open.len(),
        bijective_over_open: open.iter().all(|p| preimages.get(p) == Some(&1)),
        injective: preimages.values().all(|&c| c == 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_n3_q2() {
        let var = BorelVariety::over(3, 2).unwrap();
        let table = var.position_table();

        let r = resolution_report(&var, &table, &"1,2".parse().unwrap()).unwrap();
        assert_eq!((r.domain, r.image, r.closure), (189, 189, 189));
        assert!(r.image_equals_closure && r.injective && r.bijective_over_open);

        let r = resolution_report(&var, &table, &"1,2,1".parse().unwrap()).unwrap();
        assert_eq!((r.domain, r.image, r.open), (567, 441, 168));
        assert_eq!(r.target, WeylElement::longest(3));
        assert!(r.image_equals_closure && r.bijective_over_open && !r.injective);

        let r = resolution_report(&var, &table, &"1,1".parse().unwrap()).unwrap();
        assert_eq!(r.image, 63);
        assert!(!r.reduced && r.image_equals_closure);
        assert_eq!(r.target, WeylElement::simple(3, 1).unwrap());
    }

    #[test]
    fn map_takes_endpoints() {
        let var = BorelVariety::over(3, 2).unwrap();
        let t = super::super::enumerate_tuple_variety(&var, &"1,2".parse().unwrap()).unwrap();
        let (a, b) = resolution_map(&t[100]);
        assert_eq!(a, t[100].flags[0]);
        assert_eq!(b, t[100].flags[2]);
    }
}
