//! Coxeter combinatorics for the symmetric group `S_n` (type `A_{n-1}`).
//!
//! Products compose as functions: the one-line notation of `u * v` is
//! `i -> u(v(i))`, and a [`Word`] `(i_1, ..., i_r)` evaluates to
//! `s_{i_1} * ... * s_{i_r}`. Multiplying on the right by `s_i` therefore
//! swaps the entries in positions `i` and `i + 1`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::CountPoly;

/// A finite Coxeter group presented by its simple generators `1..=rank()`.
///
/// Only type A is implemented; the generic algorithms in this module are
/// written against this trait.
pub trait CoxeterGroup {
    type Element: Clone + Eq + Ord + Hash;

    /// Number of simple generators.
    fn rank(&self) -> usize;
    fn identity(&self) -> Self::Element;
    fn length(&self, w: &Self::Element) -> usize;
    /// `w * s_i`.
    fn mul_generator(&self, w: &Self::Element, i: usize) -> Self::Element;
    /// `s_i * w`.
    fn generator_mul(&self, i: usize, w: &Self::Element) -> Self::Element;

    /// `l(w * s_i) < l(w)`.
    fn has_right_descent(&self, w: &Self::Element, i: usize) -> bool {
        self.length(&self.mul_generator(w, i)) < self.length(w)
    }

    /// `l(s_i * w) < l(w)`.
    fn has_left_descent(&self, w: &Self::Element, i: usize) -> bool {
        self.length(&self.generator_mul(i, w)) < self.length(w)
    }

    fn evaluate(&self, word: &Word) -> Self::Element {
        word.letters()
            .iter()
            .fold(self.identity(), |w, &i| self.mul_generator(&w, i))
    }

    /// Monoid product in which a letter only acts when it increases length.
    fn demazure_product(&self, word: &Word) -> Self::Element {
        word.letters().iter().fold(self.identity(), |w, &i| {
            if self.has_right_descent(&w, i) {
                w
            } else {
                self.mul_generator(&w, i)
            }
        })
    }

    /// All reduced words, depth first with ascending generator indices.
    fn reduced_words(&self, w: &Self::Element) -> Vec<Word> {
        fn go<G: CoxeterGroup + ?Sized>(
            g: &G,
            w: &G::Element,
            prefix: &mut Vec<usize>,
            out: &mut Vec<Word>,
        ) {
            if g.length(w) == 0 {
                out.push(Word(prefix.clone()));
                return;
            }
            for i in 1..=g.rank() {
                if g.has_left_descent(w, i) {
                    prefix.push(i);
                    go(g, &g.generator_mul(i, w), prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, w, &mut Vec::new(), &mut out);
        out
    }

    /// First reduced word in the enumeration order of [`reduced_words`].
    ///
    /// [`reduced_words`]: CoxeterGroup::reduced_words
    fn reduced_word(&self, w: &Self::Element) -> Word {
        let mut letters = Vec::new();
        let mut cur = w.clone();
        while self.length(&cur) > 0 {
            let i = (1..=self.rank())
                .find(|&i| self.has_left_descent(&cur, i))
                .expect("nontrivial element has a descent");
            letters.push(i);
            cur = self.generator_mul(i, &cur);
        }
        Word(letters)
    }

    /// Products of all subwords of one reduced word of `w`; this is the
    /// lower Bruhat interval `[e, w]`.
    fn subword_products(&self, w: &Self::Element) -> BTreeSet<Self::Element> {
        let mut set = BTreeSet::from([self.identity()]);
        for &i in self.reduced_word(w).letters() {
            let extended: Vec<_> = set.iter().map(|x| self.mul_generator(x, i)).collect();
            set.extend(extended);
        }
        set
    }

    /// Every group element, breadth first from the identity, then sorted.
    fn elements(&self) -> Vec<Self::Element> {
        let mut seen = HashSet::from([self.identity()]);
        let mut frontier = vec![self.identity()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for i in 1..=self.rank() {
                    let x = self.mul_generator(w, i);
                    if seen.insert(x.clone()) {
                        next.push(x);
                    }
                }
            }
            frontier = next;
        }
        let mut all: Vec<_> = seen.into_iter().collect();
        all.sort();
        all
    }
}

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(into = "String")]
pub struct WeylElement {
    one_line: Vec<usize>,
}

impl WeylElement {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(one_line));
            }
            seen[v] = true;
        }
        Ok(WeylElement { one_line })
    }

    pub(crate) fn from_vec_unchecked(one_line: Vec<usize>) -> Self {
        debug_assert!(WeylElement::new(one_line.clone()).is_ok());
        WeylElement { one_line }
    }

    pub fn identity(n: usize) -> Self {
        WeylElement { one_line: (1..=n).collect() }
    }

    /// The simple transposition swapping `i` and `i + 1`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        check_letter(n, i)?;
        let mut one_line: Vec<usize> = (1..=n).collect();
        one_line.swap(i - 1, i);
        Ok(WeylElement { one_line })
    }

    /// The longest element `[n, n-1, ..., 1]`.
    pub fn longest(n: usize) -> Self {
        WeylElement { one_line: (1..=n).rev().collect() }
    }

    pub fn n(&self) -> usize {
        self.one_line.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.one_line[i - 1]
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.one_line;
        (0..w.len())
            .map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count())
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.one_line.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        WeylElement { one_line: inv }
    }

    /// `self * other`, i.e. `i -> self(other(i))`.
    pub fn compose(&self, other: &WeylElement) -> Result<Self> {
        check_same_rank(self, other)?;
        Ok(WeylElement {
            one_line: other.one_line.iter().map(|&i| self.one_line[i - 1]).collect(),
        })
    }

    pub fn contains_pattern(&self, pattern: &[usize]) -> bool {
        contains_pattern(&self.one_line, pattern)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.one_line.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl From<WeylElement> for String {
    fn from(w: WeylElement) -> String {
        w.to_string()
    }
}

impl FromStr for WeylElement {
    type Err = Error;

    /// Accepts `3,1,2`, `[3,1,2]` or `312` (single-digit entries).
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse { what: "permutation", input: s.to_string() };
        let body = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        let entries: Vec<usize> = if body.contains(',') {
            body.split(',')
                .map(|t| t.trim().parse().map_err(|_| err()))
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(err))
                .collect::<Result<_>>()?
        };
        WeylElement::new(entries)
    }
}

/// A word in the simple generators; letter `i` stands for `s_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(into = "String")]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word with its last letter removed.
    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// Checks every letter is a simple generator of `S_n`.
    pub fn check(&self, n: usize) -> Result<()> {
        self.0.iter().try_for_each(|&i| check_letter(n, i))
    }

    pub fn has_distinct_letters(&self) -> bool {
        let set: HashSet<_> = self.0.iter().collect();
        set.len() == self.0.len()
    }

    /// The letters as elements of `S_n`.
    pub fn to_elements(&self, n: usize) -> Result<Vec<WeylElement>> {
        self.0.iter().map(|&i| WeylElement::simple(n, i)).collect()
    }

    /// All words of length `len` over the generators of `S_n`, lexicographic.
    pub fn all_of_length(n: usize, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (1..n).map(move |i| {
                        let mut letters = w.0.clone();
                        letters.push(i);
                        Word(letters)
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Comma-separated 1-based letters; the empty string is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        s.split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(i) if i > 0 => Ok(i),
                _ => Err(Error::Parse { what: "word", input: s.to_string() }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

fn check_letter(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        Err(Error::LetterOutOfRange { letter: i, n })
    } else {
        Ok(())
    }
}

fn check_same_rank(u: &WeylElement, w: &WeylElement) -> Result<()> {
    if u.n() != w.n() {
        Err(Error::RankMismatch { left: u.n(), right: w.n() })
    } else {
        Ok(())
    }
}

/// The symmetric group `S_n` as the Weyl group of type `A_{n-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TypeA {
    n: usize,
}

impl TypeA {
    pub fn new(n: usize) -> Self {
        TypeA { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn longest(&self) -> WeylElement {
        WeylElement::longest(self.n)
    }

    /// Number of positive roots, `n(n-1)/2`.
    pub fn positive_roots(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }
}

impl CoxeterGroup for TypeA {
    type Element = WeylElement;

    fn rank(&self) -> usize {
        self.n.saturating_sub(1)
    }

    fn identity(&self) -> WeylElement {
        WeylElement::identity(self.n)
    }

    fn length(&self, w: &WeylElement) -> usize {
        w.length()
    }

    fn mul_generator(&self, w: &WeylElement, i: usize) -> WeylElement {
        let mut one_line = w.one_line.clone();
        one_line.swap(i - 1, i);
        WeylElement { one_line }
    }

    fn generator_mul(&self, i: usize, w: &WeylElement) -> WeylElement {
        let one_line = w
            .one_line
            .iter()
            .map(|&v| if v == i { i + 1 } else if v == i + 1 { i } else { v })
            .collect();
        WeylElement { one_line }
    }

    fn has_right_descent(&self, w: &WeylElement, i: usize) -> bool {
        w.one_line[i - 1] > w.one_line[i]
    }

    fn has_left_descent(&self, w: &WeylElement, i: usize) -> bool {
        let pos = |v: usize| w.one_line.iter().position(|&x| x == v).unwrap();
        pos(i) > pos(i + 1)
    }
}

pub fn length(w: &WeylElement) -> usize {
    w.length()
}

/// Bruhat comparison by the subword property on a fixed reduced word of `w`.
pub fn bruhat_leq_subword(u: &WeylElement, w: &WeylElement) -> Result<bool> {
    check_same_rank(u, w)?;
    let g = TypeA::new(w.n());
    Ok(g.subword_products(w).contains(u))
}

/// Bruhat comparison by the rank-matrix criterion:
/// `u <= w` iff `#{a <= i : u(a) >= j} <= #{a <= i : w(a) >= j}` for all `i, j`.
pub fn bruhat_leq_rank(u: &WeylElement, w: &WeylElement) -> Result<bool> {
    check_same_rank(u, w)?;
    let n = u.n();
    for j in 1..=n {
        let (mut cu, mut cw) = (0, 0);
        for i in 0..n {
            cu += (u.one_line[i] >= j) as usize;
            cw += (w.one_line[i] >= j) as usize;
            if cu > cw {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Bruhat order. Uses the rank-matrix criterion; in debug builds the
/// subword criterion is evaluated as well and must agree.
pub fn bruhat_leq(u: &WeylElement, w: &WeylElement) -> Result<bool> {
    let by_rank = bruhat_leq_rank(u, w)?;
    debug_assert_eq!(Ok(by_rank), bruhat_leq_subword(u, w));
    Ok(by_rank)
}

/// The lower interval `{w' : w' <= w}`, sorted.
pub fn bruhat_interval_below(w: &WeylElement) -> Vec<WeylElement> {
    TypeA::new(w.n()).subword_products(w).into_iter().collect()
}

pub fn evaluate(n: usize, word: &Word) -> Result<WeylElement> {
    word.check(n)?;
    Ok(TypeA::new(n).evaluate(word))
}

pub fn is_reduced(n: usize, word: &Word) -> Result<bool> {
    Ok(evaluate(n, word)?.length() == word.len())
}

pub fn demazure_product(n: usize, word: &Word) -> Result<WeylElement> {
    word.check(n)?;
    Ok(TypeA::new(n).demazure_product(word))
}

pub fn reduced_words(w: &WeylElement) -> Vec<Word> {
    TypeA::new(w.n()).reduced_words(w)
}

/// `sum_{w' <= w} q^{l(w')}`.
pub fn schubert_poly(w: &WeylElement) -> CountPoly {
    let mut coeffs = vec![0i64; w.length() + 1];
    for v in bruhat_interval_below(w) {
        coeffs[v.length()] += 1;
    }
    CountPoly::new(coeffs)
}

/// `sum_{w in S_n} q^{l(w)}`, the number of complete flags in `F_q^n`.
pub fn poincare_poly(n: usize) -> CountPoly {
    schubert_poly(&WeylElement::longest(n))
}

/// True iff `seq` contains a subsequence order-isomorphic to `pattern`.
/// Brute force over index subsets.
pub fn contains_pattern(seq: &[usize], pattern: &[usize]) -> bool {
    fn go(seq: &[usize], pattern: &[usize], start: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == pattern.len() {
            return chosen.iter().enumerate().all(|(a, &x)| {
                chosen[a + 1..]
                    .iter()
                    .enumerate()
                    .all(|(b, &y)| (seq[x] < seq[y]) == (pattern[a] < pattern[a + 1 + b]))
            });
        }
        let remaining = pattern.len() - chosen.len();
        for i in start..=seq.len().saturating_sub(remaining) {
            chosen.push(i);
            if go(seq, pattern, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    pattern.len() <= seq.len() && go(seq, pattern, 0, &mut Vec::with_capacity(pattern.len()))
}

/// Smoothness of the type-A Schubert variety of `w`: avoids 3412 and 4231.
pub fn is_smooth_schubert_type_a(w: &WeylElement) -> bool {
    !w.contains_pattern(&[3, 4, 1, 2]) && !w.contains_pattern(&[4, 2, 3, 1])
}

pub fn is_palindromic(p: &CountPoly) -> bool {
    p.is_palindromic()
}

/// All elements of `S_n`, sorted by one-line notation.
pub fn all_elements(n: usize) -> Vec<WeylElement> {
    TypeA::new(n).elements()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> WeylElement {
        s.parse().unwrap()
    }

    /// Every permutation of 1..=n by Heap-free recursion, independent of the
    /// Coxeter machinery.
    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn lengths() {
        assert_eq!(WeylElement::identity(3).length(), 0);
        assert_eq!(w("213").length(), 1);
        assert_eq!(w("321").length(), 3);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(WeylElement::new(vec![1, 1, 2]).is_err());
        assert!(WeylElement::new(vec![0, 1]).is_err());
        assert!(WeylElement::new(vec![1, 4, 2]).is_err());
    }

    #[test]
    fn composition_convention() {
        // s1 * s2 = [2,3,1]: i -> s1(s2(i)).
        let s1 = WeylElement::simple(3, 1).unwrap();
        let s2 = WeylElement::simple(3, 2).unwrap();
        assert_eq!(s1.compose(&s2).unwrap(), w("231"));
        assert_eq!(evaluate(3, &Word::new(vec![1, 2])).unwrap(), w("231"));
        assert_eq!(evaluate(3, &Word::new(vec![1, 2, 1])).unwrap(), w("321"));
    }

    #[test]
    fn group_enumeration_matches_permutations() {
        for n in 1..=5 {
            let mut expected: Vec<_> =
                permutations(n).into_iter().map(|p| WeylElement::new(p).unwrap()).collect();
            expected.sort();
            assert_eq!(all_elements(n), expected);
        }
    }

    #[test]
    fn bruhat_basic() {
        let e = WeylElement::identity(3);
        for x in all_elements(3) {
            assert!(bruhat_leq(&e, &x).unwrap());
        }
        let s1 = w("213");
        let s1s2 = w("231");
        assert!(bruhat_leq(&s1, &s1s2).unwrap());
        assert!(!bruhat_leq(&s1s2, &s1).unwrap());
        assert_eq!(
            bruhat_leq(&e, &WeylElement::identity(4)),
            Err(Error::RankMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn bruhat_criteria_agree_s3_s4() {
        for n in [3, 4] {
            let all = all_elements(n);
            let mut pairs = 0;
            for u in &all {
                for v in &all {
                    assert_eq!(
                        bruhat_leq_subword(u, v).unwrap(),
                        bruhat_leq_rank(u, v).unwrap(),
                        "{u} vs {v}"
                    );
                    pairs += 1;
                }
            }
            assert_eq!(pairs, if n == 3 { 36 } else { 576 });
        }
    }

    #[test]
    fn bruhat_relation_counts_s3() {
        // In S3 only s1s2, s2s1 are incomparable (both ways), and the two
        // length-1 elements; 36 - 2*2 = 32 ordered pairs comparable, of
        // which 19 are u <= v.
        let all = all_elements(3);
        let leq = all
            .iter()
            .flat_map(|u| all.iter().map(move |v| (u, v)))
            .filter(|(u, v)| bruhat_leq(u, v).unwrap())
            .count();
        assert_eq!(leq, 19);
    }

    #[test]
    fn intervals() {
        assert_eq!(bruhat_interval_below(&WeylElement::identity(3)), vec![WeylElement::identity(3)]);
        assert_eq!(bruhat_interval_below(&w("213")), vec![w("123"), w("213")]);
        assert_eq!(bruhat_interval_below(&w("321")).len(), 6);
    }

    #[test]
    fn demazure() {
        let d = |l: Vec<usize>| demazure_product(3, &Word::new(l)).unwrap();
        assert_eq!(d(vec![1]), w("213"));
        assert_eq!(d(vec![1, 1]), w("213"));
        assert_eq!(d(vec![1, 2, 1]), w("321"));
        assert_eq!(d(vec![1, 2, 1, 2]), w("321"));
        assert_eq!(d(vec![]), WeylElement::identity(3));
    }

    #[test]
    fn reduced_word_enumeration() {
        let words = reduced_words(&w("321"));
        assert_eq!(words, vec![Word::new(vec![1, 2, 1]), Word::new(vec![2, 1, 2])]);
        // w0 in S4 has 16 reduced words.
        assert_eq!(reduced_words(&WeylElement::longest(4)).len(), 16);
        for x in all_elements(4) {
            let words = reduced_words(&x);
            assert!(!words.is_empty());
            for word in words {
                assert_eq!(word.len(), x.length());
                assert_eq!(evaluate(4, &word).unwrap(), x);
            }
        }
    }

    #[test]
    fn polynomials() {
        assert_eq!(schubert_poly(&WeylElement::identity(3)), CountPoly::one());
        assert_eq!(schubert_poly(&w("213")), CountPoly::new(vec![1, 1]));
        let p3 = poincare_poly(3);
        assert_eq!(p3, CountPoly::new(vec![1, 2, 2, 1]));
        assert_eq!(p3.eval(2), 21);
    }

    #[test]
    fn pattern_smoothness() {
        for x in all_elements(3) {
            assert!(is_smooth_schubert_type_a(&x));
        }
        assert!(!is_smooth_schubert_type_a(&w("4231")));
        assert!(!is_smooth_schubert_type_a(&w("3412")));
        assert!(is_smooth_schubert_type_a(&w("4321")));
        assert!(contains_pattern(&[5, 1, 3, 4, 2], &[4, 2, 3, 1]));
    }

    #[test]
    fn schubert_poly_4231_not_palindromic() {
        // Interval below 4231 by brute force over S4 with the rank criterion:
        // 1 + 3q + 5q^2 + 6q^3 + 4q^4 + q^5 (20 elements).
        let top = w("4231");
        let mut coeffs = vec![0i64; 6];
        for p in permutations(4) {
            let x = WeylElement::new(p).unwrap();
            if bruhat_leq_rank(&x, &top).unwrap() {
                coeffs[x.length()] += 1;
            }
        }
        assert_eq!(coeffs, vec![1, 3, 5, 6, 4, 1]);
        assert_eq!(schubert_poly(&top).coeffs(), &coeffs[..]);
        assert!(!is_palindromic(&schubert_poly(&top)));
    }

    #[test]
    fn word_parsing() {
        assert_eq!("".parse::<Word>().unwrap(), Word::empty());
        assert_eq!("1, 2,1".parse::<Word>().unwrap(), Word::new(vec![1, 2, 1]));
        assert!("1,,2".parse::<Word>().is_err());
        assert!("0".parse::<Word>().is_err());
        assert_eq!(Word::new(vec![1, 2]).to_string(), "1,2");
        assert!(Word::new(vec![3]).check(3).is_err());
        assert_eq!(Word::all_of_length(3, 2).len(), 4);
    }
}
