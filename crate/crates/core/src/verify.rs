//! Named checks over finite point sets, one record per statement checked.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::dl::{DLSpec, DLVariety};
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::flags::FlagSpace;
use crate::orbits::{
    self, big_cell_chart, bundle_trivialization_check, closure_boundary_check, coset_parameterization,
    count_poly_of_variety, enumerate_open_tuple_variety, enumerate_tuple_variety, enumerate_tuple_variety_oracle,
    fiber_product_gluing, fiber_report, orbit_pairs, pi_fiber_summary, resolution_report, BorelVariety, OrbitSpec,
};
use crate::weyl::{self, WeylElement, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Flags,
    Partition,
    Fibers,
    Resolution,
    FiberProduct,
    Chart,
    Dimension,
    ClosureBoundary,
    Dl,
    Singularity,
    CrossOracle,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Flags,
        Suite::Partition,
        Suite::Fibers,
        Suite::Resolution,
        Suite::FiberProduct,
        Suite::Chart,
        Suite::Dimension,
        Suite::ClosureBoundary,
        Suite::Dl,
        Suite::Singularity,
        Suite::CrossOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Flags => "flags",
            Suite::Partition => "partition",
            Suite::Fibers => "fibers",
            Suite::Resolution => "resolution",
            Suite::FiberProduct => "fiber-product",
            Suite::Chart => "chart",
            Suite::Dimension => "dimension",
            Suite::ClosureBoundary => "closure-boundary",
            Suite::Dl => "dl",
            Suite::Singularity => "singularity",
            Suite::CrossOracle => "cross-oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse { what: "suite", input: s.to_string() })
    }
}

/// Parameters shared by all suites. `word = None` runs each suite over its
/// default family of words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub n: usize,
    pub p: u32,
    pub k: u32,
    pub m: u32,
    pub word: Option<Word>,
    pub q_samples: Vec<u64>,
    pub cost_bound: u128,
}

impl VerifyConfig {
    pub fn new(n: usize, p: u32) -> Self {
        VerifyConfig {
            n,
            p,
            k: 1,
            m: 2,
            word: None,
            q_samples: orbits::DEFAULT_Q_SAMPLES.to_vec(),
            cost_bound: orbits::DEFAULT_COST_BOUND,
        }
    }

    pub fn with_word(mut self, word: Word) -> Self {
        self.word = Some(word);
        self
    }

    fn words(&self, lengths: std::ops::RangeInclusive<usize>) -> Vec<Word> {
        match &self.word {
            Some(w) => vec![w.clone()],
            None => lengths.flat_map(|l| Word::all_of_length(self.n, l)).collect(),
        }
    }

    fn variety(&self) -> Result<BorelVariety> {
        BorelVariety::new(FlagSpace::new(self.n, FieldCtx::new(self.p, self.k)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyRecord {
    pub suite: String,
    pub statement: String,
    pub pass: bool,
    pub detail: String,
}

fn record(suite: Suite, statement: impl Into<String>, pass: bool, detail: impl Into<String>) -> VerifyRecord {
    VerifyRecord { suite: suite.name().to_string(), statement: statement.into(), pass, detail: detail.into() }
}

fn label(w: &Word) -> String {
    if w.is_empty() {
        "()".to_string()
    } else {
        format!("({w})")
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<VerifyRecord>> {
    if let Some(w) = &cfg.word {
        w.check(cfg.n)?;
    }
    match suite {
        Suite::Flags => flags(cfg),
        Suite::Partition => partition(cfg),
        Suite::Fibers => fibers(cfg),
        Suite::Resolution => resolution(cfg),
        Suite::FiberProduct => fiber_product(cfg),
        Suite::Chart => chart(cfg),
        Suite::Dimension => dimension(cfg),
        Suite::ClosureBoundary => closure_boundary(cfg),
        Suite::Dl => dl(cfg),
        Suite::Singularity => singularity(cfg),
        Suite::CrossOracle => cross_oracle(cfg),
    }
}

pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<VerifyRecord>> {
    let mut out = Vec::new();
    for s in Suite::ALL {
        out.extend(run_suite(s, cfg)?);
    }
    Ok(out)
}

fn flags(cfg: &VerifyConfig) -> Result<Vec<VerifyRecord>> {
    let var = cfg.variety()?;
    let q = var.q() as i64;
    let poly = weyl::poincare_poly(cfg.n);
    let value = poly.eval(q);
    Ok(vec![record(
        Suite::Flags,
        "the flag variety has Σ_w q^ℓ(w) points over F_q",
        var.len() as i128 == value,
        format!("n={} q={q}: {} flags, {poly} = {value}", cfg.n, var.len()),
    )])
}

fn partition(cfg: &VerifyConfig) -> Result<Vec<VerifyRecord>> {
    let var = cfg.variety()?;
    let table = var.position_table();
    let (b, q) = (var.len(), var.q());
    let elements = weyl::all_elements(cfg.n);
    let mut sizes_ok = true;
    let mut total = 0;
    let mut opens = Vec::new();
    for w in &elements {
        let open: BTreeSet<(u32, u32)> = orbit_pairs(&var, &table, w, false)?.into_iter().collect();
        sizes_ok &= open.len() as u128 == b as u128 * (q as u128).pow(w.length() as u32);
        total += open.len();
        opens.push(open);
    }
    let mut union_ok = true;
    for w in &elements {
        let closed: BTreeSet<(u32, u32)> = orbit_pairs(&var, &table, w, true)?.into_iter().collect();
        let mut union = BTreeSet::new();
        for (v, open) in elements.iter().zip(&opens) {
            if weyl::bruhat_leq(v, w)? {
                union.extend(open.iter().copied());
            }
        }
        union_ok &= closed == union;
    }
    Ok(vec![
        record(
            Suite::Partition,
            "pairs of flags split into the orbits O(w), with |O(w)| = |𝓑|·q^ℓ(w)",
            sizes_ok && total == b * b,
            format!("{total} = Σ {b}·{q}^ℓ"),
        ),
        record(
            Suite::Partition,
            "the closure of O(w) is the union of O(w') over w' ≤ w in the Bruhat order",
            union_ok,
            format!("{} elements checked", elements.len()),
        ),
    ])
}

fn fibers(cfg: &VerifyConfig) -> Result<Vec<VerifyRecord>> {
    let var = cfg.variety()?;
    let table = var.position_table();
    let line = var.q() as usize + 1;
    let mut out = Vec::new();
    for w in cfg.words(1..=3) {
        let summary = pi_fiber_summary(&var, &w)?;
        let uniform = summary.iter().all(|s| s.surjective && s.min_fiber == line && s.max_fiber == line);
        let pairs_ok = fiber_report(&var, &table, &w)?.iter().all(|f| f.matches_pair_fiber);
        let last = summary.last().expect("nonempty word");
        let detail = if uniform {
            format!("{} points, {} fibers of size {line}", last.points, last.base_points)
        } else {
            format!("{} points, fiber sizes {}..{}", last.points, last.min_fiber, last.max_fiber)
        };
        out.push(record(
            Suite::Fibers,
            format!("every fiber of every projection π_k on O̅{} is a projective line (q+1 points)", label(&w)),
            uniform && pairs_ok && last.points == var.len() * line.pow(w.len() as u32),
            detail,
        ));
    }
    Ok(out)
}

fn resolution(cfg: &VerifyConfig) -> Result<Vec<VerifyRecord>> {
    let var = cfg.variety()?;
    let table = var.position_table();
    let mut out = Vec::new();
    for w in cfg.words(1..=3) {
        let r = resolution_report(&var, &table, &w)?;
        let mut pass = r.image_equals_closure;
        if r.reduced {
            pass &= r.bijective_over_open;
        }
        if w.has_distinct_letters() {
            pass &= r.injective;
        }
        let detail = if r.injective {
            format!("bijective; image {}", r.image)
        } else if r.reduced {
            format!("image {} = |O̅({})|; bijective over O({}) ({} points)", r.image, r.target, r.target, r.open)
        } else {
            format!("image {} = |O̅({})|", r.image, r.target)
        };
        out.push(record(
            Suite::Resolution,
            format!(
                "(B_0..B_r) ↦ (B_0, B_r) maps O̅{} onto the closure of O(δ), bijectively over O(δ) for reduced words and everywhere for distinct letters",
                label(&w)
            ),
            pass,
            detail,
        ));
    }
    Ok(out)
}

fn fiber_product(cfg: &VerifyConfig) -> Result<Vec<VerifyRecord>> {
    let var = cfg.variety()?;
    let table = var.position_table();
    let mut out = Vec::new();
    for w in cfg.words(2..=2) {
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        let r = fiber_product_gluing(&var, &table, &w.to_elements(cfg.n)?, cfg.cost_bound)?;
        out.push(record(
            Suite::FiberProduct,
            format!("O̅{} is the fiber product of the shorter variety with O̅(s_r) over 𝓑", label(&w)),
            r.equal,
            format!("direct {}, glued {}", r.direct, r.glued),
        ));
    }
    Ok(out)
}

fn chart(cfg: &VerifyConfig) -> Result<Vec<VerifyRecord>> {
    let var = cfg.variety()?;
    let table = var.position_table();
    let mut out = Vec::new();
    for i in 1..cfg.n {
        let s = WeylElement::simple(cfg.n, i)?;
        let c = big_cell_chart(&var, &s)?;
        out.push(record(
            Suite::Chart,
            format!("N' × P_s/B → U(s) is injective with q^#roots·(q+1) points, s = s_{i}"),
            c.injective && c.within_closure && c.chart_points as u128 == c.expected,
            format!("{} pairs, expected {}", c.chart_points, c.expected),
        ));
        let t = bundle_trivialization_check(&var, &table, i)?;
        out.push(record(
            Suite::Chart,
            format!("over the big cell, π_1 on O̅(s_{i}) is trivialized by (n, x) ↦ (nB, nψ(x)B) and the diagram commutes"),
            t.holds(),
            format!("{} = {} points", t.domain, t.target),
        ));
    }
    for w in cfg.words(1..=2) {
        let c = coset_parameterization(&var, &w)?;
        out.push(record(
            Suite::Chart,
            format!("sequences of coset representatives give distinct points filling the fiber of O̅{} over B", label(&w)),
            c.fills_fiber && c.tuples.len() == c.sequences,
            format!("{} sequences, {} tuples", c.sequences, c.tuples.len()),
        ));
    }
    Ok(out)
}

fn dimension(cfg: &VerifyConfig) -> Result<Vec<VerifyRecord>> {
    let mut out = Vec::new();
    for w in cfg.words(0..=2) {
        let p = count_poly_of_variety(&w, cfg.n, &cfg.q_samples)?;
        let expected = w.len() + cfg.n * (cfg.n - 1) / 2;
        out.push(record(
            Suite::Dimension,
            format!("dim O̅{} = r + dim 𝓑 = {expected}", label(&w)),
            p.degree() == Some(expected) && p.leading_coeff() == 1,
            format!("count polynomial {p}"),
        ));
    }
    Ok(out)
}

fn closure_boundary(cfg: &VerifyConfig) -> Result<Vec<VerifyRecord>> {
    let mut out = Vec::new();
    for w in cfg.words(1..=2) {
        let r = closure_boundary_check(&w, cfg.n, &cfg.q_samples)?;
        out.push(record(
            Suite::ClosureBoundary,
            format!("O̅{} is the closure of O{}: the boundary has lower dimension", label(&w), label(&w)),
            r.dense,
            format!("total {}, boundary {}", r.total, r.boundary),
        ));
    }
    Ok(out)
}

fn dl(cfg: &VerifyConfig) -> Result<Vec<VerifyRecord>> {
    let mut out = Vec::new();
    for w in cfg.words(1..=1) {
        let spec = DLSpec::new(cfg.n, cfg.p, cfg.k, cfg.m, w.clone())?;
        let needed = spec.cost()?;
        if needed > cfg.cost_bound {
            return Err(Error::CostBound { needed, bound: cfg.cost_bound });
        }
        let dl = DLVariety::new(spec)?;
        let xbar = dl.xbar()?;
        let open = dl.x_open()?;
        let mut pass = dl.frobenius_stable()? && open.iter().all(|t| xbar.binary_search(t).is_ok());
        let qm = dl.variety().q();
        let mut statement = format!("X̄{} over F_(q^m) is Frobenius-stable and contains X{}", label(&w), label(&w));
        if cfg.n == 2 && w.len() == 1 {
            pass &= xbar.len() as u64 == qm + 1;
            statement.push_str("; for GL_2 it is the projective line over F_(q^m)");
        }
        out.push(record(Suite::Dl, statement, pass, format!("m={}: |X̄| = {}, |X| = {}", cfg.m, xbar.len(), open.len())));
    }
    Ok(out)
}

fn singularity(cfg: &VerifyConfig) -> Result<Vec<VerifyRecord>> {
    let elements = weyl::all_elements(cfg.n);
    let mut agree = 0;
    let mut singular = 0;
    for w in &elements {
        let smooth = weyl::is_smooth_schubert_type_a(w);
        singular += usize::from(!smooth);
        agree += usize::from(smooth == weyl::is_palindromic(&weyl::schubert_poly(w)));
    }
    Ok(vec![record(
        Suite::Singularity,
        "O̅(w) is singular exactly when w contains 3412 or 4231, exactly when Σ_{w'≤w} q^ℓ(w') is not palindromic",
        agree == elements.len(),
        format!("{agree}/{} agree, {singular} singular", elements.len()),
    )])
}

fn cross_oracle(cfg: &VerifyConfig) -> Result<Vec<VerifyRecord>> {
    let var = cfg.variety()?;
    let table = var.position_table();
    let mut out = Vec::new();
    for w in cfg.words(0..=2) {
        let closed = enumerate_tuple_variety(&var, &w)?;
        let open = enumerate_open_tuple_variety(&var, &w)?;
        let oc = enumerate_tuple_variety_oracle(&var, &table, &OrbitSpec::from_word(cfg.n, &w, true)?, cfg.cost_bound)?;
        let oo = enumerate_tuple_variety_oracle(&var, &table, &OrbitSpec::from_word(cfg.n, &w, false)?, cfg.cost_bound)?;
        out.push(record(
            Suite::CrossOracle,
            format!("line extension and the filter of 𝓑^(r+1) give the same O̅{} and O{}", label(&w), label(&w)),
            closed == oc && open == oo,
            format!("closed {}/{}, open {}/{}", closed.len(), oc.len(), open.len(), oo.len()),
        ));
    }
    Ok(out)
}
