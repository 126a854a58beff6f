use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use borelpos::dl::{dl_count_table, DLSpec, DLVariety};
use borelpos::orbits::{
    big_cell_chart, bundle_trivialization_check, count_points, count_poly_of_variety, enumerate_tuple_variety,
    resolution_report, BorelVariety, DEFAULT_COST_BOUND, DEFAULT_Q_SAMPLES,
};
use borelpos::verify::{run_all, run_suite, Suite, VerifyConfig};
use borelpos::weyl::{self, CoxeterGroup};
use borelpos::{TypeA, WeylElement, Word};

mod output;

use output::{write_rows, Format};

#[derive(Parser)]
#[command(name = "borelpos", version, about = "Flags in relative position over finite fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Point counts of O̅(word) over F_q.
    Count {
        #[command(flatten)]
        common: Common,
        /// Emit the interpolated count polynomial instead of counts.
        #[arg(long)]
        poly: bool,
        /// Emit the points themselves.
        #[arg(long, conflicts_with = "poly")]
        points: bool,
    },
    /// Run verification suites; exits nonzero if any check fails.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Suite to run (default: all).
        #[arg(long)]
        suite: Vec<String>,
    },
    /// Deligne–Lusztig point counts over F_(q^m).
    Dl {
        #[command(flatten)]
        common: Common,
        /// Emit the points of X̄ for a single m.
        #[arg(long)]
        points: bool,
    },
    /// Bruhat order queries in S_n.
    Bruhat {
        #[command(flatten)]
        common: Common,
        /// Upper element in one-line notation (default: the word, else w0).
        #[arg(long)]
        w: Option<String>,
        /// Lower element; without it every u in S_n is listed.
        #[arg(long)]
        u: Option<String>,
    },
    /// Image and fiber statistics of (B_0..B_r) -> (B_0, B_r).
    Resolve {
        #[command(flatten)]
        common: Common,
    },
    /// Big-cell chart and trivialization checks.
    Chart {
        #[command(flatten)]
        common: Common,
        /// Element in one-line notation (default: each simple reflection).
        #[arg(long)]
        w: Option<String>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Characteristic.
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// Base field is F_(p^k).
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Extension degrees, comma-separated.
    #[arg(long, default_value = "1")]
    m: String,
    /// Comma-separated simple letters; "" is the empty word.
    #[arg(long)]
    word: Option<String>,
    /// Comma-separated field sizes.
    #[arg(long)]
    q_samples: Option<String>,
    #[arg(long, default_value_t = DEFAULT_COST_BOUND)]
    cost_bound: u128,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

impl Common {
    fn q(&self) -> Result<u64> {
        if !borelpos::gf::is_prime(self.p as u64) {
            bail!("p = {} is not prime", self.p);
        }
        (self.p as u64).checked_pow(self.k).context("field size overflows")
    }

    fn word(&self) -> Result<Option<Word>> {
        let Some(s) = &self.word else { return Ok(None) };
        let w: Word = s.parse()?;
        w.check(self.n)?;
        Ok(Some(w))
    }

    fn word_or_empty(&self) -> Result<Word> {
        Ok(self.word()?.unwrap_or_default())
    }

    fn ms(&self) -> Result<Vec<u32>> {
        list(&self.m).context("--m")
    }

    fn samples(&self) -> Result<Option<Vec<u64>>> {
        self.q_samples.as_deref().map(|s| list(s).context("--q-samples")).transpose()
    }

    fn emit<T: Serialize>(&self, rows: &[T]) -> Result<()> {
        write_rows(rows, self.format, self.output.as_deref())
    }
}

fn list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    s.split(',').map(|x| Ok(x.trim().parse()?)).collect()
}

fn element(n: usize, s: &str) -> Result<WeylElement> {
    let w: WeylElement = s.parse()?;
    if w.n() != n {
        bail!("{s} is not in S_{n}");
    }
    Ok(w)
}

#[derive(Serialize)]
struct CountRow {
    word: Word,
    n: usize,
    q: u64,
    count: u128,
}

#[derive(Serialize)]
struct PolyRow {
    word: Word,
    n: usize,
    samples: String,
    poly: String,
    degree: usize,
}

#[derive(Serialize)]
struct PointRow {
    word: Word,
    flags: String,
}

#[derive(Serialize)]
struct BruhatRow {
    u: WeylElement,
    w: WeylElement,
    u_length: usize,
    leq: bool,
}

#[derive(Serialize)]
struct ChartRow {
    w: WeylElement,
    support: String,
    domain: usize,
    chart_points: usize,
    expected: u128,
    injective: bool,
    within_closure: bool,
    trivialization: Option<bool>,
}

fn cmd_count(c: &Common, poly: bool, points: bool) -> Result<()> {
    let word = c.word_or_empty()?;
    if poly {
        let samples = c.samples()?.unwrap_or(DEFAULT_Q_SAMPLES.to_vec());
        let p = count_poly_of_variety(&word, c.n, &samples)?;
        let samples = samples.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        return c.emit(&[PolyRow { word, n: c.n, samples, degree: p.degree().unwrap_or(0), poly: p.to_string() }]);
    }
    if points {
        let var = BorelVariety::over(c.n, c.q()?)?;
        return emit_points(c, var.space(), enumerate_tuple_variety(&var, &word)?);
    }
    let qs = match c.samples()? {
        Some(s) => s,
        None => vec![c.q()?],
    };
    let rows = qs
        .into_iter()
        .map(|q| Ok(CountRow { word: word.clone(), n: c.n, q, count: count_points(&word, c.n, q)?.total }))
        .collect::<Result<Vec<_>>>()?;
    c.emit(&rows)
}

fn emit_points(c: &Common, space: &borelpos::FlagSpace, tuples: Vec<borelpos::PositionTuple>) -> Result<()> {
    let records: Vec<_> = tuples.iter().map(|t| space.tuple_record(t)).collect();
    match c.format {
        Format::Json => c.emit(&records),
        Format::Csv => {
            let rows = records
                .into_iter()
                .map(|r| Ok(PointRow { flags: serde_json::to_string(&r.flags)?, word: r.word }))
                .collect::<Result<Vec<_>>>()?;
            c.emit(&rows)
        }
    }
}

fn cmd_verify(c: &Common, suites: &[String]) -> Result<bool> {
    let mut cfg = VerifyConfig::new(c.n, c.p);
    cfg.k = c.k;
    cfg.m = *c.ms()?.first().context("--m")?;
    cfg.word = c.word()?;
    if let Some(s) = c.samples()? {
        cfg.q_samples = s;
    }
    cfg.cost_bound = c.cost_bound;
    c.q()?;
    let records = if suites.is_empty() {
        run_all(&cfg)?
    } else {
        let mut out = Vec::new();
        for s in suites {
            out.extend(run_suite(s.parse::<Suite>()?, &cfg)?);
        }
        out
    };
    c.emit(&records)?;
    Ok(records.iter().all(|r| r.pass))
}

fn cmd_dl(c: &Common, points: bool) -> Result<()> {
    let word = c.word()?.unwrap_or_else(|| Word::new(vec![1]));
    let ms = c.ms()?;
    c.q()?;
    if points {
        let [m] = ms[..] else { bail!("--points needs a single --m") };
        let spec = DLSpec::new(c.n, c.p, c.k, m, word)?;
        let needed = spec.cost()?;
        if needed > c.cost_bound {
            bail!("enumeration needs {needed} candidates, above the cost bound {}", c.cost_bound);
        }
        let dl = DLVariety::new(spec)?;
        return emit_points(c, dl.variety().space(), dl.xbar()?);
    }
    c.emit(&dl_count_table(c.n, c.p, c.k, &[word], &ms, c.cost_bound)?)
}

fn cmd_bruhat(c: &Common, w: Option<&str>, u: Option<&str>) -> Result<()> {
    let w = match (w, c.word()?) {
        (Some(s), _) => element(c.n, s)?,
        (None, Some(word)) => weyl::evaluate(c.n, &word)?,
        (None, None) => WeylElement::longest(c.n),
    };
    let us = match u {
        Some(s) => vec![element(c.n, s)?],
        None => TypeA::new(c.n).elements(),
    };
    let rows = us
        .into_iter()
        .map(|u| Ok(BruhatRow { leq: weyl::bruhat_leq(&u, &w)?, u_length: u.length(), u, w: w.clone() }))
        .collect::<Result<Vec<_>>>()?;
    c.emit(&rows)
}

fn cmd_resolve(c: &Common) -> Result<()> {
    let var = BorelVariety::over(c.n, c.q()?)?;
    let table = var.position_table();
    let words = match c.word()? {
        Some(w) => vec![w],
        None => (1..=3).flat_map(|l| Word::all_of_length(c.n, l)).collect(),
    };
    let rows = words.iter().map(|w| resolution_report(&var, &table, w)).collect::<Result<Vec<_>, _>>()?;
    c.emit(&rows)
}

fn cmd_chart(c: &Common, w: Option<&str>) -> Result<()> {
    let var = BorelVariety::over(c.n, c.q()?)?;
    let table = var.position_table();
    let ws = match w {
        Some(s) => vec![element(c.n, s)?],
        None => (1..c.n).map(|i| WeylElement::simple(c.n, i)).collect::<Result<_, _>>()?,
    };
    let mut rows = Vec::new();
    for w in ws {
        let r = big_cell_chart(&var, &w)?;
        let trivialization = match r.support[..] {
            [i] if w.length() == 1 => Some(bundle_trivialization_check(&var, &table, i)?.holds()),
            _ => None,
        };
        rows.push(ChartRow {
            support: r.support.iter().map(usize::to_string).collect::<Vec<_>>().join(","),
            w: r.w,
            domain: r.domain,
            chart_points: r.chart_points,
            expected: r.expected,
            injective: r.injective,
            within_closure: r.within_closure,
            trivialization,
        });
    }
    c.emit(&rows)
}

fn run(cli: Cli) -> Result<bool> {
    match &cli.cmd {
        Command::Count { common, poly, points } => cmd_count(common, *poly, *points)?,
        Command::Verify { common, suite } => return cmd_verify(common, suite),
        Command::Dl { common, points } => cmd_dl(common, *points)?,
        Command::Bruhat { common, w, u } => cmd_bruhat(common, w.as_deref(), u.as_deref())?,
        Command::Resolve { common } => cmd_resolve(common)?,
        Command::Chart { common, w } => cmd_chart(common, w.as_deref())?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
