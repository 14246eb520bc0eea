use std::io::{self, Write};

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::DeltaKind;
use crate::error::{invalid, Error, Result};
use crate::partitions::{count_gap, count_partset, QVariant};
use crate::qseries::{gf_gap, gf_q, TruncatedSeries};

/// Which counting engine produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Dp,
    Series,
}

impl Engine {
    pub fn as_str(&self) -> &'static str {
        match self {
            Engine::Dp => "dp",
            Engine::Series => "series",
        }
    }
}

/// Supplies whole coefficient columns for the series engine.
///
/// The default [`SeriesEngine`] builds them from scratch; the CLI wraps it in
/// a persistent cache.
pub trait ColumnSource: Sync {
    /// Coefficients of the gap generating function for `(d, a)` up to `n_max`.
    fn gap_column(&self, d: u64, a: u64, n_max: usize) -> Result<TruncatedSeries>;

    /// Coefficients of the residue generating function up to `n_max`.
    fn residue_column(
        &self,
        variant: QVariant,
        d: u64,
        b: u64,
        n_max: usize,
    ) -> Result<TruncatedSeries>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SeriesEngine;

impl ColumnSource for SeriesEngine {
    fn gap_column(&self, d: u64, a: u64, n_max: usize) -> Result<TruncatedSeries> {
        Ok(gf_gap(&crate::partitions::GapSpec::new(d, a)?, n_max))
    }

    fn residue_column(
        &self,
        variant: QVariant,
        d: u64,
        b: u64,
        n_max: usize,
    ) -> Result<TruncatedSeries> {
        gf_q(variant, d, b, n_max)
    }
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub d_from: u64,
    pub d_to: u64,
    pub n_from: u64,
    pub n_max: u64,
    pub engine: Engine,
    /// Fraction of series cells re-evaluated by dynamic programming.
    pub cross_check_rate: f64,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl SweepOptions {
    pub fn new(d_from: u64, d_to: u64, n_max: u64) -> Self {
        Self {
            d_from,
            d_to,
            n_from: 1,
            n_max,
            engine: Engine::Series,
            cross_check_rate: 0.01,
            seed: 0x5eed,
            jobs: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaCell {
    pub d: u64,
    pub n: u64,
    pub q_count: BigInt,
    pub big_q_count: BigInt,
    pub delta: BigInt,
    pub engine: Engine,
    /// Set when a series value was confirmed by dynamic programming.
    pub dp_checked: bool,
}

/// First negative cell, with both counts so the report is self-explaining.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub d: u64,
    pub n: u64,
    pub q_count: String,
    #[serde(rename = "Q_count")]
    pub big_q_count: String,
    pub delta: String,
}

impl Witness {
    fn from_cell(c: &DeltaCell) -> Self {
        Self {
            d: c.d,
            n: c.n,
            q_count: c.q_count.to_string(),
            big_q_count: c.big_q_count.to_string(),
            delta: c.delta.to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DeltaReport {
    pub kind: DeltaKind,
    pub d_range: (u64, u64),
    pub n_range: (u64, u64),
    /// Ordered by `d`, then `n`.
    pub cells: Vec<DeltaCell>,
    pub min: BigInt,
    pub min_at: (u64, u64),
    /// Present exactly when `min < 0`.
    pub witness: Option<Witness>,
}

/// Machine-readable summary of a report; all big numbers are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaSummary {
    pub variant: QVariant,
    pub a: u64,
    pub b: u64,
    pub d_from: u64,
    pub d_to: u64,
    pub n_from: u64,
    pub n_max: u64,
    pub cells: usize,
    pub engine: Engine,
    pub dp_checked_cells: usize,
    pub min: String,
    pub min_d: u64,
    pub min_n: u64,
    pub negative_cells: usize,
    pub witness: Option<Witness>,
}

impl DeltaReport {
    pub fn summary_line(&self) -> String {
        format!(
            "min={} at (d={},n={})",
            self.min, self.min_at.0, self.min_at.1
        )
    }

    pub fn negative_cells(&self) -> impl Iterator<Item = &DeltaCell> {
        self.cells.iter().filter(|c| c.delta.is_negative())
    }

    pub fn cell(&self, d: u64, n: u64) -> Option<&DeltaCell> {
        if d < self.d_range.0 || d > self.d_range.1 || n < self.n_range.0 || n > self.n_range.1 {
            return None;
        }
        let width = (self.n_range.1 - self.n_range.0 + 1) as usize;
        let idx = (d - self.d_range.0) as usize * width + (n - self.n_range.0) as usize;
        self.cells.get(idx)
    }

    pub fn summary(&self) -> DeltaSummary {
        DeltaSummary {
            variant: self.kind.variant,
            a: self.kind.a,
            b: self.kind.b,
            d_from: self.d_range.0,
            d_to: self.d_range.1,
            n_from: self.n_range.0,
            n_max: self.n_range.1,
            cells: self.cells.len(),
            engine: self.cells.first().map_or(Engine::Series, |c| c.engine),
            dp_checked_cells: self.cells.iter().filter(|c| c.dp_checked).count(),
            min: self.min.to_string(),
            min_d: self.min_at.0,
            min_n: self.min_at.1,
            negative_cells: self.negative_cells().count(),
            witness: self.witness.clone(),
        }
    }

    /// One row per cell under the header `d,n,q_count,Q_count,delta`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "d,n,q_count,Q_count,delta")?;
        for c in &self.cells {
            writeln!(
                out,
                "{},{},{},{},{}",
                c.d, c.n, c.q_count, c.big_q_count, c.delta
            )?;
        }
        out.flush()
    }
}

/// Evaluates the difference on the full `(d, n)` grid.
///
/// Columns (fixed `d`) are independent and run in parallel. With the series
/// engine a seeded sample of cells, plus every negative cell and the column
/// minimum, is recomputed by dynamic programming; any mismatch is fatal.
pub fn sweep(
    kind: &DeltaKind,
    opts: &SweepOptions,
    source: &dyn ColumnSource,
) -> Result<DeltaReport> {
    if opts.d_from > opts.d_to || opts.n_from > opts.n_max {
        return invalid(format!(
            "empty sweep range d={}..={}, n={}..={}",
            opts.d_from, opts.d_to, opts.n_from, opts.n_max
        ));
    }
    if opts.d_from == 0 {
        return invalid("d must be at least 1");
    }
    if !(0.0..=1.0).contains(&opts.cross_check_rate) {
        return invalid("cross-check rate must lie in [0, 1]");
    }
    for d in opts.d_from..=opts.d_to {
        kind.check_for(d)?;
    }
    let run = || -> Result<Vec<Vec<DeltaCell>>> {
        (opts.d_from..=opts.d_to)
            .into_par_iter()
            .map(|d| column(kind, d, opts, source))
            .collect()
    };
    let columns = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    let cells: Vec<DeltaCell> = columns.into_iter().flatten().collect();
    let mut min_cell = &cells[0];
    for c in &cells[1..] {
        if c.delta < min_cell.delta {
            min_cell = c;
        }
    }
    let witness = cells
        .iter()
        .find(|c| c.delta.is_negative())
        .map(Witness::from_cell);
    Ok(DeltaReport {
        kind: *kind,
        d_range: (opts.d_from, opts.d_to),
        n_range: (opts.n_from, opts.n_max),
        min: min_cell.delta.clone(),
        min_at: (min_cell.d, min_cell.n),
        witness,
        cells,
    })
}

fn column(
    kind: &DeltaKind,
    d: u64,
    opts: &SweepOptions,
    source: &dyn ColumnSource,
) -> Result<Vec<DeltaCell>> {
    let gap = kind.gap_spec(d)?;
    let res = kind.residue_spec(d)?;
    let mut cells = Vec::with_capacity((opts.n_max - opts.n_from + 1) as usize);
    match opts.engine {
        Engine::Dp => {
            for n in opts.n_from..=opts.n_max {
                let q = BigInt::from(count_gap(&gap, n));
                let big_q = BigInt::from(count_partset(&res, n));
                cells.push(make_cell(d, n, q, big_q, Engine::Dp));
            }
        }
        Engine::Series => {
            let bound = opts.n_max as usize;
            let qs = source.gap_column(d, kind.a, bound)?;
            let bqs = source.residue_column(kind.variant, d, kind.b, bound)?;
            for n in opts.n_from..=opts.n_max {
                let q = qs.coeff(n as usize).clone();
                let big_q = bqs.coeff(n as usize).clone();
                cells.push(make_cell(d, n, q, big_q, Engine::Series));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ d.rotate_left(17));
            let min_idx = cells
                .iter()
                .enumerate()
                .min_by(|x, y| x.1.delta.cmp(&y.1.delta))
                .map(|(i, _)| i);
            for (i, c) in cells.iter_mut().enumerate() {
                let sampled = rng.gen_bool(opts.cross_check_rate);
                if sampled || Some(i) == min_idx || c.delta.is_negative() {
                    let q = BigInt::from(count_gap(&gap, c.n));
                    if q != c.q_count {
                        return Err(Error::EngineDisagreement {
                            d,
                            n: c.n,
                            series: c.q_count.clone(),
                            dp: q,
                        });
                    }
                    let big_q = BigInt::from(count_partset(&res, c.n));
                    if big_q != c.big_q_count {
                        return Err(Error::EngineDisagreement {
                            d,
                            n: c.n,
                            series: c.big_q_count.clone(),
                            dp: big_q,
                        });
                    }
                    c.dp_checked = true;
                }
            }
        }
    }
    Ok(cells)
}

fn make_cell(d: u64, n: u64, q: BigInt, big_q: BigInt, engine: Engine) -> DeltaCell {
    DeltaCell {
        d,
        n,
        delta: &q - &big_q,
        q_count: q,
        big_q_count: big_q,
        engine,
        dp_checked: false,
    }
}
