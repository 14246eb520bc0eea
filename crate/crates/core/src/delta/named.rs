//! One finite check per stated result, identified by a short id.
//!
//! Every check refuses parameter grids outside the statement's hypotheses
//! with [`Error::Hypothesis`]; a failing report therefore always means the
//! statement (or the code) is wrong on the grid, never that it was misused.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::examples::{counterexample_suite, small_weight_constants};
use crate::error::{hypothesis, invalid, Error, Result};
use crate::maps::{
    check_parity_inject, check_psi, check_qstar, check_st_inject, d_count, e_count,
    kg_inequality_check, ordered_domination, DeSets, PhiReading,
};
use crate::partitions::{count_gap, ExplicitPartSpec, GapSpec, QVariant, ResiduePartSpec};
use crate::qseries::{
    fk_difference, gf_gap, gf_q, gf_q_modulus, nonneg_check, power_bound_exponent,
};

/// Every id accepted by [`verify_named`].
pub const CHECK_IDS: &[&str] = &[
    "euler",
    "rr1",
    "rr2",
    "schur-delta",
    "alder",
    "kp-theorem",
    "kp-conjecture",
    "schur-conjecture",
    "gen-kp",
    "chain",
    "string-theorem",
    "binary-theorem",
    "yee-theorem",
    "prop31",
    "prop32",
    "prop41",
    "case3-constants",
    "examples",
    "de-duality",
    "st-inject",
    "qstar-inject",
    "qstar-lemma",
    "q-identity",
    "parity-inject",
    "parity-step",
    "psi-map",
    "involution",
    "ordered-domination",
    "fk-nonneg",
    "xia",
];

const MAX_WITNESSES: usize = 20;
const ENUM_CAP: usize = 20_000_000;

/// Optional knobs; each check reads the ones it needs and applies its own
/// defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckParams {
    pub d: Option<u64>,
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub k: Option<u64>,
    pub l: Option<u64>,
    pub m: Option<u64>,
    pub s: Option<u64>,
    pub t: Option<u64>,
    pub n_min: Option<u64>,
    pub n_max: Option<u64>,
    pub d_from: Option<u64>,
    pub d_to: Option<u64>,
    pub count: Option<usize>,
    pub reading: Option<PhiReading>,
}

/// A failing cell or instance. Numbers are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckWitness {
    pub d: Option<u64>,
    pub n: Option<u64>,
    pub lhs: String,
    pub rhs: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub passed: bool,
    /// Cells or instances examined.
    pub checked: u64,
    pub failures: u64,
    /// The first few failures.
    pub witnesses: Vec<CheckWitness>,
    pub summary: String,
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failures: u64,
    witnesses: Vec<CheckWitness>,
}

impl Tally {
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> CheckWitness) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    fn note(&mut self, ok: bool, note: impl Into<String>) {
        let note = note.into();
        self.record(ok, || CheckWitness {
            d: None,
            n: None,
            lhs: String::new(),
            rhs: String::new(),
            note,
        });
    }

    fn cell(&mut self, d: u64, n: u64, lhs: &BigInt, rhs: &BigInt, ok: bool, note: &str) {
        self.record(ok, || CheckWitness {
            d: Some(d),
            n: Some(n),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            note: note.to_string(),
        });
    }

    fn finish(self, id: &str, summary: impl Into<String>) -> CheckReport {
        CheckReport {
            id: id.to_string(),
            passed: self.failures == 0,
            checked: self.checked,
            failures: self.failures,
            witnesses: self.witnesses,
            summary: summary.into(),
        }
    }
}

#[derive(Clone, Copy)]
enum Rel {
    Eq,
    Ge,
}

impl Rel {
    fn holds(self, lhs: &BigInt, rhs: &BigInt) -> bool {
        match self {
            Rel::Eq => lhs == rhs,
            Rel::Ge => lhs >= rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Rel::Eq => "=",
            Rel::Ge => ">=",
        }
    }
}

fn gap_col(d: u64, a: u64, n_max: u64) -> Result<Vec<BigInt>> {
    Ok(gf_gap(&GapSpec::new(d, a)?, n_max as usize).into_coefficients())
}

fn q_col(variant: QVariant, d: u64, b: u64, n_max: u64) -> Result<Vec<BigInt>> {
    Ok(gf_q(variant, d, b, n_max as usize)?.into_coefficients())
}

fn need(v: Option<u64>, name: &str) -> Result<u64> {
    v.ok_or_else(|| Error::InvalidParameter(format!("this check needs --{name}")))
}

fn d_range(p: &CheckParams, from: u64, to: u64) -> Result<(u64, u64)> {
    let (lo, hi) = match p.d {
        Some(d) => (d, d),
        None => (p.d_from.unwrap_or(from), p.d_to.unwrap_or(to)),
    };
    if lo == 0 || lo > hi {
        return invalid(format!("empty or invalid d range {lo}..={hi}"));
    }
    Ok((lo, hi))
}

fn n_range(p: &CheckParams, min: u64, default_max: u64) -> Result<(u64, u64)> {
    let lo = p.n_min.unwrap_or(min);
    let hi = p.n_max.unwrap_or(default_max);
    if lo == 0 || lo > hi {
        return invalid(format!("empty or invalid n range {lo}..={hi}"));
    }
    Ok((lo, hi))
}

/// `q_d^{(a)}(n) rel Q_d^{(b,·)}(n)` on a `(d, n)` grid, with the
/// comparison side optionally on a different `d`.
fn delta_grid(
    id: &str,
    variant: QVariant,
    a: u64,
    b: u64,
    (d_lo, d_hi): (u64, u64),
    (n_lo, n_hi): (u64, u64),
    rel: Rel,
) -> Result<CheckReport> {
    let mut tally = Tally::default();
    for d in d_lo..=d_hi {
        let q = gap_col(d, a, n_hi)?;
        let big_q = q_col(variant, d, b, n_hi)?;
        for n in n_lo..=n_hi {
            let (l, r) = (&q[n as usize], &big_q[n as usize]);
            tally.cell(d, n, l, r, rel.holds(l, r), "q vs Q");
        }
    }
    let summary = format!(
        "q_d^({a})(n) {} Q_d^({b},{variant})(n) for d in {d_lo}..={d_hi}, n in {n_lo}..={n_hi}",
        rel.symbol()
    );
    Ok(tally.finish(id, summary))
}

/// Runs the check named `id`.
pub fn verify_named(id: &str, p: &CheckParams) -> Result<CheckReport> {
    match id {
        "euler" => identity(id, 1, 1, p),
        "rr1" => identity(id, 2, 1, p),
        "rr2" => identity(id, 2, 2, p),
        "schur-delta" => delta_grid(
            id,
            QVariant::Plain,
            1,
            1,
            (3, 3),
            n_range(p, 1, 300)?,
            Rel::Ge,
        ),
        "alder" => delta_grid(
            id,
            QVariant::Plain,
            1,
            1,
            d_range(p, 1, 12)?,
            n_range(p, 1, 250)?,
            Rel::Ge,
        ),
        "kp-theorem" => {
            let ds = d_range(p, 62, 70)?;
            if ds.0 < 62 {
                return hypothesis(format!("the theorem needs d >= 62 (got d from {})", ds.0));
            }
            delta_grid(id, QVariant::Dash, 2, 2, ds, n_range(p, 1, 300)?, Rel::Ge)
        }
        "kp-conjecture" => delta_grid(
            id,
            QVariant::Dash,
            2,
            2,
            d_range(p, 1, 61)?,
            n_range(p, 1, 200)?,
            Rel::Ge,
        ),
        "schur-conjecture" => delta_grid(
            id,
            QVariant::Dash,
            3,
            3,
            d_range(p, 1, 40)?,
            n_range(p, 1, 200)?,
            Rel::Ge,
        ),
        "gen-kp" => {
            let a = p.a.unwrap_or(3);
            let ds = d_range(p, a.saturating_sub(2).max(1), 40)?;
            if a == 0 || a > ds.0 + 2 {
                return hypothesis(format!("need 1 <= a <= d + 2 (got a={a}, d from {})", ds.0));
            }
            delta_grid(
                id,
                QVariant::DashDash,
                a,
                a,
                ds,
                n_range(p, 1, 200)?,
                Rel::Ge,
            )
        }
        "chain" => chain(id, p),
        "string-theorem" => string_theorem(id, p),
        "binary-theorem" => binary_theorem(id, p),
        "yee-theorem" => yee_theorem(id, p),
        "prop31" | "prop32" => modified_alder(id, p),
        "prop41" => prop41(id, p),
        "case3-constants" => {
            let mut tally = Tally::default();
            let (lo, hi) = d_range(p, 15, 15)?;
            for d in lo..=hi {
                let c = small_weight_constants(d)?;
                tally.note(
                    c.passed(),
                    format!(
                        "d={d}: values ({}, {}, {}), max {} at n={}",
                        c.dash_at_4d_plus_1,
                        c.dash_at_5d,
                        c.gap_at_d_plus_4,
                        c.dashdash_max,
                        c.dashdash_max_at
                    ),
                );
            }
            Ok(tally.finish(id, format!("small-n constants for d in {lo}..={hi}")))
        }
        "examples" => {
            let r = counterexample_suite();
            let mut tally = Tally::default();
            for row in &r.staircase {
                tally.note(
                    row.ok,
                    format!(
                        "staircase a={} k={}: q={} delta={}",
                        row.a, row.k, row.q_count, row.delta
                    ),
                );
            }
            for row in &r.families {
                tally.note(
                    row.ok,
                    format!("family {} a={}: delta={}", row.family, row.a, row.delta),
                );
            }
            Ok(tally.finish(id, "staircase a<=12, k<=8 and five families a<=8"))
        }
        "de-duality" => {
            let d = p.d.unwrap_or(15);
            let (k, l) = (p.k.unwrap_or(0) as u32, p.l.unwrap_or(4) as u32);
            let sets = DeSets::new(d, k, l)?;
            let (_, n_hi) = n_range(p, 1, 120)?;
            let mut tally = Tally::default();
            for n in 0..=n_hi {
                let (dc, ec) = (
                    BigInt::from(d_count(&sets, n)),
                    BigInt::from(e_count(&sets, n)),
                );
                tally.cell(d, n, &dc, &ec, dc == ec, "distinct side vs gap side");
            }
            Ok(tally.finish(id, format!("D = E for d={d}, k={k}, l={l}, n<={n_hi}")))
        }
        "st-inject" => st_check(id, p),
        "qstar-inject" => {
            let (d, a) = (p.d.unwrap_or(5), p.a.unwrap_or(3));
            let (_, n_hi) = n_range(p, 1, 60)?;
            let r = check_qstar(d, a, n_hi, ENUM_CAP)?;
            Ok(injection_report(id, &r))
        }
        "qstar-lemma" => qstar_lemma(id, p),
        "q-identity" => q_identity(id, p),
        "parity-inject" => {
            let d = p.d.unwrap_or(8);
            let (_, n_hi) = n_range(p, 1, 81)?;
            let r = check_parity_inject(d, n_hi, ENUM_CAP)?;
            Ok(injection_report(id, &r))
        }
        "parity-step" => parity_step(id, p),
        "psi-map" => {
            let (a, d) = (p.a.unwrap_or(3), p.d.unwrap_or(32));
            let (_, n_hi) = n_range(p, 1, 140)?;
            let r = check_psi(a, d, n_hi, ENUM_CAP)?;
            let mut report = injection_report(id, &r.injection);
            report.summary = format!("{}; admitted {:?}", report.summary, r.admitted);
            Ok(report)
        }
        "involution" => {
            let (a, d) = (p.a.unwrap_or(3), p.d.unwrap_or(16));
            let (_, n_hi) = n_range(p, 1, 120)?;
            let r = kg_inequality_check(a, d, n_hi, p.reading.unwrap_or_default(), ENUM_CAP)?;
            let mut tally = Tally::default();
            if let Some(n) = r.series_violation {
                tally.note(false, format!("series K(n) >= G(n) fails first at n={n}"));
            }
            for v in &r.violations {
                tally.note(false, v.clone());
            }
            tally.checked = r.signed_total as u64;
            Ok(tally.finish(
                id,
                format!(
                    "a={a}, d={d}, n<={n_hi}, {:?} reading: {} signed, {} unsigned, strata {:?}",
                    r.reading, r.signed_total, r.unsigned_total, r.stratum_sizes
                ),
            ))
        }
        "ordered-domination" => domination(id, p),
        "fk-nonneg" => fk_nonneg(id, p),
        "xia" => xia(id, p),
        other => invalid(format!(
            "unknown check {other:?}; known: {}",
            CHECK_IDS.join(", ")
        )),
    }
}

fn identity(id: &str, d: u64, a: u64, p: &CheckParams) -> Result<CheckReport> {
    delta_grid(
        id,
        QVariant::Plain,
        a,
        a,
        (d, d),
        n_range(p, 1, 300)?,
        Rel::Eq,
    )
}

fn injection_report(id: &str, r: &crate::maps::InjectionReport) -> CheckReport {
    let mut tally = Tally::default();
    for c in &r.collisions {
        tally.note(false, format!("collision: {c}"));
    }
    for v in &r.violations {
        tally.note(false, v.clone());
    }
    tally.checked = r.domain_size as u64;
    tally.finish(
        id,
        format!(
            "{} ({}): domain {}, branches {:?}",
            r.map, r.params, r.domain_size, r.branch_counts
        ),
    )
}

fn chain(id: &str, p: &CheckParams) -> Result<CheckReport> {
    let a = p.a.unwrap_or(3);
    let ds = d_range(p, a.saturating_sub(2).max(1), 30)?;
    if a == 0 || a > ds.0 + 2 {
        return hypothesis(format!("need 1 <= a <= d + 2 (got a={a}, d from {})", ds.0));
    }
    let (n_lo, n_hi) = n_range(p, 1, 150)?;
    let mut tally = Tally::default();
    for d in ds.0..=ds.1 {
        let plain = q_col(QVariant::Plain, d, a, n_hi)?;
        let dash = q_col(QVariant::Dash, d, a, n_hi)?;
        let dd = q_col(QVariant::DashDash, d, a, n_hi)?;
        for n in n_lo..=n_hi {
            let i = n as usize;
            // Same q on every side, so the chain reduces to Q'' <= Q' <= Q.
            tally.cell(d, n, &dd[i], &dash[i], dd[i] <= dash[i], "Q'' <= Q'");
            tally.cell(d, n, &dash[i], &plain[i], dash[i] <= plain[i], "Q' <= Q");
        }
    }
    Ok(tally.finish(
        id,
        format!("chain for a={a}, d in {}..={}, n<={n_hi}", ds.0, ds.1),
    ))
}

fn string_theorem(id: &str, p: &CheckParams) -> Result<CheckReport> {
    let a = need(p.a, "a")?;
    if !(3..=1000).contains(&a) {
        return hypothesis(format!("need a >= 3 (got a={a})"));
    }
    let ds = d_range(p, 31 * a - 3, 31 * a - 3)?;
    for d in ds.0..=ds.1 {
        if d < 31 * a - 3 || (d + 3) % a != 0 {
            return hypothesis(format!(
                "need d >= 31a - 3 = {} and a | d + 3 (got d={d})",
                31 * a - 3
            ));
        }
    }
    delta_grid(
        id,
        QVariant::DashDash,
        a,
        a,
        ds,
        n_range(p, 1, 300)?,
        Rel::Ge,
    )
}

fn binary_theorem(id: &str, p: &CheckParams) -> Result<CheckReport> {
    let a = need(p.a, "a")?;
    let (s, t) = (need(p.s, "s")?, need(p.t, "t")?);
    if s >= 63 || s < t + 4 {
        return hypothesis(format!("need s >= t + 4 (got s={s}, t={t})"));
    }
    if (1u64 << t) < a {
        return hypothesis(format!("need t >= log2(a) (got a={a}, t={t})"));
    }
    let d = (1u64 << s) - (1u64 << t);
    if a == 0 || a > d + 2 {
        return hypothesis(format!("need 1 <= a <= d + 2 (got a={a}, d={d})"));
    }
    let (n_lo, n_hi) = n_range(p, 1, 60)?;
    let step = 1u64 << t;
    let top = step * n_hi;
    let q = gap_col(d, a, top)?;
    let big_q = q_col(QVariant::DashDash, d, a, top)?;
    let mut tally = Tally::default();
    for n in n_lo..=n_hi {
        let i = (step * n) as usize;
        tally.cell(d, step * n, &q[i], &big_q[i], q[i] >= big_q[i], "at 2^t n");
    }
    Ok(tally.finish(
        id,
        format!("d = 2^{s} - 2^{t} = {d}, a={a}, weights 2^{t}·n for n in {n_lo}..={n_hi}"),
    ))
}

fn yee_theorem(id: &str, p: &CheckParams) -> Result<CheckReport> {
    let a = need(p.a, "a")?;
    let m = need(p.m, "m")?;
    if !(3..=40).contains(&a) {
        return hypothesis(format!("need 3 <= a <= 40 (got a={a})"));
    }
    if m < 31 {
        return hypothesis(format!("need m >= 31 (got m={m})"));
    }
    let h = 1u64 << (a - 1);
    let d = h * m;
    let r = power_bound_exponent(d, a)? as u64;
    let e = 1u64 << (r - a + 1);
    if m == e - 1 {
        return hypothesis(format!("m = 2^(r-a+1) - 1 = {m} is excluded"));
    }
    let n0 = 2 * m + e + 1;
    let (n_lo, n_hi) = n_range(p, n0, n0 + 20)?;
    if n_lo < n0 {
        return hypothesis(format!("need n >= 2m + 2^(r-a+1) + 1 = {n0} (got {n_lo})"));
    }
    let top = h * n_hi;
    let q = gap_col(d, a, top)?;
    let big_q = q_col(QVariant::DashDash, d, a, top)?;
    let mut tally = Tally::default();
    for n in n_lo..=n_hi {
        let i = (h * n) as usize;
        tally.cell(d, h * n, &q[i], &big_q[i], q[i] >= big_q[i], "at 2^(a-1) n");
    }
    Ok(tally.finish(
        id,
        format!(
            "d = 2^{}·{m} = {d}, a={a}, multipliers {n_lo}..={n_hi}",
            a - 1
        ),
    ))
}

fn modified_alder(id: &str, p: &CheckParams) -> Result<CheckReport> {
    let (variant, shift) = if id == "prop31" {
        (QVariant::Dash, 2)
    } else {
        (QVariant::DashDash, 3)
    };
    let ds = d_range(p, 15, 15)?;
    for d in ds.0..=ds.1 {
        if d != 15 && d < 31 {
            return hypothesis(format!("need d = 15 or d >= 31 (got d={d})"));
        }
    }
    let (n_lo, n_hi) = n_range(p, 1, 120)?;
    let mut tally = Tally::default();
    for d in ds.0..=ds.1 {
        let q = gap_col(d, 1, n_hi)?;
        let big_q = q_col(variant, d - shift, 1, n_hi)?;
        for n in n_lo..=n_hi {
            let i = n as usize;
            tally.cell(
                d,
                n,
                &q[i],
                &big_q[i],
                q[i] >= big_q[i],
                "q_d^(1) vs shifted Q",
            );
        }
    }
    Ok(tally.finish(
        id,
        format!(
            "q_d^(1)(n) >= Q_(d-{shift})^(1,{variant})(n) for d in {}..={}, n in {n_lo}..={n_hi}",
            ds.0, ds.1
        ),
    ))
}

fn prop41(id: &str, p: &CheckParams) -> Result<CheckReport> {
    let ds = d_range(p, 31, 31)?;
    if ds.0 < 31 {
        return hypothesis(format!("need d >= 31 (got d from {})", ds.0));
    }
    let mut tally = Tally::default();
    let mut n_desc = String::new();
    for d in ds.0..=ds.1 {
        let (n_lo, n_hi) = n_range(p, d + 6, d + 6 + 200)?;
        if n_lo < d + 6 {
            return hypothesis(format!("need n >= d + 6 = {} (got {n_lo})", d + 6));
        }
        let q = gap_col(3 * d, 3, n_hi)?;
        let big_q = q_col(QVariant::Dash, 3 * d, 3, n_hi)?;
        for n in n_lo..=n_hi {
            let i = n as usize;
            tally.cell(
                3 * d,
                n,
                &q[i],
                &big_q[i],
                q[i] >= big_q[i],
                "gap 3d, a=b=3",
            );
        }
        n_desc = format!("n in {n_lo}..={n_hi}");
    }
    Ok(tally.finish(
        id,
        format!(
            "difference at 3d, a=b=3, dash, for d in {}..={}, {n_desc}",
            ds.0, ds.1
        ),
    ))
}

fn st_check(id: &str, p: &CheckParams) -> Result<CheckReport> {
    let (a, t, s) = (p.a.unwrap_or(1), p.t.unwrap_or(0), p.s.unwrap_or(4));
    let d = p.d.unwrap_or(15);
    let b = p.b.unwrap_or(d);
    if s >= 63 || s < t + 4 || (1u64 << t) < a {
        return hypothesis(format!(
            "need 2^t >= a and s >= t + 4 (got a={a}, t={t}, s={s})"
        ));
    }
    if d < (1u64 << s) - (1u64 << t) || d % (1u64 << t) != 0 {
        return hypothesis(format!("need d >= 2^s - 2^t and 2^t | d (got d={d})"));
    }
    if b + 3 < d || b > d || a == 0 || a >= b + 3 {
        return hypothesis(format!(
            "need d - 3 <= b <= d and 1 <= a < b + 3 (got b={b})"
        ));
    }
    let source = ResiduePartSpec::new(b + 3, a, [a, b + 3 - a])?;
    let target = ExplicitPartSpec::binary_ladder(t as u32, s as u32, d)?;
    let (_, n_hi) = n_range(p, 1, 80)?;
    let r = check_st_inject(&source, &target, 1u64 << t, n_hi, ENUM_CAP)?;
    Ok(injection_report(id, &r))
}

fn qstar_lemma(id: &str, p: &CheckParams) -> Result<CheckReport> {
    let (d, a) = (p.d.unwrap_or(5), p.a.unwrap_or(3));
    if d == 0 || a == 0 {
        return invalid("d and a must be positive");
    }
    let (n_lo, n_hi) = n_range(p, d + 2 * a, d + 2 * a + 100)?;
    if n_lo < d + 2 * a {
        return hypothesis(format!("need n >= d + 2a = {} (got {n_lo})", d + 2 * a));
    }
    let q = gap_col(d, a, n_hi)?;
    let small = GapSpec::new(d.div_ceil(a), 1)?;
    let mut tally = Tally::default();
    for n in n_lo..=n_hi {
        let rhs = BigInt::from(count_gap(&small, n.div_ceil(a)));
        let lhs = &q[n as usize];
        tally.cell(
            d,
            n,
            lhs,
            &rhs,
            *lhs >= rhs,
            "q_d^(a)(n) vs q_ceil(d/a)^(1)(ceil(n/a))",
        );
    }
    Ok(tally.finish(id, format!("d={d}, a={a}, n in {n_lo}..={n_hi}")))
}

fn q_identity(id: &str, p: &CheckParams) -> Result<CheckReport> {
    let (d, a) = (need(p.d, "d")?, need(p.a, "a")?);
    if a == 0 || (d + 3) % a != 0 {
        return hypothesis(format!("need a | d + 3 (got a={a}, d={d})"));
    }
    if a > d + 2 {
        return invalid(format!("need a <= d + 2 (got a={a}, d={d})"));
    }
    let modulus = (d + 3) / a;
    if modulus < 2 {
        return invalid("the reduced modulus must be at least 2");
    }
    let (n_lo, n_hi) = n_range(p, 1, 60)?;
    let mut tally = Tally::default();
    for variant in [QVariant::Dash, QVariant::DashDash] {
        let big = q_col(variant, d, a, a * n_hi)?;
        let reduced = gf_q_modulus(variant, modulus, 1, n_hi as usize)?.into_coefficients();
        for n in n_lo..=n_hi {
            let (l, r) = (&big[(a * n) as usize], &reduced[n as usize]);
            tally.cell(d, a * n, l, r, l == r, variant.as_str());
        }
    }
    Ok(tally.finish(
        id,
        format!("Q_{d}^({a},·)(an) = reduced modulus {modulus}, n in {n_lo}..={n_hi}"),
    ))
}

fn parity_step(id: &str, p: &CheckParams) -> Result<CheckReport> {
    let d = p.d.unwrap_or(8);
    if d < 4 || d % 2 != 0 {
        return hypothesis(format!("need d even and at least 4 (got d={d})"));
    }
    let (n_lo, n_hi) = n_range(p, 1, 150)?;
    let src = q_col(QVariant::Dash, d, 2, 2 * n_hi)?;
    let dst = q_col(QVariant::Dash, d - 1, 2, 2 * n_hi)?;
    let mut tally = Tally::default();
    for n in n_lo..=n_hi {
        let (l, r) = (&src[(2 * n - 1) as usize], &dst[(2 * n) as usize]);
        tally.cell(
            d,
            2 * n - 1,
            l,
            r,
            l <= r,
            "Q_d^(2,-)(2n-1) <= Q_(d-1)^(2,-)(2n)",
        );
    }
    Ok(tally.finish(id, format!("d={d}, n' in {n_lo}..={n_hi}")))
}

fn domination(id: &str, p: &CheckParams) -> Result<CheckReport> {
    let (t, s) = (p.t.unwrap_or(0), p.s.unwrap_or(4));
    let d = p.d.unwrap_or(31);
    let count = p.count.unwrap_or(200);
    if s >= 63 || s < t + 4 || d < (1u64 << s) - (1u64 << t) {
        return hypothesis(format!(
            "need s >= t + 4 and d >= 2^s - 2^t (got t={t}, s={s}, d={d})"
        ));
    }
    let target = ExplicitPartSpec::binary_ladder(t as u32, s as u32, d)?;
    let (report, label) = match p.b {
        Some(b) => {
            let a = p.a.unwrap_or(1);
            if (1u64 << t) < a || d % (1u64 << t) != 0 || b + 3 < d || b > d || a == 0 || a >= b + 3
            {
                return hypothesis(format!(
                    "need 2^t >= a, 2^t | d, d - 3 <= b <= d (got a={a}, t={t}, d={d}, b={b})"
                ));
            }
            let source = ResiduePartSpec::new(b + 3, a, [a, b + 3 - a])?;
            (
                ordered_domination(&source, &target, count)?,
                format!("±{a} mod {} minus {{{a}, {}}}", b + 3, b + 3 - a),
            )
        }
        None => {
            let source = ResiduePartSpec::new(d + 1, 1, [d])?;
            (
                ordered_domination(&source, &target, count)?,
                format!("±1 mod {} minus {{{d}}}", d + 1),
            )
        }
    };
    let mut tally = Tally {
        checked: count as u64,
        ..Tally::default()
    };
    if let Some((i, x, y)) = report.first_violation {
        tally.failures = 1;
        tally.witnesses.push(CheckWitness {
            d: Some(d),
            n: Some(i as u64),
            lhs: x.to_string(),
            rhs: y.to_string(),
            note: "i-th source element below i-th ladder element".into(),
        });
    }
    Ok(tally.finish(
        id,
        format!("{label} vs ladder t={t}, s={s}, d={d}, first {count} elements"),
    ))
}

fn fk_nonneg(id: &str, p: &CheckParams) -> Result<CheckReport> {
    let (a, m) = (need(p.a, "a")?, need(p.m, "m")?);
    if a == 0 || a > 40 || m == 0 {
        return invalid("need a in 1..=40 and m >= 1");
    }
    let d = (1u64 << (a - 1)) * m;
    let r = power_bound_exponent(d, a)? as u64;
    if r + 1 < a || m == (1u64 << (r + 1 - a)) - 1 {
        return hypothesis(format!("m = 2^(r-a+1) - 1 is excluded (got m={m})"));
    }
    let (_, n_hi) = n_range(p, 1, 200)?;
    let series = fk_difference(d, a, n_hi as usize)?;
    let mut tally = Tally {
        checked: n_hi + 1,
        ..Tally::default()
    };
    if let Some(n) = nonneg_check(&series) {
        tally.failures = 1;
        tally.witnesses.push(CheckWitness {
            d: Some(d),
            n: Some(n as u64),
            lhs: series.coeff(n).to_string(),
            rhs: "0".into(),
            note: "negative coefficient".into(),
        });
    }
    Ok(tally.finish(
        id,
        format!("(1+q^2^r)f - k for a={a}, d={d}, degree <= {n_hi}"),
    ))
}

fn xia(id: &str, p: &CheckParams) -> Result<CheckReport> {
    let (d, a) = (p.d.unwrap_or(4), p.a.unwrap_or(3));
    if a == 0 || 2 * a >= d + 3 || a.gcd(&(d + 3)) != 1 {
        return hypothesis(format!(
            "need 1 <= a < (d+3)/2 and gcd(a, d+3) = 1 (got a={a}, d={d})"
        ));
    }
    let (n_lo, n_hi) = n_range(p, 1, 100)?;
    let one = q_col(QVariant::Plain, d, 1, n_hi)?;
    let other = q_col(QVariant::Plain, d, a, n_hi)?;
    let mut tally = Tally::default();
    for n in n_lo..=n_hi {
        let i = n as usize;
        tally.cell(
            d,
            n,
            &one[i],
            &other[i],
            one[i] >= other[i],
            "Q_d^(1) vs Q_d^(a)",
        );
    }
    Ok(tally.finish(id, format!("d={d}, a={a}, n in {n_lo}..={n_hi}")))
}
