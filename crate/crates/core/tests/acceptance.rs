//! Acceptance suite. Each criterion prints one PASS/FAIL line followed by
//! indented detail lines; the process exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use partineq_core::asymptotics::{
    log_estimate_big_q, log_estimate_q, log_relative_error, meinardus_params, solve_alpha, to_f64,
    Ctx,
};
use partineq_core::delta::{
    counterexample_suite, delta, family_instance, sweep, DeltaKind, DeltaReport, SeriesEngine,
    SweepOptions,
};
use partineq_core::maps::{
    check_parity_inject, check_psi, check_qstar, check_st_inject, enumerate_e, kg_inequality_check,
    DeSets, InjectionReport, InvolutionSetup, PhiReading,
};
use partineq_core::partitions::{count_mixed, count_partset_distinct, enumerate_partset_distinct};
use partineq_core::qseries::{fk_difference, gf_fkg, gf_gap, gf_q, k_rewritten, FkgSeries};
use partineq_core::{
    count_gap, count_partset, enumerate_gap, enumerate_partset, Error, ExplicitPartSpec, GapSpec,
    QVariant, ResiduePartSpec,
};

/// Largest object count for which an enumeration oracle is run.
const ENUMERATION_LIMIT: usize = 1_000_000;
const MAP_CAP: usize = 20_000_000;
/// Share of sweep cells recomputed by the dynamic-programming engine.
const CROSS_CHECK_RATE: f64 = 0.05;
const DIGITS: usize = 60;
const ALPHA_TOLERANCE: &str = "1e-40";
const ALPHA_RESIDUAL_MAX: &str = "1e-30";
/// `A` must exceed `π²/(3d+9)` by more than this.
const A_BOUND_MARGIN: &str = "1e-40";
const EULER_CONSTANT_TOLERANCE: &str = "1e-25";
const LOG_ERROR_MAX: f64 = 0.05;

struct Outcome {
    passed: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            passed: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, line: impl Into<String>) {
        self.passed &= ok;
        let tag = if ok { "ok  " } else { "FAIL" };
        self.details.push(format!("{tag} {}", line.into()));
    }

    fn info(&mut self, line: impl Into<String>) {
        self.details.push(format!("     {}", line.into()));
    }
}

type Criterion = fn(&mut Outcome) -> partineq_core::Result<()>;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 12] = [
        ("identity suite", identities),
        ("Alder spot grid", alder),
        ("theorem slice d = 62..70", theorem_slice),
        ("generalized conjecture slice", generalized_slice),
        ("counterexample exactness", counterexamples),
        ("small-n constants", constants),
        ("engine equivalence", engine_equivalence),
        ("D = E duality", duality),
        ("injection suites", injections),
        ("involution suite", involutions),
        ("series nonnegativity", nonnegativity),
        ("asymptotics", asymptotics),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut out = Outcome::new();
        if let Err(e) = run(&mut out) {
            out.check(false, format!("error: {e}"));
        }
        let status = if out.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status}  {name} ({:.1}s)",
            i + 1,
            start.elapsed().as_secs_f64()
        );
        for line in &out.details {
            println!("    {line}");
        }
        if !out.passed {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}

fn run_sweep(
    variant: QVariant,
    a: u64,
    d: (u64, u64),
    n_max: u64,
) -> partineq_core::Result<DeltaReport> {
    let mut opts = SweepOptions::new(d.0, d.1, n_max);
    opts.cross_check_rate = CROSS_CHECK_RATE;
    sweep(&DeltaKind::same(variant, a)?, &opts, &SeriesEngine)
}

fn describe(r: &DeltaReport) -> String {
    let checked = r.cells.iter().filter(|c| c.dp_checked).count();
    format!(
        "{} cells ({} confirmed by DP), min {} at (d, n) = {:?}",
        r.cells.len(),
        checked,
        r.min,
        r.min_at
    )
}

fn identities(out: &mut Outcome) -> partineq_core::Result<()> {
    for (d, a) in [(1, 1), (2, 1), (2, 2)] {
        let r = run_sweep(QVariant::Plain, a, (d, d), 300)?;
        let zero = r.cells.iter().all(|c| c.delta.is_zero());
        out.check(
            zero,
            format!("d={d} a={a} n<=300: every cell zero; {}", describe(&r)),
        );
    }
    Ok(())
}

fn alder(out: &mut Outcome) -> partineq_core::Result<()> {
    let r = run_sweep(QVariant::Plain, 1, (1, 12), 250)?;
    out.check(
        !r.min.is_negative(),
        format!("a=1 d<=12 n<=250: {}", describe(&r)),
    );
    Ok(())
}

fn theorem_slice(out: &mut Outcome) -> partineq_core::Result<()> {
    let r = run_sweep(QVariant::Dash, 2, (62, 70), 300)?;
    out.check(
        !r.min.is_negative(),
        format!("dash a=b=2 n<=300: {}", describe(&r)),
    );
    Ok(())
}

fn generalized_slice(out: &mut Outcome) -> partineq_core::Result<()> {
    for a in 3..=5u64 {
        let d_from = a.saturating_sub(2).max(1);
        let r = run_sweep(QVariant::DashDash, a, (d_from, 40), 200)?;
        out.check(
            !r.min.is_negative(),
            format!("dashdash a=b={a} d={d_from}..=40 n<=200: {}", describe(&r)),
        );
    }
    Ok(())
}

fn counterexamples(out: &mut Outcome) -> partineq_core::Result<()> {
    let gap = count_gap(&GapSpec::new(2, 4)?, 9);
    let dl = delta(&DeltaKind::same(QVariant::Plain, 4)?, 2, 9)?;
    out.check(
        gap == BigUint::from(1u8) && dl.is_negative(),
        format!("a=4 d=2 n=9: gap count {gap}, difference {dl}"),
    );
    for family in 1..=5u8 {
        let (_, _, _, min_a) = family_instance(family, 1).expect("known family");
        let mut values = Vec::new();
        for a in min_a..=8 {
            let (d, b, n, _) = family_instance(family, a).expect("known family");
            values.push((a, delta(&DeltaKind::same(QVariant::Dash, b)?, d, n)?));
        }
        let all = values.iter().all(|(_, v)| *v == BigInt::from(-1));
        let shown: Vec<String> = values.iter().map(|(a, v)| format!("a={a}:{v}")).collect();
        out.check(all, format!("family {family}: {}", shown.join(" ")));
    }
    let suite = counterexample_suite();
    out.check(
        suite.passed(),
        format!(
            "library suite: {} staircase rows, {} family rows",
            suite.staircase.len(),
            suite.families.len()
        ),
    );
    Ok(())
}

fn constants(out: &mut Outcome) -> partineq_core::Result<()> {
    for d in [15u64, 31, 40] {
        let dash = ResiduePartSpec::q(QVariant::Dash, d - 2, 1)?;
        let dashdash = ResiduePartSpec::q(QVariant::DashDash, d - 3, 1)?;
        let at_4d1 = count_partset(&dash, 4 * d + 1);
        let at_5d = count_partset(&dash, 5 * d);
        let gap = count_gap(&GapSpec::new(d, 1)?, d + 4);
        let max = (1..=5 * d)
            .map(|n| count_partset(&dashdash, n))
            .max()
            .unwrap_or_default();
        let ok = at_4d1 == BigUint::from(10u8)
            && at_5d == BigUint::from(20u8)
            && gap == BigUint::from(3u8)
            && max <= BigUint::from(3u8);
        out.check(
            ok,
            format!("d={d}: {at_4d1} (want 10), {at_5d} (want 20), {gap} (want 3), max {max} (want <= 3)"),
        );
    }
    Ok(())
}

/// `start, start + step, ...` up to `n`.
fn progression(start: u64, step: u64, n: u64) -> Vec<u64> {
    (0..)
        .map(|k| start + k * step)
        .take_while(|&x| x <= n)
        .collect()
}

/// Series coefficients against a count for each `n`, plus an enumeration
/// count where the object count is small enough.
struct Comparison {
    mismatches: Vec<String>,
    enumerated: usize,
}

impl Comparison {
    fn new() -> Self {
        Self {
            mismatches: Vec::new(),
            enumerated: 0,
        }
    }

    fn compare(&mut self, what: &str, n: u64, series: &BigInt, other: &BigInt) {
        if series != other && self.mismatches.len() < 5 {
            self.mismatches
                .push(format!("{what} n={n}: series {series}, oracle {other}"));
        }
    }

    fn enumeration(&mut self, what: &str, n: u64, series: &BigInt, count: Option<usize>) {
        if let Some(c) = count {
            self.enumerated += 1;
            self.compare(what, n, series, &BigInt::from(c));
        }
    }

    fn report(self, out: &mut Outcome, label: String) {
        let ok = self.mismatches.is_empty();
        out.check(
            ok,
            format!("{label}: enumerated at {} values of n", self.enumerated),
        );
        for m in self.mismatches {
            out.info(m);
        }
    }
}

fn small_enough(count: &BigInt) -> bool {
    count <= &BigInt::from(ENUMERATION_LIMIT)
}

/// An enumeration length, or `None` once the cap is hit.
fn bounded<T>(r: partineq_core::Result<Vec<T>>) -> partineq_core::Result<Option<Vec<T>>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

const N7: u64 = 150;

fn engine_equivalence(out: &mut Outcome) -> partineq_core::Result<()> {
    let bound = N7 as usize;
    for (d, a) in [(1, 1), (2, 1), (2, 2), (3, 2), (5, 3), (8, 1), (12, 4)] {
        let spec = GapSpec::new(d, a)?;
        let series = gf_gap(&spec, bound);
        let mut cmp = Comparison::new();
        for n in 0..=N7 {
            let s = series.coeff(n as usize);
            cmp.compare("dp", n, s, &BigInt::from(count_gap(&spec, n)));
            if small_enough(s) {
                cmp.enumeration(
                    "enum",
                    n,
                    s,
                    Some(enumerate_gap(&spec, n, ENUMERATION_LIMIT)?.len()),
                );
            }
        }
        cmp.report(out, format!("gap d={d} a={a}"));
    }
    let residue = [
        (QVariant::Plain, 1, 1),
        (QVariant::Plain, 2, 2),
        (QVariant::Plain, 3, 3),
        (QVariant::Dash, 4, 2),
        (QVariant::Dash, 7, 5),
        (QVariant::Dash, 9, 6),
        (QVariant::DashDash, 5, 1),
        (QVariant::DashDash, 10, 4),
        (QVariant::DashDash, 62, 2),
    ];
    for (variant, d, b) in residue {
        let spec = ResiduePartSpec::q(variant, d, b)?;
        let series = gf_q(variant, d, b, bound)?;
        let mut cmp = Comparison::new();
        for n in 0..=N7 {
            let s = series.coeff(n as usize);
            cmp.compare("dp", n, s, &BigInt::from(count_partset(&spec, n)));
            if small_enough(s) {
                cmp.enumeration(
                    "enum",
                    n,
                    s,
                    Some(enumerate_partset(&spec, n, ENUMERATION_LIMIT)?.len()),
                );
            }
        }
        cmp.report(out, format!("residue {} d={d} b={b}", variant.as_str()));
    }
    for (a, d) in [(3u64, 16u64), (1, 31), (2, 10), (3, 40)] {
        product_family(out, a, d)?;
    }
    Ok(())
}

/// Largest `r` with `2^r - 2^{a-1} <= d`.
fn ladder_top(d: u64, a: u64) -> u32 {
    let h = 1u64 << (a - 1);
    (0..63)
        .rev()
        .find(|&r| (1u64 << r) <= d + h)
        .expect("d >= 1")
}

struct FkgOracle {
    d: u64,
    h: u64,
    a: u32,
    r: u32,
}

impl FkgOracle {
    fn new(d: u64, a: u64) -> Self {
        Self {
            d,
            h: 1 << (a - 1),
            a: a as u32,
            r: ladder_top(d, a),
        }
    }

    /// Distinct parts in the classes `2^i (mod d)`, `a-1 <= i < r`.
    fn f_parts(&self, n: u64) -> Vec<u64> {
        (self.a - 1..self.r)
            .flat_map(|i| progression(1 << i, self.d, n))
            .collect()
    }

    fn f(&self, n: u64) -> BigInt {
        count_mixed(&[], &self.f_parts(n), &[], n)
    }

    /// The leading quotient `(1 - q^{d+h}) / (1 - q^h)` as a free part `h`
    /// and a signed part `d + h`.
    fn k(&self, n: u64) -> BigInt {
        let distinct: Vec<u64> = (self.a - 1..self.r)
            .flat_map(|i| progression(self.d + (1 << i), self.d, n))
            .collect();
        let signed: Vec<u64> = [self.d + self.h].into_iter().filter(|&p| p <= n).collect();
        count_mixed(&[self.h], &distinct, &signed, n)
    }

    /// The telescoped form with a signed class `2^r (mod 4d)` from `4d + 2^r`.
    fn k_signed(&self, n: u64) -> BigInt {
        let (d, h) = (self.d, self.h);
        let mut free = progression(h, 2 * d, n);
        free.extend(progression(3 * d + h, 2 * d, n));
        for i in self.a..self.r.saturating_sub(1) {
            free.extend(progression(d + (1 << i), 2 * d, n));
        }
        let distinct = progression(d + (1 << (self.r - 1)), 2 * d, n);
        let signed = progression(4 * d + (1 << self.r), 4 * d, n);
        count_mixed(&free, &distinct, &signed, n)
    }

    fn g(&self, n: u64) -> BigInt {
        let (d, h) = (self.d, self.h);
        let mut free = progression(h, 2 * d, n);
        for i in self.a..self.r.saturating_sub(1) {
            free.extend(progression(d + (1 << i), 2 * d, n));
        }
        let distinct = progression(d + (1 << (self.r - 1)), 2 * d, n);
        count_mixed(&free, &distinct, &[], n)
    }
}

fn product_family(out: &mut Outcome, a: u64, d: u64) -> partineq_core::Result<()> {
    let bound = N7 as usize;
    let oracle = FkgOracle::new(d, a);
    let setup = InvolutionSetup::new(a, d, N7, PhiReading::Literal)?;
    let f = gf_fkg(FkgSeries::F, d, a, bound)?;
    let k = gf_fkg(FkgSeries::K, d, a, bound)?;
    let g = gf_fkg(FkgSeries::G, d, a, bound)?;
    let k_alt = k_rewritten(d, a, bound)?;
    let f_set =
        ExplicitPartSpec::residue_union(d, (a as u32 - 1..oracle.r).map(|i| 1u64 << i), [])?;

    let mut cmp_f = Comparison::new();
    let mut cmp_k = Comparison::new();
    let mut cmp_g = Comparison::new();
    let (mut s_open, mut t_open) = (true, true);
    for n in 0..=N7 {
        let i = n as usize;
        cmp_f.compare("dp", n, f.coeff(i), &oracle.f(n));
        cmp_f.compare(
            "part set",
            n,
            f.coeff(i),
            &BigInt::from(count_partset_distinct(&f_set, n)),
        );
        if small_enough(f.coeff(i)) {
            let e = enumerate_partset_distinct(&f_set, n, ENUMERATION_LIMIT)?;
            cmp_f.enumeration("enum", n, f.coeff(i), Some(e.len()));
        }

        cmp_k.compare("dp", n, k.coeff(i), &oracle.k(n));
        cmp_k.compare("signed dp", n, k.coeff(i), &oracle.k_signed(n));
        cmp_k.compare("rewritten", n, k.coeff(i), k_alt.coeff(i));
        if s_open {
            match bounded(setup.enumerate_s(n, ENUMERATION_LIMIT))? {
                Some(s) => {
                    let net: i64 = s.iter().map(|p| i64::from(p.sign)).sum();
                    cmp_k.enumerated += 1;
                    cmp_k.compare("signed enum", n, k.coeff(i), &BigInt::from(net));
                }
                None => s_open = false,
            }
        }

        cmp_g.compare("dp", n, g.coeff(i), &oracle.g(n));
        if t_open {
            match bounded(setup.enumerate_t(n, ENUMERATION_LIMIT))? {
                Some(t) => cmp_g.enumeration("enum", n, g.coeff(i), Some(t.len())),
                None => t_open = false,
            }
        }
    }
    cmp_f.report(out, format!("f a={a} d={d}"));
    cmp_k.report(out, format!("k a={a} d={d}"));
    cmp_g.report(out, format!("g a={a} d={d}"));
    Ok(())
}

fn duality(out: &mut Outcome) -> partineq_core::Result<()> {
    for (d, k, l) in [(15u64, 0u32, 4u32), (12, 2, 3), (14, 1, 3)] {
        let sets = DeSets::new(d, k, l)?;
        let mut bad = Vec::new();
        let mut total = BigUint::zero();
        for n in 0..=120 {
            let lhs = count_partset_distinct(sets.distinct_side(), n);
            let rhs = enumerate_e(&sets, n, MAP_CAP)?.len();
            if lhs != BigUint::from(rhs) {
                bad.push(format!("n={n}: {lhs} vs {rhs}"));
            }
            total += lhs;
        }
        out.check(
            bad.is_empty(),
            format!("(d,k,l)=({d},{k},{l}) n<=120: {total} partitions on each side"),
        );
        for b in bad.into_iter().take(5) {
            out.info(b);
        }
    }
    Ok(())
}

fn injection_line(out: &mut Outcome, r: &InjectionReport) {
    out.check(
        r.passed(),
        format!(
            "{} {}: domain {}, {} collisions, {} violations, branches {:?}",
            r.map,
            r.params,
            r.domain_size,
            r.collisions.len(),
            r.violations.len(),
            r.branch_counts
        ),
    );
    for v in r.collisions.iter().chain(&r.violations).take(5) {
        out.info(v.clone());
    }
}

fn injections(out: &mut Outcome) -> partineq_core::Result<()> {
    let source = ResiduePartSpec::new(18, 1, [1, 17])?;
    let target = ExplicitPartSpec::binary_ladder(0, 4, 15)?;
    injection_line(out, &check_st_inject(&source, &target, 1, 80, MAP_CAP)?);
    let source = ResiduePartSpec::q(QVariant::Dash, 8, 2)?;
    let target = ResiduePartSpec::q(QVariant::Dash, 7, 2)?;
    injection_line(out, &check_st_inject(&source, &target, 2, 80, MAP_CAP)?);
    for (d, a) in [(5, 3), (4, 2), (7, 1)] {
        injection_line(out, &check_qstar(d, a, 60, MAP_CAP)?);
    }
    for d in [8, 10] {
        injection_line(out, &check_parity_inject(d, 81, MAP_CAP)?);
    }
    let psi = check_psi(3, 32, 140, MAP_CAP)?;
    injection_line(out, &psi.injection);
    out.info(format!(
        "psi instances by admitting bound: {:?}",
        psi.admitted
    ));
    Ok(())
}

fn involutions(out: &mut Outcome) -> partineq_core::Result<()> {
    for (a, d) in [(3, 16), (1, 31)] {
        let r = kg_inequality_check(a, d, 120, PhiReading::Literal, MAP_CAP)?;
        out.check(
            r.passed(),
            format!(
                "a={a} d={d} n<=120: |S| {} |T| {}, strata {:?}, boundary {}, series violation {:?}, {} violations",
                r.signed_total,
                r.unsigned_total,
                r.stratum_sizes,
                r.boundary,
                r.series_violation,
                r.violations.len()
            ),
        );
        for v in r.violations.iter().take(5) {
            out.info(v.clone());
        }
    }
    Ok(())
}

fn nonnegativity(out: &mut Outcome) -> partineq_core::Result<()> {
    const DEGREE: u64 = 200;
    for a in [3u64, 4] {
        for m in [8u64, 9, 31] {
            let d = (1 << (a - 1)) * m;
            let r = ladder_top(d, a);
            if m == (1 << (r + 1 - a as u32)) - 1 {
                out.info(format!(
                    "a={a} m={m} (d={d}, r={r}): excluded, m = 2^(r-a+1) - 1"
                ));
                continue;
            }
            let series = fk_difference(d, a, DEGREE as usize)?;
            let oracle = FkgOracle::new(d, a);
            let shift = 1u64 << r;
            let mut first_negative = None;
            let mut mismatch = None;
            for n in 0..=DEGREE {
                let mut v = oracle.f(n) - oracle.k(n);
                if n >= shift {
                    v += oracle.f(n - shift);
                }
                if v.is_negative() && first_negative.is_none() {
                    first_negative = Some(n);
                }
                if &v != series.coeff(n as usize) && mismatch.is_none() {
                    mismatch = Some(n);
                }
            }
            out.check(
                first_negative.is_none() && mismatch.is_none(),
                format!(
                    "a={a} m={m} (d={d}, r={r}) to degree {DEGREE}: first negative {first_negative:?}, series/oracle mismatch {mismatch:?}"
                ),
            );
        }
    }
    Ok(())
}

fn asymptotics(out: &mut Outcome) -> partineq_core::Result<()> {
    let mut ctx = Ctx::new(DIGITS)?;
    let tolerance = ctx.parse(ALPHA_TOLERANCE);
    let residual_max = ctx.parse(ALPHA_RESIDUAL_MAX);
    let margin = ctx.parse(A_BOUND_MARGIN);
    let pi = ctx.pi();
    let pi2 = ctx.mul(&pi, &pi);

    let mut worst = ctx.int(0);
    let mut residual_fail = Vec::new();
    for d in 1..=1000u64 {
        let alpha = solve_alpha(&ctx, d, &tolerance)?;
        let res = ctx
            .sub(&ctx.add(&ctx.powi(&alpha, d as usize), &alpha), &ctx.int(1))
            .abs();
        if res >= residual_max {
            residual_fail.push(d);
        }
        if res > worst {
            worst = res;
        }
    }
    out.check(
        residual_fail.is_empty(),
        format!(
            "|α^d + α - 1| < {ALPHA_RESIDUAL_MAX} for d <= 1000: max {:.3e}, failing d {residual_fail:?}",
            to_f64(&worst)
        ),
    );

    let mut bound_fail = Vec::new();
    let mut smallest: Option<(f64, u64)> = None;
    let mut a_one = None;
    for d in 1..=1000u64 {
        let p = meinardus_params(&mut ctx, d, 1)?;
        let bound = ctx.div(&pi2, &ctx.int(3 * d + 9));
        let excess = ctx.sub(&p.exponent, &bound);
        if excess <= margin {
            bound_fail.push((d, to_f64(&excess)));
        } else if smallest.map_or(true, |(e, _)| to_f64(&excess) < e) {
            smallest = Some((to_f64(&excess), d));
        }
        if d == 1 {
            a_one = Some(p.exponent.clone());
        }
    }
    let shown: Vec<String> = bound_fail
        .iter()
        .map(|(d, e)| format!("d={d} (A - bound = {e:.1e})"))
        .collect();
    out.check(
        bound_fail.is_empty(),
        format!(
            "A > π²/(3d+9) + {A_BOUND_MARGIN} for d <= 1000: failing {}; smallest passing excess {:?}",
            if shown.is_empty() { "none".into() } else { shown.join(", ") },
            smallest
        ),
    );
    if !bound_fail.is_empty() {
        out.info("A equals the bound exactly at d = 1, 2; see README");
    }

    let a_one = a_one.expect("d = 1 visited");
    let euler = ctx.div(&pi2, &ctx.int(12));
    let diff = ctx.sub(&a_one, &euler).abs();
    out.check(
        diff < ctx.parse(EULER_CONSTANT_TOLERANCE),
        format!(
            "A(1) = π²/12 within {EULER_CONSTANT_TOLERANCE}: |diff| = {:.1e}",
            to_f64(&diff)
        ),
    );

    const N: u64 = 3000;
    for (d, a) in [(4u64, 1u64), (7, 1), (10, 2)] {
        let params = meinardus_params(&mut ctx, d, a)?;
        let exact_q = count_gap(&GapSpec::new(d, a)?, N);
        let exact_big_q = count_partset(&ResiduePartSpec::q(QVariant::Plain, d, a)?, N);
        let lq = log_estimate_q(&mut ctx, &params, N)?;
        let lbq = log_estimate_big_q(&mut ctx, d, a, N)?;
        let eq = log_relative_error(&mut ctx, &lq, &exact_q)?;
        let ebq = log_relative_error(&mut ctx, &lbq, &exact_big_q)?;
        out.check(
            eq < LOG_ERROR_MAX && ebq < LOG_ERROR_MAX,
            format!("d={d} a={a} n={N}: log errors gap side {eq:.2e}, residue side {ebq:.2e}"),
        );

        let ladder = [250u64, 500, 1000, 2000];
        let kind = DeltaKind::same(QVariant::Plain, a)?;
        let values = ladder
            .iter()
            .map(|&n| delta(&kind, d, n))
            .collect::<partineq_core::Result<Vec<_>>>()?;
        let rising = values[0].is_positive() && values.windows(2).all(|w| w[0] < w[1]);
        let shown: Vec<String> = values.iter().map(sci).collect();
        out.check(
            rising,
            format!("d={d} a={a} difference on {ladder:?}: {}", shown.join(", ")),
        );
    }

    Ok(())
}

/// Compact rendering of a large integer.
fn sci(v: &BigInt) -> String {
    let s = v.to_string();
    if s.len() <= 12 {
        return s;
    }
    let (sign, digits) = s.strip_prefix('-').map_or(("", s.as_str()), |t| ("-", t));
    format!(
        "{sign}{}.{}e{}",
        &digits[..1],
        &digits[1..5],
        digits.len() - 1
    )
}
