//! Main-term asymptotics for gap partitions and residue partitions.
//!
//! Gap side: `q_d^{(a)}(n) ~ C n^{-3/4} exp(2 sqrt(A n))`, where `α` is the
//! root of `α^d + α - 1` in `(0, 1)`, `A = (d/2) log²α + Σ_r α^{rd}/r²` and
//! `C = A^{1/4} / (2 sqrt(π)) · (α^{d+1-2a} (d α^{d-1} + 1))^{-1/2}`.
//!
//! Residue side, with `m = d + 3`:
//! `Q_d^{(a)}(n) ~ csc(πa/m) / (4 (3m)^{1/4}) · n^{-3/4} exp(2π sqrt(n/(3m)))`.
//!
//! Everything is computed with `astro-float` at a caller-chosen number of
//! decimal digits; exact counts never pass through floating point except
//! when a logarithm of one is requested.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{hypothesis, invalid, Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Decimal digits used when the caller does not ask for more.
pub const DEFAULT_DIGITS: usize = 60;
/// Differences smaller than this count as equality with `π²/(3d+9)`.
pub const BOUND_MARGIN: &str = "1e-40";
/// Upper end of the crossover search.
pub const CROSSOVER_SEARCH_LIMIT: u64 = 1 << 40;
/// Sample points in the window `[n, 4n]` that must show a growing gap.
pub const CROSSOVER_WINDOW_POINTS: u64 = 64;

/// Working precision plus the constant cache `astro-float` needs.
pub struct Ctx {
    p: usize,
    digits: usize,
    cc: Consts,
}

impl Ctx {
    /// A context carrying at least `digits` significant decimal digits.
    pub fn new(digits: usize) -> Result<Self> {
        if digits == 0 || digits > 10_000 {
            return invalid(format!("precision must be 1..=10000 digits (got {digits})"));
        }
        // log2(10) < 3.33, with 64 guard bits.
        let p = (digits * 333).div_ceil(100) + 64;
        let cc = Consts::new().map_err(|e| Error::Domain(format!("float constants: {e:?}")))?;
        Ok(Self { p, digits, cc })
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    pub fn bits(&self) -> usize {
        self.p
    }

    pub fn int(&self, x: u64) -> BigFloat {
        BigFloat::from_u64(x, self.p)
    }

    pub fn parse(&mut self, s: &str) -> BigFloat {
        BigFloat::parse(s, Radix::Dec, self.p, RM, &mut self.cc)
    }

    /// `x` as a float; exact when it fits in the working precision.
    pub fn from_big(&mut self, x: &BigUint) -> BigFloat {
        self.parse(&x.to_string())
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, RM)
    }

    pub fn add(&self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        x.add(y, self.p, RM)
    }

    pub fn sub(&self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        x.sub(y, self.p, RM)
    }

    pub fn mul(&self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        x.mul(y, self.p, RM)
    }

    pub fn div(&self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        x.div(y, self.p, RM)
    }

    pub fn sqrt(&self, x: &BigFloat) -> BigFloat {
        x.sqrt(self.p, RM)
    }

    pub fn powi(&self, x: &BigFloat, n: usize) -> BigFloat {
        x.powi(n, self.p, RM)
    }

    /// `x^n` for a signed integer exponent.
    pub fn powi_signed(&self, x: &BigFloat, n: i64) -> BigFloat {
        let r = self.powi(x, n.unsigned_abs() as usize);
        if n < 0 {
            r.reciprocal(self.p, RM)
        } else {
            r
        }
    }

    pub fn pow(&mut self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        x.pow(y, self.p, RM, &mut self.cc)
    }

    pub fn ln(&mut self, x: &BigFloat) -> BigFloat {
        x.ln(self.p, RM, &mut self.cc)
    }

    pub fn exp(&mut self, x: &BigFloat) -> BigFloat {
        x.exp(self.p, RM, &mut self.cc)
    }

    pub fn sin(&mut self, x: &BigFloat) -> BigFloat {
        x.sin(self.p, RM, &mut self.cc)
    }

    /// Plain decimal with at most `digits` significant digits.
    pub fn decimal(&mut self, x: &BigFloat, digits: usize) -> String {
        to_decimal(x, digits, &mut self.cc)
    }
}

/// Nearest `f64`, for reporting only.
pub fn to_f64(x: &BigFloat) -> f64 {
    x.to_string().parse().unwrap_or(f64::NAN)
}

/// Renders `x` without an exponent, rounded to `digits` significant digits
/// and with trailing zeros removed.
fn to_decimal(x: &BigFloat, digits: usize, cc: &mut Consts) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let s = x
        .format(Radix::Dec, RM, cc)
        .unwrap_or_else(|_| x.to_string());
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.as_str()),
    };
    let (mant, exp) = body.split_once(['e', 'E']).unwrap_or((body, "0"));
    let exp: i64 = exp.parse().unwrap_or(0);
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let mut all: Vec<u8> = int_part
        .bytes()
        .chain(frac_part.bytes())
        .map(|b| b - b'0')
        .collect();
    // Position of the decimal point relative to the start of `all`.
    let mut point = int_part.len() as i64 + exp;
    let lead = all.iter().position(|&c| c != 0).unwrap_or(all.len());
    all.drain(..lead);
    point -= lead as i64;
    if all.len() > digits {
        let round_up = all[digits] >= 5;
        all.truncate(digits);
        if round_up {
            let mut i = digits;
            loop {
                if i == 0 {
                    all.insert(0, 1);
                    all.pop();
                    point += 1;
                    break;
                }
                i -= 1;
                if all[i] == 9 {
                    all[i] = 0;
                } else {
                    all[i] += 1;
                    break;
                }
            }
        }
    }
    while all.last() == Some(&0) && all.len() as i64 > point.max(1) {
        all.pop();
    }
    let digit_str = |v: &[u8]| v.iter().map(|&c| char::from(b'0' + c)).collect::<String>();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if point <= 0 {
        out.push_str("0.");
        out.push_str(&"0".repeat((-point) as usize));
        out.push_str(&digit_str(&all));
    } else if point as usize >= all.len() {
        out.push_str(&digit_str(&all));
        out.push_str(&"0".repeat(point as usize - all.len()));
    } else {
        out.push_str(&digit_str(&all[..point as usize]));
        out.push('.');
        out.push_str(&digit_str(&all[point as usize..]));
    }
    out
}

/// `α^d + α - 1`.
fn root_residual(ctx: &Ctx, alpha: &BigFloat, d: u64) -> BigFloat {
    let one = ctx.int(1);
    ctx.sub(&ctx.add(&ctx.powi(alpha, d as usize), alpha), &one)
}

/// The root of `α^d + α - 1` in `(0, 1)`: bisection down to `tolerance`,
/// then Newton steps until the residual is below `tolerance`.
pub fn solve_alpha(ctx: &Ctx, d: u64, tolerance: &BigFloat) -> Result<BigFloat> {
    if d == 0 {
        return invalid("d must be positive");
    }
    if tolerance.is_zero() || tolerance.is_negative() {
        return invalid("tolerance must be positive");
    }
    let two = ctx.int(2);
    let (mut lo, mut hi) = (ctx.int(0), ctx.int(1));
    // The bracket width halves each step, so this is at most ~p iterations.
    for _ in 0..ctx.bits() {
        if ctx.sub(&hi, &lo) < *tolerance {
            break;
        }
        let mid = ctx.div(&ctx.add(&lo, &hi), &two);
        if root_residual(ctx, &mid, d).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = ctx.div(&ctx.add(&lo, &hi), &two);
    let one = ctx.int(1);
    for _ in 0..8 {
        let f = root_residual(ctx, &x, d);
        if f.abs() < *tolerance {
            break;
        }
        let df = ctx.add(&ctx.mul(&ctx.int(d), &ctx.powi(&x, d as usize - 1)), &one);
        x = ctx.sub(&x, &ctx.div(&f, &df));
    }
    if root_residual(ctx, &x, d).abs() >= *tolerance {
        return Err(Error::Domain(format!(
            "root for d={d} did not reach the requested tolerance at {} digits",
            ctx.digits()
        )));
    }
    Ok(x)
}

/// `(d/2) log²α + Σ_{r<=terms} α^{rd}/r²` and the bound
/// `α^{(R+1)d} / ((R+1)² (1 - α^d))` on what was left out.
pub fn exponent_constant_with_terms(
    ctx: &mut Ctx,
    alpha: &BigFloat,
    d: u64,
    terms: u64,
) -> (BigFloat, BigFloat) {
    let x = ctx.powi(alpha, d as usize);
    let mut sum = ctx.int(0);
    let mut xr = ctx.int(1);
    for r in 1..=terms {
        xr = ctx.mul(&xr, &x);
        sum = ctx.add(&sum, &ctx.div(&xr, &ctx.int(r * r)));
    }
    let next = terms + 1;
    let tail = ctx.div(
        &ctx.mul(&xr, &x),
        &ctx.mul(&ctx.int(next * next), &ctx.sub(&ctx.int(1), &x)),
    );
    let ln = ctx.ln(alpha);
    let lead = ctx.div(&ctx.mul(&ctx.int(d), &ctx.mul(&ln, &ln)), &ctx.int(2));
    (ctx.add(&lead, &sum), tail)
}

/// Constants of the gap-side main term at `(d, a)`.
#[derive(Clone, Debug)]
pub struct MeinardusParams {
    pub d: u64,
    pub a: u64,
    pub digits: usize,
    pub alpha: BigFloat,
    /// The constant `A` in the exponent.
    pub exponent: BigFloat,
    /// The prefactor `C`.
    pub prefactor: BigFloat,
    pub tail_terms: u64,
    pub tail_bound: BigFloat,
}

impl MeinardusParams {
    /// `π² / (3d + 9)`, the lower bound on `A`.
    pub fn pi2_bound(&self, ctx: &mut Ctx) -> BigFloat {
        let pi = ctx.pi();
        ctx.div(&ctx.mul(&pi, &pi), &ctx.int(3 * self.d + 9))
    }
}

/// `α`, `A` (with a certified tail below `10^-max(30, digits)`) and `C`.
pub fn meinardus_params(ctx: &mut Ctx, d: u64, a: u64) -> Result<MeinardusParams> {
    if d == 0 || a == 0 {
        return invalid("d and a must be positive");
    }
    let digits = ctx.digits();
    let tol = ctx.parse(&format!("1e-{}", digits.max(30)));
    let alpha = solve_alpha(ctx, d, &tol)?;
    // α^d = 1 - α, so term r is (1-α)^r / r²; pick R from the tail bound.
    let mut terms = 1u64;
    let (exponent, tail_bound) = loop {
        let (value, tail) = exponent_constant_with_terms(ctx, &alpha, d, terms);
        if tail < tol {
            break (value, tail);
        }
        terms *= 2;
    };
    let (exponent, tail_bound, tail_terms) = {
        // Tighten to the least R that still meets the target.
        let (mut lo, mut hi) = (terms / 2, terms);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if exponent_constant_with_terms(ctx, &alpha, d, mid).1 < tol {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if hi == terms {
            (exponent, tail_bound, terms)
        } else {
            let (v, t) = exponent_constant_with_terms(ctx, &alpha, d, hi);
            (v, t, hi)
        }
    };
    let pi = ctx.pi();
    let quarter = ctx.parse("0.25");
    let a4 = ctx.pow(&exponent, &quarter);
    let bracket = ctx.mul(
        &ctx.powi_signed(&alpha, d as i64 + 1 - 2 * a as i64),
        &ctx.add(
            &ctx.mul(&ctx.int(d), &ctx.powi(&alpha, d as usize - 1)),
            &ctx.int(1),
        ),
    );
    let prefactor = ctx.div(
        &a4,
        &ctx.mul(&ctx.mul(&ctx.int(2), &ctx.sqrt(&pi)), &ctx.sqrt(&bracket)),
    );
    Ok(MeinardusParams {
        d,
        a,
        digits,
        alpha,
        exponent,
        prefactor,
        tail_terms,
        tail_bound,
    })
}

/// An externally supplied bound on `|count(n) - main term(n)|`.
pub type ErrorBound<'a> = &'a dyn Fn(&mut Ctx, u64) -> BigFloat;

/// A main term, with an interval when an error bound was supplied.
#[derive(Clone, Debug)]
pub struct Estimate {
    pub main: BigFloat,
    pub lower: Option<BigFloat>,
    pub upper: Option<BigFloat>,
}

fn with_bound(ctx: &mut Ctx, main: BigFloat, n: u64, bound: Option<ErrorBound<'_>>) -> Estimate {
    match bound {
        None => Estimate {
            main,
            lower: None,
            upper: None,
        },
        Some(f) => {
            let e = f(ctx, n).abs();
            Estimate {
                lower: Some(ctx.sub(&main, &e)),
                upper: Some(ctx.add(&main, &e)),
                main,
            }
        }
    }
}

/// `ln` of the gap-side main term.
pub fn log_estimate_q(ctx: &mut Ctx, params: &MeinardusParams, n: u64) -> Result<BigFloat> {
    if n == 0 {
        return invalid("n must be positive");
    }
    let nf = ctx.int(n);
    let ln_c = ctx.ln(&params.prefactor);
    let ln_n = ctx.ln(&nf);
    let growth = ctx.mul(&ctx.int(2), &ctx.sqrt(&ctx.mul(&params.exponent, &nf)));
    let power = ctx.div(&ctx.mul(&ctx.int(3), &ln_n), &ctx.int(4));
    Ok(ctx.add(&ctx.sub(&ln_c, &power), &growth))
}

/// `C n^{-3/4} exp(2 sqrt(A n))`.
pub fn estimate_q(
    ctx: &mut Ctx,
    params: &MeinardusParams,
    n: u64,
    bound: Option<ErrorBound<'_>>,
) -> Result<Estimate> {
    let l = log_estimate_q(ctx, params, n)?;
    let main = ctx.exp(&l);
    Ok(with_bound(ctx, main, n, bound))
}

fn check_residue_hypotheses(d: u64, a: u64) -> Result<()> {
    if d == 0 || a == 0 || 2 * a >= d + 3 || a.gcd(&(d + 3)) != 1 {
        return hypothesis(format!(
            "need d >= 1, 1 <= a < (d+3)/2 and gcd(a, d+3) = 1 (got d={d}, a={a})"
        ));
    }
    Ok(())
}

/// `ln` of the residue-side main term.
pub fn log_estimate_big_q(ctx: &mut Ctx, d: u64, a: u64, n: u64) -> Result<BigFloat> {
    check_residue_hypotheses(d, a)?;
    if n == 0 {
        return invalid("n must be positive");
    }
    let m = d + 3;
    let pi = ctx.pi();
    let angle = ctx.div(&ctx.mul(&pi, &ctx.int(a)), &ctx.int(m));
    let sin = ctx.sin(&angle);
    let quarter = ctx.parse("0.25");
    let root = ctx.pow(&ctx.int(3 * m), &quarter);
    // csc / (4 (3m)^{1/4}) = 1 / (4 sin (3m)^{1/4}).
    let denom = ctx.mul(&ctx.mul(&ctx.int(4), &sin), &root);
    let ln_c = ctx.ln(&denom).neg();
    let nf = ctx.int(n);
    let ln_n = ctx.ln(&nf);
    let power = ctx.div(&ctx.mul(&ctx.int(3), &ln_n), &ctx.int(4));
    let growth = ctx.mul(
        &ctx.mul(&ctx.int(2), &pi),
        &ctx.sqrt(&ctx.div(&nf, &ctx.int(3 * m))),
    );
    Ok(ctx.add(&ctx.sub(&ln_c, &power), &growth))
}

/// `csc(πa/m) / (4 (3m)^{1/4}) · n^{-3/4} exp(2π sqrt(n/(3m)))`, `m = d + 3`.
pub fn estimate_big_q(
    ctx: &mut Ctx,
    d: u64,
    a: u64,
    n: u64,
    bound: Option<ErrorBound<'_>>,
) -> Result<Estimate> {
    let l = log_estimate_big_q(ctx, d, a, n)?;
    let main = ctx.exp(&l);
    Ok(with_bound(ctx, main, n, bound))
}

/// `|ln estimate - ln exact| / ln exact`, from the log of an estimate.
pub fn log_relative_error(ctx: &mut Ctx, log_estimate: &BigFloat, exact: &BigUint) -> Result<f64> {
    if exact <= &BigUint::from(1u8) {
        return invalid("exact count must exceed 1 for a relative log error");
    }
    let x = ctx.from_big(exact);
    let ln_exact = ctx.ln(&x);
    Ok(to_f64(
        &ctx.div(&ctx.sub(log_estimate, &ln_exact).abs(), &ln_exact),
    ))
}

/// Smallest `n` at which the gap-side main term exceeds the residue-side
/// one and the difference of the two keeps growing at
/// [`CROSSOVER_WINDOW_POINTS`] points spread over `[n, 4n]`.
///
/// Heuristic: the main terms carry no error bounds.
pub fn crossover_nd(ctx: &mut Ctx, d: u64, a: u64) -> Result<u64> {
    check_residue_hypotheses(d, a)?;
    let params = meinardus_params(ctx, d, a)?;
    // Both main terms share n^{-3/4}, so the log ratio is increasing in n.
    let mut log_ratio = |ctx: &mut Ctx, n: u64| -> Result<BigFloat> {
        let lq = log_estimate_q(ctx, &params, n)?;
        let lbq = log_estimate_big_q(ctx, d, a, n)?;
        Ok(ctx.sub(&lq, &lbq))
    };
    let ahead = |ctx: &mut Ctx, f: &mut dyn FnMut(&mut Ctx, u64) -> Result<BigFloat>, n: u64| {
        f(ctx, n).map(|r| !r.is_negative() && !r.is_zero())
    };
    let mut hi = 1u64;
    while !ahead(ctx, &mut log_ratio, hi)? {
        if hi >= CROSSOVER_SEARCH_LIMIT {
            return Err(Error::NoCrossover(CROSSOVER_SEARCH_LIMIT));
        }
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ahead(ctx, &mut log_ratio, mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut n = hi;
    while n <= CROSSOVER_SEARCH_LIMIT {
        if gap_grows(ctx, &params, d, a, n)? {
            return Ok(n);
        }
        n += 1;
    }
    Err(Error::NoCrossover(CROSSOVER_SEARCH_LIMIT))
}

fn gap_grows(ctx: &mut Ctx, params: &MeinardusParams, d: u64, a: u64, n: u64) -> Result<bool> {
    let mut prev: Option<BigFloat> = None;
    for i in 0..CROSSOVER_WINDOW_POINTS {
        let x = n + (3 * n * i) / (CROSSOVER_WINDOW_POINTS - 1);
        let q = estimate_q(ctx, params, x, None)?.main;
        let big_q = estimate_big_q(ctx, d, a, x, None)?.main;
        let gap = ctx.sub(&q, &big_q);
        if gap.is_negative() || gap.is_zero() {
            return Ok(false);
        }
        if let Some(p) = &prev {
            if gap < *p {
                return Ok(false);
            }
        }
        prev = Some(gap);
    }
    Ok(true)
}

/// The serialisable summary for one `(d, a)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRecord {
    pub d: u64,
    pub a: u64,
    pub digits: usize,
    pub alpha: String,
    #[serde(rename = "A")]
    pub exponent: String,
    #[serde(rename = "C")]
    pub prefactor: String,
    pub pi2_bound: String,
    /// `A - π²/(3d+9)` beyond [`BOUND_MARGIN`].
    pub exceeds_pi2_bound: bool,
    pub tail_terms: u64,
    pub tail_bound: String,
    pub n_d: Option<u64>,
}

/// Builds the record, searching for the crossover when asked.
pub fn asymptotic_record(
    ctx: &mut Ctx,
    d: u64,
    a: u64,
    find_crossover: bool,
) -> Result<AsymptoticRecord> {
    let params = meinardus_params(ctx, d, a)?;
    let n_d = if find_crossover {
        Some(crossover_nd(ctx, d, a)?)
    } else {
        None
    };
    let bound = params.pi2_bound(ctx);
    let digits = ctx.digits().min(50);
    Ok(AsymptoticRecord {
        d,
        a,
        digits: ctx.digits(),
        alpha: ctx.decimal(&params.alpha, digits),
        exponent: ctx.decimal(&params.exponent, digits),
        prefactor: ctx.decimal(&params.prefactor, digits),
        pi2_bound: ctx.decimal(&bound, digits),
        exceeds_pi2_bound: {
            let margin = ctx.parse(BOUND_MARGIN);
            ctx.sub(&params.exponent, &bound) > margin
        },
        tail_terms: params.tail_terms,
        tail_bound: format!("{:.3e}", to_f64(&params.tail_bound)),
        n_d,
    })
}
