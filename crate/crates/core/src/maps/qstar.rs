//! Injection from gap partitions into multiples of `a` (weight rounded up to
//! a multiple of `a`) into gap partitions of the original weight.

use super::{ImageTracker, InjectionReport, MapTrace};
use crate::error::{hypothesis, invalid, Error, Result};
use crate::partitions::{enumerate_gap, GapSpec, Partition};

/// Least nonnegative residue of `-x` modulo `a`.
fn hat(x: u64, a: u64) -> u64 {
    (a - x % a) % a
}

fn check_params(d: u64, a: u64, n: u64) -> Result<()> {
    if d == 0 || a == 0 {
        return invalid(format!("d and a must be positive (got d={d}, a={a})"));
    }
    if n < d + 2 * a {
        return hypothesis(format!("need n >= d + 2a = {} (got n={n})", d + 2 * a));
    }
    Ok(())
}

/// Domain at `n`: partitions of `n + n̂` into multiples of `a` whose
/// consecutive parts differ by at least `d + d̂`.
pub fn qstar_domain(d: u64, a: u64, n: u64, cap: usize) -> Result<Vec<Partition>> {
    check_params(d, a, n)?;
    let units = GapSpec::new(d.div_ceil(a), 1)?;
    enumerate_gap(&units, n.div_ceil(a), cap)?
        .into_iter()
        .map(|p| Partition::new(p.parts().iter().map(|x| x * a).collect()))
        .collect()
}

pub fn qstar_inject(d: u64, a: u64, n: u64, lambda: &Partition) -> Result<MapTrace> {
    check_params(d, a, n)?;
    let n_hat = hat(n, a);
    let min_gap = d + hat(d, a);
    if lambda.weight() != n + n_hat
        || lambda.parts().iter().any(|x| x % a != 0)
        || lambda.min_gap().is_some_and(|g| g < min_gap)
    {
        return Err(Error::Domain(format!(
            "{lambda} is not a partition of {} into multiples of {a} with gaps >= {min_gap}",
            n + n_hat
        )));
    }
    let up = lambda.ascending();
    let k = up.len();
    let (branch, out): (&str, Vec<u64>) = if n_hat == 0 {
        ("identity", up)
    } else if k == 1 {
        ("split", vec![a, n - a])
    } else if up[0] == a && k == 2 {
        ("merge", vec![n])
    } else if up[0] == a {
        let mut v = up[1..].to_vec();
        *v.last_mut().expect("k >= 3") += a - n_hat;
        ("drop-smallest", v)
    } else {
        let mut v = up;
        v[0] -= n_hat;
        ("shrink-smallest", v)
    };
    MapTrace::new(
        lambda.clone(),
        branch,
        Partition::from_ascending(out)?,
        -(n_hat as i64),
    )
}

/// Runs the map over its whole domain for `d + 2a <= n <= n_max`.
pub fn check_qstar(d: u64, a: u64, n_max: u64, cap: usize) -> Result<InjectionReport> {
    check_params(d, a, d + 2 * a)?;
    let mut report = InjectionReport::new("qstar-inject", format!("d={d}, a={a}, n<={n_max}"));
    for n in d + 2 * a..=n_max {
        let mut tracker = ImageTracker::new();
        for lambda in qstar_domain(d, a, n, cap)? {
            match qstar_inject(d, a, n, &lambda) {
                Ok(trace) => {
                    let out = &trace.output;
                    if out.smallest().is_some_and(|s| s < a) || out.min_gap().is_some_and(|g| g < d)
                    {
                        report
                            .violations
                            .push(format!("{lambda} -> {out} leaves the gap-{d} set"));
                    }
                    tracker.record(&trace, &mut report);
                }
                Err(e) => report.violations.push(format!("{lambda}: {e}")),
            }
        }
    }
    Ok(report)
}
