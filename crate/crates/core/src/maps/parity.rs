//! Weight-raising injection from odd-weight partitions into `±2 (mod d+3)`
//! into partitions of the next weight into `±2 (mod d+2)`.

use super::{ImageTracker, IndexedPartSequence, InjectionReport, MapTrace};
use crate::error::{hypothesis, Error, Result};
use crate::partitions::{enumerate_partset, PartSet, Partition, ResiduePartSpec};

/// Source `±2 (mod d+3)` without `d+1`, target `±2 (mod d+2)` without `d`.
pub fn parity_sets(d: u64) -> Result<(ResiduePartSpec, ResiduePartSpec)> {
    if d < 4 || d % 2 != 0 {
        return hypothesis(format!("need d even and at least 4 (got d={d})"));
    }
    Ok((
        ResiduePartSpec::new(d + 3, 2, [d + 1])?,
        ResiduePartSpec::new(d + 2, 2, [d])?,
    ))
}

/// Replaces the `i`-th source part by the `i`-th target part, then appends
/// `β` twos where `Σ(x_i - y_i) = 2β - 1`. Output weight is `|λ| + 1`.
pub fn parity_inject(d: u64, lambda: &Partition) -> Result<MapTrace> {
    let (s_spec, t_spec) = parity_sets(d)?;
    let w = lambda.weight();
    if w % 2 == 0 {
        return Err(Error::Domain(format!("weight {w} is even")));
    }
    let s = IndexedPartSequence::from_partset(&s_spec, w, None)?;
    let t = IndexedPartSequence::from_partset(&t_spec, w, None)?;
    let mut out = Vec::with_capacity(lambda.len() + 1);
    let mut surplus = 0u64;
    for &x in lambda.parts() {
        let i = s
            .index_of(x)
            .ok_or_else(|| Error::Domain(format!("part {x} is not ±2 mod {}", d + 3)))?;
        let y = t.get(i).filter(|&y| y <= x).ok_or_else(|| {
            Error::Invariant(format!("target term {} missing or above {x}", i + 1))
        })?;
        surplus += x - y;
        out.push(y);
    }
    if surplus % 2 == 0 {
        return Err(Error::Invariant(format!(
            "even surplus {surplus} for {lambda}"
        )));
    }
    out.extend(std::iter::repeat(2).take(surplus.div_ceil(2) as usize));
    MapTrace::new(
        lambda.clone(),
        "pad-twos",
        Partition::from_unsorted(out)?,
        1,
    )
}

/// Exhaustive run over all odd weights up to `max_weight`.
pub fn check_parity_inject(d: u64, max_weight: u64, cap: usize) -> Result<InjectionReport> {
    let (s_spec, t_spec) = parity_sets(d)?;
    let mut report = InjectionReport::new("parity-inject", format!("d={d}, n<={max_weight}"));
    for n in (1..=max_weight).step_by(2) {
        let mut tracker = ImageTracker::new();
        for lambda in enumerate_partset(&s_spec, n, cap)? {
            match parity_inject(d, &lambda) {
                Ok(trace) => {
                    if let Some(&bad) = trace.output.parts().iter().find(|&&p| !t_spec.contains(p))
                    {
                        report
                            .violations
                            .push(format!("{lambda} -> {} uses part {bad}", trace.output));
                    }
                    tracker.record(&trace, &mut report);
                }
                Err(e) => report.violations.push(format!("{lambda}: {e}")),
            }
        }
    }
    Ok(report)
}
