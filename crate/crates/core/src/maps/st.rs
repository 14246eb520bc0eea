//! The index-matching injection between two ordered part sequences, with the
//! surplus paid out in copies of the smallest target part.

use super::{ImageTracker, IndexedPartSequence, InjectionReport, MapTrace};
use crate::error::{invalid, Error, Result};
use crate::partitions::{enumerate_partset, PartSet, Partition};

/// Sends each part `x_i` to `y_i` and appends `Σ(x_i - y_i)/m` copies of
/// `m = y_1`.
///
/// Requires `m | |λ|`, every part of `λ` in `s`, and `x_i >= y_i` for each
/// index used.
pub fn st_inject(
    s: &IndexedPartSequence,
    t: &IndexedPartSequence,
    lambda: &Partition,
) -> Result<MapTrace> {
    let Some(m) = t.divisor() else {
        return invalid("target sequence needs a divisor");
    };
    if lambda.weight() % m != 0 {
        return Err(Error::Domain(format!(
            "weight {} is not a multiple of {m}",
            lambda.weight()
        )));
    }
    let mut out = Vec::with_capacity(lambda.len());
    let mut surplus = 0u64;
    for &x in lambda.parts() {
        let i = s
            .index_of(x)
            .ok_or_else(|| Error::Domain(format!("part {x} is not in the source sequence")))?;
        let y = t.get(i).ok_or_else(|| {
            Error::Domain(format!("target sequence has no term at index {}", i + 1))
        })?;
        if x < y {
            return Err(Error::Domain(format!(
                "term {} of the source ({x}) is below the target ({y})",
                i + 1
            )));
        }
        surplus += x - y;
        out.push(y);
    }
    if surplus % m != 0 {
        return Err(Error::Invariant(format!(
            "surplus {surplus} not divisible by {m} for {lambda}"
        )));
    }
    out.extend(std::iter::repeat(m).take((surplus / m) as usize));
    MapTrace::new(
        lambda.clone(),
        "rebalance",
        Partition::from_unsorted(out)?,
        0,
    )
}

/// Runs [`st_inject`] on every partition of every multiple of `m` up to
/// `max_weight`, checking injectivity and that outputs use parts of `t_spec`.
pub fn check_st_inject<S: PartSet + ?Sized, T: PartSet + ?Sized>(
    s_spec: &S,
    t_spec: &T,
    m: u64,
    max_weight: u64,
    cap: usize,
) -> Result<InjectionReport> {
    if m == 0 {
        return invalid("m must be positive");
    }
    let s = IndexedPartSequence::from_partset(s_spec, max_weight, None)?;
    let t = IndexedPartSequence::from_partset(t_spec, max_weight, Some(m))?;
    let mut report = InjectionReport::new("st-inject", format!("m={m}, n<={max_weight}"));
    for n in (m..=max_weight).step_by(m as usize) {
        let mut tracker = ImageTracker::new();
        for lambda in enumerate_partset(s_spec, n, cap)? {
            match st_inject(&s, &t, &lambda) {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{QVariant, ResiduePartSpec};

    #[test]
    fn single_application() {
        let s = IndexedPartSequence::new(vec![2, 5, 9], None).unwrap();
        let t = IndexedPartSequence::new(vec![2, 4, 6], Some(2)).unwrap();
        let lambda = Partition::new(vec![9, 5, 2]).unwrap();
        let trace = st_inject(&s, &t, &lambda).unwrap();
        assert_eq!(trace.output.parts(), &[6, 4, 2, 2, 2]);
        let odd = Partition::new(vec![5]).unwrap();
        assert!(matches!(st_inject(&s, &t, &odd), Err(Error::Domain(_))));
    }

    #[test]
    fn dash_sets_one_modulus_apart() {
        let d = 8;
        let s = ResiduePartSpec::q(QVariant::Dash, d, 2).unwrap();
        let t = ResiduePartSpec::q(QVariant::Dash, d - 1, 2).unwrap();
        let r = check_st_inject(&s, &t, 2, 80, 1_000_000).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.domain_size > 100);
    }

    #[test]
    fn undersized_target_is_reported() {
        let s = crate::partitions::ExplicitPartSpec::finite([2, 3]).unwrap();
        let t = crate::partitions::ExplicitPartSpec::finite([2, 4]).unwrap();
        let r = check_st_inject(&s, &t, 2, 6, 100).unwrap();
        assert!(!r.violations.is_empty());
    }
}
