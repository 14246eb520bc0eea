//! Exact counts and enumerations of restricted partitions.
//!
//! Two families are covered:
//!
//! - gap partitions, counted by `q_d^{(a)}(n)`: parts `>= a`, successive parts
//!   differing by at least `d`;
//! - partitions with parts drawn from an allowed set `R`, counted by
//!   `rho(R; n)` (this includes every `Q_d^{(b)}` variant).
//!
//! Counting uses dynamic programming over arbitrary-precision integers. The
//! enumerators are deliberately naive and serve as the oracle for the counts.

mod partition;
mod spec;

pub use partition::Partition;
pub use spec::{ExplicitPartSpec, GapSpec, PartSet, QVariant, ResiduePartSpec};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `q_d^{(a)}(n)`.
///
/// Gap partitions with exactly `k` parts correspond to ordinary partitions of
/// `n - k*a - d*k(k-1)/2` into at most `k` parts (subtract `a + d(i-1)` from
/// the `i`-th smallest part). The table of "at most `k` parts" counts is grown
/// one `k` at a time.
pub fn count_gap(spec: &GapSpec, n: u64) -> BigUint {
    let n_us = n as usize;
    // at_most[m] = partitions of m into parts <= k (equivalently at most k parts)
    let mut at_most = vec![BigUint::zero(); n_us + 1];
    at_most[0] = BigUint::one();
    let mut total = BigUint::zero();
    let mut k = 0u64;
    while let Some(offset) = spec.min_weight(k).filter(|&w| w <= n) {
        if k > 0 {
            let k_us = k as usize;
            for m in k_us..=n_us {
                let (lo, hi) = at_most.split_at_mut(m);
                hi[0] += &lo[m - k_us];
            }
        }
        total += &at_most[(n - offset) as usize];
        k += 1;
    }
    total
}

/// `rho(R; n)`: partitions of `n` with every part in `spec`.
pub fn count_partset<P: PartSet + ?Sized>(spec: &P, n: u64) -> BigUint {
    let parts = spec.parts_up_to(n);
    coin_change(&parts, n)
}

/// Partitions of `n` into distinct parts from `spec`.
pub fn count_partset_distinct<P: PartSet + ?Sized>(spec: &P, n: u64) -> BigUint {
    let n_us = n as usize;
    let mut table = vec![BigUint::zero(); n_us + 1];
    table[0] = BigUint::one();
    for p in spec.parts_up_to(n) {
        let p = p as usize;
        for m in (p..=n_us).rev() {
            let (lo, hi) = table.split_at_mut(m);
            hi[0] += &lo[m - p];
        }
    }
    std::mem::take(&mut table[n_us])
}

/// Signed count of partitions of `n` built from three kinds of parts:
/// unrestricted parts from `unrestricted`, distinct parts from `distinct`, and
/// distinct parts from `signed`, each of the latter contributing a factor `-1`.
///
/// The three sets are expected to be pairwise disjoint.
pub fn count_mixed(unrestricted: &[u64], distinct: &[u64], signed: &[u64], n: u64) -> BigInt {
    let n_us = n as usize;
    let mut table = vec![BigInt::zero(); n_us + 1];
    table[0] = BigInt::one();
    for &p in unrestricted.iter().filter(|&&p| p <= n) {
        let p = p as usize;
        for m in p..=n_us {
            let (lo, hi) = table.split_at_mut(m);
            hi[0] += &lo[m - p];
        }
    }
    for (&p, sign) in distinct
        .iter()
        .map(|p| (p, false))
        .chain(signed.iter().map(|p| (p, true)))
        .filter(|(&p, _)| p <= n)
    {
        let p = p as usize;
        for m in (p..=n_us).rev() {
            let (lo, hi) = table.split_at_mut(m);
            if sign {
                hi[0] -= &lo[m - p];
            } else {
                hi[0] += &lo[m - p];
            }
        }
    }
    std::mem::take(&mut table[n_us])
}

fn coin_change(parts: &[u64], n: u64) -> BigUint {
    let n_us = n as usize;
    let mut table = vec![BigUint::zero(); n_us + 1];
    table[0] = BigUint::one();
    for &p in parts {
        let p = p as usize;
        for m in p..=n_us {
            let (lo, hi) = table.split_at_mut(m);
            hi[0] += &lo[m - p];
        }
    }
    std::mem::take(&mut table[n_us])
}

/// All allowed parts `<= bound`, ascending.
pub fn part_list<P: PartSet + ?Sized>(spec: &P, bound: u64) -> Vec<u64> {
    spec.parts_up_to(bound)
}

/// Collects partitions until the cap is hit.
struct Collector {
    out: Vec<Partition>,
    cap: usize,
}

impl Collector {
    fn new(cap: usize) -> Self {
        Self {
            out: Vec::new(),
            cap,
        }
    }

    fn push(&mut self, parts: &[u64]) -> Result<()> {
        if self.out.len() >= self.cap {
            return Err(Error::BudgetExceeded { cap: self.cap });
        }
        self.out.push(Partition::new(parts.to_vec())?);
        Ok(())
    }
}

/// Every partition counted by `q_d^{(a)}(n)`.
///
/// Output order: reverse lexicographic on the nonincreasing part list, so
/// the one-part partition `(n)` always comes first. At most `cap` partitions
/// are produced; hitting the cap is an error.
pub fn enumerate_gap(spec: &GapSpec, n: u64, cap: usize) -> Result<Vec<Partition>> {
    fn rec(
        spec: &GapSpec,
        rem: u64,
        max_part: u64,
        stack: &mut Vec<u64>,
        sink: &mut Collector,
    ) -> Result<()> {
        if rem == 0 {
            return sink.push(stack);
        }
        let mut part = rem.min(max_part);
        while part >= spec.a() {
            stack.push(part);
            let next_max = part.saturating_sub(spec.d());
            rec(spec, rem - part, next_max, stack, sink)?;
            stack.pop();
            part -= 1;
        }
        Ok(())
    }
    let mut sink = Collector::new(cap);
    rec(spec, n, n, &mut Vec::new(), &mut sink)?;
    Ok(sink.out)
}

/// Every partition of `n` with parts from `spec`, in the same order as
/// [`enumerate_gap`].
pub fn enumerate_partset<P: PartSet + ?Sized>(
    spec: &P,
    n: u64,
    cap: usize,
) -> Result<Vec<Partition>> {
    enumerate_from_parts(&spec.parts_up_to(n), n, false, cap)
}

/// Every partition of `n` into distinct parts from `spec`.
pub fn enumerate_partset_distinct<P: PartSet + ?Sized>(
    spec: &P,
    n: u64,
    cap: usize,
) -> Result<Vec<Partition>> {
    enumerate_from_parts(&spec.parts_up_to(n), n, true, cap)
}

pub(crate) fn enumerate_from_parts(
    ascending_parts: &[u64],
    n: u64,
    distinct: bool,
    cap: usize,
) -> Result<Vec<Partition>> {
    fn rec(
        desc: &[u64],
        start: usize,
        rem: u64,
        distinct: bool,
        stack: &mut Vec<u64>,
        sink: &mut Collector,
    ) -> Result<()> {
        if rem == 0 {
            return sink.push(stack);
        }
        for (j, &p) in desc.iter().enumerate().skip(start) {
            if p > rem {
                continue;
            }
            stack.push(p);
            let next = if distinct { j + 1 } else { j };
            rec(desc, next, rem - p, distinct, stack, sink)?;
            stack.pop();
        }
        Ok(())
    }
    let desc: Vec<u64> = ascending_parts.iter().rev().copied().collect();
    let mut sink = Collector::new(cap);
    rec(&desc, 0, n, distinct, &mut Vec::new(), &mut sink)?;
    Ok(sink.out)
}
