//! Distinct partitions into binary residues versus partitions with a
//! residue-dependent gap condition.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{hypothesis, invalid, Error, Result};
use crate::partitions::{count_partset_distinct, ExplicitPartSpec, PartSet, Partition};

/// The representative of `x` modulo `d` in `[1, d]`.
pub fn beta_d(x: u64, d: u64) -> u64 {
    debug_assert!(x > 0 && d > 0);
    (x - 1) % d + 1
}

/// Number of ones in the binary expansion.
pub fn binary_weight(x: u64) -> u32 {
    x.count_ones()
}

/// Largest power of two dividing `x > 0`.
pub fn lowest_power(x: u64) -> u64 {
    x & x.wrapping_neg()
}

/// Required difference after a part `x`: `d·b(β) + ν(β) - β`, `β = β_d(x)`.
pub fn e_gap(x: u64, d: u64) -> u64 {
    let b = beta_d(x, d);
    d * u64::from(binary_weight(b)) + lowest_power(b) - b
}

/// The residue sets for parameters `(d, k, l)`: `2^i mod d` for
/// `k <= i < l` on the distinct side, `2^k·i mod d` for `1 <= i < 2^{l-k}`
/// on the gap side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeSets {
    d: u64,
    k: u32,
    l: u32,
    distinct_side: ExplicitPartSpec,
    gap_side: ExplicitPartSpec,
}

impl DeSets {
    pub fn new(d: u64, k: u32, l: u32) -> Result<Self> {
        if d == 0 {
            return invalid("d must be positive");
        }
        if k >= l || l >= 63 {
            return invalid(format!("need 0 <= k < l < 63 (got k={k}, l={l})"));
        }
        if d < (1u64 << l) - (1u64 << k) {
            return hypothesis(format!(
                "need d >= 2^l - 2^k = {} (got d={d})",
                (1u64 << l) - (1u64 << k)
            ));
        }
        let distinct: BTreeSet<u64> = (k..l).map(|i| (1u64 << i) % d).collect();
        let gap: BTreeSet<u64> = (1..(1u64 << (l - k))).map(|i| (i << k) % d).collect();
        Ok(Self {
            d,
            k,
            l,
            distinct_side: ExplicitPartSpec::residue_union(d, distinct, [])?,
            gap_side: ExplicitPartSpec::residue_union(d, gap, [])?,
        })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn distinct_side(&self) -> &ExplicitPartSpec {
        &self.distinct_side
    }

    pub fn gap_side(&self) -> &ExplicitPartSpec {
        &self.gap_side
    }
}

pub fn d_count(sets: &DeSets, n: u64) -> BigUint {
    count_partset_distinct(&sets.distinct_side, n)
}

/// Counts gap-side partitions by their smallest part, bottom-up in weight.
pub fn e_count(sets: &DeSets, n: u64) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let parts = sets.gap_side.parts_up_to(n);
    let gaps: Vec<u64> = parts.iter().map(|&x| e_gap(x, sets.d)).collect();
    // by_smallest[w][j]: partitions of w whose smallest part is parts[j].
    let mut by_smallest: Vec<Vec<BigUint>> = vec![Vec::new(); n as usize + 1];
    for w in 1..=n {
        let mut row = vec![BigUint::zero(); parts.len()];
        for (j, &x) in parts.iter().enumerate() {
            if x > w {
                break;
            }
            if x == w {
                row[j] = BigUint::one();
                continue;
            }
            let rest = &by_smallest[(w - x) as usize];
            let mut acc = BigUint::zero();
            for (jj, &y) in parts.iter().enumerate().skip(j + 1) {
                if y > w - x {
                    break;
                }
                if y >= x + gaps[j] {
                    acc += &rest[jj];
                }
            }
            row[j] = acc;
        }
        by_smallest[w as usize] = row;
    }
    by_smallest[n as usize].iter().sum()
}

/// Both sides at `n`.
pub fn de_counts(d: u64, k: u32, l: u32, n: u64) -> Result<(BigUint, BigUint)> {
    let sets = DeSets::new(d, k, l)?;
    Ok((d_count(&sets, n), e_count(&sets, n)))
}

/// Every gap-side partition of `n`, each listed by increasing parts during
/// the search and returned as a [`Partition`].
pub fn enumerate_e(sets: &DeSets, n: u64, cap: usize) -> Result<Vec<Partition>> {
    fn rec(
        parts: &[u64],
        d: u64,
        min_next: u64,
        rem: u64,
        stack: &mut Vec<u64>,
        out: &mut Vec<Partition>,
        cap: usize,
    ) -> Result<()> {
        if rem == 0 {
            if out.len() >= cap {
                return Err(Error::BudgetExceeded { cap });
            }
            out.push(Partition::from_ascending(stack.clone())?);
            return Ok(());
        }
        let start = parts.partition_point(|&x| x < min_next);
        for &x in &parts[start..] {
            if x > rem {
                break;
            }
            stack.push(x);
            rec(parts, d, x + e_gap(x, d), rem - x, stack, out, cap)?;
            stack.pop();
        }
        Ok(())
    }
    let parts = sets.gap_side.parts_up_to(n);
    let mut out = Vec::new();
    rec(&parts, sets.d, 1, n, &mut Vec::new(), &mut out, cap)?;
    Ok(out)
}

/// True when the increasing parts satisfy the gap-side conditions.
pub(crate) fn is_e_partition(sets: &DeSets, ascending: &[u64]) -> bool {
    ascending.iter().all(|&x| sets.gap_side.contains(x))
        && ascending
            .windows(2)
            .all(|w| w[1] >= w[0] + e_gap(w[0], sets.d))
}
