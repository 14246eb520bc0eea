//! Executable injections and sign-reversing involutions, each paired with an
//! exhaustive checker that materializes the map on a small domain.
//!
//! Maps work on parts in increasing order internally (`λ_1 <= ... <= λ_s`)
//! and convert at the boundary; [`Partition`] itself stays nonincreasing.

mod de;
mod domination;
mod involution;
mod parity;
mod psi;
mod qstar;
mod st;

pub use de::{
    beta_d, binary_weight, d_count, de_counts, e_count, e_gap, enumerate_e, lowest_power, DeSets,
};
pub use domination::{ordered_domination, DominationReport};
pub use involution::{
    kg_inequality_check, InvolutionReport, InvolutionSetup, PhiReading, SignedPartition,
};
pub use parity::{check_parity_inject, parity_inject, parity_sets};
pub use psi::{check_psi, psi_map, AdmittedBy, PsiBranch, PsiReport, PsiSetup};
pub use qstar::{check_qstar, qstar_domain, qstar_inject};
pub use st::{check_st_inject, st_inject};

use std::collections::{BTreeMap, HashMap};
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::partitions::{PartSet, Partition};

/// One application of a map: input, the branch that fired, and the output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapTrace {
    pub input: Partition,
    pub branch: String,
    pub output: Partition,
    pub weight_delta: i64,
}

impl MapTrace {
    /// Fails with [`Error::Invariant`] unless the weights differ by exactly
    /// the declared delta.
    pub fn new(
        input: Partition,
        branch: impl Into<String>,
        output: Partition,
        weight_delta: i64,
    ) -> Result<Self> {
        let branch = branch.into();
        let actual = output.weight() as i128 - input.weight() as i128;
        if actual != weight_delta as i128 {
            return Err(Error::Invariant(format!(
                "branch {branch} changed weight by {actual}, declared {weight_delta}: {input} -> {output}"
            )));
        }
        Ok(Self {
            input,
            branch,
            output,
            weight_delta,
        })
    }
}

/// Writes one JSON object per line.
pub fn write_jsonl<'a, W: Write>(
    traces: impl IntoIterator<Item = &'a MapTrace>,
    mut out: W,
) -> io::Result<()> {
    for t in traces {
        serde_json::to_writer(&mut out, t)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

/// A strictly increasing sequence `x_1 < x_2 < ...`, materialized up to a
/// bound, optionally with a divisor `m` such that `m | x_i` and `x_1 = m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedPartSequence {
    terms: Vec<u64>,
    divisor: Option<u64>,
}

impl IndexedPartSequence {
    pub fn new(terms: Vec<u64>, divisor: Option<u64>) -> Result<Self> {
        if terms.first() == Some(&0) || terms.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("sequence must be strictly increasing and positive");
        }
        if let Some(m) = divisor {
            if m == 0 || terms.first() != Some(&m) || terms.iter().any(|x| x % m != 0) {
                return invalid(format!(
                    "divisor {m} must divide every term and equal the first term"
                ));
            }
        }
        Ok(Self { terms, divisor })
    }

    pub fn from_partset<P: PartSet + ?Sized>(
        spec: &P,
        bound: u64,
        divisor: Option<u64>,
    ) -> Result<Self> {
        Self::new(spec.parts_up_to(bound), divisor)
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn divisor(&self) -> Option<u64> {
        self.divisor
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Zero-based index of `x`, if present.
    pub fn index_of(&self, x: u64) -> Option<usize> {
        self.terms.binary_search(&x).ok()
    }

    pub fn get(&self, i: usize) -> Option<u64> {
        self.terms.get(i).copied()
    }
}

/// Outcome of running a map over an entire finite domain.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectionReport {
    pub map: String,
    pub params: String,
    pub domain_size: usize,
    pub branch_counts: BTreeMap<String, usize>,
    /// Pairs of distinct inputs with equal outputs, rendered as text.
    pub collisions: Vec<String>,
    /// Outputs failing the image predicate, or map errors on valid inputs.
    pub violations: Vec<String>,
}

impl InjectionReport {
    pub fn new(map: &str, params: String) -> Self {
        Self {
            map: map.to_string(),
            params,
            ..Self::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.collisions.is_empty() && self.violations.is_empty()
    }
}

/// Keeps the first preimage of each output and records collisions.
pub(crate) struct ImageTracker {
    seen: HashMap<Partition, Partition>,
}

impl ImageTracker {
    pub(crate) fn new() -> Self {
        Self {
            seen: HashMap::new(),
        }
    }

    pub(crate) fn record(&mut self, trace: &MapTrace, report: &mut InjectionReport) {
        report.domain_size += 1;
        *report
            .branch_counts
            .entry(trace.branch.clone())
            .or_insert(0) += 1;
        if let Some(prev) = self.seen.get(&trace.output) {
            report.collisions.push(format!(
                "{} and {} both map to {}",
                prev, trace.input, trace.output
            ));
        } else {
            self.seen.insert(trace.output.clone(), trace.input.clone());
        }
    }
}

/// Partitions of `n` from `ascending_parts`, where `distinct[i]` limits part
/// `i` to multiplicity one. Output order matches the crate's enumerators.
pub(crate) fn enumerate_mixed(
    ascending_parts: &[(u64, bool)],
    n: u64,
    cap: usize,
) -> Result<Vec<Partition>> {
    fn rec(
        desc: &[(u64, bool)],
        start: usize,
        rem: u64,
        stack: &mut Vec<u64>,
        out: &mut Vec<Partition>,
        cap: usize,
    ) -> Result<()> {
        if rem == 0 {
            if out.len() >= cap {
                return Err(Error::BudgetExceeded { cap });
            }
            out.push(Partition::new(stack.clone())?);
            return Ok(());
        }
        for (j, &(p, distinct)) in desc.iter().enumerate().skip(start) {
            if p > rem {
                continue;
            }
            stack.push(p);
            let next = if distinct { j + 1 } else { j };
            rec(desc, next, rem - p, stack, out, cap)?;
            stack.pop();
        }
        Ok(())
    }
    let mut desc: Vec<(u64, bool)> = ascending_parts.to_vec();
    desc.sort_by_key(|p| std::cmp::Reverse(p.0));
    if desc.windows(2).any(|w| w[0].0 == w[1].0) {
        return invalid("part list contains a repeated value");
    }
    let mut out = Vec::new();
    rec(&desc, 0, n, &mut Vec::new(), &mut out, cap)?;
    Ok(out)
}
