//! Injection from gap-side partitions of `n - 2^r` into gap partitions of
//! `n` with parts `>= a` that are not gap-side partitions of `n`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::de::{beta_d, is_e_partition, DeSets};
use super::{enumerate_e, ImageTracker, InjectionReport, MapTrace};
use crate::error::{hypothesis, Error, Result};
use crate::partitions::Partition;
use crate::qseries::power_bound_exponent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PsiBranch {
    Z,
    V1,
    V2,
    V31,
    V32,
    V33,
    V34,
    V35,
}

impl PsiBranch {
    pub fn as_str(&self) -> &'static str {
        match self {
            PsiBranch::Z => "Z",
            PsiBranch::V1 => "V1",
            PsiBranch::V2 => "V2",
            PsiBranch::V31 => "V3.1",
            PsiBranch::V32 => "V3.2",
            PsiBranch::V33 => "V3.3",
            PsiBranch::V34 => "V3.4",
            PsiBranch::V35 => "V3.5",
        }
    }
}

impl fmt::Display for PsiBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which lower bound on `n` admits an instance: the older `n >= 4d + 2^r`,
/// or only the weaker `n >= 2d + 2^r + 2^{a-1} - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AdmittedBy {
    Original,
    Relaxed,
}

/// Parameters shared by every application at fixed `(a, d)`.
#[derive(Clone, Debug)]
pub struct PsiSetup {
    a: u64,
    d: u64,
    pow: u64,
    sets: DeSets,
}

impl PsiSetup {
    pub fn new(a: u64, d: u64) -> Result<Self> {
        if a < 3 {
            return hypothesis(format!("need a >= 3 (got a={a})"));
        }
        if a > 40 || d < (1u64 << (a + 2)) {
            return hypothesis(format!("need d >= 2^(a+2) (got a={a}, d={d})"));
        }
        let r = power_bound_exponent(d, a)?;
        let pow = 1u64 << r;
        let h = 1u64 << (a - 1);
        if d == pow - h {
            return hypothesis(format!("d = 2^r - 2^(a-1) = {d} is excluded"));
        }
        let sets = DeSets::new(d, (a - 1) as u32, r)?;
        Ok(Self { a, d, pow, sets })
    }

    /// `2^r`.
    pub fn shift(&self) -> u64 {
        self.pow
    }

    pub fn min_n(&self) -> u64 {
        2 * self.d + self.pow + (1u64 << (self.a - 1)) - 1
    }

    pub fn admitted_by(&self, n: u64) -> Option<AdmittedBy> {
        if n >= 4 * self.d + self.pow {
            Some(AdmittedBy::Original)
        } else if n >= self.min_n() {
            Some(AdmittedBy::Relaxed)
        } else {
            None
        }
    }

    /// The domain at `n`: gap-side partitions of `n - 2^r`.
    pub fn domain(&self, n: u64, cap: usize) -> Result<Vec<Partition>> {
        self.check_n(n)?;
        enumerate_e(&self.sets, n - self.pow, cap)
    }

    fn check_n(&self, n: u64) -> Result<()> {
        if self.admitted_by(n).is_none() {
            return hypothesis(format!("need n >= {} (got n={n})", self.min_n()));
        }
        Ok(())
    }

    fn beta(&self, x: u64) -> u64 {
        beta_d(x, self.d)
    }

    /// `λ_j - β_d(λ_j)`, the multiple of `d` below a part.
    fn floor_d(&self, x: u64) -> u64 {
        x - self.beta(x)
    }

    /// Least `i` (zero-based) with a jump of at least `2d` between
    /// consecutive floors, or the last index.
    fn floor_jump(&self, l: &[u64]) -> usize {
        (0..l.len() - 1)
            .find(|&i| self.floor_d(l[i + 1]) - self.floor_d(l[i]) >= 2 * self.d)
            .unwrap_or(l.len() - 1)
    }

    fn classify(&self, l: &[u64]) -> Result<(PsiBranch, Vec<u64>)> {
        let (d, pow, h) = (self.d, self.pow, 1u64 << (self.a - 1));
        let s = l.len();
        // Z, taking the gap after the largest part to be infinite.
        let z = (0..s).find(|&i| {
            let wide = i + 1 == s || l[i + 1] - l[i] >= 2 * d;
            wide && self.beta(l[i]) + pow <= d
        });
        if let Some(i) = z {
            let mut mu = l.to_vec();
            mu[i] += pow;
            return Ok((PsiBranch::Z, mu));
        }
        if l[0] >= 2 * d + h - 1 {
            let mut mu = vec![pow];
            mu.extend_from_slice(l);
            return Ok((PsiBranch::V1, mu));
        }
        if s < 2 {
            return Err(Error::Invariant(format!(
                "single part {} below 2d + 2^(a-1) - 1 outside Z",
                l[0]
            )));
        }
        if l[0] >= d {
            let i = self.floor_jump(l);
            let mut mu = Vec::with_capacity(s + 1);
            mu.push(self.beta(l[0]));
            for j in 1..=i {
                mu.push(self.floor_d(l[j - 1]) + self.beta(l[j]));
            }
            mu.push(self.floor_d(l[i]) + pow);
            mu.extend_from_slice(&l[i + 1..]);
            return Ok((PsiBranch::V2, mu));
        }
        let f2 = self.floor_d(l[1]);
        let mut mu;
        let branch = if f2 >= 6 * d {
            mu = vec![pow - 1, 2 * d + self.beta(l[0]), l[1] - 2 * d + 1];
            mu.extend_from_slice(&l[2..]);
            PsiBranch::V31
        } else if f2 == 4 * d || f2 == 5 * d {
            mu = vec![l[0], d + pow - 1, l[1] - d + 1];
            mu.extend_from_slice(&l[2..]);
            PsiBranch::V32
        } else if f2 == 3 * d {
            mu = vec![h - 1, d + l[0] + 1, l[1] + pow - d - h];
            mu.extend_from_slice(&l[2..]);
            PsiBranch::V33
        } else if f2 == 2 * d {
            let first = pow.checked_sub(l[0] + 1).ok_or_else(|| {
                Error::Invariant(format!("smallest part {} is at least 2^r", l[0]))
            })?;
            mu = l.to_vec();
            mu[0] = first;
            mu[s - 1] += 2 * l[0] + 1;
            PsiBranch::V34
        } else if f2 == d {
            let i = self.floor_jump(l);
            let x = if matches!(self.beta(l[i - 1]), 1 | 4) {
                10
            } else {
                5
            };
            mu = l.to_vec();
            mu[i - 1] += x;
            mu[i] += x;
            mu[s - 1] = (mu[s - 1] + pow).checked_sub(2 * x).ok_or_else(|| {
                Error::Invariant("largest part too small for the V3.5 shift".into())
            })?;
            PsiBranch::V35
        } else {
            return Err(Error::Invariant(format!(
                "second part {} has floor {f2}, not a positive multiple of d",
                l[1]
            )));
        };
        Ok((branch, mu))
    }

    /// Applies the map, checking the image contract before returning.
    pub fn map(&self, n: u64, lambda: &Partition) -> Result<MapTrace> {
        self.check_n(n)?;
        let up = lambda.ascending();
        if lambda.weight() + self.pow != n || up.is_empty() || !is_e_partition(&self.sets, &up) {
            return Err(Error::Domain(format!(
                "{lambda} is not a gap-side partition of {}",
                n.saturating_sub(self.pow)
            )));
        }
        let (branch, mu) = self.classify(&up)?;
        if mu.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invariant(format!(
                "{branch} produced non-increasing parts {mu:?} from {lambda}"
            )));
        }
        let out = Partition::from_ascending(mu.clone())?;
        let trace = MapTrace::new(lambda.clone(), branch.as_str(), out, self.pow as i64)?;
        if mu[0] < self.a || trace.output.min_gap().is_some_and(|g| g < self.d) {
            return Err(Error::Invariant(format!(
                "{branch} sends {lambda} to {}, outside the gap-{} set with parts >= {}",
                trace.output, self.d, self.a
            )));
        }
        if is_e_partition(&self.sets, &mu) {
            return Err(Error::Invariant(format!(
                "{branch} sends {lambda} to {}, which is itself on the gap side",
                trace.output
            )));
        }
        Ok(trace)
    }
}

pub fn psi_map(a: u64, d: u64, n: u64, lambda: &Partition) -> Result<MapTrace> {
    PsiSetup::new(a, d)?.map(n, lambda)
}

/// Exhaustive report, with instances counted by the bound that admits them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiReport {
    pub injection: InjectionReport,
    pub admitted: BTreeMap<AdmittedBy, usize>,
}

impl PsiReport {
    pub fn passed(&self) -> bool {
        self.injection.passed()
    }
}

/// Every `n` from the least admissible value to `n_max`.
pub fn check_psi(a: u64, d: u64, n_max: u64, cap: usize) -> Result<PsiReport> {
    let setup = PsiSetup::new(a, d)?;
    let mut injection = InjectionReport::new("psi-map", format!("a={a}, d={d}, n<={n_max}"));
    let mut admitted = BTreeMap::new();
    for n in setup.min_n()..=n_max {
        let by = setup.admitted_by(n).expect("n at least the least bound");
        let mut tracker = ImageTracker::new();
        for lambda in setup.domain(n, cap)? {
            *admitted.entry(by).or_insert(0) += 1;
            match setup.map(n, &lambda) {
                Ok(trace) => tracker.record(&trace, &mut injection),
                Err(e) => injection.violations.push(format!("n={n}, {lambda}: {e}")),
            }
        }
    }
    Ok(PsiReport {
        injection,
        admitted,
    })
}
