//! A cascade of sign-reversing involutions on signed partitions, used to
//! show that one product's coefficients dominate another's.
//!
//! The signed set consists of partitions of `n` into
//! - unrestricted parts `≡ 2^{a-1}, d+2^{a-1}, d+2^a, ..., d+2^{r-2} (mod 2d)`,
//!   never using the part `d+2^{a-1}` itself,
//! - distinct parts `≡ d+2^{r-1} (mod 2d)`,
//! - distinct parts `≡ 2^r (mod 4d)` of size at least `4d+2^r`, each of
//!   which flips the sign.
//!
//! The unsigned subset drops the second and third unrestricted families.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::enumerate_mixed;
use crate::error::{hypothesis, invalid, Error, Result};
use crate::partitions::Partition;
use crate::qseries::{gf_fkg, power_bound_exponent, FkgSeries};

/// How to read the replacement parts in the tables for `t >= a`. The
/// printed tables use `2^{r-a}` copies of `xd + 2^a`; the consistent reading
/// substitutes `2^{r-t}` and `2^t`, matching the selectors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhiReading {
    #[default]
    Literal,
    Consistent,
}

impl std::str::FromStr for PhiReading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(PhiReading::Literal),
            "consistent" => Ok(PhiReading::Consistent),
            other => invalid(format!("unknown reading {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPartition {
    pub partition: Partition,
    /// `+1` or `-1`.
    pub sign: i8,
}

/// Fixed `(a, d)` data: `r`, `α = d + 2^r - 2^{a-1}` and the part classes.
#[derive(Clone, Debug)]
pub struct InvolutionSetup {
    a: u32,
    d: u64,
    r: u32,
    pow: u64,
    h: u64,
    alpha: u64,
    reading: PhiReading,
    /// Set when `d = 2^r - 2^{a-1}`, admitted only while no signed part fits.
    boundary: bool,
}

/// Multiset of parts with checked removal.
struct Parts(BTreeMap<u64, u64>);

impl Parts {
    fn m(&self, j: u64) -> u64 {
        self.0.get(&j).copied().unwrap_or(0)
    }

    fn remove(&mut self, j: u64, k: u64) -> Result<()> {
        let have = self.m(j);
        if have < k {
            return Err(Error::Invariant(format!(
                "branch removes {k} copies of {j} but only {have} present"
            )));
        }
        if have == k {
            self.0.remove(&j);
        } else {
            self.0.insert(j, have - k);
        }
        Ok(())
    }

    fn add(&mut self, j: u64, k: u64) {
        if k > 0 {
            *self.0.entry(j).or_insert(0) += k;
        }
    }
}

impl InvolutionSetup {
    /// `n_max` matters only for `d = 2^r - 2^{a-1}`: that value is excluded
    /// in general but admitted when every `n <= n_max` is below the smallest
    /// signed part `4d + 2^r`, where the two part classes cannot meet.
    pub fn new(a: u64, d: u64, n_max: u64, reading: PhiReading) -> Result<Self> {
        if a == 0 || a > 40 {
            return invalid(format!("need 1 <= a <= 40 (got a={a})"));
        }
        let h = 1u64 << (a - 1);
        if d < 4 * h {
            return hypothesis(format!("need d >= 2^(a+1) (got a={a}, d={d})"));
        }
        if d % h != 0 {
            return hypothesis(format!(
                "need 2^(a-1) | d so that α/2^(a-1) is an integer (got d={d})"
            ));
        }
        let r = power_bound_exponent(d, a)?;
        let pow = 1u64 << r;
        let boundary = d == pow - h;
        if boundary && n_max >= 4 * d + pow {
            return hypothesis(format!(
                "d = 2^r - 2^(a-1) = {d} is excluded once n reaches {}",
                4 * d + pow
            ));
        }
        Ok(Self {
            a: a as u32,
            d,
            r,
            pow,
            h,
            alpha: d + pow - h,
            reading,
            boundary,
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn is_boundary(&self) -> bool {
        self.boundary
    }

    /// The range of stage indices `a-1 ..= r-2`.
    pub fn stages(&self) -> std::ops::RangeInclusive<u32> {
        self.a - 1..=self.r - 2
    }

    fn unrestricted_residues(&self, signed_side: bool) -> Vec<u64> {
        let mut v = vec![self.h];
        if signed_side {
            v.push(self.d + self.h);
        }
        v.extend((self.a..=self.r - 2).map(|i| self.d + (1u64 << i)));
        v
    }

    fn is_signed_part(&self, x: u64) -> bool {
        x >= 4 * self.d + self.pow && x % (4 * self.d) == self.pow
    }

    fn part_list(&self, n: u64, signed_side: bool) -> Vec<(u64, bool)> {
        let res = self.unrestricted_residues(signed_side);
        let m2 = 2 * self.d;
        let distinct_res = self.d + (1u64 << (self.r - 1));
        (1..=n)
            .filter_map(|x| {
                if (signed_side && self.is_signed_part(x)) || x % m2 == distinct_res {
                    Some((x, true))
                } else if res.contains(&(x % m2)) && x != self.d + self.h {
                    Some((x, false))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Every element of the signed set at `n`.
    pub fn enumerate_s(&self, n: u64, cap: usize) -> Result<Vec<SignedPartition>> {
        enumerate_mixed(&self.part_list(n, true), n, cap)?
            .into_iter()
            .map(|p| self.signed(p))
            .collect()
    }

    /// Every element of the unsigned subset at `n`.
    pub fn enumerate_t(&self, n: u64, cap: usize) -> Result<Vec<Partition>> {
        enumerate_mixed(&self.part_list(n, false), n, cap)
    }

    pub fn in_s(&self, p: &Partition) -> bool {
        self.membership(p, true)
    }

    pub fn in_t(&self, p: &Partition) -> bool {
        self.membership(p, false)
    }

    fn membership(&self, p: &Partition, signed_side: bool) -> bool {
        let allowed: BTreeMap<u64, bool> = self
            .part_list(p.largest().unwrap_or(0), signed_side)
            .into_iter()
            .collect();
        p.multiplicities()
            .iter()
            .all(|(x, &k)| allowed.get(x).is_some_and(|&distinct| !distinct || k == 1))
    }

    pub fn signed(&self, partition: Partition) -> Result<SignedPartition> {
        if !self.in_s(&partition) {
            return Err(Error::Domain(format!(
                "{partition} is not in the signed set"
            )));
        }
        let flips = partition
            .parts()
            .iter()
            .filter(|&&x| self.is_signed_part(x))
            .count();
        Ok(SignedPartition {
            partition,
            sign: if flips % 2 == 0 { 1 } else { -1 },
        })
    }

    /// Smallest `i >= 1` in the iterator order with `f(i)` a part of `π`.
    fn first_with(
        &self,
        p: &Parts,
        odd_only: bool,
        f: impl Fn(u64) -> u64,
        cond: impl Fn(&Parts, u64) -> bool,
        after: u64,
    ) -> Option<u64> {
        let top = p.0.keys().next_back().copied().unwrap_or(0);
        let mut i = after + 1;
        if odd_only && i % 2 == 0 {
            i += 1;
        }
        let step = if odd_only { 2 } else { 1 };
        while f(i) <= top {
            if cond(p, f(i)) {
                return Some(i);
            }
            i += step;
        }
        None
    }

    /// One stage. Returns the branch label and the image, or `None` at a
    /// fixed point.
    fn stage(&self, t: u32, pi: &Partition) -> Result<Option<(&'static str, Partition)>> {
        let (d, pow, h) = (self.d, self.pow, self.h);
        let mut p = Parts(pi.multiplicities());
        let present = |p: &Parts, j: u64| p.m(j) > 0;
        let copies_h = self.alpha / h;
        let enough_h = p.m(h) >= copies_h;
        let lt = |a: Option<u64>, b: Option<u64>| match (a, b) {
            (Some(a), Some(b)) => a < b,
            (Some(_), None) => true,
            (None, _) => false,
        };

        if t == self.a - 1 {
            let k = 1u64 << (self.r - t);
            let x = self.first_with(&p, false, |i| k * i * d + pow, present, 0);
            let y = self.first_with(&p, false, |j| (k * j - 1) * d + h, present, 0);
            let z =
                y.and_then(|y| self.first_with(&p, false, |l| l * d + h, |p, v| p.m(v) >= k, y));
            let branch = if let Some(x) = x.filter(|_| !lt(y, x)) {
                p.remove(k * x * d + pow, 1)?;
                p.add((k * x - 1) * d + h, 1);
                p.add(h, copies_h);
                "split-to-small"
            } else if lt(y, x) && enough_h {
                let y = y.unwrap();
                p.remove((k * y - 1) * d + h, 1)?;
                p.remove(h, copies_h)?;
                p.add(k * y * d + pow, 1);
                "merge-from-small"
            } else if let Some(x) = x.filter(|_| lt(y, x) && !lt(z, x)) {
                p.remove(k * x * d + pow, 1)?;
                p.add(x * d + h, k);
                "split-to-copies"
            } else if lt(y, x) && lt(z, x) {
                let z = z.unwrap();
                p.remove(z * d + h, k)?;
                p.add(k * z * d + pow, 1);
                "merge-copies"
            } else {
                return Ok(None);
            };
            return Ok(Some((branch, Partition::from_multiplicities(&p.0)?)));
        }

        let k = 1u64 << (self.r - t);
        let two_t = 1u64 << t;
        let (rk, rpart) = match self.reading {
            PhiReading::Consistent => (k, two_t),
            PhiReading::Literal => (1u64 << (self.r - self.a), 1u64 << self.a),
        };
        let u = self.first_with(&p, false, |q| (2 * k * q - 1) * d + h, present, 0);
        let x = self.first_with(&p, true, |i| k * i * d + pow, present, 0);
        let y = self.first_with(&p, true, |j| (k * j - 1) * d + h, present, 0);
        let w = self.first_with(&p, true, |l| l * d + two_t, |p, v| p.m(v) >= k, 0);
        let z = y.and_then(|y| self.first_with(&p, true, |l| l * d + two_t, |p, v| p.m(v) >= k, y));
        let branch = if u.is_some() {
            if let Some(x) = x.filter(|_| !lt(w, x)) {
                p.remove(rk * x * d + pow, 1)?;
                p.add(x * d + rpart, rk);
                "u-split-to-copies"
            } else if let Some(w) = w.filter(|_| lt(w, x)) {
                p.remove(w * d + rpart, rk)?;
                p.add(rk * w * d + pow, 1);
                "u-merge-copies"
            } else {
                return Ok(None);
            }
        } else if let Some(x) = x.filter(|_| !lt(y, x)) {
            p.remove(rk * x * d + pow, 1)?;
            p.add((rk * x - 1) * d + h, 1);
            p.add(h, copies_h);
            "split-to-small"
        } else if lt(y, x) && enough_h {
            let y = y.unwrap();
            p.remove((rk * y - 1) * d + h, 1)?;
            p.remove(h, copies_h)?;
            p.add(rk * y * d + pow, 1);
            "merge-from-small"
        } else if let Some(x) = x.filter(|_| lt(y, x) && !lt(z, x)) {
            p.remove(rk * x * d + pow, 1)?;
            p.add(x * d + rpart, rk);
            "split-to-copies"
        } else if lt(y, x) && lt(z, x) {
            let z = z.unwrap();
            p.remove(z * d + rpart, rk)?;
            p.add(rk * z * d + pow, 1);
            "merge-copies"
        } else {
            return Ok(None);
        };
        Ok(Some((branch, Partition::from_multiplicities(&p.0)?)))
    }

    /// `φ_t(π)`. Errors with [`Error::Domain`] if `π` already moves at an
    /// earlier stage.
    pub fn phi(&self, t: u32, pi: &SignedPartition) -> Result<SignedPartition> {
        if !self.stages().contains(&t) {
            return invalid(format!("stage t={t} outside {:?}", self.stages()));
        }
        for j in self.a - 1..t {
            if self.stage(j, &pi.partition)?.is_some() {
                return Err(Error::Domain(format!(
                    "{} lies in stratum {j}, before stage {t}",
                    pi.partition
                )));
            }
        }
        match self.stage(t, &pi.partition)? {
            Some((_, out)) => self.image(out),
            None => Ok(pi.clone()),
        }
    }

    fn image(&self, out: Partition) -> Result<SignedPartition> {
        self.signed(out.clone())
            .map_err(|_| Error::Invariant(format!("image {out} leaves the signed set")))
    }

    /// The full map: the first stage that moves `π`, with its branch.
    pub fn cascade(
        &self,
        pi: &SignedPartition,
    ) -> Result<Option<(u32, &'static str, SignedPartition)>> {
        for t in self.stages() {
            if let Some((branch, out)) = self.stage(t, &pi.partition)? {
                return Ok(Some((t, branch, self.image(out)?)));
            }
        }
        Ok(None)
    }
}

/// Everything checked for one `(a, d)` up to `n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionReport {
    pub a: u64,
    pub d: u64,
    pub n_max: u64,
    pub reading: PhiReading,
    pub boundary: bool,
    /// Elements moved at each stage, summed over `n`.
    pub stratum_sizes: BTreeMap<u32, usize>,
    pub branch_counts: BTreeMap<String, usize>,
    pub signed_total: usize,
    pub unsigned_total: usize,
    /// First `n` where the series coefficients of the two sides fail
    /// `K(n) >= G(n)`.
    pub series_violation: Option<u64>,
    pub violations: Vec<String>,
}

impl InvolutionReport {
    pub fn passed(&self) -> bool {
        self.series_violation.is_none() && self.violations.is_empty()
    }
}

/// Checks the coefficient inequality by series to `n_max`, and for every
/// `n <= n_max` enumerates both sets, runs the cascade, and verifies the
/// involution, sign reversal, both stratification inclusions and both
/// cardinalities against the series.
pub fn kg_inequality_check(
    a: u64,
    d: u64,
    n_max: u64,
    reading: PhiReading,
    cap: usize,
) -> Result<InvolutionReport> {
    let setup = InvolutionSetup::new(a, d, n_max, reading)?;
    let bound = n_max as usize;
    let k = gf_fkg(FkgSeries::K, d, a, bound)?;
    let g = gf_fkg(FkgSeries::G, d, a, bound)?;
    let mut report = InvolutionReport {
        a,
        d,
        n_max,
        reading,
        boundary: setup.is_boundary(),
        stratum_sizes: BTreeMap::new(),
        branch_counts: BTreeMap::new(),
        signed_total: 0,
        unsigned_total: 0,
        series_violation: (0..=bound)
            .find(|&n| k.coeff(n) < g.coeff(n))
            .map(|n| n as u64),
        violations: Vec::new(),
    };
    let v = &mut report.violations;
    for n in 0..=n_max {
        let s = setup.enumerate_s(n, cap)?;
        let t = setup.enumerate_t(n, cap)?;
        report.signed_total += s.len();
        report.unsigned_total += t.len();
        let net: i64 = s.iter().map(|p| i64::from(p.sign)).sum();
        if BigInt::from(net) != *k.coeff(n as usize) {
            v.push(format!(
                "n={n}: signed count {net} but series gives {}",
                k.coeff(n as usize)
            ));
        }
        if BigInt::from(t.len()) != *g.coeff(n as usize) {
            v.push(format!(
                "n={n}: unsigned count {} but series gives {}",
                t.len(),
                g.coeff(n as usize)
            ));
        }
        for pi in &s {
            match setup.cascade(pi) {
                Ok(Some((stage, branch, img))) => {
                    *report.stratum_sizes.entry(stage).or_insert(0) += 1;
                    *report.branch_counts.entry(branch.to_string()).or_insert(0) += 1;
                    if img.sign != -pi.sign {
                        v.push(format!(
                            "n={n}: {} -> {} keeps its sign",
                            pi.partition, img.partition
                        ));
                    }
                    match setup.cascade(&img) {
                        Ok(Some((back_stage, _, back))) if back_stage == stage && back == *pi => {}
                        Ok(other) => v.push(format!(
                            "n={n}: stage {stage} sends {} to {}, which returns {:?}",
                            pi.partition,
                            img.partition,
                            other.map(|(s, _, b)| (s, b.partition.to_string()))
                        )),
                        Err(e) => v.push(format!("n={n}: image {}: {e}", img.partition)),
                    }
                }
                Ok(None) if pi.sign < 0 => {
                    v.push(format!(
                        "n={n}: negative {} is fixed by every stage",
                        pi.partition
                    ));
                }
                Ok(None) => {}
                Err(e) => v.push(format!("n={n}: {}: {e}", pi.partition)),
            }
        }
        for p in t {
            match setup.signed(p.clone()) {
                Ok(sp) => match setup.cascade(&sp) {
                    Ok(None) => {}
                    Ok(Some((stage, _, _))) => {
                        v.push(format!("n={n}: unsigned {p} moves at stage {stage}"));
                    }
                    Err(e) => v.push(format!("n={n}: unsigned {p}: {e}")),
                },
                Err(_) => v.push(format!("n={n}: unsigned {p} is not in the signed set")),
            }
        }
    }
    Ok(report)
}
