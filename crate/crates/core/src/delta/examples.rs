//! Fixed numerical facts: small-`n` constants used for moderate `d`, and the
//! families of parameters where a difference is known to go negative.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use super::{delta, gap_count, residue_count, DeltaKind};
use crate::error::{hypothesis, Result};
use crate::partitions::{count_gap, count_partset, GapSpec, QVariant, ResiduePartSpec};

/// Counts behind the small-`n` range `n <= 5d`, with pass flags against the
/// stated values 10, 20, 3 and the bound 3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallWeightConstants {
    pub d: u64,
    /// `Q_{d-2}^{(1,-)}(4d+1)`, stated to be 10.
    pub dash_at_4d_plus_1: u64,
    /// `Q_{d-2}^{(1,-)}(5d)`, stated to be 20.
    pub dash_at_5d: u64,
    /// `q_d^{(1)}(d+4)`, stated to be 3.
    pub gap_at_d_plus_4: u64,
    /// `max_{1<=n<=5d} Q_{d-3}^{(1,-,-)}(n)`, stated to be at most 3.
    pub dashdash_max: u64,
    pub dashdash_max_at: u64,
    pub values_match: bool,
    pub dashdash_bound_holds: bool,
}

impl SmallWeightConstants {
    pub fn passed(&self) -> bool {
        self.values_match && self.dashdash_bound_holds
    }
}

fn small(x: BigUint) -> u64 {
    u64::try_from(x).expect("small count")
}

pub fn small_weight_constants(d: u64) -> Result<SmallWeightConstants> {
    if d < 15 {
        return hypothesis(format!("the small-n constants need d >= 15 (got {d})"));
    }
    let dash = ResiduePartSpec::q(QVariant::Dash, d - 2, 1)?;
    let dashdash = ResiduePartSpec::q(QVariant::DashDash, d - 3, 1)?;
    let dash_at_4d_plus_1 = small(count_partset(&dash, 4 * d + 1));
    let dash_at_5d = small(count_partset(&dash, 5 * d));
    let gap_at_d_plus_4 = small(count_gap(&GapSpec::new(d, 1)?, d + 4));
    let (mut dashdash_max, mut dashdash_max_at) = (0, 1);
    for n in 1..=5 * d {
        let v = small(count_partset(&dashdash, n));
        if v > dashdash_max {
            dashdash_max = v;
            dashdash_max_at = n;
        }
    }
    Ok(SmallWeightConstants {
        d,
        dash_at_4d_plus_1,
        dash_at_5d,
        gap_at_d_plus_4,
        dashdash_max,
        dashdash_max_at,
        values_match: dash_at_4d_plus_1 == 10 && dash_at_5d == 20 && gap_at_d_plus_4 == 3,
        dashdash_bound_holds: dashdash_max <= 3,
    })
}

/// One instance of `Δ_{a+k-2}^{(a)}(2a+k+1) < 0` with `q = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StaircaseRow {
    pub a: u64,
    pub k: u64,
    pub d: u64,
    pub n: u64,
    pub q_count: String,
    #[serde(rename = "Q_count")]
    pub big_q_count: String,
    pub delta: String,
    pub ok: bool,
}

/// One instance of the five single-exclusion families where the difference
/// equals exactly `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub family: u8,
    pub a: u64,
    pub d: u64,
    pub b: u64,
    pub n: u64,
    pub delta: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub staircase: Vec<StaircaseRow>,
    pub families: Vec<FamilyRow>,
}

impl CounterexampleReport {
    pub fn passed(&self) -> bool {
        self.staircase.iter().all(|r| r.ok) && self.families.iter().all(|r| r.ok)
    }
}

/// `(d, b, n)` of family `f` at parameter `a`, and the least admissible `a`.
pub fn family_instance(family: u8, a: u64) -> Option<(u64, u64, u64, u64)> {
    let (d, b, n, min_a) = match family {
        1 => (3 * a - 3, 2 * a, 4 * a, 2),
        2 => (3 * a - 3, 2 * a, 6 * a, 4),
        3 => (5 * a - 3, 2 * a, 8 * a, 4),
        4 => (4 * a - 3, 3 * a, 9 * a, 4),
        5 => (5 * a - 3, 4 * a, 12 * a, 4),
        _ => return None,
    };
    Some((d, b, n, min_a))
}

/// Staircase over `4 <= a <= a_max`, `0 <= k <= k_max`; families over
/// `a <= family_a_max` from each family's least admissible `a`.
pub fn counterexample_grid(
    a_max: u64,
    k_max: u64,
    family_a_max: u64,
) -> Result<CounterexampleReport> {
    let mut staircase = Vec::new();
    for a in 4..=a_max {
        for k in 0..=k_max {
            let d = a + k - 2;
            let n = 2 * a + k + 1;
            let kind = DeltaKind::same(QVariant::Plain, a)?;
            let q = gap_count(&kind, d, n)?;
            let big_q = residue_count(&kind, d, n)?;
            let dl = BigInt::from(q.clone()) - BigInt::from(big_q.clone());
            staircase.push(StaircaseRow {
                a,
                k,
                d,
                n,
                ok: q == BigUint::from(1u8) && dl < BigInt::from(0),
                q_count: q.to_string(),
                big_q_count: big_q.to_string(),
                delta: dl.to_string(),
            });
        }
    }
    let mut families = Vec::new();
    for family in 1..=5u8 {
        let (_, _, _, min_a) = family_instance(family, 1).expect("known family");
        for a in min_a..=family_a_max {
            let (d, b, n, _) = family_instance(family, a).expect("known family");
            let dl = delta(&DeltaKind::same(QVariant::Dash, b)?, d, n)?;
            families.push(FamilyRow {
                family,
                a,
                d,
                b,
                n,
                ok: dl == BigInt::from(-1),
                delta: dl.to_string(),
            });
        }
    }
    Ok(CounterexampleReport {
        staircase,
        families,
    })
}

/// The default sample: staircase for `a <= 12`, `k <= 8`; families for
/// `a <= 8`.
pub fn counterexample_suite() -> CounterexampleReport {
    counterexample_grid(12, 8, 8).expect("fixed grid is admissible")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_for_stated_d() {
        for d in [15, 31, 40] {
            let c = small_weight_constants(d).unwrap();
            assert_eq!(
                (c.dash_at_4d_plus_1, c.dash_at_5d, c.gap_at_d_plus_4),
                (10, 20, 3),
                "d={d}"
            );
            assert_eq!(c.dashdash_max, 3);
            assert!(c.passed());
        }
        assert!(small_weight_constants(14).is_err());
    }

    #[test]
    fn suite_passes() {
        let r = counterexample_suite();
        assert!(r.passed());
        assert_eq!(r.staircase.len(), 9 * 9);
        let first = &r.staircase[0];
        assert_eq!((first.a, first.k, first.d, first.n), (4, 0, 2, 9));
        let f4 = r
            .families
            .iter()
            .find(|f| f.family == 4 && f.a == 4)
            .unwrap();
        assert_eq!((f4.d, f4.b, f4.n), (13, 12, 36));
        let f1 = r
            .families
            .iter()
            .find(|f| f.family == 1 && f.a == 2)
            .unwrap();
        assert_eq!((f1.d, f1.b, f1.n, f1.delta.as_str()), (3, 4, 8, "-1"));
    }
}
