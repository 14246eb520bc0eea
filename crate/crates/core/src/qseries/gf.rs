//! Generating functions for every counting function in the crate.

use serde::{Deserialize, Serialize};

use super::{PochhammerFactor, TruncatedSeries};
use crate::error::{invalid, Result};
use crate::partitions::{GapSpec, QVariant};

/// `sum_k q^{d*k(k-1)/2 + k*a} / (q;q)_k`, truncated at `bound`.
///
/// The sum stops at the largest `k` with `d*k(k-1)/2 + k*a <= bound`.
pub fn gf_gap(spec: &GapSpec, bound: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(bound);
    // inv_k = 1/(q;q)_k, grown one factor at a time.
    let mut inv_k = TruncatedSeries::one(bound);
    let mut k = 0u64;
    while let Some(offset) = spec.min_weight(k).filter(|&w| w <= bound as u64) {
        if k > 0 {
            inv_k.div_binomial(k, false);
        }
        out = out
            .add(&inv_k.shift(offset as usize))
            .expect("equal bounds");
        k += 1;
    }
    out
}

/// Generating function of `Q_d^{(b)}`, `Q_d^{(b,-)}` or `Q_d^{(b,-,-)}`.
pub fn gf_q(variant: QVariant, d: u64, b: u64, bound: usize) -> Result<TruncatedSeries> {
    if b == 0 || b > d + 2 {
        return invalid(format!("b = {b} must lie in 1..={}", d + 2));
    }
    gf_q_modulus(variant, d + 3, b, bound)
}

/// Same as [`gf_q`] but takes the modulus `d + 3` directly, so moduli 2 and
/// 3 are expressible.
///
/// When `2b` equals the modulus the classes `b` and `-b` coincide and the
/// single-product form is used for every variant.
pub fn gf_q_modulus(
    variant: QVariant,
    modulus: u64,
    b: u64,
    bound: usize,
) -> Result<TruncatedSeries> {
    if modulus < 2 || b == 0 || b >= modulus {
        return invalid(format!("residue {b} is not in 1..{modulus}"));
    }
    let m = modulus;
    let starts: Vec<u64> = if 2 * b == m {
        match variant {
            QVariant::Plain => vec![b],
            QVariant::Dash | QVariant::DashDash => vec![m + b],
        }
    } else {
        match variant {
            QVariant::Plain => vec![m - b, b],
            QVariant::Dash => vec![2 * m - b, b],
            QVariant::DashDash => vec![2 * m - b, m + b],
        }
    };
    let mut s = TruncatedSeries::one(bound);
    for start in starts {
        s.apply_factor_in_place(&PochhammerFactor::poch(start, m).inverse());
    }
    Ok(s)
}

/// Largest `r` with `2^r - 2^{a-1} <= d`.
pub fn power_bound_exponent(d: u64, a: u64) -> Result<u32> {
    if d == 0 || a == 0 || a > 62 {
        return invalid(format!("need d >= 1 and 1 <= a <= 62 (got d={d}, a={a})"));
    }
    let h = 1u64 << (a - 1);
    let Some(top) = d.checked_add(h) else {
        return invalid(format!("d = {d} is too large"));
    };
    Ok(top.ilog2())
}

/// Which of the three product families to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FkgSeries {
    /// Distinct parts congruent to `2^{a-1}, ..., 2^{r-1}` modulo `d`.
    F,
    K,
    G,
}

struct Ladder {
    d: u64,
    h: u64,
    r: u32,
    a: u32,
}

fn ladder(d: u64, a: u64) -> Result<Ladder> {
    let r = power_bound_exponent(d, a)?;
    if u64::from(r) < a {
        return invalid(format!(
            "r = {r} is below a = {a} for d = {d}; the products are empty"
        ));
    }
    Ok(Ladder {
        d,
        h: 1 << (a - 1),
        r,
        a: a as u32,
    })
}

pub fn gf_fkg(which: FkgSeries, d: u64, a: u64, bound: usize) -> Result<TruncatedSeries> {
    let l = ladder(d, a)?;
    let mut s = TruncatedSeries::one(bound);
    match which {
        FkgSeries::F => {
            for i in (l.a - 1)..l.r {
                s.apply_factor_in_place(&PochhammerFactor::poch_neg(1 << i, l.d));
            }
        }
        FkgSeries::K => {
            s.mul_binomial(l.d + l.h, false);
            s.div_binomial(l.h, false);
            for i in (l.a - 1)..l.r {
                s.apply_factor_in_place(&PochhammerFactor::poch_neg(l.d + (1 << i), l.d));
            }
        }
        FkgSeries::G => {
            s.apply_factor_in_place(&PochhammerFactor::poch_neg(l.d + (1 << (l.r - 1)), 2 * l.d));
            s.apply_factor_in_place(&PochhammerFactor::poch(l.h, 2 * l.d).inverse());
            for i in l.a..l.r.saturating_sub(1) {
                s.apply_factor_in_place(&PochhammerFactor::poch(l.d + (1 << i), 2 * l.d).inverse());
            }
        }
    }
    Ok(s)
}

/// The `k` series in its fully telescoped product form, with the signed
/// factor `(q^{4d+2^r}; q^{4d})_∞` in the numerator.
pub fn k_rewritten(d: u64, a: u64, bound: usize) -> Result<TruncatedSeries> {
    let l = ladder(d, a)?;
    let two_r = 1u64 << l.r;
    let mut s = TruncatedSeries::one(bound);
    s.apply_factor_in_place(&PochhammerFactor::poch(4 * l.d + two_r, 4 * l.d));
    s.apply_factor_in_place(&PochhammerFactor::poch_neg(l.d + (1 << (l.r - 1)), 2 * l.d));
    s.apply_factor_in_place(&PochhammerFactor::poch(l.h, 2 * l.d).inverse());
    s.apply_factor_in_place(&PochhammerFactor::poch(3 * l.d + l.h, 2 * l.d).inverse());
    for i in l.a..l.r.saturating_sub(1) {
        s.apply_factor_in_place(&PochhammerFactor::poch(l.d + (1 << i), 2 * l.d).inverse());
    }
    Ok(s)
}

/// `(1 + q^{2^r}) f - k`.
pub fn fk_difference(d: u64, a: u64, bound: usize) -> Result<TruncatedSeries> {
    let r = power_bound_exponent(d, a)?;
    let f = gf_fkg(FkgSeries::F, d, a, bound)?;
    let k = gf_fkg(FkgSeries::K, d, a, bound)?;
    let mut one_plus = TruncatedSeries::one(bound);
    one_plus.mul_binomial(1 << r, true);
    one_plus.mul(&f)?.sub(&k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{
        count_gap, count_mixed, count_partset, count_partset_distinct, ExplicitPartSpec,
        ResiduePartSpec,
    };
    use num_bigint::{BigInt, BigUint};
    use num_traits::One;

    fn c(s: &TruncatedSeries, n: usize) -> BigInt {
        s.coeff(n).clone()
    }

    fn int(x: BigUint) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn gap_examples() {
        let s = gf_gap(&GapSpec::new(2, 1).unwrap(), 20);
        assert_eq!(c(&s, 9), BigInt::from(5));
        assert_eq!(c(&s, 0), BigInt::one());
        let s = gf_gap(&GapSpec::new(2, 2).unwrap(), 20);
        assert_eq!(c(&s, 7), BigInt::from(2));
    }

    #[test]
    fn q_examples() {
        let s = gf_q(QVariant::Plain, 2, 1, 20).unwrap();
        assert_eq!(c(&s, 9), BigInt::from(5));
        let s = gf_q(QVariant::Dash, 2, 2, 20).unwrap();
        assert_eq!(c(&s, 7), BigInt::from(1));
        let s = gf_q(QVariant::DashDash, 3, 4, 20).unwrap();
        assert_eq!(c(&s, 0), BigInt::one());
        assert!(gf_q(QVariant::Plain, 3, 6, 10).is_err());
        assert!(gf_q(QVariant::Plain, 3, 0, 10).is_err());
    }

    #[test]
    fn odd_and_distinct_factors() {
        let odd = ExplicitPartSpec::residue_union(2, [1], []).unwrap();
        let s = TruncatedSeries::one(10).apply_factor(&PochhammerFactor::poch(1, 2).inverse());
        let t = TruncatedSeries::one(10).apply_factor(&PochhammerFactor::poch_neg(1, 1));
        let distinct = GapSpec::new(1, 1).unwrap();
        for n in 0..=10u64 {
            assert_eq!(c(&s, n as usize), int(count_partset(&odd, n)));
            assert_eq!(c(&t, n as usize), int(count_gap(&distinct, n)));
        }
    }

    #[test]
    fn gap_series_matches_dp() {
        for d in 1..=6 {
            for a in 1..=4 {
                let spec = GapSpec::new(d, a).unwrap();
                let s = gf_gap(&spec, 150);
                for n in 0..=150 {
                    assert_eq!(
                        c(&s, n),
                        int(count_gap(&spec, n as u64)),
                        "d={d} a={a} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn q_series_matches_dp_including_half_modulus() {
        for d in [1u64, 2, 3, 5, 7, 10] {
            for b in 1..=d + 2 {
                for v in QVariant::ALL {
                    let s = gf_q(v, d, b, 120).unwrap();
                    let spec = ResiduePartSpec::q(v, d, b).unwrap();
                    for n in 0..=120u64 {
                        assert_eq!(
                            c(&s, n as usize),
                            int(count_partset(&spec, n)),
                            "{v} d={d} b={b} n={n}"
                        );
                    }
                }
            }
        }
        // Shifted moduli 2 and 3.
        for (m, b) in [(2u64, 1u64), (3, 1), (3, 2)] {
            for v in QVariant::ALL {
                let s = gf_q_modulus(v, m, b, 60).unwrap();
                let spec = ResiduePartSpec::q_modulus(v, m, b).unwrap();
                for n in 0..=60u64 {
                    assert_eq!(c(&s, n as usize), int(count_partset(&spec, n)));
                }
            }
        }
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(power_bound_exponent(31, 1).unwrap(), 5);
        assert_eq!(power_bound_exponent(30, 1).unwrap(), 4);
        assert_eq!(power_bound_exponent(32, 3).unwrap(), 5);
        assert_eq!(power_bound_exponent(16, 3).unwrap(), 4);
        assert!(gf_fkg(FkgSeries::F, 1, 3, 10).is_err());
    }

    fn residue_parts(residues: &[u64], modulus: u64, bound: u64) -> Vec<u64> {
        let mut out = Vec::new();
        for &r in residues {
            let mut x = if r % modulus == 0 {
                modulus
            } else {
                r % modulus
            };
            while x <= bound {
                out.push(x);
                x += modulus;
            }
        }
        out
    }

    #[test]
    fn f_counts_distinct_parts_on_power_residues() {
        for (d, a) in [(16u64, 3u64), (31, 1), (20, 2), (40, 3)] {
            let r = power_bound_exponent(d, a).unwrap();
            let residues: Vec<u64> = ((a - 1) as u32..r).map(|i| 1u64 << i).collect();
            let f = gf_fkg(FkgSeries::F, d, a, 150).unwrap();
            for n in 0..=150u64 {
                let parts = residue_parts(&residues, d, n);
                assert_eq!(c(&f, n as usize), count_mixed(&[], &parts, &[], n));
            }
            // With disjoint residues it is a plain distinct-part count.
            let spec = ExplicitPartSpec::residue_union(d, residues.clone(), []).unwrap();
            assert_eq!(c(&f, 100), int(count_partset_distinct(&spec, 100)));
        }
    }

    #[test]
    fn k_rewrite_agrees_with_definition() {
        for (d, a) in [
            (16u64, 3u64),
            (31, 1),
            (33, 1),
            (20, 2),
            (40, 3),
            (64, 4),
            (100, 3),
        ] {
            let k = gf_fkg(FkgSeries::K, d, a, 300).unwrap();
            let kr = k_rewritten(d, a, 300).unwrap();
            assert_eq!(k, kr, "d={d} a={a}");
        }
    }

    #[test]
    fn g_series_is_a_mixed_count() {
        for (d, a) in [(16u64, 3u64), (31, 1), (40, 3)] {
            let r = power_bound_exponent(d, a).unwrap();
            let h = 1u64 << (a - 1);
            let g = gf_fkg(FkgSeries::G, d, a, 150).unwrap();
            let mut res = vec![h];
            res.extend((a as u32..r - 1).map(|i| d + (1 << i)));
            for n in 0..=150u64 {
                let unrestricted = residue_parts(&res, 2 * d, n);
                let distinct = residue_parts(&[d + (1 << (r - 1))], 2 * d, n);
                assert_eq!(
                    c(&g, n as usize),
                    count_mixed(&unrestricted, &distinct, &[], n)
                );
            }
            assert_eq!(c(&g, 0), BigInt::one());
        }
    }

    #[test]
    fn euler_telescoping_for_mersenne_gaps() {
        for s in 2..=5u32 {
            let d = (1u64 << s) - 1;
            let n = 200;
            let mut lhs = TruncatedSeries::one(n);
            for i in 0..s {
                lhs.apply_factor_in_place(&PochhammerFactor::poch_neg(1 << i, d));
            }
            let mut rhs = TruncatedSeries::one(n);
            rhs.apply_factor_in_place(&PochhammerFactor::poch(1, 2 * d).inverse());
            for i in 1..s {
                rhs.apply_factor_in_place(&PochhammerFactor::poch(d + (1 << i), 2 * d).inverse());
            }
            assert_eq!(lhs, rhs, "s={s}");
        }
    }

    #[test]
    fn truncation_is_coherent() {
        let big = gf_q(QVariant::Dash, 5, 2, 200).unwrap();
        let small = gf_q(QVariant::Dash, 5, 2, 37).unwrap();
        assert_eq!(big.truncate(37).unwrap(), small);
        let big = gf_fkg(FkgSeries::K, 40, 3, 250).unwrap();
        let small = gf_fkg(FkgSeries::K, 40, 3, 90).unwrap();
        assert_eq!(big.truncate(90).unwrap(), small);
    }

    #[test]
    fn fk_difference_is_nonnegative_on_sample() {
        for (a, m) in [(3u64, 8u64), (3, 9), (4, 8), (4, 31)] {
            let d = (1 << (a - 1)) * m;
            let s = fk_difference(d, a, 200).unwrap();
            assert_eq!(s.first_negative(), None, "a={a} m={m}");
        }
    }
}
