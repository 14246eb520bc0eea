use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Partitions with every part at least `a` and consecutive parts differing by
/// at least `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GapSpec {
    d: u64,
    a: u64,
}

impl GapSpec {
    pub fn new(d: u64, a: u64) -> Result<Self> {
        if d == 0 {
            return invalid("gap d must be at least 1");
        }
        if a == 0 {
            return invalid("minimum part a must be at least 1");
        }
        Ok(Self { d, a })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    /// Smallest weight of a partition with `k` parts: `k*a + d*k*(k-1)/2`.
    pub fn min_weight(&self, k: u64) -> Option<u64> {
        let tri = k.checked_mul(k.saturating_sub(1))? / 2;
        self.d.checked_mul(tri)?.checked_add(self.a.checked_mul(k)?)
    }
}

/// Any rule deciding which positive integers may be used as parts.
pub trait PartSet: Send + Sync {
    fn contains(&self, x: u64) -> bool;

    /// All allowed parts `<= bound`, strictly increasing.
    fn parts_up_to(&self, bound: u64) -> Vec<u64> {
        (1..=bound).filter(|&x| self.contains(x)).collect()
    }
}

impl<P: PartSet + ?Sized> PartSet for &P {
    fn contains(&self, x: u64) -> bool {
        (**self).contains(x)
    }

    fn parts_up_to(&self, bound: u64) -> Vec<u64> {
        (**self).parts_up_to(bound)
    }
}

/// Which parts are removed from the `±b (mod d+3)` family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QVariant {
    /// No exclusions.
    Plain,
    /// Excludes the part `modulus - b`.
    Dash,
    /// Excludes both `b` and `modulus - b`.
    DashDash,
}

impl QVariant {
    pub const ALL: [QVariant; 3] = [QVariant::Plain, QVariant::Dash, QVariant::DashDash];

    pub fn as_str(&self) -> &'static str {
        match self {
            QVariant::Plain => "plain",
            QVariant::Dash => "dash",
            QVariant::DashDash => "dashdash",
        }
    }
}

impl fmt::Display for QVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for QVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(QVariant::Plain),
            "dash" => Ok(QVariant::Dash),
            "dashdash" => Ok(QVariant::DashDash),
            other => invalid(format!("unknown variant {other:?}")),
        }
    }
}

/// Parts congruent to `±residue` modulo `modulus`, minus an explicit finite
/// exclusion set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResiduePartSpec {
    modulus: u64,
    residue: u64,
    excluded: BTreeSet<u64>,
}

impl ResiduePartSpec {
    pub fn new(
        modulus: u64,
        residue: u64,
        excluded: impl IntoIterator<Item = u64>,
    ) -> Result<Self> {
        if modulus < 2 {
            return invalid(format!("modulus {modulus} must be at least 2"));
        }
        if residue == 0 || residue >= modulus {
            return invalid(format!("residue {residue} must lie in 1..={}", modulus - 1));
        }
        Ok(Self {
            modulus,
            residue,
            excluded: excluded.into_iter().collect(),
        })
    }

    /// The allowed-part set behind `Q_d^{(b)}`, `Q_d^{(b,-)}` or
    /// `Q_d^{(b,-,-)}`, given the modulus `d + 3` directly.
    ///
    /// Taking the modulus keeps the degenerate shifted moduli (2 and 3) that
    /// arise when dividing parts by a common factor representable.
    pub fn q_modulus(variant: QVariant, modulus: u64, b: u64) -> Result<Self> {
        let excluded: Vec<u64> = match variant {
            QVariant::Plain => vec![],
            QVariant::Dash => vec![modulus.wrapping_sub(b)],
            QVariant::DashDash => vec![b, modulus.wrapping_sub(b)],
        };
        Self::new(modulus, b, excluded)
    }

    /// Same as [`ResiduePartSpec::q_modulus`] with modulus `d + 3`; requires
    /// `1 <= b <= d + 2`.
    pub fn q(variant: QVariant, d: u64, b: u64) -> Result<Self> {
        if b == 0 || b > d + 2 {
            return invalid(format!("b={b} must satisfy 1 <= b <= d+2 = {}", d + 2));
        }
        Self::q_modulus(variant, d + 3, b)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn excluded(&self) -> &BTreeSet<u64> {
        &self.excluded
    }

    /// Stable text form used for cache keys.
    pub fn fingerprint(&self) -> String {
        let ex: Vec<String> = self.excluded.iter().map(u64::to_string).collect();
        format!("m{}b{}x{}", self.modulus, self.residue, ex.join("_"))
    }
}

impl PartSet for ResiduePartSpec {
    fn contains(&self, x: u64) -> bool {
        if x == 0 || self.excluded.contains(&x) {
            return false;
        }
        let r = x % self.modulus;
        r == self.residue || r == self.modulus - self.residue
    }

    fn parts_up_to(&self, bound: u64) -> Vec<u64> {
        let residues: BTreeSet<u64> = [self.residue, self.modulus - self.residue].into();
        residue_union_parts(self.modulus, &residues, &self.excluded, bound)
    }
}

/// Part sets given by an explicit generating rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExplicitPartSpec {
    /// Positive integers whose residue modulo `modulus` lies in `residues`,
    /// minus `excluded`. Residues are stored reduced.
    ResidueUnion {
        modulus: u64,
        residues: BTreeSet<u64>,
        excluded: BTreeSet<u64>,
    },
    /// A finite list of allowed parts.
    Finite(BTreeSet<u64>),
}

impl ExplicitPartSpec {
    pub fn residue_union(
        modulus: u64,
        residues: impl IntoIterator<Item = u64>,
        excluded: impl IntoIterator<Item = u64>,
    ) -> Result<Self> {
        if modulus == 0 {
            return invalid("modulus must be positive");
        }
        let residues: BTreeSet<u64> = residues.into_iter().map(|r| r % modulus).collect();
        if residues.is_empty() {
            return invalid("residue union needs at least one residue");
        }
        Ok(ExplicitPartSpec::ResidueUnion {
            modulus,
            residues,
            excluded: excluded.into_iter().collect(),
        })
    }

    pub fn finite(parts: impl IntoIterator<Item = u64>) -> Result<Self> {
        let parts: BTreeSet<u64> = parts.into_iter().collect();
        if parts.contains(&0) {
            return invalid("parts must be positive");
        }
        Ok(ExplicitPartSpec::Finite(parts))
    }

    /// `{y : y ≡ 2^t, d+2^{t+1}, ..., d+2^{s-1} (mod 2d)}`.
    pub fn binary_ladder(t: u32, s: u32, d: u64) -> Result<Self> {
        if s <= t {
            return invalid(format!("need s > t, got t={t}, s={s}"));
        }
        if d == 0 {
            return invalid("d must be positive");
        }
        let mut residues = vec![1u64 << t];
        residues.extend((t + 1..s).map(|i| d + (1u64 << i)));
        Self::residue_union(2 * d, residues, [])
    }
}

impl PartSet for ExplicitPartSpec {
    fn contains(&self, x: u64) -> bool {
        if x == 0 {
            return false;
        }
        match self {
            ExplicitPartSpec::ResidueUnion {
                modulus,
                residues,
                excluded,
            } => !excluded.contains(&x) && residues.contains(&(x % modulus)),
            ExplicitPartSpec::Finite(parts) => parts.contains(&x),
        }
    }

    fn parts_up_to(&self, bound: u64) -> Vec<u64> {
        match self {
            ExplicitPartSpec::ResidueUnion {
                modulus,
                residues,
                excluded,
            } => residue_union_parts(*modulus, residues, excluded, bound),
            ExplicitPartSpec::Finite(parts) => parts.range(1..=bound).copied().collect(),
        }
    }
}

fn residue_union_parts(
    modulus: u64,
    residues: &BTreeSet<u64>,
    excluded: &BTreeSet<u64>,
    bound: u64,
) -> Vec<u64> {
    let mut out = Vec::new();
    let mut base = 0u64;
    while base <= bound {
        for &r in residues {
            let x = base + r;
            if x >= 1 && x <= bound && !excluded.contains(&x) {
                out.push(x);
            }
        }
        base += modulus;
    }
    out
}
