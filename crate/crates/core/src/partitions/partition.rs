use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A partition stored as a nonincreasing list of positive parts.
///
/// The weight is cached at construction. The empty partition is the unique
/// partition of zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Partition {
    parts: Vec<u64>,
    weight: u64,
}

impl Partition {
    pub fn empty() -> Self {
        Self {
            parts: Vec::new(),
            weight: 0,
        }
    }

    /// Builds a partition from parts already in nonincreasing order.
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return invalid("partition parts must be positive");
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("parts {parts:?} are not nonincreasing"));
        }
        let weight = parts.iter().sum();
        Ok(Self { parts, weight })
    }

    /// Builds a partition from parts in any order.
    pub fn from_unsorted(mut parts: Vec<u64>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// Builds a partition from parts in increasing order, the convention the
    /// injections use internally.
    pub fn from_ascending(mut parts: Vec<u64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] > w[1]) {
            return invalid(format!("parts {parts:?} are not nondecreasing"));
        }
        parts.reverse();
        Self::new(parts)
    }

    pub fn from_multiplicities(mult: &BTreeMap<u64, u64>) -> Result<Self> {
        let mut parts = Vec::new();
        for (&part, &count) in mult.iter().rev() {
            parts.extend(std::iter::repeat(part).take(count as usize));
        }
        Self::new(parts)
    }

    /// Parts in nonincreasing order.
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn ascending(&self) -> Vec<u64> {
        self.parts.iter().rev().copied().collect()
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> Option<u64> {
        self.parts.first().copied()
    }

    pub fn smallest(&self) -> Option<u64> {
        self.parts.last().copied()
    }

    pub fn multiplicity(&self, part: u64) -> u64 {
        self.parts.iter().filter(|&&p| p == part).count() as u64
    }

    pub fn multiplicities(&self) -> BTreeMap<u64, u64> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn contains(&self, part: u64) -> bool {
        self.parts.contains(&part)
    }

    /// Smallest difference between consecutive distinct positions, or `None`
    /// for fewer than two parts.
    pub fn min_gap(&self) -> Option<u64> {
        self.parts.windows(2).map(|w| w[0] - w[1]).min()
    }

    pub fn is_distinct(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }
}

impl TryFrom<Vec<u64>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u64>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<u64> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_is_cached_sum() {
        let p = Partition::new(vec![5, 3, 3, 1]).unwrap();
        assert_eq!(p.weight(), 12);
        assert_eq!(p.ascending(), vec![1, 3, 3, 5]);
        assert_eq!(p.multiplicity(3), 2);
        assert_eq!(p.min_gap(), Some(0));
        assert!(!p.is_distinct());
    }

    #[test]
    fn empty_partition_has_weight_zero() {
        let p = Partition::empty();
        assert_eq!(p.weight(), 0);
        assert!(p.is_empty());
        assert_eq!(p.to_string(), "()");
    }

    #[test]
    fn rejects_increasing_or_zero_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::from_ascending(vec![3, 1]).is_err());
    }

    #[test]
    fn json_form_is_plain_array() {
        let p = Partition::from_unsorted(vec![2, 7, 2]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[7,2,2]");
        let back: Partition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }
}
