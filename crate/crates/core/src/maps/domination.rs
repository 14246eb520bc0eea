//! Elementwise comparison of two ordered part sets.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::partitions::PartSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationReport {
    pub count: usize,
    /// One-based index `i` with `x_i < y_i`, and the two elements.
    pub first_violation: Option<(usize, u64, u64)>,
}

impl DominationReport {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

fn first_terms<P: PartSet + ?Sized>(spec: &P, count: usize) -> Result<Vec<u64>> {
    let mut bound = 64u64;
    loop {
        let terms = spec.parts_up_to(bound);
        if terms.len() >= count {
            return Ok(terms[..count].to_vec());
        }
        if bound > 1 << 32 {
            return invalid(format!(
                "part set has fewer than {count} elements below {bound}"
            ));
        }
        bound *= 4;
    }
}

/// Checks that the `i`-th smallest element of `s` is at least the `i`-th
/// smallest element of `t` for every `i <= count`.
pub fn ordered_domination<S: PartSet + ?Sized, T: PartSet + ?Sized>(
    s: &S,
    t: &T,
    count: usize,
) -> Result<DominationReport> {
    let xs = first_terms(s, count)?;
    let ys = first_terms(t, count)?;
    let first_violation = xs
        .iter()
        .zip(&ys)
        .enumerate()
        .find(|(_, (x, y))| x < y)
        .map(|(i, (&x, &y))| (i + 1, x, y));
    Ok(DominationReport {
        count,
        first_violation,
    })
}
