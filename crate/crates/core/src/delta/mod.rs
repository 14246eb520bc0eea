//! The differences `q_d^{(a)}(n) - Q_d^{(b,·)}(n)`, grid sweeps over `(d, n)`,
//! and the named verification suites.

mod examples;
mod named;
mod sweep;

pub use examples::{
    counterexample_grid, counterexample_suite, family_instance, small_weight_constants,
    CounterexampleReport, FamilyRow, SmallWeightConstants, StaircaseRow,
};
pub use named::{verify_named, CheckParams, CheckReport, CheckWitness, CHECK_IDS};
pub use sweep::{
    sweep, ColumnSource, DeltaCell, DeltaReport, DeltaSummary, Engine, SeriesEngine, SweepOptions,
    Witness,
};

use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::partitions::{count_gap, count_partset, GapSpec, QVariant, ResiduePartSpec};

/// Which difference to evaluate: the gap side uses minimum part `a`, the
/// residue side uses residue `b` with the given exclusion variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeltaKind {
    pub variant: QVariant,
    pub a: u64,
    pub b: u64,
}

impl DeltaKind {
    pub fn new(variant: QVariant, a: u64, b: u64) -> Result<Self> {
        if a == 0 || b == 0 {
            return invalid(format!("a and b must be positive (got a={a}, b={b})"));
        }
        Ok(Self { variant, a, b })
    }

    /// The diagonal kind `a = b`.
    pub fn same(variant: QVariant, a: u64) -> Result<Self> {
        Self::new(variant, a, a)
    }

    pub fn gap_spec(&self, d: u64) -> Result<GapSpec> {
        GapSpec::new(d, self.a)
    }

    pub fn residue_spec(&self, d: u64) -> Result<ResiduePartSpec> {
        ResiduePartSpec::q(self.variant, d, self.b)
    }

    /// Errors unless `1 <= b <= d + 2`.
    pub fn check_for(&self, d: u64) -> Result<()> {
        self.gap_spec(d)?;
        self.residue_spec(d).map(|_| ())
    }
}

impl fmt::Display for DeltaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(a={},b={})", self.variant, self.a, self.b)
    }
}

/// `q_d^{(a)}(n)` for the kind's `a`.
pub fn gap_count(kind: &DeltaKind, d: u64, n: u64) -> Result<BigUint> {
    Ok(count_gap(&kind.gap_spec(d)?, n))
}

/// `Q_d^{(b,·)}(n)` for the kind's `b` and variant.
pub fn residue_count(kind: &DeltaKind, d: u64, n: u64) -> Result<BigUint> {
    Ok(count_partset(&kind.residue_spec(d)?, n))
}

/// The exact difference, computed by dynamic programming.
pub fn delta(kind: &DeltaKind, d: u64, n: u64) -> Result<BigInt> {
    let q = gap_count(kind, d, n)?;
    let big_q = residue_count(kind, d, n)?;
    Ok(BigInt::from(q) - BigInt::from(big_q))
}
