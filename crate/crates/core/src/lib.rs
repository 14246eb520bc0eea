//! Exact arithmetic toolkit for comparing gap-restricted partitions with
//! partitions into parts from residue classes.
//!
//! - [`partitions`]: exact counts and enumerations
//! - [`qseries`]: truncated power series and every generating function used
//! - [`delta`]: the `q - Q` differences, grid sweeps and named checks
//! - [`maps`]: executable injections and sign-reversing involutions
//! - [`asymptotics`]: main-term estimators and crossover search

pub mod asymptotics;
pub mod delta;
pub mod error;
pub mod maps;
pub mod partitions;
pub mod qseries;

pub use error::{Error, Result};
pub use partitions::{
    count_gap, count_partset, enumerate_gap, enumerate_partset, part_list, ExplicitPartSpec,
    GapSpec, PartSet, Partition, QVariant, ResiduePartSpec,
};
pub use qseries::{PochhammerFactor, TruncatedSeries};
