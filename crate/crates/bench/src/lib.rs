//! Shared parameter sets for the engine benchmarks in `benches/`.

use partineq_core::QVariant;

/// `(d, a)` pairs for gap-side counting, from dense to sparse.
pub const GAP_CASES: [(u64, u64); 4] = [(1, 1), (4, 1), (10, 2), (62, 2)];

/// Residue-side columns.
pub const RESIDUE_CASES: [(QVariant, u64, u64); 3] = [
    (QVariant::Plain, 4, 1),
    (QVariant::Dash, 10, 2),
    (QVariant::DashDash, 62, 2),
];

/// Degree bounds used for single-column work.
pub const BOUNDS: [usize; 3] = [250, 1000, 3000];
