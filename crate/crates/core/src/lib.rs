//! Three-way decisions over a finite universe.
//!
//! Regions come either from inclusion ratios `|[x] ∩ X| / |[x]|` compared
//! against thresholds `(α, β)` ([`probabilistic_regions`]) or from an
//! evaluative linguistic expression applied to those ratios
//! ([`linguistic_regions`]). The [`analysis`] module recovers every
//! probabilistic threshold pair that reproduces a linguistic tri-partition
//! and checks the result by brute force; [`explain`] turns region
//! assignments into sentences.

pub mod analysis;
pub mod explain;
pub mod expr;
pub mod fraction;
pub mod regions;
pub mod space;

pub use analysis::{
    check_bounds_ordering, coincides_with_pawlak, delta_regions, equivalent_threshold_intervals,
    region_bounds, sweep_equivalence_oracle, verify_equivalence, AnalysisError, EquivalenceCase,
    Interval, RegionBounds, Sweep, ThresholdEquivalence,
};
pub use explain::{explain_element, report, Decision, Explanation, Report};
pub use expr::{
    Builtin, EvalExpr, ExprError, Expression, Quantifier, Segment, SegmentForm, StepExpr,
};
pub use fraction::Fraction;
pub use regions::{
    linguistic_regions, pawlak_rough_set, probabilistic_regions, rough_set_from_tripartition,
    Region, RoughSetPair, ThresholdError, Thresholds, TriPartition,
};
pub use space::{
    relative_cardinality, ApproximationSpace, AttributeTable, Concept, ElementSet, SpaceError,
    Universe,
};
