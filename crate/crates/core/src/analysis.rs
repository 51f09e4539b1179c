//! Which probabilistic thresholds reproduce a linguistic tri-partition.
//!
//! For an increasing expression `Ev` and thresholds `(α, β)`, the linguistic
//! regions are summarized by four statistics of the inclusion ratios
//! ([`RegionBounds`]): the largest ratio in NEG (`β₁`), the smallest and
//! largest in BND (`β₂`, `α₁`) and the smallest in POS (`α₂`). The set of
//! pairs `(α′, β′)` whose probabilistic regions coincide with the linguistic
//! ones is then a product of two half-open intervals, or (when BND is empty)
//! the coupled strip `β₁ ≤ β′ < α′ ≤ α₂`.
//!
//! [`sweep_equivalence_oracle`] checks any such characterization by brute
//! force. Region membership only depends on where a threshold sits relative
//! to the finite set of inclusion ratios: all thresholds strictly between two
//! consecutive ratios (or below the smallest, or above the largest) give the
//! same regions. The ratios themselves, one midpoint per gap, and the ends
//! `0` and `1` therefore reach every distinct outcome.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::expr::{ExprError, Expression, DEFAULT_GRID_STEP};
use crate::fraction::{self, Fraction};
use crate::regions::{
    linguistic_regions, probabilistic_block_regions, probabilistic_regions_exact, ExactThresholds,
    Region, ThresholdError, Thresholds, TriPartition,
};
use crate::space::{ApproximationSpace, Concept, ElementSet};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("expression `{0}` is not increasing; threshold intervals are only characterized for increasing expressions")]
    NonMonotoneExpr(String),
    #[error(
        "regions {0:?} are empty; with a single non-empty region the case is not characterized"
    )]
    DegenerateCase(Vec<Region>),
    #[error("bound {0} is undefined because its region is empty")]
    BoundAbsent(&'static str),
    #[error("ordering of bounds is only guaranteed for increasing expressions")]
    NotIncreasing,
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Threshold(#[from] ThresholdError),
}

/// Extreme inclusion ratios of the three regions. A field is `None` exactly
/// when its region is empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RegionBounds {
    /// Largest ratio in NEG.
    pub beta1: Option<Fraction>,
    /// Smallest ratio in BND.
    pub beta2: Option<Fraction>,
    /// Largest ratio in BND.
    pub alpha1: Option<Fraction>,
    /// Smallest ratio in POS.
    pub alpha2: Option<Fraction>,
}

impl RegionBounds {
    /// Bounds of an existing tri-partition of `space`.
    pub fn from_tripartition(
        space: &ApproximationSpace,
        concept: &Concept,
        tp: &TriPartition,
    ) -> Self {
        let mut out = RegionBounds::default();
        for (ratio, region) in space
            .block_ratios(concept)
            .into_iter()
            .zip(&tp.block_regions)
        {
            match region {
                Region::Neg => max_into(&mut out.beta1, &ratio),
                Region::Bnd => {
                    min_into(&mut out.beta2, &ratio);
                    max_into(&mut out.alpha1, &ratio);
                }
                Region::Pos => min_into(&mut out.alpha2, &ratio),
            }
        }
        out
    }

    fn all(&self) -> Result<[&Fraction; 4], AnalysisError> {
        Ok([
            self.beta1
                .as_ref()
                .ok_or(AnalysisError::BoundAbsent("beta1"))?,
            self.beta2
                .as_ref()
                .ok_or(AnalysisError::BoundAbsent("beta2"))?,
            self.alpha1
                .as_ref()
                .ok_or(AnalysisError::BoundAbsent("alpha1"))?,
            self.alpha2
                .as_ref()
                .ok_or(AnalysisError::BoundAbsent("alpha2"))?,
        ])
    }
}

fn max_into(slot: &mut Option<Fraction>, v: &Fraction) {
    if slot.as_ref().is_none_or(|s| v > s) {
        *slot = Some(v.clone());
    }
}

fn min_into(slot: &mut Option<Fraction>, v: &Fraction) {
    if slot.as_ref().is_none_or(|s| v < s) {
        *slot = Some(v.clone());
    }
}

impl fmt::Display for RegionBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Option<Fraction>| match v {
            Some(v) => fraction::Approx(v).to_string(),
            None => "undefined".to_string(),
        };
        write!(
            f,
            "beta1 = {}, beta2 = {}, alpha1 = {}, alpha2 = {}",
            show(&self.beta1),
            show(&self.beta2),
            show(&self.alpha1),
            show(&self.alpha2)
        )
    }
}

/// Bounds of the linguistic tri-partition of `concept` under `expr` and `th`.
pub fn region_bounds(
    space: &ApproximationSpace,
    concept: &Concept,
    expr: &Expression,
    th: &Thresholds,
) -> RegionBounds {
    let tp = linguistic_regions(space, concept, expr, th);
    RegionBounds::from_tripartition(space, concept, &tp)
}

/// `0 ≤ β₁ < β₂ ≤ α₁ < α₂ ≤ 1`. Needs all four bounds and an increasing
/// expression.
pub fn check_bounds_ordering(
    bounds: &RegionBounds,
    expr_increasing: bool,
) -> Result<bool, AnalysisError> {
    if !expr_increasing {
        return Err(AnalysisError::NotIncreasing);
    }
    let [b1, b2, a1, a2] = bounds.all()?;
    Ok(*b1 >= fraction::zero() && b1 < b2 && b2 <= a1 && a1 < a2 && *a2 <= fraction::one())
}

/// True iff `β₁ = 0` and `α₂ = 1`, the condition under which the linguistic
/// rough set is the classical one. Needs all four bounds.
pub fn coincides_with_pawlak(bounds: &RegionBounds) -> Result<bool, AnalysisError> {
    let [b1, _, _, a2] = bounds.all()?;
    Ok(*b1 == fraction::zero() && *a2 == fraction::one())
}

/// An interval of `[0, 1]` with open or closed ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Fraction,
    pub lo_open: bool,
    pub hi: Fraction,
    pub hi_open: bool,
}

impl Interval {
    pub fn new(lo: Fraction, lo_open: bool, hi: Fraction, hi_open: bool) -> Self {
        Interval {
            lo,
            lo_open,
            hi,
            hi_open,
        }
    }

    pub fn contains(&self, v: &Fraction) -> bool {
        let above = if self.lo_open {
            *v > self.lo
        } else {
            *v >= self.lo
        };
        let below = if self.hi_open {
            *v < self.hi
        } else {
            *v <= self.hi
        };
        above && below
    }

    pub fn contains_f64(&self, v: f64) -> bool {
        fraction::from_f64(v).is_some_and(|v| self.contains(&v))
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && (self.lo_open || self.hi_open))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { '(' } else { '[' },
            fraction::Approx(&self.lo),
            fraction::Approx(&self.hi),
            if self.hi_open { ')' } else { ']' }
        )
    }
}

/// Which region, if any, of the linguistic tri-partition is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EquivalenceCase {
    AllNonEmpty,
    BndEmpty,
    NegEmpty,
    PosEmpty,
}

impl EquivalenceCase {
    pub fn describe(self) -> &'static str {
        match self {
            EquivalenceCase::AllNonEmpty => "all three regions non-empty",
            EquivalenceCase::BndEmpty => "boundary region empty",
            EquivalenceCase::NegEmpty => "negative region empty",
            EquivalenceCase::PosEmpty => "positive region empty",
        }
    }
}

/// The pairs `(α′, β′)` whose probabilistic regions equal a given linguistic
/// tri-partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdEquivalence {
    pub case: EquivalenceCase,
    pub alpha_interval: Interval,
    pub beta_interval: Interval,
    /// When set the admissible pairs are `β₁ ≤ β′ < α′ ≤ α₂`, not the full
    /// product of the two intervals.
    pub coupled: bool,
}

impl ThresholdEquivalence {
    /// Whether `(α′, β′)` is admitted. Pairs violating `0 ≤ β′ < α′ ≤ 1` are
    /// never admitted.
    pub fn admits(&self, alpha: &Fraction, beta: &Fraction) -> bool {
        let valid = *beta >= fraction::zero() && beta < alpha && *alpha <= fraction::one();
        valid && self.alpha_interval.contains(alpha) && self.beta_interval.contains(beta)
    }

    pub fn admits_f64(&self, alpha: f64, beta: f64) -> bool {
        match (fraction::from_f64(alpha), fraction::from_f64(beta)) {
            (Some(a), Some(b)) => self.admits(&a, &b),
            _ => false,
        }
    }
}

impl fmt::Display for ThresholdEquivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coupled {
            write!(
                f,
                "{} ≤ β′ < α′ ≤ {}",
                fraction::Approx(&self.beta_interval.lo),
                fraction::Approx(&self.alpha_interval.hi)
            )
        } else {
            write!(
                f,
                "α′ ∈ {}, β′ ∈ {}",
                self.alpha_interval, self.beta_interval
            )
        }
    }
}

/// Characterizes every `(α′, β′)` whose probabilistic regions reproduce the
/// linguistic regions of `expr` at `th`.
///
/// Fails with [`AnalysisError::NonMonotoneExpr`] unless `expr` is increasing
/// on a `10⁻³` grid, and with [`AnalysisError::DegenerateCase`] when two or
/// more regions are empty.
pub fn equivalent_threshold_intervals(
    space: &ApproximationSpace,
    concept: &Concept,
    expr: &Expression,
    th: &Thresholds,
) -> Result<ThresholdEquivalence, AnalysisError> {
    if !expr.is_increasing(DEFAULT_GRID_STEP)? {
        return Err(AnalysisError::NonMonotoneExpr(expr.name()));
    }
    let tp = linguistic_regions(space, concept, expr, th);
    let bounds = RegionBounds::from_tripartition(space, concept, &tp);
    intervals_from_bounds(&tp, &bounds)
}

/// Interval construction once the tri-partition and its bounds are known.
pub fn intervals_from_bounds(
    tp: &TriPartition,
    bounds: &RegionBounds,
) -> Result<ThresholdEquivalence, AnalysisError> {
    let empty = tp.empty_regions();
    let need = |v: &Option<Fraction>, name| v.clone().ok_or(AnalysisError::BoundAbsent(name));
    let (zero, one) = (fraction::zero(), fraction::one());
    let eq = match empty.as_slice() {
        [] => ThresholdEquivalence {
            case: EquivalenceCase::AllNonEmpty,
            alpha_interval: Interval::new(
                need(&bounds.alpha1, "alpha1")?,
                true,
                need(&bounds.alpha2, "alpha2")?,
                false,
            ),
            beta_interval: Interval::new(
                need(&bounds.beta1, "beta1")?,
                false,
                need(&bounds.beta2, "beta2")?,
                true,
            ),
            coupled: false,
        },
        [Region::Bnd] => {
            let b1 = need(&bounds.beta1, "beta1")?;
            let a2 = need(&bounds.alpha2, "alpha2")?;
            ThresholdEquivalence {
                case: EquivalenceCase::BndEmpty,
                alpha_interval: Interval::new(b1.clone(), true, a2.clone(), false),
                beta_interval: Interval::new(b1, false, a2, true),
                coupled: true,
            }
        }
        [Region::Neg] => ThresholdEquivalence {
            case: EquivalenceCase::NegEmpty,
            alpha_interval: Interval::new(
                need(&bounds.alpha1, "alpha1")?,
                true,
                need(&bounds.alpha2, "alpha2")?,
                false,
            ),
            beta_interval: Interval::new(zero, false, need(&bounds.beta2, "beta2")?, true),
            coupled: false,
        },
        [Region::Pos] => ThresholdEquivalence {
            case: EquivalenceCase::PosEmpty,
            alpha_interval: Interval::new(need(&bounds.alpha1, "alpha1")?, true, one, false),
            beta_interval: Interval::new(
                need(&bounds.beta1, "beta1")?,
                false,
                need(&bounds.beta2, "beta2")?,
                true,
            ),
            coupled: false,
        },
        _ => return Err(AnalysisError::DegenerateCase(empty)),
    };
    Ok(eq)
}

/// True iff the linguistic regions of `expr` at `th` equal the probabilistic
/// regions at `(alpha_p, beta_p)`.
pub fn verify_equivalence(
    space: &ApproximationSpace,
    concept: &Concept,
    expr: &Expression,
    th: &Thresholds,
    alpha_p: f64,
    beta_p: f64,
) -> Result<bool, AnalysisError> {
    let probe = Thresholds::new(alpha_p, beta_p)?;
    Ok(verify_equivalence_exact(
        space,
        concept,
        expr,
        th,
        &probe.exact(),
    ))
}

pub fn verify_equivalence_exact(
    space: &ApproximationSpace,
    concept: &Concept,
    expr: &Expression,
    th: &Thresholds,
    probe: &ExactThresholds,
) -> bool {
    let ling = linguistic_regions(space, concept, expr, th);
    let prob = probabilistic_regions_exact(space, concept, probe);
    ling.same_regions(&prob)
}

/// First block (in block order) whose regions differ between the linguistic
/// and probabilistic tri-partitions, with both regions.
pub fn first_difference(
    lingu: &TriPartition,
    prob: &TriPartition,
) -> Option<(usize, Region, Region)> {
    lingu
        .block_regions
        .iter()
        .zip(&prob.block_regions)
        .enumerate()
        .find(|(_, (a, b))| a != b)
        .map(|(i, (a, b))| (i, *a, *b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepVerdict {
    pub alpha: Fraction,
    pub beta: Fraction,
    pub coincides: bool,
}

/// Brute-force verdicts over the finite candidate set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sweep {
    pub candidates: Vec<Fraction>,
    pub verdicts: Vec<SweepVerdict>,
}

impl Sweep {
    pub fn admitted(&self) -> impl Iterator<Item = &SweepVerdict> {
        self.verdicts.iter().filter(|v| v.coincides)
    }

    /// Verdicts on which the sweep and `eq` disagree.
    pub fn disagreements<'a>(
        &'a self,
        eq: &'a ThresholdEquivalence,
    ) -> impl Iterator<Item = &'a SweepVerdict> + 'a {
        self.verdicts
            .iter()
            .filter(move |v| v.coincides != eq.admits(&v.alpha, &v.beta))
    }

    pub fn agrees_with(&self, eq: &ThresholdEquivalence) -> bool {
        self.disagreements(eq).next().is_none()
    }
}

/// Candidate threshold values: every distinct inclusion ratio, the midpoint
/// of each pair of consecutive ratios, and `0` and `1`; ascending.
pub fn sweep_candidates(ratios: &[Fraction]) -> Vec<Fraction> {
    let mut sorted: Vec<Fraction> = ratios.to_vec();
    sorted.sort();
    sorted.dedup();
    let two = fraction::fraction(2, 1);
    let mut out: Vec<Fraction> = sorted.windows(2).map(|w| (&w[0] + &w[1]) / &two).collect();
    out.extend(sorted);
    out.push(fraction::zero());
    out.push(fraction::one());
    out.sort();
    out.dedup();
    out
}

/// Runs the equivalence check on every candidate pair `β′ < α′`. No
/// monotonicity is required of `expr`.
pub fn sweep_equivalence_oracle(
    space: &ApproximationSpace,
    concept: &Concept,
    expr: &Expression,
    th: &Thresholds,
) -> Sweep {
    let ratios = space.block_ratios(concept);
    let target = linguistic_regions(space, concept, expr, th).block_regions;
    let candidates = sweep_candidates(&ratios);
    let pairs: Vec<(usize, usize)> = (0..candidates.len())
        .flat_map(|a| (0..a).map(move |b| (a, b)))
        .collect();
    let verdicts = pairs
        .par_iter()
        .map(|&(a, b)| {
            let probe = ExactThresholds {
                alpha: candidates[a].clone(),
                beta: candidates[b].clone(),
            };
            let coincides = probabilistic_block_regions(&ratios, &probe) == target;
            SweepVerdict {
                alpha: probe.alpha,
                beta: probe.beta,
                coincides,
            }
        })
        .collect();
    Sweep {
        candidates,
        verdicts,
    }
}

/// Regions under `Δ_t`: ratio `≥ t` positive, `< t` negative, no boundary,
/// whatever the thresholds.
pub fn delta_regions(
    space: &ApproximationSpace,
    concept: &Concept,
    t: f64,
) -> Result<TriPartition, ExprError> {
    let step = Expression::step(t)?;
    // Any valid pair gives the same regions for a step expression.
    let th = Thresholds::new(1.0, 0.0).expect("valid");
    Ok(linguistic_regions(space, concept, &step, &th))
}

/// Elements whose blocks are fully contained in the concept.
pub fn lower_approximation(space: &ApproximationSpace, concept: &Concept) -> ElementSet {
    let one = fraction::one();
    let full = space
        .block_ratios(concept)
        .into_iter()
        .enumerate()
        .filter(|(_, r)| *r == one)
        .map(|(b, _)| b);
    space.union_of_blocks(full)
}

/// JSON form of an interval. Decimal ends plus their exact fractions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalJson {
    pub lo: f64,
    pub lo_open: bool,
    pub hi: f64,
    pub hi_open: bool,
    pub lo_exact: String,
    pub hi_exact: String,
}

impl From<&Interval> for IntervalJson {
    fn from(i: &Interval) -> Self {
        IntervalJson {
            lo: fraction::to_f64(&i.lo),
            lo_open: i.lo_open,
            hi: fraction::to_f64(&i.hi),
            hi_open: i.hi_open,
            lo_exact: fraction::exact_string(&i.lo),
            hi_exact: fraction::exact_string(&i.hi),
        }
    }
}

/// Equivalence report JSON.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceJson {
    pub case: EquivalenceCase,
    pub alpha_interval: IntervalJson,
    pub beta_interval: IntervalJson,
    pub coupled: bool,
    pub sweep_agrees: bool,
}

impl EquivalenceJson {
    pub fn new(eq: &ThresholdEquivalence, sweep_agrees: bool) -> Self {
        EquivalenceJson {
            case: eq.case,
            alpha_interval: (&eq.alpha_interval).into(),
            beta_interval: (&eq.beta_interval).into(),
            coupled: eq.coupled,
            sweep_agrees,
        }
    }
}

/// JSON form of [`RegionBounds`]; absent bounds serialize as `null`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsJson {
    pub beta1: Option<f64>,
    pub beta2: Option<f64>,
    pub alpha1: Option<f64>,
    pub alpha2: Option<f64>,
    pub exact: [Option<String>; 4],
}

impl From<&RegionBounds> for BoundsJson {
    fn from(b: &RegionBounds) -> Self {
        let dec = |v: &Option<Fraction>| v.as_ref().map(fraction::to_f64);
        let ex = |v: &Option<Fraction>| v.as_ref().map(fraction::exact_string);
        BoundsJson {
            beta1: dec(&b.beta1),
            beta2: dec(&b.beta2),
            alpha1: dec(&b.alpha1),
            alpha2: dec(&b.alpha2),
            exact: [ex(&b.beta1), ex(&b.beta2), ex(&b.alpha1), ex(&b.alpha2)],
        }
    }
}
