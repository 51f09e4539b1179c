//! Probabilistic and linguistic tri-partitions and the rough sets they induce.

use std::fmt;

use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

use crate::expr::Expression;
use crate::fraction::{self, Fraction};
use crate::space::{ApproximationSpace, Concept, ElementSet};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThresholdError {
    #[error("thresholds must satisfy 0 ≤ beta < alpha ≤ 1 (got alpha={alpha}, beta={beta})")]
    Invalid { alpha: f64, beta: f64 },
}

/// A pair `(α, β)` with `0 ≤ β < α ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    alpha: f64,
    beta: f64,
}

impl Thresholds {
    pub fn new(alpha: f64, beta: f64) -> Result<Self, ThresholdError> {
        let ok = (0.0..=1.0).contains(&alpha) && (0.0..=1.0).contains(&beta) && beta < alpha;
        if ok {
            Ok(Thresholds { alpha, beta })
        } else {
            Err(ThresholdError::Invalid { alpha, beta })
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Both thresholds as exact rationals.
    pub fn exact(&self) -> ExactThresholds {
        ExactThresholds {
            alpha: fraction::from_f64(self.alpha).expect("finite"),
            beta: fraction::from_f64(self.beta).expect("finite"),
        }
    }
}

/// Thresholds held as exact rationals, used where endpoints come from
/// inclusion ratios rather than from user input.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactThresholds {
    pub alpha: Fraction,
    pub beta: Fraction,
}

impl ExactThresholds {
    pub fn new(alpha: Fraction, beta: Fraction) -> Result<Self, ThresholdError> {
        let ok = alpha <= fraction::one() && beta >= fraction::zero() && beta < alpha;
        if ok {
            Ok(ExactThresholds { alpha, beta })
        } else {
            Err(ThresholdError::Invalid {
                alpha: fraction::to_f64(&alpha),
                beta: fraction::to_f64(&beta),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Pos,
    Neg,
    Bnd,
}

impl Region {
    pub const ALL: [Region; 3] = [Region::Pos, Region::Neg, Region::Bnd];

    pub fn name(self) -> &'static str {
        match self {
            Region::Pos => "pos",
            Region::Neg => "neg",
            Region::Bnd => "bnd",
        }
    }

    /// Classifies a value against `(α, β)`: `≥ α` positive, `≤ β` negative,
    /// otherwise boundary.
    fn classify<T: PartialOrd>(value: &T, alpha: &T, beta: &T) -> Region {
        if value >= alpha {
            Region::Pos
        } else if value <= beta {
            Region::Neg
        } else {
            Region::Bnd
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::Pos => "positive",
            Region::Neg => "negative",
            Region::Bnd => "boundary",
        })
    }
}

/// The positive, negative and boundary regions of the universe, together
/// with the degree each element was compared against.
#[derive(Debug, Clone, PartialEq)]
pub struct TriPartition {
    pub pos: ElementSet,
    pub neg: ElementSet,
    pub bnd: ElementSet,
    /// Region of each block, in block order.
    pub block_regions: Vec<Region>,
    /// Compared value of each block (inclusion ratio or expression degree).
    pub block_degrees: Vec<f64>,
    /// Compared value of each element, indexed by universe position.
    pub degrees: Vec<f64>,
}

impl TriPartition {
    fn from_blocks(
        space: &ApproximationSpace,
        block_regions: Vec<Region>,
        block_degrees: Vec<f64>,
    ) -> Self {
        let (mut pos, mut neg, mut bnd) = (ElementSet::new(), ElementSet::new(), ElementSet::new());
        let mut degrees = vec![0.0; space.universe().len()];
        for (b, block) in space.blocks().iter().enumerate() {
            let target = match block_regions[b] {
                Region::Pos => &mut pos,
                Region::Neg => &mut neg,
                Region::Bnd => &mut bnd,
            };
            target.extend(block.members.iter().copied());
            for &m in &block.members {
                degrees[m] = block_degrees[b];
            }
        }
        TriPartition {
            pos,
            neg,
            bnd,
            block_regions,
            block_degrees,
            degrees,
        }
    }

    pub fn region(&self, r: Region) -> &ElementSet {
        match r {
            Region::Pos => &self.pos,
            Region::Neg => &self.neg,
            Region::Bnd => &self.bnd,
        }
    }

    pub fn region_of(&self, x: usize) -> Region {
        if self.pos.contains(&x) {
            Region::Pos
        } else if self.neg.contains(&x) {
            Region::Neg
        } else {
            Region::Bnd
        }
    }

    /// Regions with no elements, in `pos, neg, bnd` order.
    pub fn empty_regions(&self) -> Vec<Region> {
        Region::ALL
            .into_iter()
            .filter(|&r| self.region(r).is_empty())
            .collect()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.empty_regions().is_empty()
    }

    /// Same three sets, ignoring degrees.
    pub fn same_regions(&self, other: &TriPartition) -> bool {
        self.pos == other.pos && self.neg == other.neg && self.bnd == other.bnd
    }

    pub fn to_json(&self, space: &ApproximationSpace) -> RegionsJson {
        let degrees = (0..space.universe().len())
            .map(|i| (space.universe().id(i).to_string(), self.degrees[i]))
            .collect();
        RegionsJson {
            pos: space.ids_of(&self.pos),
            neg: space.ids_of(&self.neg),
            bnd: space.ids_of(&self.bnd),
            degrees,
            empty_regions: self.empty_regions().into_iter().map(Region::name).collect(),
        }
    }
}

/// Result JSON for a tri-partition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionsJson {
    pub pos: Vec<String>,
    pub neg: Vec<String>,
    pub bnd: Vec<String>,
    pub degrees: BTreeMap<String, f64>,
    pub empty_regions: Vec<&'static str>,
}

/// Lower and upper approximation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoughSetPair {
    pub lower: ElementSet,
    pub upper: ElementSet,
}

/// Regions from inclusion ratios: `ratio ≥ α` positive, `ratio ≤ β`
/// negative. The comparison is exact.
pub fn probabilistic_regions(
    space: &ApproximationSpace,
    concept: &Concept,
    th: &Thresholds,
) -> TriPartition {
    probabilistic_regions_exact(space, concept, &th.exact())
}

pub fn probabilistic_regions_exact(
    space: &ApproximationSpace,
    concept: &Concept,
    th: &ExactThresholds,
) -> TriPartition {
    let ratios = space.block_ratios(concept);
    let regions = probabilistic_block_regions(&ratios, th);
    let degrees = ratios.iter().map(fraction::to_f64).collect();
    TriPartition::from_blocks(space, regions, degrees)
}

/// Region of each block for precomputed block ratios.
pub(crate) fn probabilistic_block_regions(
    ratios: &[Fraction],
    th: &ExactThresholds,
) -> Vec<Region> {
    ratios
        .iter()
        .map(|r| Region::classify(r, &th.alpha, &th.beta))
        .collect()
}

/// Regions from expression degrees: `Ev(ratio) ≥ α` positive,
/// `Ev(ratio) ≤ β` negative. No tolerance is applied.
pub fn linguistic_regions(
    space: &ApproximationSpace,
    concept: &Concept,
    expr: &Expression,
    th: &Thresholds,
) -> TriPartition {
    let degrees: Vec<f64> = space
        .block_ratios(concept)
        .iter()
        .map(|r| expr.degree(r))
        .collect();
    let regions = degrees
        .iter()
        .map(|d| Region::classify(d, &th.alpha, &th.beta))
        .collect();
    TriPartition::from_blocks(space, regions, degrees)
}

/// `(POS, POS ∪ BND)`.
pub fn rough_set_from_tripartition(tp: &TriPartition) -> RoughSetPair {
    RoughSetPair {
        lower: tp.pos.clone(),
        upper: tp.pos.union(&tp.bnd).copied().collect(),
    }
}

/// Classical lower and upper approximations: blocks contained in `X`, and
/// blocks meeting `X`.
pub fn pawlak_rough_set(space: &ApproximationSpace, concept: &Concept) -> RoughSetPair {
    let mut lower = ElementSet::new();
    let mut upper = ElementSet::new();
    for block in space.blocks() {
        let hits = block
            .members
            .iter()
            .filter(|m| concept.members.contains(m))
            .count();
        if hits == block.members.len() {
            lower.extend(block.members.iter().copied());
        }
        if hits > 0 {
            upper.extend(block.members.iter().copied());
        }
    }
    RoughSetPair { lower, upper }
}
