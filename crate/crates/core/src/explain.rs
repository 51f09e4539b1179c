//! Plain-language explanations of region assignments.

use std::fmt::Write as _;

use serde::Serialize;

use crate::analysis::{
    BoundsJson, EquivalenceCase, EquivalenceJson, RegionBounds, ThresholdEquivalence,
};
use crate::expr::{Expression, Quantifier};
use crate::fraction::{self, Approx};
use crate::regions::{Region, Thresholds, TriPartition};
use crate::space::{ApproximationSpace, Concept, SpaceError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Decision {
    Accept,
    Reject,
    Abstain,
}

impl Decision {
    pub fn past_tense(self) -> &'static str {
        match self {
            Decision::Accept => "accepted",
            Decision::Reject => "rejected",
            Decision::Abstain => "abstained",
        }
    }
}

impl From<Region> for Decision {
    fn from(r: Region) -> Self {
        match r {
            Region::Pos => Decision::Accept,
            Region::Neg => Decision::Reject,
            Region::Bnd => Decision::Abstain,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Explanation {
    pub element: String,
    pub block: String,
    pub region: Decision,
    pub degree: f64,
    pub sentence: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantifier: Option<Quantifier>,
}

/// What the degree measures, e.g. "the degree to which many members of C2
/// are in X".
fn degree_phrase(expr: &Expression, block: &str, concept: &str) -> String {
    if let Some(q) = expr.quantifier() {
        return format!(
            "the degree to which {} members of {block} are in {concept}",
            q.word()
        );
    }
    match expr {
        Expression::Step(s) => format!(
            "the degree to which at least a share {} of the members of {block} are in {concept}",
            s.threshold()
        ),
        Expression::Identity => format!("the share of members of {block} that are in {concept}"),
        Expression::Piecewise(e) => {
            format!(
                "the degree to which the share of members of {block} in {concept} is {}",
                e.name()
            )
        }
    }
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

pub fn explain_element(
    space: &ApproximationSpace,
    tp: &TriPartition,
    expr: &Expression,
    x: &str,
    concept_label: &str,
) -> Result<Explanation, SpaceError> {
    let i = space.universe().position(x)?;
    let block = space.block_of(i).label.clone();
    let region = Decision::from(tp.region_of(i));
    let degree = tp.degrees[i];
    let sentence = format!(
        "{} is {:.2}, so {x} is {}.",
        capitalize(&degree_phrase(expr, &block, concept_label)),
        degree,
        region.past_tense()
    );
    Ok(Explanation {
        element: x.to_string(),
        block,
        region,
        degree,
        sentence,
        quantifier: expr.quantifier(),
    })
}

/// Explanations for every element, most confident first: by degree
/// descending, then universe order.
pub fn explain_all(
    space: &ApproximationSpace,
    tp: &TriPartition,
    expr: &Expression,
    concept_label: &str,
) -> Vec<Explanation> {
    let mut order: Vec<usize> = (0..space.universe().len()).collect();
    order.sort_by(|&a, &b| tp.degrees[b].total_cmp(&tp.degrees[a]).then(a.cmp(&b)));
    order
        .into_iter()
        .map(|i| {
            explain_element(space, tp, expr, space.universe().id(i), concept_label)
                .expect("known element")
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockSection {
    pub block: String,
    pub size: usize,
    pub ratio: f64,
    pub ratio_exact: String,
    pub degree: f64,
    pub region: Decision,
    pub sentence: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub accepted: usize,
    pub rejected: usize,
    pub abstained: usize,
    pub accepted_blocks: Vec<String>,
    pub rejected_blocks: Vec<String>,
    pub abstained_blocks: Vec<String>,
}

/// A full analysis run, ready for text or JSON output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub concept: String,
    pub expression: String,
    pub alpha: f64,
    pub beta: f64,
    pub blocks: Vec<BlockSection>,
    pub summary: Summary,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence: Option<EquivalenceJson>,
    #[serde(skip)]
    bounds_text: Option<String>,
    #[serde(skip)]
    equivalence_text: Option<String>,
}

/// Builds the report for a tri-partition. `equivalence` carries the interval
/// characterization and whether the brute-force sweep agreed with it.
pub fn report(
    space: &ApproximationSpace,
    concept: &Concept,
    tp: &TriPartition,
    expr: &Expression,
    th: &Thresholds,
    bounds: Option<&RegionBounds>,
    equivalence: Option<(&ThresholdEquivalence, bool)>,
) -> Report {
    let ratios = space.block_ratios(concept);
    let mut blocks = Vec::with_capacity(space.blocks().len());
    let mut summary = Summary {
        accepted: 0,
        rejected: 0,
        abstained: 0,
        accepted_blocks: Vec::new(),
        rejected_blocks: Vec::new(),
        abstained_blocks: Vec::new(),
    };
    for (b, block) in space.blocks().iter().enumerate() {
        let region = Decision::from(tp.block_regions[b]);
        let degree = tp.block_degrees[b];
        let (count, names) = match region {
            Decision::Accept => (&mut summary.accepted, &mut summary.accepted_blocks),
            Decision::Reject => (&mut summary.rejected, &mut summary.rejected_blocks),
            Decision::Abstain => (&mut summary.abstained, &mut summary.abstained_blocks),
        };
        *count += block.members.len();
        names.push(block.label.clone());
        let sentence = format!(
            "{} is {:.2}, so the members of {} are {}.",
            capitalize(&degree_phrase(expr, &block.label, &concept.label)),
            degree,
            block.label,
            region.past_tense()
        );
        blocks.push(BlockSection {
            block: block.label.clone(),
            size: block.members.len(),
            ratio: fraction::to_f64(&ratios[b]),
            ratio_exact: fraction::exact_string(&ratios[b]),
            degree,
            region,
            sentence,
        });
    }

    let mut notes = Vec::new();
    let case = equivalence.map(|(eq, _)| eq.case);
    for r in tp.empty_regions() {
        let mut note = match r {
            Region::Pos => "positive region empty; nothing is accepted".to_string(),
            Region::Neg => "negative region empty; nothing is rejected".to_string(),
            Region::Bnd => "no abstentions".to_string(),
        };
        let matching = match r {
            Region::Pos => EquivalenceCase::PosEmpty,
            Region::Neg => EquivalenceCase::NegEmpty,
            Region::Bnd => EquivalenceCase::BndEmpty,
        };
        if case == Some(matching) {
            let _ = write!(note, " ({matching:?} case)");
        }
        notes.push(note);
    }

    Report {
        concept: concept.label.clone(),
        expression: expr.name(),
        alpha: th.alpha(),
        beta: th.beta(),
        blocks,
        summary,
        notes,
        bounds: bounds.map(BoundsJson::from),
        equivalence: equivalence.map(|(eq, agrees)| EquivalenceJson::new(eq, agrees)),
        bounds_text: bounds.map(|b| b.to_string()),
        equivalence_text: equivalence.map(|(eq, agrees)| {
            format!(
                "{eq} [{}]; sweep {}",
                eq.case.describe(),
                if agrees { "agrees" } else { "DISAGREES" }
            )
        }),
    }
}

impl Report {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "Three-way decision on {} with expression '{}' at (alpha, beta) = ({}, {})",
            self.concept, self.expression, self.alpha, self.beta
        );
        let _ = writeln!(out);
        for b in &self.blocks {
            let _ = writeln!(
                out,
                "{} ({} elements): ratio {}, degree {:.2} -> {}",
                b.block,
                b.size,
                ratio_text(&b.ratio_exact, b.ratio),
                b.degree,
                b.region.past_tense()
            );
            let _ = writeln!(out, "  {}", b.sentence);
        }
        let _ = writeln!(out);
        let s = &self.summary;
        let _ = writeln!(
            out,
            "Accepted:  {} element(s) in {}",
            s.accepted,
            list(&s.accepted_blocks)
        );
        let _ = writeln!(
            out,
            "Rejected:  {} element(s) in {}",
            s.rejected,
            list(&s.rejected_blocks)
        );
        let _ = writeln!(
            out,
            "Abstained: {} element(s) in {}",
            s.abstained,
            list(&s.abstained_blocks)
        );
        if let Some(b) = &self.bounds_text {
            let _ = writeln!(out, "Bounds: {b}");
        }
        if let Some(e) = &self.equivalence_text {
            let _ = writeln!(out, "Equivalent probabilistic thresholds: {e}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "Note: {n}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

fn ratio_text(exact: &str, dec: f64) -> String {
    match exact.split_once('/') {
        Some((n, d)) => {
            let f = fraction::fraction(n.parse().unwrap_or(0), d.parse().unwrap_or(1));
            Approx(&f).to_string()
        }
        None => format!("{dec}"),
    }
}

fn list(names: &[String]) -> String {
    if names.is_empty() {
        "-".to_string()
    } else {
        names.join(", ")
    }
}
