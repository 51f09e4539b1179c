//! Evaluative linguistic expressions as functions `[0, 1] → [0, 1]`.
//!
//! An expression is either a piecewise function built from constant and
//! quadratic segments ([`EvalExpr`]), a crisp step ([`StepExpr`]) or the
//! identity. The three built-ins *not small*, *very big* and *extremely big*
//! are piecewise expressions in the standard context `⟨0, 0.5, 1⟩`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fraction::{self, Fraction};

/// Largest jump allowed between adjacent segments at a shared breakpoint.
/// The coefficients are rounded, so the built-ins are only close
/// to continuous.
pub const CONTINUITY_TOLERANCE: f64 = 2e-2;

/// Slack used when deciding monotonicity from samples.
pub const MONOTONE_SLACK: f64 = 1e-9;

/// Grid step used when an expression must be checked for monotonicity and
/// the caller does not supply one.
pub const DEFAULT_GRID_STEP: f64 = 1e-3;

const RANGE_SLACK: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("argument {0} is outside [0, 1]")]
    Domain(f64),
    #[error("segment {index}: {reason}")]
    InvalidSegment { index: usize, reason: String },
    #[error("segments do not tile [0, 1]: {0}")]
    Tiling(String),
    #[error("jump of {jump:.4} at breakpoint {at} exceeds the continuity tolerance")]
    Discontinuous { at: f64, jump: f64 },
    #[error("expression declared {declared} monotone but sampling says otherwise")]
    MonotoneMismatch { declared: bool },
    #[error("grid step {0} must lie in (0, 0.001]")]
    GridStep(f64),
    #[error("step threshold {0} is outside [0, 1]")]
    StepThreshold(f64),
    #[error("unknown expression `{0}`")]
    Unknown(String),
    #[error("cannot read expression file: {0}")]
    Json(String),
}

/// Shape of one piece of an expression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentForm {
    /// `c`
    Const { c: f64 },
    /// `(x − a)² / d`
    QuadUp { a: f64, d: f64 },
    /// `1 − (a − x)² / d`
    QuadDown { a: f64, d: f64 },
}

impl SegmentForm {
    fn apply(&self, x: f64) -> f64 {
        match *self {
            SegmentForm::Const { c } => c,
            SegmentForm::QuadUp { a, d } => (x - a).powi(2) / d,
            SegmentForm::QuadDown { a, d } => 1.0 - (a - x).powi(2) / d,
        }
    }
}

/// One piece of a piecewise expression, defined on an interval whose ends may
/// be open or closed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub lo: f64,
    pub lo_inclusive: bool,
    pub hi: f64,
    pub hi_inclusive: bool,
    pub form: SegmentForm,
}

impl Segment {
    pub fn new(
        lo: f64,
        lo_inclusive: bool,
        hi: f64,
        hi_inclusive: bool,
        form: SegmentForm,
    ) -> Self {
        Segment {
            lo,
            lo_inclusive,
            hi,
            hi_inclusive,
            form,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = x > self.lo || (self.lo_inclusive && x == self.lo);
        let below = x < self.hi || (self.hi_inclusive && x == self.hi);
        above && below
    }

    fn validate(&self, index: usize) -> Result<(), ExprError> {
        let bad = |reason: String| ExprError::InvalidSegment { index, reason };
        if !(self.lo.is_finite() && self.hi.is_finite()) {
            return Err(bad("non-finite bound".into()));
        }
        if !(0.0..=1.0).contains(&self.lo) || !(0.0..=1.0).contains(&self.hi) {
            return Err(bad(format!(
                "bounds [{}, {}] leave [0, 1]",
                self.lo, self.hi
            )));
        }
        if self.lo >= self.hi {
            return Err(bad(format!("lo {} is not below hi {}", self.lo, self.hi)));
        }
        let mut probes = vec![self.lo, self.hi];
        match self.form {
            SegmentForm::Const { c } => {
                if !c.is_finite() {
                    return Err(bad("non-finite constant".into()));
                }
            }
            SegmentForm::QuadUp { a, d } | SegmentForm::QuadDown { a, d } => {
                if !(d.is_finite() && d > 0.0) || !a.is_finite() {
                    return Err(bad(format!(
                        "need finite a and positive d, got a={a}, d={d}"
                    )));
                }
                // A quadratic attains its extremes at the ends or the vertex.
                if a > self.lo && a < self.hi {
                    probes.push(a);
                }
            }
        }
        for x in probes {
            let y = self.form.apply(x);
            if !(-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&y) {
                return Err(bad(format!("value {y} at x={x} leaves [0, 1]")));
            }
        }
        Ok(())
    }
}

/// The built-in expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    NotSmall,
    VeryBig,
    ExtremelyBig,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [Builtin::NotSmall, Builtin::VeryBig, Builtin::ExtremelyBig];

    pub fn label(self) -> &'static str {
        match self {
            Builtin::NotSmall => "not small",
            Builtin::VeryBig => "very big",
            Builtin::ExtremelyBig => "extremely big",
        }
    }

    /// The fuzzy quantifier whose formula this expression realizes on crisp
    /// sets.
    pub fn quantifier(self) -> Quantifier {
        match self {
            Builtin::NotSmall => Quantifier::Many,
            Builtin::VeryBig => Quantifier::Most,
            Builtin::ExtremelyBig => Quantifier::AlmostAll,
        }
    }

    fn segments(self) -> Vec<Segment> {
        use SegmentForm::*;
        match self {
            Builtin::NotSmall => vec![
                Segment::new(0.0, true, 0.0745, true, Const { c: 0.0 }),
                Segment::new(
                    0.0745,
                    false,
                    0.16,
                    true,
                    QuadUp {
                        a: 0.0745,
                        d: 0.01714,
                    },
                ),
                Segment::new(
                    0.16,
                    false,
                    0.275,
                    false,
                    QuadDown {
                        a: 0.275,
                        d: 0.02305,
                    },
                ),
                Segment::new(0.275, true, 1.0, true, Const { c: 1.0 }),
            ],
            Builtin::VeryBig => vec![
                Segment::new(0.0, true, 0.83, true, Const { c: 0.0 }),
                Segment::new(
                    0.83,
                    false,
                    0.895,
                    false,
                    QuadUp {
                        a: 0.83,
                        d: 0.00828,
                    },
                ),
                Segment::new(
                    0.895,
                    true,
                    0.9575,
                    false,
                    QuadDown {
                        a: 0.9575,
                        d: 0.00796,
                    },
                ),
                Segment::new(0.9575, true, 1.0, true, Const { c: 1.0 }),
            ],
            Builtin::ExtremelyBig => vec![
                Segment::new(0.0, true, 0.885, true, Const { c: 0.0 }),
                Segment::new(
                    0.885,
                    false,
                    0.95,
                    false,
                    QuadUp {
                        a: 0.885,
                        d: 0.00715,
                    },
                ),
                Segment::new(
                    0.95,
                    true,
                    0.995,
                    false,
                    QuadDown {
                        a: 0.995,
                        d: 0.00495,
                    },
                ),
                Segment::new(0.995, true, 1.0, true, Const { c: 1.0 }),
            ],
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantifier {
    Many,
    Most,
    AlmostAll,
    All,
}

impl Quantifier {
    pub fn word(self) -> &'static str {
        match self {
            Quantifier::Many => "many",
            Quantifier::Most => "most",
            Quantifier::AlmostAll => "almost all",
            Quantifier::All => "all",
        }
    }
}

/// A validated piecewise expression.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalExpr {
    name: String,
    segments: Vec<Segment>,
    declared_monotone: Option<bool>,
    builtin: Option<Builtin>,
}

impl EvalExpr {
    /// Validates and builds a custom expression. Segments may be given in any
    /// order; they are sorted by their lower bound.
    pub fn new(
        name: impl Into<String>,
        mut segments: Vec<Segment>,
        declared_monotone: Option<bool>,
    ) -> Result<Self, ExprError> {
        segments.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        for (i, s) in segments.iter().enumerate() {
            s.validate(i)?;
        }
        check_tiling(&segments)?;
        for pair in segments.windows(2) {
            let at = pair[0].hi;
            let jump = (pair[0].form.apply(at) - pair[1].form.apply(at)).abs();
            if jump > CONTINUITY_TOLERANCE {
                return Err(ExprError::Discontinuous { at, jump });
            }
        }
        let expr = EvalExpr {
            name: name.into(),
            segments,
            declared_monotone,
            builtin: None,
        };
        if let Some(declared) = declared_monotone {
            if expr.is_increasing(DEFAULT_GRID_STEP)? != declared {
                return Err(ExprError::MonotoneMismatch { declared });
            }
        }
        Ok(expr)
    }

    pub fn builtin(which: Builtin) -> Self {
        EvalExpr {
            name: which.label().to_string(),
            segments: which.segments(),
            declared_monotone: Some(true),
            builtin: Some(which),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn declared_monotone(&self) -> Option<bool> {
        self.declared_monotone
    }

    pub fn as_builtin(&self) -> Option<Builtin> {
        self.builtin
    }

    pub fn evaluate(&self, x: f64) -> Result<f64, ExprError> {
        check_domain(x)?;
        let seg = self
            .segments
            .iter()
            .find(|s| s.contains(x))
            .expect("validated segments tile [0, 1]");
        Ok(seg.form.apply(x).clamp(0.0, 1.0))
    }

    /// Interior breakpoints, each with the values of the left and right
    /// pieces there.
    pub fn breakpoint_jumps(&self) -> Vec<(f64, f64, f64)> {
        self.segments
            .windows(2)
            .map(|w| (w[0].hi, w[0].form.apply(w[0].hi), w[1].form.apply(w[1].lo)))
            .collect()
    }

    pub fn is_increasing(&self, grid_step: f64) -> Result<bool, ExprError> {
        let extra: Vec<f64> = self.segments.iter().map(|s| s.lo).collect();
        sampled_increasing(
            |x| self.evaluate(x).expect("grid inside [0, 1]"),
            grid_step,
            &extra,
        )
    }

    /// Reads the JSON form
    /// `{"name", "segments": [{"lo", "lo_inclusive", "hi", "hi_inclusive", "form", "a", "d", "c"}]}`.
    pub fn from_json(text: &str) -> Result<Self, ExprError> {
        let file: ExprFile =
            serde_json::from_str(text).map_err(|e| ExprError::Json(e.to_string()))?;
        file.try_into()
    }

    pub fn to_json(&self) -> String {
        let file = ExprFile::from(self);
        serde_json::to_string_pretty(&file).expect("plain data serializes")
    }
}

fn check_domain(x: f64) -> Result<(), ExprError> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(ExprError::Domain(x))
    }
}

fn check_tiling(segments: &[Segment]) -> Result<(), ExprError> {
    let (first, last) = match (segments.first(), segments.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(ExprError::Tiling("no segments".into())),
    };
    if first.lo != 0.0 || !first.lo_inclusive {
        return Err(ExprError::Tiling("0 is not covered".into()));
    }
    if last.hi != 1.0 || !last.hi_inclusive {
        return Err(ExprError::Tiling("1 is not covered".into()));
    }
    for w in segments.windows(2) {
        let (left, right) = (&w[0], &w[1]);
        if left.hi < right.lo {
            return Err(ExprError::Tiling(format!(
                "gap between {} and {}",
                left.hi, right.lo
            )));
        }
        if left.hi > right.lo {
            return Err(ExprError::Tiling(format!(
                "overlap between {} and {}",
                right.lo, left.hi
            )));
        }
        match (left.hi_inclusive, right.lo_inclusive) {
            (true, true) => {
                return Err(ExprError::Tiling(format!(
                    "breakpoint {} claimed twice",
                    left.hi
                )))
            }
            (false, false) => {
                return Err(ExprError::Tiling(format!(
                    "breakpoint {} not claimed",
                    left.hi
                )))
            }
            _ => {}
        }
    }
    Ok(())
}

/// Non-decreasing check on `{0, step, 2·step, …, 1}` plus any `extra`
/// points in `[0, 1]`.
fn sampled_increasing(
    f: impl Fn(f64) -> f64,
    grid_step: f64,
    extra: &[f64],
) -> Result<bool, ExprError> {
    if !(grid_step > 0.0 && grid_step <= 1e-3) {
        return Err(ExprError::GridStep(grid_step));
    }
    let n = (1.0 / grid_step).ceil() as usize;
    let mut xs: Vec<f64> = (0..n)
        .map(|i| i as f64 * grid_step)
        .filter(|&x| x < 1.0)
        .collect();
    xs.push(1.0);
    xs.extend(extra.iter().copied().filter(|x| (0.0..=1.0).contains(x)));
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let ys: Vec<f64> = xs.into_iter().map(f).collect();
    Ok(ys.windows(2).all(|w| w[1] >= w[0] - MONOTONE_SLACK))
}

/// `Δ_t(a) = 1` if `a ≥ t`, else `0`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepExpr {
    t: f64,
    exact: Fraction,
}

impl StepExpr {
    pub fn new(t: f64) -> Result<Self, ExprError> {
        if (0.0..=1.0).contains(&t) {
            Ok(StepExpr {
                t,
                exact: fraction::from_f64(t).expect("t is finite"),
            })
        } else {
            Err(ExprError::StepThreshold(t))
        }
    }

    pub fn threshold(&self) -> f64 {
        self.t
    }

    pub fn evaluate(&self, x: f64) -> Result<f64, ExprError> {
        check_domain(x)?;
        Ok(if x >= self.t { 1.0 } else { 0.0 })
    }

    /// Exact comparison of a rational argument against `t`.
    pub fn evaluate_exact(&self, x: &Fraction) -> f64 {
        if *x >= self.exact {
            1.0
        } else {
            0.0
        }
    }
}

/// Any expression the decision procedures accept.
#[derive(Debug, Clone, PartialEq)]
pub enum Expression {
    Piecewise(EvalExpr),
    Step(StepExpr),
    /// `x ↦ x`; linguistic regions under it are the probabilistic ones.
    Identity,
}

impl Expression {
    pub fn builtin(which: Builtin) -> Self {
        Expression::Piecewise(EvalExpr::builtin(which))
    }

    pub fn step(t: f64) -> Result<Self, ExprError> {
        StepExpr::new(t).map(Expression::Step)
    }

    pub fn name(&self) -> String {
        match self {
            Expression::Piecewise(e) => e.name().to_string(),
            Expression::Step(s) => format!("delta:{}", s.t),
            Expression::Identity => "identity".to_string(),
        }
    }

    /// Quantifier reading, available for the three built-ins and `Δ₁`.
    pub fn quantifier(&self) -> Option<Quantifier> {
        match self {
            Expression::Piecewise(e) => e.as_builtin().map(Builtin::quantifier),
            Expression::Step(s) if s.t == 1.0 => Some(Quantifier::All),
            _ => None,
        }
    }

    pub fn evaluate(&self, x: f64) -> Result<f64, ExprError> {
        match self {
            Expression::Piecewise(e) => e.evaluate(x),
            Expression::Step(s) => s.evaluate(x),
            Expression::Identity => check_domain(x).map(|_| x),
        }
    }

    /// Degree of an inclusion ratio. Step expressions compare exactly; the
    /// others see the nearest `f64`.
    pub fn degree(&self, ratio: &Fraction) -> f64 {
        match self {
            Expression::Step(s) => s.evaluate_exact(ratio),
            _ => self
                .evaluate(fraction::to_f64(ratio))
                .expect("ratios lie in [0, 1]"),
        }
    }

    pub fn is_increasing(&self, grid_step: f64) -> Result<bool, ExprError> {
        match self {
            Expression::Piecewise(e) => e.is_increasing(grid_step),
            Expression::Step(s) => {
                sampled_increasing(|x| s.evaluate(x).unwrap(), grid_step, &[s.t])
            }
            Expression::Identity => sampled_increasing(|x| x, grid_step, &[]),
        }
    }
}

impl From<Builtin> for Expression {
    fn from(b: Builtin) -> Self {
        Expression::builtin(b)
    }
}

impl FromStr for Expression {
    type Err = ExprError;

    /// Parses `not_small | very_big | extremely_big | identity | delta:<t>`.
    /// Expression files are loaded separately with [`EvalExpr::from_json`].
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "not_small" => Ok(Builtin::NotSmall.into()),
            "very_big" => Ok(Builtin::VeryBig.into()),
            "extremely_big" => Ok(Builtin::ExtremelyBig.into()),
            "identity" => Ok(Expression::Identity),
            _ => match s.strip_prefix("delta:") {
                Some(t) => {
                    let t: f64 = t
                        .trim()
                        .parse()
                        .map_err(|_| ExprError::Unknown(s.to_string()))?;
                    Expression::step(t)
                }
                None => Err(ExprError::Unknown(s.to_string())),
            },
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct ExprFile {
    name: String,
    segments: Vec<SegmentSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    declared_monotone: Option<bool>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SegmentSpec {
    lo: f64,
    lo_inclusive: bool,
    hi: f64,
    hi_inclusive: bool,
    form: FormTag,
    #[serde(default)]
    a: f64,
    #[serde(default)]
    d: f64,
    #[serde(default)]
    c: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum FormTag {
    Const,
    QuadUp,
    QuadDown,
}

impl TryFrom<ExprFile> for EvalExpr {
    type Error = ExprError;

    fn try_from(file: ExprFile) -> Result<Self, ExprError> {
        let segments = file
            .segments
            .into_iter()
            .map(|s| {
                let form = match s.form {
                    FormTag::Const => SegmentForm::Const { c: s.c },
                    FormTag::QuadUp => SegmentForm::QuadUp { a: s.a, d: s.d },
                    FormTag::QuadDown => SegmentForm::QuadDown { a: s.a, d: s.d },
                };
                Segment::new(s.lo, s.lo_inclusive, s.hi, s.hi_inclusive, form)
            })
            .collect();
        EvalExpr::new(file.name, segments, file.declared_monotone)
    }
}

impl From<&EvalExpr> for ExprFile {
    fn from(e: &EvalExpr) -> Self {
        let segments = e
            .segments
            .iter()
            .map(|s| {
                let (form, a, d, c) = match s.form {
                    SegmentForm::Const { c } => (FormTag::Const, 0.0, 0.0, c),
                    SegmentForm::QuadUp { a, d } => (FormTag::QuadUp, a, d, 0.0),
                    SegmentForm::QuadDown { a, d } => (FormTag::QuadDown, a, d, 0.0),
                };
                SegmentSpec {
                    lo: s.lo,
                    lo_inclusive: s.lo_inclusive,
                    hi: s.hi,
                    hi_inclusive: s.hi_inclusive,
                    form,
                    a,
                    d,
                    c,
                }
            })
            .collect();
        ExprFile {
            name: e.name.clone(),
            segments,
            declared_monotone: e.declared_monotone,
        }
    }
}
