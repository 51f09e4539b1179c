use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lingtwd::analysis::{first_difference, BoundsJson, EquivalenceJson};
use lingtwd::explain::explain_all;
use lingtwd::fraction::{self, Approx};
use lingtwd::*;
use serde_json::json;

/// Three-way decisions from evaluative linguistic expressions and
/// probabilistic rough sets.
#[derive(Parser)]
#[command(name = "lingtwd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Linguistic regions with a per-block explanation.
    Regions {
        #[command(flatten)]
        run: RunArgs,
        /// Also print one sentence per element, highest degree first.
        #[arg(long)]
        explain: bool,
    },
    /// Extreme inclusion ratios of each region and their ordering.
    Bounds(RunArgs),
    /// Probabilistic threshold intervals that reproduce the linguistic regions.
    Equivalence(RunArgs),
    /// Compare the linguistic regions with probabilistic regions at given thresholds.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long = "alpha-p")]
        alpha_p: f64,
        #[arg(long = "beta-p")]
        beta_p: f64,
    },
    /// Brute-force search over candidate probabilistic thresholds.
    Sweep(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// CSV with a header row; the first column holds element ids.
    #[arg(long)]
    input: PathBuf,
    /// Attribute column defining the indiscernibility relation (repeatable).
    #[arg(long = "key", required = true)]
    keys: Vec<String>,
    /// Boolean column marking the concept members.
    #[arg(
        long,
        conflicts_with = "concept_ids",
        required_unless_present = "concept_ids"
    )]
    concept: Option<String>,
    /// Comma-separated ids of the concept members, instead of a column.
    #[arg(long = "concept-ids", value_delimiter = ',')]
    concept_ids: Option<Vec<String>>,
    /// Label for a concept given by ids.
    #[arg(long = "concept-label", default_value = "X")]
    concept_label: String,
    /// not_small | very_big | extremely_big | identity | delta:<t> | file:<path>
    #[arg(long, visible_alias = "expression")]
    expr: String,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Failure with its process exit status.
struct Failure {
    code: u8,
    message: String,
}

const MISMATCH: u8 = 1;
const CONFIG: u8 = 2;
const DATA: u8 = 3;
const NON_MONOTONE: u8 = 4;
const DEGENERATE: u8 = 5;

fn fail(code: u8, message: impl ToString) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        let code = match e {
            AnalysisError::NonMonotoneExpr(_) => NON_MONOTONE,
            AnalysisError::DegenerateCase(_) => DEGENERATE,
            AnalysisError::Threshold(_) | AnalysisError::Expr(_) => CONFIG,
            AnalysisError::BoundAbsent(_) | AnalysisError::NotIncreasing => DATA,
        };
        fail(code, e)
    }
}

/// Everything a subcommand needs after loading.
struct Run {
    space: ApproximationSpace,
    concept: Concept,
    expr: Expression,
    th: Thresholds,
    format: Format,
}

fn parse_expression(spec: &str) -> Result<Expression, Failure> {
    if let Some(path) = spec.strip_prefix("file:") {
        let text = fs::read_to_string(path)
            .map_err(|e| fail(CONFIG, format!("cannot read expression file {path}: {e}")))?;
        let e = EvalExpr::from_json(&text)
            .map_err(|e| fail(CONFIG, format!("expression file {path}: {e}")))?;
        return Ok(Expression::Piecewise(e));
    }
    spec.parse()
        .map_err(|e| fail(CONFIG, format!("expression `{spec}`: {e}")))
}

fn load(args: &RunArgs) -> Result<Run, Failure> {
    let th = Thresholds::new(args.alpha, args.beta).map_err(|e| fail(CONFIG, e))?;
    let expr = parse_expression(&args.expr)?;
    let file = fs::File::open(&args.input)
        .map_err(|e| fail(DATA, format!("cannot open {}: {e}", args.input.display())))?;
    let table = AttributeTable::from_csv(file).map_err(|e| fail(DATA, e))?;
    let keys: Vec<&str> = args.keys.iter().map(String::as_str).collect();
    let space = ApproximationSpace::from_attributes(&table, &keys).map_err(|e| fail(DATA, e))?;
    let concept = match (&args.concept, &args.concept_ids) {
        (Some(column), _) => Concept::from_bool_column(&space, &table, column),
        (None, Some(ids)) => Concept::from_ids(&space, args.concept_label.clone(), ids),
        (None, None) => {
            return Err(fail(
                CONFIG,
                "either --concept or --concept-ids is required",
            ))
        }
    }
    .map_err(|e| fail(DATA, e))?;
    Ok(Run {
        space,
        concept,
        expr,
        th,
        format: args.format,
    })
}

impl Run {
    fn regions(&self) -> TriPartition {
        let tp = linguistic_regions(&self.space, &self.concept, &self.expr, &self.th);
        warn_on_ties(&tp, &self.th);
        tp
    }
}

/// Degrees equal to a threshold sit on the open/closed edge of a region, so
/// the outcome hinges on the last bit of the degree.
fn warn_on_ties(tp: &TriPartition, th: &Thresholds) {
    for (name, t) in [("alpha", th.alpha()), ("beta", th.beta())] {
        if tp.block_degrees.contains(&t) {
            eprintln!("warning: {name} = {t} equals an attained degree; region membership at that degree is a boundary case");
        }
    }
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("json values serialize")
    );
}

fn cmd_regions(run: &Run, explain: bool) -> Result<u8, Failure> {
    let tp = run.regions();
    let rep = report(
        &run.space,
        &run.concept,
        &tp,
        &run.expr,
        &run.th,
        None,
        None,
    );
    match run.format {
        Format::Text => {
            print!("{}", rep.render_text());
            if explain {
                println!();
                for e in explain_all(&run.space, &tp, &run.expr, &run.concept.label) {
                    println!("{}", e.sentence);
                }
            }
        }
        Format::Json => {
            let mut value = json!({ "regions": tp.to_json(&run.space), "report": rep });
            if explain {
                let sentences: Vec<_> = explain_all(&run.space, &tp, &run.expr, &run.concept.label)
                    .into_iter()
                    .map(|e| json!({ "element": e.element, "sentence": e.sentence }))
                    .collect();
                value["explanations"] = json!(sentences);
            }
            print_json(&value);
        }
    }
    Ok(0)
}

fn cmd_bounds(run: &Run) -> Result<u8, Failure> {
    let tp = run.regions();
    let bounds = RegionBounds::from_tripartition(&run.space, &run.concept, &tp);
    let increasing = run
        .expr
        .is_increasing(lingtwd::expr::DEFAULT_GRID_STEP)
        .map_err(|e| fail(CONFIG, e))?;
    let ordering = check_bounds_ordering(&bounds, increasing);
    match run.format {
        Format::Text => {
            println!("{bounds}");
            match &ordering {
                Ok(true) => println!(
                    "ordering beta1 < beta2 <= alpha1 < alpha2 holds over the non-empty regions"
                ),
                Ok(false) => println!("ordering VIOLATED"),
                Err(e) => println!("ordering not checked: {e}"),
            }
        }
        Format::Json => print_json(&json!({
            "bounds": BoundsJson::from(&bounds),
            "ordering_holds": ordering.as_ref().ok(),
            "empty_regions": tp.empty_regions().into_iter().map(Region::name).collect::<Vec<_>>(),
        })),
    }
    Ok(match ordering {
        Ok(false) => MISMATCH,
        _ => 0,
    })
}

fn cmd_equivalence(run: &Run) -> Result<u8, Failure> {
    let eq = equivalent_threshold_intervals(&run.space, &run.concept, &run.expr, &run.th)?;
    let tp = run.regions();
    let bounds = RegionBounds::from_tripartition(&run.space, &run.concept, &tp);
    let agrees =
        sweep_equivalence_oracle(&run.space, &run.concept, &run.expr, &run.th).agrees_with(&eq);
    match run.format {
        Format::Text => {
            println!("Bounds: {bounds}");
            println!(
                "{eq}, sweep {}",
                if agrees { "agrees" } else { "DISAGREES" }
            );
            println!("Case: {}", eq.case.describe());
        }
        Format::Json => print_json(&json!({
            "bounds": BoundsJson::from(&bounds),
            "equivalence": EquivalenceJson::new(&eq, agrees),
        })),
    }
    Ok(if agrees { 0 } else { MISMATCH })
}

fn cmd_verify(run: &Run, alpha_p: f64, beta_p: f64) -> Result<u8, Failure> {
    let probe = Thresholds::new(alpha_p, beta_p)
        .map_err(|e| fail(CONFIG, format!("--alpha-p/--beta-p: {e}")))?;
    let ling = run.regions();
    let prob = probabilistic_regions(&run.space, &run.concept, &probe);
    let diff = first_difference(&ling, &prob);
    match run.format {
        Format::Text => match diff {
            None => println!("coincide: linguistic regions at ({}, {}) equal probabilistic regions at ({alpha_p}, {beta_p})", run.th.alpha(), run.th.beta()),
            Some((b, l, p)) => println!(
                "differ: block {} is {} linguistically but {} probabilistically (ratio {})",
                run.space.blocks()[b].label,
                l.name(),
                p.name(),
                Approx(&run.space.block_ratio(&run.concept, b))
            ),
        },
        Format::Json => print_json(&json!({
            "coincide": diff.is_none(),
            "first_difference": diff.map(|(b, l, p)| json!({
                "block": run.space.blocks()[b].label,
                "linguistic": l.name(),
                "probabilistic": p.name(),
            })),
        })),
    }
    Ok(if diff.is_none() { 0 } else { MISMATCH })
}

fn cmd_sweep(run: &Run) -> Result<u8, Failure> {
    let sweep = sweep_equivalence_oracle(&run.space, &run.concept, &run.expr, &run.th);
    let admitted: Vec<_> = sweep.admitted().collect();
    let intervals = equivalent_threshold_intervals(&run.space, &run.concept, &run.expr, &run.th);
    let agrees = intervals.as_ref().ok().map(|eq| sweep.agrees_with(eq));
    let range = |pick: fn(&lingtwd::analysis::SweepVerdict) -> &Fraction| {
        let min = admitted.iter().map(|v| pick(v)).min()?;
        let max = admitted.iter().map(|v| pick(v)).max()?;
        Some((min.clone(), max.clone()))
    };
    let alpha_range = range(|v| &v.alpha);
    let beta_range = range(|v| &v.beta);
    match run.format {
        Format::Text => {
            println!(
                "{} candidate values, {} ordered pairs checked, {} reproduce the linguistic regions",
                sweep.candidates.len(),
                sweep.verdicts.len(),
                admitted.len()
            );
            if let (Some((alo, ahi)), Some((blo, bhi))) = (&alpha_range, &beta_range) {
                println!("admitted alpha' from {} to {}", Approx(alo), Approx(ahi));
                println!("admitted beta' from {} to {}", Approx(blo), Approx(bhi));
            }
            match (&intervals, agrees) {
                (Ok(eq), Some(a)) => println!(
                    "intervals {eq}: sweep {}",
                    if a { "agrees" } else { "DISAGREES" }
                ),
                (Err(e), _) => println!("no interval characterization: {e}"),
                _ => {}
            }
        }
        Format::Json => {
            let ends = |r: &Option<(Fraction, Fraction)>| {
                r.as_ref().map(|(lo, hi)| json!({ "min": fraction::exact_string(lo), "max": fraction::exact_string(hi) }))
            };
            print_json(&json!({
                "candidates": sweep.candidates.iter().map(fraction::exact_string).collect::<Vec<_>>(),
                "pairs_checked": sweep.verdicts.len(),
                "admitted": admitted.len(),
                "admitted_alpha": ends(&alpha_range),
                "admitted_beta": ends(&beta_range),
                "intervals_agree": agrees,
            }));
        }
    }
    Ok(if agrees == Some(false) { MISMATCH } else { 0 })
}

fn dispatch(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Regions { run, explain } => cmd_regions(&load(&run)?, explain),
        Command::Bounds(run) => cmd_bounds(&load(&run)?),
        Command::Equivalence(run) => cmd_equivalence(&load(&run)?),
        Command::Verify {
            run,
            alpha_p,
            beta_p,
        } => cmd_verify(&load(&run)?, alpha_p, beta_p),
        Command::Sweep(run) => cmd_sweep(&load(&run)?),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
