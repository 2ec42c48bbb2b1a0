//! The `fixclip` binary.
//!
//! Exit codes: 0 success, 1 invalid input or usage, 2 out-of-scope input
//! (the rings meet at a contour self-intersection), 3 oracle disagreement
//! under --verify, 4 internal consistency failure.

use std::fmt::Display;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use fixclip::corpus::degenerate_corpus;
use fixclip::oracle::{check_boolean, SamplePlan};
use fixclip::pipeline::{clip, ClipError, ClipOptions, ClipOutcome};
use fixclip::polygon::{RegionMembershipRule, Role};
use fixclip::BooleanOp;
use fixclip_cli::files::{self, LoadedPolygon};
use fixclip_cli::svg;

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum OpArg {
    Intersection,
    Union,
    Difference,
}

impl From<OpArg> for BooleanOp {
    fn from(op: OpArg) -> BooleanOp {
        match op {
            OpArg::Intersection => BooleanOp::Intersection,
            OpArg::Union => BooleanOp::Union,
            OpArg::Difference => BooleanOp::Difference,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum RuleArg {
    Nonzero,
    Evenodd,
}

impl From<RuleArg> for RegionMembershipRule {
    fn from(rule: RuleArg) -> RegionMembershipRule {
        match rule {
            RuleArg::Nonzero => RegionMembershipRule::NonzeroWinding,
            RuleArg::Evenodd => RegionMembershipRule::EvenOdd,
        }
    }
}

/// Exact polygon intersection, union, and difference with deterministic
/// handling of touching and overlapping contours.
#[derive(Parser, Debug)]
#[command(name = "fixclip", version)]
struct Args {
    /// Clipper polygon JSON file
    #[arg(long, value_name = "FILE")]
    clipper: Option<PathBuf>,

    /// Subject polygon JSON file
    #[arg(long, value_name = "FILE")]
    subject: Option<PathBuf>,

    /// Boolean operation; difference computes subject minus clipper
    #[arg(long, value_enum, value_name = "OP")]
    op: Option<OpArg>,

    /// Write the result JSON to FILE instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Write an SVG plot of the inputs, the flags, and the result
    #[arg(long, value_name = "FILE")]
    svg: Option<PathBuf>,

    /// Check the result against the sampling oracle with N random points
    #[arg(long, value_name = "N")]
    verify: Option<usize>,

    /// Merge collinear same-origin runs in the result
    #[arg(long)]
    simplify: bool,

    /// Membership rule for polygon files that do not declare their own
    #[arg(long, value_enum, value_name = "RULE", default_value_t = RuleArg::Nonzero)]
    rule: RuleArg,

    /// Seed for oracle sampling and corpus generation
    #[arg(long, value_name = "K", default_value_t = 1)]
    seed: u64,

    /// Run every NAME.clipper.json / NAME.subject.json pair under DIR
    #[arg(long, value_name = "DIR")]
    corpus: Option<PathBuf>,

    /// Write a generated degenerate corpus into DIR and exit
    #[arg(long = "emit-corpus", value_name = "DIR")]
    emit_corpus: Option<PathBuf>,

    /// Number of cases for --emit-corpus
    #[arg(long, value_name = "N", default_value_t = 24)]
    count: usize,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Display) -> Failure {
        Failure { code: 1, message: message.to_string() }
    }

    fn scope(message: impl Display) -> Failure {
        Failure { code: 2, message: message.to_string() }
    }

    fn oracle(message: impl Display) -> Failure {
        Failure { code: 3, message: message.to_string() }
    }

    fn internal(message: impl Display) -> Failure {
        Failure { code: 4, message: message.to_string() }
    }

    fn from_clip(error: ClipError) -> Failure {
        match error {
            ClipError::InvalidPolygon(_) => Failure::input(error),
            ClipError::ScopeViolation(_) => Failure::scope(error),
            ClipError::Internal(_) => Failure::internal(error),
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(args: Args) -> Result<(), Failure> {
    if let Some(dir) = &args.emit_corpus {
        return emit_corpus(dir, args.seed, args.count);
    }
    if args.corpus.is_some() {
        return run_corpus(&args);
    }
    run_single(&args)
}

fn required<T>(value: &Option<T>, flag: &str) -> Result<(), Failure> {
    if value.is_none() {
        return Err(Failure::input(format!("{flag} is required")));
    }
    Ok(())
}

/// Loads both inputs, clips, and optionally runs the oracle.
fn clip_pair(
    clipper_path: &Path,
    subject_path: &Path,
    op: BooleanOp,
    args: &Args,
) -> Result<(LoadedPolygon, LoadedPolygon, ClipOutcome), Failure> {
    let clipper = files::load_polygon(clipper_path, Role::Clipper).map_err(Failure::input)?;
    let subject = files::load_polygon(subject_path, Role::Subject).map_err(Failure::input)?;
    let default_rule = RegionMembershipRule::from(args.rule);
    let options = ClipOptions {
        clipper_rule: clipper.rule.unwrap_or(default_rule),
        subject_rule: subject.rule.unwrap_or(default_rule),
        simplify: args.simplify,
        ..ClipOptions::default()
    };
    let outcome =
        clip(&clipper.polygon, &subject.polygon, op, &options).map_err(Failure::from_clip)?;
    if let Some(samples) = args.verify {
        let plan = SamplePlan { seed: args.seed, count: samples, ..SamplePlan::default() };
        check_boolean(
            &clipper.polygon,
            options.clipper_rule,
            &subject.polygon,
            options.subject_rule,
            op,
            &outcome.region.rings(),
            &plan,
        )
        .map_err(Failure::oracle)?;
    }
    Ok((clipper, subject, outcome))
}

fn run_single(args: &Args) -> Result<(), Failure> {
    required(&args.clipper, "--clipper")?;
    required(&args.subject, "--subject")?;
    required(&args.op, "--op")?;
    let op = BooleanOp::from(args.op.unwrap());
    let (clipper, subject, outcome) =
        clip_pair(args.clipper.as_ref().unwrap(), args.subject.as_ref().unwrap(), op, args)?;

    let bytes = files::result_file_bytes(op, &outcome.region);
    match &args.out {
        Some(path) => fs::write(path, &bytes)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| Failure::input(format!("stdout: {e}")))?,
    }

    if let Some(path) = &args.svg {
        let file = fs::File::create(path)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        let mut writer = BufWriter::new(file);
        svg::write_svg(&mut writer, &clipper.contours, &subject.contours, &outcome)
            .and_then(|()| writer.flush())
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn run_corpus(args: &Args) -> Result<(), Failure> {
    required(&args.op, "--op")?;
    if args.clipper.is_some() || args.subject.is_some() {
        return Err(Failure::input("--corpus replaces --clipper and --subject"));
    }
    let dir = args.corpus.as_ref().unwrap();
    let op = BooleanOp::from(args.op.unwrap());

    let mut stems = Vec::new();
    let entries =
        fs::read_dir(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
    for entry in entries {
        let entry = entry.map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if let Some(stem) = name.strip_suffix(".clipper.json") {
            if dir.join(format!("{stem}.subject.json")).is_file() {
                stems.push(stem.to_string());
            }
        }
    }
    stems.sort();

    let mut failures = 0usize;
    let mut first_failure: Option<Failure> = None;
    for stem in &stems {
        let clipper_path = dir.join(format!("{stem}.clipper.json"));
        let subject_path = dir.join(format!("{stem}.subject.json"));
        match clip_pair(&clipper_path, &subject_path, op, args) {
            Ok(_) => println!("{stem:<32} pass"),
            Err(failure) => {
                println!("{stem:<32} FAIL  {}", failure.message);
                failures += 1;
                first_failure.get_or_insert(failure);
            }
        }
    }
    println!("{} of {} cases passed", stems.len() - failures, stems.len());

    match first_failure {
        None => Ok(()),
        Some(first) => Err(Failure {
            code: first.code,
            message: format!("{failures} of {} cases failed", stems.len()),
        }),
    }
}

fn emit_corpus(dir: &Path, seed: u64, count: usize) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
    let cases = degenerate_corpus(seed, count);
    for case in &cases {
        let write = |suffix: &str, contours: &[Vec<fixclip::Point>], hand| {
            let file = files::polygon_file_from_contours(contours, hand);
            let mut text = serde_json::to_string_pretty(&file).expect("corpus serialization");
            text.push('\n');
            let path = dir.join(format!("{}.{suffix}.json", case.name));
            fs::write(&path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
        };
        write("clipper", &case.clipper, case.clipper_hand)?;
        write("subject", &case.subject, case.subject_hand)?;
    }
    println!("wrote {} cases to {}", cases.len(), dir.display());
    Ok(())
}
