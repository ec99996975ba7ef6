//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use affmv::decorations::{decorate, find_zigzags};
use affmv::mvpoly::{default_bound, enumerate_mv, reconstruct_from_path, validate, LatticePoint};
use affmv::paths::{root_operator, Direction, Power};
use affmv::treefold::{build_folded, marker_levels, retract_step, sample_generic};
use affmv::upsilon::upsilon_prime;
use affmv::{CartanMatrix, Crystal, Error, Path, RootDatum, Vector, Q};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::codec::{self, parse_q, Codec};
use crate::spec::{DatumFile, ElementSpec, SpecError};
use crate::svg;

pub const EXIT_IO: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "affmv", version, about = "Affine sl2 MV polytopes from Littelmann paths")]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Path crystals.
    #[command(subcommand)]
    Crystal(CrystalCmd),
    /// Root operators on a single element.
    #[command(subcommand)]
    Path(PathCmd),
    /// MV polytopes.
    #[command(subcommand)]
    Polytope(PolytopeCmd),
    /// Partitions and zigzags read off a path.
    Decorate {
        /// F-word `f1^3 f0^2 @ Lambda=[a,b,c]`, or a path or polytope JSON file.
        element: String,
    },
    /// Folded-path retraction.
    #[command(subcommand)]
    Retract(RetractCmd),
    /// Drawings.
    #[command(subcommand)]
    Render(RenderCmd),
}

#[derive(Subcommand, Debug)]
enum CrystalCmd {
    /// Elements reachable from the straight path by at most `depth` lowering steps.
    Gen {
        /// Comma-separated coordinates, e.g. `0,1,4`.
        #[arg(long)]
        shape: String,
        #[arg(long)]
        depth: usize,
        #[arg(long = "type", value_enum, default_value_t = Kind::Affine)]
        kind: Kind,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Affine,
    A2,
    B2,
}

#[derive(Subcommand, Debug)]
enum PathCmd {
    /// Applies `f<i>`, `e<i>`, `f<i>^<n>` or `f<i>^max`; prints `null` when the result is zero.
    Apply {
        element: String,
        #[arg(long)]
        op: String,
    },
}

#[derive(Subcommand, Debug)]
enum PolytopeCmd {
    /// Reconstructs the polytope of a crystal element.
    FromPath { element: String },
    /// Checks every defining condition; exits 2 if one fails.
    Validate { file: PathBuf },
    /// Lists all polytopes of a weight.
    Enumerate {
        /// `c0,c1` for `c0 a0 + c1 a1`, or `n` for `n delta`.
        #[arg(long)]
        weight: String,
        /// Largest datum index searched; defaults to a bound that suffices for the weight.
        #[arg(long)]
        bound: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum RetractCmd {
    /// One step `w -> w s_i` with sampled or given coefficients.
    Step {
        element: String,
        /// Comma-separated indices; empty for the identity.
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long)]
        index: usize,
        #[arg(long, conflicts_with = "coeffs", required_unless_present = "coeffs")]
        seed: Option<u64>,
        /// Comma-separated rationals `p/q`.
        #[arg(long)]
        coeffs: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum RenderCmd {
    /// SVG of the polytope of an element or of a polytope file.
    Svg { element: String },
}

/// A failed command with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    use Error::*;
    match e {
        DimensionMismatch { .. }
        | InvalidCartan(_)
        | InvalidDatum(_)
        | NotInTitsConeInterior
        | NotDominant
        | MalformedPath(_)
        | OutOfRange(_)
        | NonIntegralLevel(_) => EXIT_PARSE,
        NonReducedWord(_)
        | NotAffine
        | DepthExceeded { .. }
        | DiagonalNotActive
        | OperatorUndefined
        | HypothesisNotMet { .. }
        | LengthMismatch { .. } => EXIT_VALIDATION,
        CutoffTooSmall(_)
        | StabilizationCapExceeded(_)
        | ClosureViolation(..)
        | BoundTooSmall(_)
        | CompletionNotFound
        | CompletionNotUnique(_)
        | ReductionFailed
        | NoMatch
        | MultipleMatches(_)
        | DeltaTopAmbiguous => EXIT_INTERNAL,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(exit_code(&e), e.to_string())
    }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Io { .. } => Failure::new(EXIT_IO, e.to_string()),
            SpecError::Library(l) => l.into(),
            SpecError::FWord { .. } | SpecError::Schema { .. } => Failure::new(EXIT_PARSE, e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn parse_err(m: impl Into<String>) -> Failure {
    Failure::new(EXIT_PARSE, m)
}

fn rationals(s: &str) -> Result<Vec<Q>, Failure> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(|x| parse_q(x).map_err(parse_err)).collect()
}

fn indices(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| parse_err(format!("bad index {x:?}"))))
        .collect()
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn element_path(datum: &RootDatum, arg: &str) -> Result<Path, Failure> {
    ElementSpec::parse(arg)?
        .path(datum)?
        .ok_or_else(|| Failure::new(EXIT_VALIDATION, format!("{arg}: the f-word annihilates the straight path")))
}

fn parse_op(op: &str) -> Result<(Direction, usize, Power), Failure> {
    let bad = || parse_err(format!("bad operator {op:?}; expected f<i>, e<i>, f<i>^<n> or f<i>^max"));
    let dir = match op.chars().next() {
        Some('f') => Direction::Lower,
        Some('e') => Direction::Raise,
        _ => return Err(bad()),
    };
    let (i, n) = op[1..].split_once('^').unwrap_or((&op[1..], "1"));
    let i: usize = i.parse().map_err(|_| bad())?;
    let power = match n {
        "max" => Power::Max,
        n => Power::Times(n.parse().map_err(|_| bad())?),
    };
    Ok((dir, i, power))
}

fn parse_weight(s: &str) -> Result<LatticePoint, Failure> {
    let xs: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| parse_err(format!("bad weight {s:?}"))))
        .collect::<Result<_, _>>()?;
    match *xs.as_slice() {
        [n] => Ok(n * LatticePoint::DELTA),
        [c0, c1] => Ok(LatticePoint::new(c0, c1)),
        _ => Err(parse_err(format!("bad weight {s:?}; expected c0,c1 or n"))),
    }
}

fn crystal_gen(shape: &str, depth: usize, kind: Kind) -> Outcome {
    let datum = match kind {
        Kind::Affine => RootDatum::affine_sl2(),
        Kind::A2 => RootDatum::finite(CartanMatrix::a2())?,
        Kind::B2 => RootDatum::finite(CartanMatrix::b2())?,
    };
    let shape = Vector(rationals(shape)?);
    let c = Crystal::generate(&datum, &shape, depth)?;
    let elements: Vec<Value> = c.elements.iter().map(codec::element_json).collect();
    Ok(pretty(&json!({"shape": c.shape.to_json(), "depth": c.depth, "elements": elements})))
}

fn path_apply(element: &str, op: &str) -> Outcome {
    let d = RootDatum::affine_sl2();
    let (dir, i, power) = parse_op(op)?;
    if i >= d.rank() {
        return Err(parse_err(format!("index {i} out of range")));
    }
    let p = element_path(&d, element)?;
    Ok(pretty(&root_operator(&d, &p, i, dir, power).map_or(Value::Null, |x| x.to_json())))
}

fn polytope_validate(file: &PathBuf) -> Outcome {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", file.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| parse_err(format!("{}: {e}", file.display())))?;
    let p = DatumFile::from_json(&v).map_err(|e| parse_err(format!("{}: {e}", file.display())))?.polytope()?;
    let report = validate(&p);
    let out = pretty(&json!({"polytope": p.to_json(), "report": codec::report_json(&report)}));
    if report.passed() {
        Ok(out)
    } else {
        Err(Failure::new(EXIT_VALIDATION, out))
    }
}

fn polytope_enumerate(weight: &str, bound: Option<usize>) -> Outcome {
    let w = parse_weight(weight)?;
    let ps = enumerate_mv(w, bound.unwrap_or_else(|| default_bound(w)))?;
    Ok(pretty(&Value::Array(ps.iter().map(Codec::to_json).collect())))
}

fn decorate_cmd(element: &str) -> Outcome {
    let d = RootDatum::affine_sl2();
    let p = element_path(&d, element)?;
    let (left, right) = decorate(&d, &p)?;
    let mut zigzags = find_zigzags(&d, &p, 0)?;
    zigzags.extend(find_zigzags(&d, &p, 1)?);
    Ok(pretty(&codec::decoration_json(&left, &right, &zigzags)))
}

fn retract(element: &str, word: &str, i: usize, seed: Option<u64>, coeffs: Option<&str>) -> Outcome {
    let d = RootDatum::affine_sl2();
    let p = element_path(&d, element)?;
    let w = indices(word)?;
    if i >= d.rank() || w.iter().any(|&j| j >= d.rank()) {
        return Err(parse_err("simple index out of range"));
    }
    let c = match (seed, coeffs) {
        (_, Some(s)) => rationals(s)?,
        (Some(seed), None) => {
            let levels = marker_levels(&d, &upsilon_prime(&d, &p, &w)?, &w, i)?;
            sample_generic(&mut ChaCha8Rng::seed_from_u64(seed), &levels)
        }
        (None, None) => return Err(parse_err("one of --seed or --coeffs is required")),
    };
    let folded = build_folded(&d, &p, &w, i, &c)?;
    let step = retract_step(&d, &p, &w, i, &c)?;
    Ok(pretty(&json!({
        "coeffs": c.iter().map(Codec::to_json).collect::<Vec<_>>(),
        "folded": folded.to_json(),
        "result": step.result.to_json(),
        "is_generic": step.is_generic,
    })))
}

fn render_svg(element: &str) -> Outcome {
    let d = RootDatum::affine_sl2();
    let p = match ElementSpec::parse(element)? {
        ElementSpec::DatumJson(f) => f.polytope()?,
        spec => {
            let path = spec
                .path(&d)?
                .ok_or_else(|| Failure::new(EXIT_VALIDATION, "the f-word annihilates the straight path"))?;
            reconstruct_from_path(&d, &path)?
        }
    };
    let report = validate(&p);
    if !report.passed() {
        return Err(Failure::new(EXIT_VALIDATION, pretty(&codec::report_json(&report))));
    }
    Ok(svg::render(&p)?)
}

fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::Crystal(CrystalCmd::Gen { shape, depth, kind }) => crystal_gen(shape, *depth, *kind),
        Command::Path(PathCmd::Apply { element, op }) => path_apply(element, op),
        Command::Polytope(PolytopeCmd::FromPath { element }) => {
            let d = RootDatum::affine_sl2();
            let p = reconstruct_from_path(&d, &element_path(&d, element)?)?;
            Ok(pretty(&p.to_json()))
        }
        Command::Polytope(PolytopeCmd::Validate { file }) => polytope_validate(file),
        Command::Polytope(PolytopeCmd::Enumerate { weight, bound }) => polytope_enumerate(weight, *bound),
        Command::Decorate { element } => decorate_cmd(element),
        Command::Retract(RetractCmd::Step { element, word, index, seed, coeffs }) => {
            retract(element, word, *index, *seed, coeffs.as_deref())
        }
        Command::Render(RenderCmd::Svg { element }) => render_svg(element),
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(f) => std::fs::write(f, text).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", f.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { 0 };
        }
    };
    let result = dispatch(&cli.command).and_then(|text| emit(cli.out.as_ref(), &text));
    match result {
        Ok(()) => 0,
        Err(f) if f.code == EXIT_VALIDATION && f.message.starts_with('{') => {
            // validation reports are output, not diagnostics
            match emit(cli.out.as_ref(), &f.message) {
                Ok(()) => EXIT_VALIDATION,
                Err(io) => {
                    eprintln!("error: {}", io.message);
                    io.code
                }
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
