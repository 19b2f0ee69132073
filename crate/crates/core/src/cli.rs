//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input (bad file,
//! degeneracy, budget exceeded), 3 internal invariant breach. A breach always
//! prints a reproduction bundle as JSON on stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::configs::{moment_curve_config, random_config, PointConfig};
use crate::crossing::count_crossing_pairs;
use crate::error::{Error, Result};
use crate::formats::{self, canonical, InputFile};
use crate::gale::{gale_transform, GaleDiagram};
use crate::separations::{
    enumerate_separations, ham_sandwich_cut, schedule_lemma4, schedule_lemma5,
    HamSandwichInstance,
};
use crate::verify::{self, Provenance, VerificationReport};

const BUDGET_HELP: &str = "\
Budgets: lemma1 needs d+2 <= n <= d+6 or n = 2d and C(n, n/2) <= 10000; \
lemma5 and extension run for d in {4,5,6}; vkf for k in {1,2,3}; \
planar for 4 <= n <= 10. Out-of-budget requests fail up front with exit 2.";

#[derive(Parser, Debug)]
#[command(name = "galecross", version, about = "Exact Gale transforms, simplex crossings and separation schedules", after_help = BUDGET_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// write machine JSON to this path (atomically)
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
    /// print machine JSON on stdout instead of the summary
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum GenKind {
    Moment,
    Random,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ScheduleKind {
    Lemma4,
    Lemma5,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Check {
    Lemma1,
    Lemma2,
    Lemma4,
    Lemma5,
    Vkf,
    Planar,
    Extension,
    Hamsandwich,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a point file.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "random")]
        kind: GenKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// coordinates are drawn from [-range, range]
        #[arg(long, default_value_t = 100)]
        range: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Validate a point or diagram file; with --normalize, rewrite it canonically.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        normalize: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Gale diagram of a point file.
    Gale {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Test whether two labelled simplices cross.
    Cross {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Count crossing pairs with part sizes p,q.
    Count {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 1, required = true)]
        sizes: Vec<usize>,
        /// keep a witness for every crossing pair
        #[arg(long)]
        witnesses: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Enumerate linear separations of a diagram (proper sizes by default).
    Separations {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[command(flatten)]
        output: Output,
    },
    /// Bisect two colour classes by a hyperplane through the origin.
    Hamsandwich {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        c1: Vec<String>,
        /// defaults to every label not in c1
        #[arg(long, value_delimiter = ',')]
        c2: Option<Vec<String>>,
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[command(flatten)]
        output: Output,
    },
    /// Run a colouring schedule on a diagram in R^3.
    Schedule {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: ScheduleKind,
        #[command(flatten)]
        output: Output,
    },
    /// Run a seeded verification check.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// constructed degenerate configurations (lemma2)
        #[arg(long, default_value_t = 10)]
        degenerate: usize,
        /// replace random trials with this configuration
        #[arg(long)]
        fixed: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Exact lower bound cd_lower * C(n, 2d).
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long = "cd-lower")]
        cd_lower: u64,
        #[arg(long, default_value = "direct_count")]
        provenance: String,
        #[command(flatten)]
        output: Output,
    },
}

/// What a command produced: machine JSON, a human summary and an exit code.
struct Outcome {
    json: Value,
    summary: String,
    code: i32,
    /// extra context for a reproduction bundle when `code` is 3
    bundle: Option<Value>,
}

impl Outcome {
    fn ok(json: Value, summary: impl Into<String>) -> Self {
        Self {
            json,
            summary: summary.into(),
            code: 0,
            bundle: None,
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    let argv: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let output = output_of(&cli.command);
    match execute(&cli.command) {
        Ok(outcome) => {
            if let Err(e) = emit(&outcome, output) {
                return fail(&e, &argv);
            }
            if outcome.code == 3 {
                eprintln!("{}", canonical(&bundle(&argv, outcome.bundle.clone())));
            }
            outcome.code
        }
        Err(e) => fail(&e, &argv),
    }
}

fn bundle(argv: &[String], extra: Option<Value>) -> Value {
    json!({
        "reproduction": {
            "argv": argv,
            "version": env!("CARGO_PKG_VERSION"),
            "context": extra.unwrap_or(Value::Null),
        }
    })
}

/// Exit code for a command that failed with `e`.
pub fn exit_code_for_error(e: &Error) -> i32 {
    if e.is_invariant_breach() {
        3
    } else {
        2
    }
}

/// Exit code for a completed verification run.
pub fn exit_code_for_report(r: &VerificationReport) -> i32 {
    if r.has_breach() {
        3
    } else if r.passed() {
        0
    } else {
        1
    }
}

fn fail(e: &Error, argv: &[String]) -> i32 {
    eprintln!("error: {e}");
    let code = exit_code_for_error(e);
    if code == 3 {
        eprintln!(
            "{}",
            canonical(&bundle(argv, Some(json!({ "error": e.to_string() }))))
        );
    }
    code
}

fn output_of(c: &Command) -> &Output {
    match c {
        Command::Gen { output, .. }
        | Command::Check { output, .. }
        | Command::Gale { output, .. }
        | Command::Cross { output, .. }
        | Command::Count { output, .. }
        | Command::Separations { output, .. }
        | Command::Hamsandwich { output, .. }
        | Command::Schedule { output, .. }
        | Command::Verify { output, .. }
        | Command::Bound { output, .. } => output,
    }
}

fn emit(o: &Outcome, out: &Output) -> Result<()> {
    let text = canonical(&o.json);
    if let Some(path) = &out.out {
        write_atomic(path, &text)?;
    }
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    if out.json {
        writeln!(lock, "{text}")?;
    } else {
        writeln!(lock, "{}", o.summary)?;
    }
    Ok(())
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.write_all(b"\n")?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn read_points(path: &Path) -> Result<PointConfig> {
    match formats::read_input(&read_text(path)?)? {
        InputFile::Points(p) => Ok(p),
        InputFile::Diagram(_) => Err(Error::Parse(format!(
            "{} is a diagram file; a point file is needed",
            path.display()
        ))),
    }
}

/// A diagram file as is, or the Gale diagram of a point file.
fn read_diagram(path: &Path) -> Result<GaleDiagram> {
    match formats::read_input(&read_text(path)?)? {
        InputFile::Points(p) => gale_transform(&p),
        InputFile::Diagram(g) => Ok(g),
    }
}

fn two(v: &[usize]) -> Result<(usize, usize)> {
    match v {
        [p, q] => Ok((*p, *q)),
        _ => Err(Error::Sizes(format!("expected two sizes p,q, got {v:?}"))),
    }
}

fn execute(c: &Command) -> Result<Outcome> {
    match c {
        Command::Gen {
            n,
            d,
            kind,
            seed,
            range,
            ..
        } => {
            let p = match kind {
                GenKind::Moment => moment_curve_config(*n, *d),
                GenKind::Random => random_config(*n, *d, *seed, *range)?,
            };
            p.require_general_position()?;
            Ok(Outcome::ok(
                formats::point_config_to_json(&p),
                format!("{n} points in R^{d}, general position"),
            ))
        }
        Command::Check {
            input, normalize, ..
        } => {
            let text = read_text(input)?;
            match formats::read_input(&text)? {
                InputFile::Points(p) => {
                    let json = formats::point_config_to_json(&p);
                    if *normalize {
                        write_atomic(input, &canonical(&json))?;
                    }
                    match p.general_position_violation() {
                        None => Ok(Outcome::ok(
                            json,
                            format!("{} points in R^{}, general position", p.len(), p.dimension()),
                        )),
                        Some(sub) => Err(Error::Degenerate {
                            subset: sub.iter().map(|&i| p.label(i).to_string()).collect(),
                        }),
                    }
                }
                InputFile::Diagram(g) => {
                    let json = formats::diagram_to_json(&g);
                    if *normalize {
                        write_atomic(input, &canonical(&json))?;
                    }
                    g.require_spanning()?;
                    Ok(Outcome::ok(
                        json,
                        format!("{} vectors in R^{}, spanning", g.len(), g.m()),
                    ))
                }
            }
        }
        Command::Gale { input, .. } => {
            let g = gale_transform(&read_points(input)?)?;
            Ok(Outcome::ok(
                formats::diagram_to_json(&g),
                format!("Gale diagram: {} vectors in R^{}", g.len(), g.m()),
            ))
        }
        Command::Cross { input, a, b, .. } => {
            let p = read_points(input)?;
            match crate::crossing::simplices_cross(&p, a, b)? {
                Some(w) => Ok(Outcome::ok(
                    json!({ "crossing": true, "witness": formats::witness_to_json(&w) }),
                    format!(
                        "{:?} and {:?} cross at ({})",
                        w.pair.left,
                        w.pair.right,
                        w.point
                            .iter()
                            .map(crate::exact::format_rational)
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                )),
                None => Ok(Outcome::ok(
                    json!({ "crossing": false }),
                    format!("{a:?} and {b:?} do not cross"),
                )),
            }
        }
        Command::Count {
            input,
            sizes,
            witnesses,
            ..
        } => {
            let p = read_points(input)?;
            let (s1, s2) = two(sizes)?;
            let c = count_crossing_pairs(&p, s1, s2, *witnesses)?;
            Ok(Outcome::ok(
                formats::count_to_json(&c, *witnesses),
                format!(
                    "{} of {} ({s1},{s2})-pairs cross",
                    c.crossing_pairs, c.total_pairs_checked
                ),
            ))
        }
        Command::Separations { input, sizes, .. } => {
            let g = read_diagram(input)?;
            let sizes = match sizes {
                Some(v) => two(v)?,
                None => g.proper_sizes(),
            };
            let seps = enumerate_separations(&g, sizes)?;
            Ok(Outcome::ok(
                json!({
                    "sizes": [sizes.0, sizes.1],
                    "count": seps.len(),
                    "separations": seps.iter().map(formats::separation_to_json).collect::<Vec<_>>(),
                }),
                format!("{} linear separations with sizes ({}, {})", seps.len(), sizes.0, sizes.1),
            ))
        }
        Command::Hamsandwich {
            input,
            c1,
            c2,
            sizes,
            ..
        } => {
            let g = read_diagram(input)?;
            let c2 = match c2 {
                Some(v) => v.clone(),
                None => crate::separations::complement(&g, c1),
            };
            let inst = HamSandwichInstance::new(&g, c1.clone(), c2)?;
            let sizes = match sizes {
                Some(v) => two(v)?,
                None => g.proper_sizes(),
            };
            let cut = ham_sandwich_cut(&g, &inst, sizes)?;
            Ok(Outcome::ok(
                json!({
                    "instance": formats::instance_to_json(&inst),
                    "cut": formats::cut_to_json(&cut),
                }),
                format!(
                    "cut {:?} | {:?}{}",
                    cut.separation.side_a,
                    cut.separation.side_b,
                    if cut.fallback { " (fallback)" } else { "" }
                ),
            ))
        }
        Command::Schedule { input, kind, .. } => {
            let g = read_diagram(input)?;
            let trace = match kind {
                ScheduleKind::Lemma4 => schedule_lemma4(&g)?,
                ScheduleKind::Lemma5 => schedule_lemma5(&g)?,
            };
            Ok(Outcome::ok(
                formats::trace_to_json(&trace),
                format!("{} distinct separations", trace.len()),
            ))
        }
        Command::Verify {
            check,
            trials,
            seed,
            d,
            n,
            k,
            degenerate,
            fixed,
            ..
        } => {
            let fixed = fixed.as_deref().map(read_points).transpose()?;
            let need = |v: &Option<usize>, name: &str| {
                v.ok_or_else(|| Error::Parse(format!("--{name} is required for this check")))
            };
            let report = match check {
                Check::Lemma1 => {
                    let (d, n) = match &fixed {
                        Some(p) => (p.dimension(), p.len()),
                        None => (need(d, "d")?, need(n, "n")?),
                    };
                    verify::verify_lemma1(d, n, *trials, *seed, fixed.as_ref())?
                }
                Check::Lemma2 => verify::verify_lemma2(*trials, *degenerate, *seed)?,
                Check::Lemma4 => verify::verify_lemma4(*trials, *seed, fixed.as_ref())?,
                Check::Lemma5 => {
                    let d = match &fixed {
                        Some(p) => p.dimension(),
                        None => need(d, "d")?,
                    };
                    verify::verify_lemma5(d, *trials, *seed, fixed.as_ref())?
                }
                Check::Vkf => verify::verify_vkf(need(k, "k")?, *trials, *seed)?,
                Check::Planar => verify::verify_planar_constant(need(n, "n")?, *trials, *seed)?,
                Check::Extension => verify::verify_extension(need(d, "d")?, *trials, *seed)?,
                Check::Hamsandwich => verify::verify_ham_sandwich(*trials, *seed)?,
            };
            Ok(report_outcome(&report))
        }
        Command::Bound {
            n,
            d,
            cd_lower,
            provenance,
            ..
        } => {
            let prov: Provenance = provenance.parse()?;
            let b = verify::bound_report(*n, *d, *cd_lower, prov)?;
            Ok(Outcome::ok(
                b.to_json(),
                format!(
                    "{} * C({n},{}) = {} * {} = {}",
                    cd_lower,
                    2 * d,
                    cd_lower,
                    b.pairs_choose,
                    b.implied_crossing_lower_bound
                ),
            ))
        }
    }
}

fn report_outcome(r: &VerificationReport) -> Outcome {
    let mut summary = r.summary();
    for f in &r.failures {
        summary.push_str(&format!("\n  trial {} (seed {}): {}", f.trial, f.seed, f.detail));
    }
    for (name, v) in &r.metrics {
        summary.push_str(&format!("\n  {name}: {v}"));
    }
    for f in &r.findings {
        summary.push_str(&format!("\n  finding: {f}"));
    }
    let code = exit_code_for_report(r);
    Outcome {
        json: r.to_json(),
        summary,
        code,
        bundle: (code == 3).then(|| {
            json!({
                "check": r.check_name,
                "parameters": r.parameters,
                "failures": r.failures.iter().filter(|f| f.breach).map(|f| json!({
                    "trial": f.trial,
                    "seed": f.seed,
                    "detail": f.detail,
                })).collect::<Vec<_>>(),
            })
        }),
    }
}
