//! `ramify`: discriminants, prime factorizations and unramifiedness checks
//! for monogenic extensions of `Q(t1..tn)`, plus the exhaustive audit.

use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ramify_core::audits::{pi1_report, thm41_audit, AuditOptions, CandidateSpace, Pi1Status, DEFAULT_CAP};
use ramify_core::orders::{dedekind_maximality_test, factor_ideal, Dedekind, TriangularIdeal};
use ramify_core::poly::text::{format_mpoly, format_upoly, rational_field_name};
use ramify_core::ramification::{
    absolute_report, composite_extension, composite_over, default_ideals, lemma_harness, relative_unramified,
    RamificationReport, RelativeExtension,
};
use ramify_core::spec::{parse_field_spec, FieldSpecFile};
use ramify_core::Error;

const CATALOG: &str = include_str!("catalog.spec");
const SCHEMA: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "ramify", version, about = "Ramification of monogenic extensions of Q(t1..tn)")]
struct Cli {
    /// Field-spec file to use instead of the built-in catalog.
    #[arg(long, global = true, value_name = "FILE")]
    spec: Option<PathBuf>,
    /// Emit a JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized factorization.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SpaceArgs {
    /// Number of variables t1..tn.
    #[arg(long)]
    n: usize,
    /// Exact degree in X.
    #[arg(long)]
    degx: usize,
    /// Total degree bound on each coefficient in t.
    #[arg(long)]
    tdeg: u32,
    /// Bound on the absolute value of integer coefficients.
    #[arg(long)]
    height: u32,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Largest space that will be enumerated.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Report wall-clock time (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Discriminant of the defining polynomial.
    Disc {
        #[arg(long)]
        ext: String,
    },
    /// Primes of the order above a maximal ideal.
    FactorIdeal {
        #[arg(long)]
        ext: String,
        #[arg(long)]
        ideal: String,
    },
    /// Per-ideal ramification verdicts; default ideals cover the discriminant.
    Unramified {
        #[arg(long)]
        ext: String,
        /// Maximal ideal such as "(5)" or "(3; t1 - 2)"; repeatable.
        #[arg(long)]
        ideal: Vec<String>,
    },
    /// Relative verdicts for a tower, a composite of towers, or a base change.
    Relative {
        /// Repeat to take the composite over the common base.
        #[arg(long, required = true)]
        tower: Vec<String>,
        /// Base-change along this tower.
        #[arg(long)]
        base: Option<String>,
        /// Maximal ideal such as "(5)" or "(3; t1 - 2)"; repeatable.
        #[arg(long)]
        ideal: Vec<String>,
    },
    /// Primitive element of a composite field.
    Composite {
        /// Two extensions over Q(t1..tn).
        #[arg(long, num_args = 1)]
        ext: Vec<String>,
        /// Two towers over a common base.
        #[arg(long, num_args = 1)]
        tower: Vec<String>,
    },
    /// Dedekind criterion at p (n = 0).
    Dedekind {
        #[arg(long)]
        ext: String,
        #[arg(long)]
        p: u64,
    },
    /// Run the configured lemma instances.
    Lemmas,
    /// Exhaustive audit: no irreducible candidate has unit discriminant.
    #[command(name = "audit-thm41")]
    Audit(SpaceArgs),
    /// Triviality report for the etale fundamental group, backed by an audit.
    #[command(name = "pi1-report")]
    Pi1Report(SpaceArgs),
}

/// A failure: message and exit status.
struct Failure(String, u8);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Invariant(_)) { 2 } else { 1 };
        Failure(e.to_string(), code)
    }
}

/// Result of one command: payload for `--json`, text otherwise, and whether
/// an expected property failed.
struct Outcome {
    command: &'static str,
    payload: Value,
    text: String,
    violated: bool,
}

fn load_spec(path: &Option<PathBuf>) -> Result<FieldSpecFile, Failure> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Failure(format!("{}: {e}", p.display()), 1))?,
        None => CATALOG.to_string(),
    };
    parse_field_spec(&text).map_err(|e| {
        let name = path.as_ref().map_or("built-in catalog".to_string(), |p| p.display().to_string());
        Failure(format!("{name}: {e}"), 1)
    })
}

fn ideals(spec: &[String], nvars: usize) -> Result<Vec<TriangularIdeal>, Failure> {
    spec.iter().map(|s| TriangularIdeal::parse(s, nvars).map_err(Failure::from)).collect()
}

fn report_outcome(command: &'static str, r: RamificationReport) -> Outcome {
    Outcome { command, payload: r.to_json(), text: r.render(), violated: false }
}

fn space(a: &SpaceArgs) -> Result<(CandidateSpace, AuditOptions), Failure> {
    let s = CandidateSpace::new(a.n, a.degx, a.tdeg, a.height)?;
    let workers = if a.workers == 0 { return Err(Failure("--workers must be at least 1".into(), 1)) } else { a.workers };
    Ok((s, AuditOptions { workers, cap: a.cap, timing: a.timing }))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let spec = load_spec(&cli.spec)?;
    let seed = cli.seed;
    Ok(match &cli.command {
        Command::Disc { ext } => {
            let e = spec.extension(ext)?;
            let d = format_mpoly(&e.discriminant()?);
            Outcome {
                command: "disc",
                payload: json!({"ext": e.label(), "f": format_upoly(e.min_poly()), "disc": d}),
                text: format!("{d}\n"),
                violated: false,
            }
        }
        Command::FactorIdeal { ext, ideal } => {
            let e = spec.extension(ext)?;
            let m = TriangularIdeal::parse(ideal, e.nvars())?;
            let fac = factor_ideal(&e, &m, seed)?;
            let k = m.residue_field();
            let factors: Vec<Value> = fac
                .primes
                .iter()
                .map(|p| json!({"factor": k.format_poly(&p.factor, "X"), "e": p.e, "f": p.f_deg}))
                .collect();
            Outcome {
                command: "factor-ideal",
                payload: json!({
                    "ext": e.label(),
                    "ideal": m.to_string(),
                    "fiber": k.format_poly(&fac.fiber_poly, "X"),
                    "factors": factors,
                    "e_list": fac.e_list(),
                    "f_list": fac.f_list(),
                }),
                text: format!(
                    "{} mod {} = {}\n  e={:?} f={:?}\n",
                    format_upoly(e.min_poly()),
                    m,
                    fac.format_factors(),
                    fac.e_list(),
                    fac.f_list()
                ),
                violated: false,
            }
        }
        Command::Unramified { ext, ideal } => {
            let e = spec.extension(ext)?;
            let ms = if ideal.is_empty() { default_ideals(&e)? } else { ideals(ideal, e.nvars())? };
            report_outcome("unramified", absolute_report(&e, &ms, seed)?)
        }
        Command::Relative { tower, base, ideal } => {
            let towers = tower.iter().map(|t| spec.tower(t)).collect::<Result<Vec<_>, _>>()?;
            let inner = if towers.len() == 1 {
                RelativeExtension::Simple(towers.into_iter().next().unwrap())
            } else {
                RelativeExtension::Composite(towers)
            };
            let rel = match base {
                Some(b) => RelativeExtension::BaseChange { base: spec.tower(b)?, ext: Box::new(inner) },
                None => inner,
            };
            rel.validate()?;
            let ms = if ideal.is_empty() { rel.default_ideals()? } else { ideals(ideal, rel.nvars())? };
            report_outcome("relative", relative_unramified(&rel, &ms, seed)?)
        }
        Command::Composite { ext, tower } => composite(&spec, ext, tower)?,
        Command::Dedekind { ext, p } => {
            let e = spec.extension(ext)?;
            let (maximal, witness) = match dedekind_maximality_test(&e, *p)? {
                Dedekind::Maximal => (true, None),
                Dedekind::NotMaximal(w) => {
                    let k = TriangularIdeal::new(*p, Vec::new())?.residue_field().clone();
                    (false, Some(k.format_poly(&w, "X")))
                }
            };
            let text = match &witness {
                None => format!("{}-maximal\n", p),
                Some(w) => format!("not {}-maximal, witness {}\n", p, w),
            };
            Outcome {
                command: "dedekind",
                payload: json!({"ext": e.label(), "p": p, "maximal": maximal, "witness": witness}),
                text,
                violated: false,
            }
        }
        Command::Lemmas => {
            let instances = spec.harness_instances()?;
            if instances.is_empty() {
                return Err(Failure("the spec has no harness section".into(), 1));
            }
            let r = lemma_harness(&instances, seed);
            Outcome { command: "lemmas", payload: r.to_json(), text: r.render(), violated: r.violations() > 0 }
        }
        Command::Audit(a) => {
            let (s, opts) = space(a)?;
            let r = thm41_audit(&s, &opts)?;
            Outcome { command: "audit-thm41", payload: r.to_json(), text: r.render(), violated: !r.survivors.is_empty() }
        }
        Command::Pi1Report(a) => {
            let (s, opts) = space(a)?;
            let audit = thm41_audit(&s, &opts)?;
            let r = pi1_report(&audit)?;
            Outcome {
                command: "pi1-report",
                payload: json!({"audit": audit.to_json(), "report": r.to_json()}),
                text: r.render(),
                violated: r.status == Pi1Status::Counterexample,
            }
        }
    })
}

fn composite(spec: &FieldSpecFile, ext: &[String], tower: &[String]) -> Result<Outcome, Failure> {
    match (ext.len(), tower.len()) {
        (2, 0) => {
            let (a, b) = (spec.extension(&ext[0])?, spec.extension(&ext[1])?);
            let c = composite_extension(&a, &b, &format!("{}*{}", a.label(), b.label()))?;
            let payload = json!({
                "label": c.ext.label(),
                "f": format_upoly(c.ext.min_poly()),
                "lambda": c.lambda,
                "attempts": c.attempts,
                "linearly_disjoint": c.linearly_disjoint,
                "certified": c.certified,
                "left": c.left.expression(),
                "right": c.right.expression(),
            });
            let text = format!(
                "{} = {}[X]/({}), X = mu1 + ({})*mu2\n  mu1 = {}\n  mu2 = {}\n  linearly disjoint: {}\n",
                c.ext.label(),
                rational_field_name(a.nvars()),
                format_upoly(c.ext.min_poly()),
                c.lambda,
                c.left.expression(),
                c.right.expression(),
                c.linearly_disjoint
            );
            Ok(Outcome { command: "composite", payload, text, violated: false })
        }
        (0, 2) => {
            let (a, b) = (spec.tower(&tower[0])?, spec.tower(&tower[1])?);
            let label = format!("{}*{}", a.label(), b.label());
            let c = composite_over(&a.presentations()[0], &b.presentations()[0], &label)?;
            let payload = json!({
                "label": c.ext.label(),
                "f": format_upoly(c.ext.min_poly()),
                "lambda": c.lambda,
                "attempts": c.attempts,
                "linearly_disjoint": c.linearly_disjoint,
                "certified": c.certified,
                "base": c.base.expression(),
                "left": c.left.expression(),
                "right": c.right.expression(),
            });
            let text = format!(
                "{} = {}[X]/({}) over {}, X = mu1 + ({})*mu2\n  base = {}\n  mu1 = {}\n  mu2 = {}\n  linearly disjoint: {}\n",
                c.ext.label(),
                rational_field_name(a.lower().nvars()),
                format_upoly(c.ext.min_poly()),
                a.lower().label(),
                c.lambda,
                c.base.expression(),
                c.left.expression(),
                c.right.expression(),
                c.linearly_disjoint
            );
            Ok(Outcome { command: "composite", payload, text, violated: false })
        }
        _ => Err(Failure("composite takes exactly two --ext or exactly two --tower".into(), 1)),
    }
}

fn color_enabled() -> bool {
    match std::env::var("RAMIFY_COLOR").as_deref() {
        Ok("always") => true,
        Ok("never") => false,
        _ => std::io::stdout().is_terminal(),
    }
}

/// Color verdict words.
fn paint(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut String| {
        let code = match word.as_str() {
            "unramified" | "passed" | "trivial" => Some("32"),
            "ramified" | "counterexample" | "failed" => Some("31"),
            "indeterminate" | "vacuous" | "skipped" => Some("33"),
            _ => None,
        };
        match code {
            Some(c) => out.push_str(&format!("\x1b[{c}m{word}\x1b[0m")),
            None => out.push_str(word),
        }
        word.clear();
    };
    for ch in text.chars() {
        if ch.is_ascii_alphabetic() {
            word.push(ch);
        } else {
            flush(&mut word, &mut out);
            out.push(ch);
        }
    }
    flush(&mut word, &mut out);
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(o) => {
            let mut stdout = std::io::stdout().lock();
            let written = if cli.json {
                let mut doc = json!({"schema": SCHEMA, "command": o.command});
                if let (Value::Object(d), Value::Object(p)) = (&mut doc, o.payload) {
                    d.extend(p);
                }
                writeln!(stdout, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))
            } else if color_enabled() {
                write!(stdout, "{}", paint(&o.text))
            } else {
                write!(stdout, "{}", o.text)
            };
            if written.is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(if o.violated { 2 } else { 0 })
        }
        Err(Failure(msg, code)) => {
            eprintln!("ramify: {msg}");
            ExitCode::from(code)
        }
    }
}
