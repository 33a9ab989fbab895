//! Argument parsing and the subcommands.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sl2betti_core::groebner::Ideal;
use sl2betti_core::invariants::GeneratorSet;
use sl2betti_core::poly::OrderKind;
use sl2betti_core::report::render_betti;
use sl2betti_core::resolution::Resolution;

use crate::catalog::{self, CATALOG};
use crate::grammar::{self, parse_poly_file};
use crate::output::{betti_json, betti_report, exponent_list};
use crate::pipeline::{self, CaseReport};
use crate::{dump, Error};

/// All checks requested passed.
pub const EXIT_PASS: u8 = 0;
/// Some check failed.
pub const EXIT_FAIL: u8 = 1;
/// Bad arguments or input files, or a computation error.
pub const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "sl2betti", version, about = "Invariants of binary forms, their presentations and Betti diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal generating set of the invariants of binary forms of the
    /// given degrees, e.g. `1,1,1,2`.
    Invariants {
        degrees: String,
        /// Largest generator degree searched.
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Minimal generators of the relations among the invariants, or among
    /// the polynomials of a file.
    Kernel(Input),
    /// Presentation, minimal resolution and Betti diagram.
    Resolve {
        #[command(flatten)]
        input: Input,
        /// Write the minimal resolution to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Checks built-in cases against their known diagrams.
    Verify {
        /// A case label such as `3V1+V2`, or `all`.
        case: String,
        /// Degree cap for the Koszul, Hilbert series and exactness checks.
        #[arg(long)]
        jcap: Option<u32>,
        /// Also run the long cases with `all`.
        #[arg(long, conflicts_with = "skip_stretch")]
        include_stretch: bool,
        /// Leave out the long cases with `all` (the default).
        #[arg(long)]
        skip_stretch: bool,
    },
    /// Minimal resolution of `R/I` for an ideal given by its generators.
    Betti {
        /// Polynomial file with the generators.
        #[arg(long)]
        gens: PathBuf,
        /// Variable weights, comma separated.
        #[arg(long)]
        weights: Option<String>,
        /// Write the minimal resolution to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// Form degrees, comma separated.
    #[arg(required_unless_present = "gens", conflicts_with = "gens")]
    degrees: Option<String>,
    /// Polynomial file whose entries generate the subalgebra.
    #[arg(long)]
    gens: Option<PathBuf>,
    /// Weights of the generators in the file, comma separated.
    #[arg(long, requires = "gens")]
    weights: Option<String>,
    /// Largest invariant degree searched.
    #[arg(long, conflicts_with = "gens")]
    bound: Option<u32>,
}

/// Runs one invocation, writing results to `out` and diagnostics to
/// `err`; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Error> {
    let json = cli.format == Format::Json;
    let text = match &cli.command {
        Command::Invariants { degrees, bound } => {
            let degrees = pipeline::parse_list(degrees)?;
            let g = pipeline::generators(&degrees, *bound)?;
            if g.unverified_beyond_bound {
                let _ = writeln!(
                    err,
                    "warning: invariants of degree {} are not generated; raise --bound",
                    g.verified_through + 1
                );
            }
            let body = if json { to_json(&invariants_json(&degrees, &g)) } else { invariants_text(&degrees, &g) };
            emit(out, &body)?;
            return Ok(if g.unverified_beyond_bound { EXIT_FAIL } else { EXIT_PASS });
        }
        Command::Kernel(input) => {
            let (degrees, ideal) = kernel_input(input)?;
            if json {
                to_json(&kernel_json(degrees.as_deref(), &ideal))
            } else {
                kernel_text(&ideal)
            }
        }
        Command::Resolve { input, dump } => {
            let (degrees, ideal) = kernel_input(input)?;
            let (res, t) = pipeline::resolve_ideal(&ideal)?;
            write_dump(dump.as_deref(), &res)?;
            if json {
                to_json(&betti_json(degrees.as_deref(), ideal.ring().weights(), &t))
            } else {
                let mut s = String::new();
                if let Some(d) = &degrees {
                    s.push_str(&format!("degrees: {}\n", join(d)));
                }
                s.push_str(&format!("generator weights: {}\n", exponent_list(ideal.ring().weights())));
                s.push_str(&format!(
                    "kernel: {} minimal generators, degrees {}\n",
                    ideal.generators().len(),
                    exponent_list(&ideal.degrees())
                ));
                s.push_str(&betti_report(&t, ideal.ring().weights()));
                s
            }
        }
        Command::Betti { gens, weights, dump } => {
            let weights = weights.as_deref().map(pipeline::parse_list).transpose()?;
            let file = parse_poly_file(&read(gens)?, weights.as_deref())?;
            let ideal = Ideal::new(file.ring, file.polys)?;
            let (res, t) = pipeline::resolve_ideal(&ideal)?;
            write_dump(dump.as_deref(), &res)?;
            if json {
                to_json(&betti_json(None, ideal.ring().weights(), &t))
            } else {
                betti_report(&t, ideal.ring().weights())
            }
        }
        Command::Verify {
            case,
            jcap,
            include_stretch,
            skip_stretch: _,
        } => {
            let cases: Vec<&'static catalog::CaseRecord> = if case.eq_ignore_ascii_case("all") {
                CATALOG.iter().filter(|c| *include_stretch || !c.stretch).collect()
            } else {
                vec![catalog::find(case).ok_or_else(|| Error::Input(format!("unknown case `{case}`")))?]
            };
            let reports = pipeline::run_cases(&cases, *jcap, pipeline::threads_from_env());
            let all = reports.iter().all(CaseReport::passed);
            let body = if json { to_json(&verify_json(&reports)) } else { verify_text(&reports) };
            emit(out, &body)?;
            return Ok(if all { EXIT_PASS } else { EXIT_FAIL });
        }
    };
    emit(out, &text)?;
    Ok(EXIT_PASS)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Error> {
    out.write_all(text.as_bytes()).map_err(|source| Error::Io {
        path: String::from("<stdout>"),
        source,
    })
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_dump(path: Option<&Path>, res: &Resolution) -> Result<(), Error> {
    let Some(path) = path else { return Ok(()) };
    std::fs::write(path, dump::write_dump(res)).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn join(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// The kernel for either kind of input, with the form degrees when known.
fn kernel_input(input: &Input) -> Result<(Option<Vec<u32>>, Ideal), Error> {
    match (&input.degrees, &input.gens) {
        (Some(d), _) => {
            let degrees = pipeline::parse_list(d)?;
            let p = pipeline::presentation(&degrees, input.bound)?;
            Ok((Some(degrees), p.kernel))
        }
        (None, Some(path)) => {
            let weights = input.weights.as_deref().map(pipeline::parse_list).transpose()?;
            let file = parse_poly_file(&read(path)?, None)?;
            let ideal = pipeline::kernel_of_images(file.ring, file.polys, weights.as_deref())?;
            Ok((None, ideal))
        }
        (None, None) => Err(Error::Input(String::from("give form degrees or --gens"))),
    }
}

/// `a0..a2 (degree 2)` for each form.
fn form_names(g: &GeneratorSet) -> String {
    let names = g.ring.ring().names();
    let mut k = 0;
    let mut parts = Vec::new();
    for &d in g.ring.degrees() {
        parts.push(format!("{}..{} (degree {d})", names[k], names[k + d as usize]));
        k += d as usize + 1;
    }
    parts.join(", ")
}

fn invariants_text(degrees: &[u32], g: &GeneratorSet) -> String {
    let ring = g.ring.ring();
    let mut s = format!("# degrees {}; forms {}\n", join(degrees), form_names(g));
    s.push_str(&format!(
        "# {} generators, weights {}; complete through degree {}\n",
        g.generators.len(),
        exponent_list(&g.degrees()),
        g.verified_through
    ));
    s.push_str(&grammar::header(ring, OrderKind::WeightedRevLex));
    s.push('\n');
    for gen in &g.generators {
        s.push_str(&format!(
            "{}  # degree {}, multidegree {}\n",
            gen.poly.to_text(ring.names()),
            gen.degree,
            join(&gen.multidegree)
        ));
    }
    s
}

fn invariants_json(degrees: &[u32], g: &GeneratorSet) -> Value {
    let ring = g.ring.ring();
    let gens: Vec<Value> = g
        .generators
        .iter()
        .map(|x| json!({"poly": x.poly.to_text(ring.names()), "degree": x.degree, "multidegree": x.multidegree}))
        .collect();
    json!({
        "degrees": degrees,
        "variables": ring.names(),
        "generator_weights": g.degrees(),
        "generators": gens,
        "verified_through": g.verified_through,
        "complete": !g.unverified_beyond_bound,
    })
}

fn kernel_text(ideal: &Ideal) -> String {
    let ring = ideal.ring();
    let mut s = format!("# generator weights {}\n", exponent_list(ring.weights()));
    s.push_str(&format!(
        "# {} minimal relations, degrees {}\n",
        ideal.generators().len(),
        exponent_list(&ideal.degrees())
    ));
    s.push_str(&grammar::header(ring, OrderKind::WeightedRevLex));
    s.push('\n');
    for (p, d) in ideal.generators().iter().zip(ideal.degrees()) {
        s.push_str(&format!("{}  # degree {d}\n", p.to_text(ring.names())));
    }
    s
}

fn kernel_json(degrees: Option<&[u32]>, ideal: &Ideal) -> Value {
    let ring = ideal.ring();
    let rels: Vec<Value> = ideal
        .generators()
        .iter()
        .zip(ideal.degrees())
        .map(|(p, d)| json!({"poly": p.to_text(ring.names()), "degree": d}))
        .collect();
    json!({
        "degrees": degrees,
        "variables": ring.names(),
        "generator_weights": ring.weights(),
        "relations": rels,
    })
}

fn verdict(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn verify_text(reports: &[CaseReport]) -> String {
    let mut s = String::new();
    for r in reports {
        s.push_str(&format!("{}  degrees {}\n", r.case.label, join(r.case.degrees)));
        for c in &r.checks {
            s.push_str(&format!("  {:<11} {}  {}\n", c.name, verdict(c.passed), c.detail));
        }
        if let Some(c) = &r.computed {
            for line in render_betti(&c.betti).lines() {
                s.push_str(&format!("    {line}\n"));
            }
        }
        s.push_str(&format!("  {}\n\n", if r.passed() { "PASS" } else { "FAIL" }));
    }
    let n = reports.iter().filter(|r| r.passed()).count();
    s.push_str(&format!("{n} of {} cases passed\n", reports.len()));
    s
}

fn verify_json(reports: &[CaseReport]) -> Value {
    let cases: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut v = match &r.computed {
                Some(c) => betti_json(Some(r.case.degrees), c.presentation.weights(), &c.betti),
                None => json!({"degrees": r.case.degrees}),
            };
            let checks: Vec<Value> = r
                .checks
                .iter()
                .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect();
            v["label"] = json!(r.case.label);
            v["checks"] = json!(checks);
            v["passed"] = json!(r.passed());
            v
        })
        .collect();
    json!({
        "cases": cases,
        "passed": reports.iter().all(CaseReport::passed),
    })
}

