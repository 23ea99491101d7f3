//! The `arcalg` command line.
//!
//! Exit codes: 0 when the command ran and met its expectation, 1 when a check
//! came out differently than expected, 2 on usage errors. Checks that are theorems
//! in characteristic 2 are expected to pass there; over characteristic 0 they only
//! report unless `--expect-pass` or `--expect-fail` is given.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebra::{AlgebraElement, ArcAlgebra, Generator, Labeling, Sampling};
use crate::bimodules::{find_witness, verify_bimodule, FlatTangle};
use crate::diagrams::{glue, Matching};
use crate::error::{Error, Result};
use crate::linalg::KernelRing;
use crate::par::{configure_threads, Execution};
use crate::render::{render_diagram, render_generator, Format};
use crate::rings::{Coefficient, Frobenius, Label, PolyGF2, PolyZ, RingKind, F2};
use crate::splitting::{deformed_check, verify_multiplicative_in, z_obstruction, TensorAlgebra};

#[derive(Parser, Debug)]
#[command(name = "arcalg", version, about = "Arc algebras, their reduced quotients and the splitting map")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Half the number of points.
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Coefficient ring: Z, GF2, PolyGF2 or PolyZ.
    #[arg(long, global = true, default_value = "Z")]
    ring: RingKind,

    /// Work in the reduced quotient
    #[arg(long, global = true)]
    reduced: bool,

    /// Use the deformed Frobenius algebra (polynomial rings only).
    #[arg(long, global = true)]
    deformed: bool,

    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Exit 1 unless the check passes
    #[arg(long, global = true, conflicts_with = "expect_fail")]
    expect_pass: bool,

    /// Exit 1 unless the check fails
    #[arg(long, global = true)]
    expect_fail: bool,

    /// Run checks on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the crossingless matchings on 2n points.
    Enumerate,
    /// Multiplication table of the standard basis, or an axiom check.
    Table {
        #[arg(long)]
        check_axioms: bool,
        /// Sample this many triples instead of checking all of them.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Check that the splitting map is multiplicative on all generator pairs.
    VerifyIso,
    /// Basis of the center, degree by degree (Z and GF2 only).
    Center,
    /// The integral obstruction for n = 2.
    ZObstruction,
    /// The deformed non-multiplicativity example (ignores --n and --ring).
    DeformedCheck,
    /// Check the one-sided splitting maps on a flat tangle, or on all tangles of a shape.
    BimoduleVerify {
        /// Half the number of left points; the right side uses --n.
        #[arg(long)]
        m: Option<usize>,
        /// Arcs such as "L1-R1,L2-L3,R2-R3".
        #[arg(long)]
        tangle: Option<String>,
    },
    /// Draw a!b with an optional labeling such as "1x".
    Render {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: Option<String>,
        #[arg(long)]
        labels: Option<String>,
    },
}

struct Outcome {
    body: String,
    /// `None` for commands that only report.
    pass: Option<bool>,
    expect_by_default: bool,
}

impl Outcome {
    fn report(body: String) -> Self {
        Outcome {
            body,
            pass: None,
            expect_by_default: false,
        }
    }

    fn check(body: String, pass: bool, expect_by_default: bool) -> Self {
        Outcome {
            body,
            pass: Some(pass),
            expect_by_default,
        }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Parses `argv`, runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    if let Some(threads) = std::env::var("ARCALG_THREADS").ok().and_then(|v| v.parse().ok()) {
        configure_threads(threads);
    }
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.body) {
                let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => {
            let _ = out.write_all(outcome.body.as_bytes());
        }
    }
    let expected = if cli.expect_pass {
        Some(true)
    } else if cli.expect_fail {
        Some(false)
    } else {
        outcome.expect_by_default.then_some(true)
    };
    match (expected, outcome.pass) {
        (Some(e), Some(p)) if e != p => {
            let _ = writeln!(err, "expected {}, got {}", verdict(e), verdict(p));
            1
        }
        (Some(_), None) => {
            let _ = writeln!(err, "this command has no pass/fail verdict");
            2
        }
        _ => 0,
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let n = cli.n.unwrap_or(2);
    if cli.format == OutputFormat::Svg && !matches!(cli.command, Command::Render { .. }) {
        return Err(usage("--format svg is only available for render"));
    }
    match &cli.command {
        Command::Enumerate => enumerate(cli, n),
        Command::Table { check_axioms, samples } => {
            let sampling = match samples {
                Some(samples) => Sampling::Sampled {
                    samples: *samples,
                    seed: cli.seed,
                },
                None => Sampling::Exhaustive,
            };
            if !check_axioms && samples.is_some() {
                return Err(usage("--samples needs --check-axioms"));
            }
            table(cli, n, frobenius(cli)?, check_axioms.then_some(sampling), exec)
        }
        Command::VerifyIso => verify_iso(cli, n, frobenius(cli)?, exec),
        Command::Center => match (cli.ring, cli.deformed) {
            (RingKind::Integers, false) => center::<i64>(cli, n),
            (RingKind::GF2, false) => center::<F2>(cli, n),
            _ => Err(usage("center is computed over Z or GF2 only")),
        },
        Command::ZObstruction => {
            let r = z_obstruction();
            let body = match cli.format {
                OutputFormat::Text => {
                    let mut s = String::new();
                    let _ = writeln!(s, "center of reduced H_2 over Z:");
                    for z in &r.center {
                        let _ = writeln!(s, "  {z}");
                    }
                    let _ = writeln!(s, "center matches: {}", r.center_matches);
                    let _ = writeln!(s, "central sign choices (s, t): {:?}", r.central_candidates);
                    for sq in &r.squares {
                        let _ = writeln!(s, "square: {sq}");
                    }
                    let _ = writeln!(s, "{}", verdict(r.pass));
                    s
                }
                _ => to_json(&r),
            };
            Ok(Outcome::check(body, r.pass, true))
        }
        Command::DeformedCheck => {
            let r = deformed_check();
            let body = match cli.format {
                OutputFormat::Text => format!(
                    "tensor side: {}\nalgebra side: {}\ndifference: {}\nagrees at the origin: {}\n{}\n",
                    r.tensor_side,
                    r.algebra_side,
                    r.difference,
                    r.origin_agrees,
                    verdict(r.pass)
                ),
                _ => to_json(&r),
            };
            Ok(Outcome::check(body, r.pass, true))
        }
        Command::BimoduleVerify { m, tangle } => {
            let m = m.unwrap_or(n);
            bimodule(cli, m, n, tangle.as_deref(), frobenius(cli)?, exec)
        }
        Command::Render { left, right, labels } => render(cli, left, right.as_deref(), labels.as_deref()),
    }
}

/// A Frobenius algebra over one of the supported rings.
enum AnyFrobenius {
    Z(Frobenius<i64>),
    F2(Frobenius<F2>),
    PolyGF2(Frobenius<PolyGF2>),
    PolyZ(Frobenius<PolyZ>),
}

/// The Frobenius algebra selected by `--ring` and `--deformed`.
fn frobenius(cli: &Cli) -> Result<AnyFrobenius> {
    Ok(match (cli.ring, cli.deformed) {
        (RingKind::Integers, false) => AnyFrobenius::Z(Frobenius::khovanov()),
        (RingKind::GF2, false) => AnyFrobenius::F2(Frobenius::khovanov()),
        (RingKind::PolyGF2, false) => AnyFrobenius::PolyGF2(Frobenius::khovanov()),
        (RingKind::PolyZ, false) => AnyFrobenius::PolyZ(Frobenius::khovanov()),
        (RingKind::PolyGF2, true) => AnyFrobenius::PolyGF2(Frobenius::<PolyGF2>::generic()),
        (RingKind::PolyZ, true) => AnyFrobenius::PolyZ(Frobenius::<PolyZ>::generic()),
        (_, true) => return Err(usage("--deformed needs --ring PolyGF2 or PolyZ")),
    })
}

macro_rules! with_frob {
    ($any:expr, |$frob:ident| $body:expr) => {
        match $any {
            AnyFrobenius::Z($frob) => $body,
            AnyFrobenius::F2($frob) => $body,
            AnyFrobenius::PolyGF2($frob) => $body,
            AnyFrobenius::PolyZ($frob) => $body,
        }
    };
}

fn table(cli: &Cli, n: usize, frob: AnyFrobenius, axioms: Option<Sampling>, exec: Execution) -> Result<Outcome> {
    with_frob!(frob, |frob| table_in(cli, ArcAlgebra::new(n, cli.reduced, frob), axioms, exec))
}

fn verify_iso(cli: &Cli, n: usize, frob: AnyFrobenius, exec: Execution) -> Result<Outcome> {
    with_frob!(frob, |frob| verify_iso_in(cli, TensorAlgebra::new(n, frob), exec))
}

fn bimodule(cli: &Cli, m: usize, n: usize, tangle: Option<&str>, frob: AnyFrobenius, exec: Execution) -> Result<Outcome> {
    with_frob!(frob, |frob| bimodule_in(cli, m, n, tangle, frob, exec))
}

fn enumerate(cli: &Cli, n: usize) -> Result<Outcome> {
    let all = Matching::enumerate(n);
    let body = match cli.format {
        OutputFormat::Text => all.iter().map(|m| format!("{m}\n")).collect(),
        _ => to_json(&json!({ "n": n, "count": all.len(), "matchings": all })),
    };
    Ok(Outcome::report(body))
}

#[derive(Serialize)]
struct GeneratorRepr<'a> {
    left: &'a Matching,
    right: &'a Matching,
    labels: Vec<Label>,
}

impl<'a> From<&'a Generator> for GeneratorRepr<'a> {
    fn from(g: &'a Generator) -> Self {
        GeneratorRepr {
            left: g.left(),
            right: g.right(),
            labels: g.labeling().labels(),
        }
    }
}

fn table_in<R: Coefficient>(cli: &Cli, alg: ArcAlgebra<R>, axioms: Option<Sampling>, exec: Execution) -> Result<Outcome> {
    if let Some(sampling) = axioms {
        let report = alg.check_axioms(sampling, exec);
        let body = match cli.format {
            OutputFormat::Text => format!(
                "n={} ring={} reduced={} triples={} associativity failures={} unit failures={}\n{}\n",
                report.n,
                report.ring,
                report.reduced,
                report.triples,
                report.associativity_failures,
                report.unit_failures,
                verdict(report.pass)
            ),
            _ => to_json(&report),
        };
        return Ok(Outcome::check(body, report.pass, true));
    }
    let basis = alg.basis();
    let index: std::collections::HashMap<&Generator, usize> = basis.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (0..basis.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| basis[i].right() == basis[j].left())
        .collect();
    let products: Vec<AlgebraElement<R>> =
        exec.map(&pairs, |&(i, j)| alg.multiply_generators(&basis[i], &basis[j]).expect("same algebra"));
    let body = match cli.format {
        OutputFormat::Text => {
            let mut s = String::new();
            for (&(i, j), p) in pairs.iter().zip(&products) {
                if !p.is_zero() {
                    let _ = writeln!(s, "{} · {} = {p}", basis[i], basis[j]);
                }
            }
            s
        }
        _ => {
            let entries: Vec<_> = pairs
                .iter()
                .zip(&products)
                .filter(|(_, p)| !p.is_zero())
                .map(|(&(i, j), p)| {
                    let terms: Vec<_> = p.terms().map(|(g, c)| json!([index[g], c])).collect();
                    json!({ "left": i, "right": j, "terms": terms })
                })
                .collect();
            let basis: Vec<GeneratorRepr> = basis.iter().map(GeneratorRepr::from).collect();
            to_json(&json!({
                "n": alg.n(),
                "ring": R::KIND,
                "reduced": alg.is_reduced(),
                "deformed": alg.frobenius().is_deformed(),
                "basis": basis,
                "products": entries,
            }))
        }
    };
    Ok(Outcome::report(body))
}

fn verify_iso_in<R: Coefficient>(cli: &Cli, tensor: TensorAlgebra<R>, exec: Execution) -> Result<Outcome> {
    let report = verify_multiplicative_in(&tensor, exec);
    let body = match cli.format {
        OutputFormat::Text => {
            let mut s = format!(
                "n={} ring={} pairs={} violations={}\n",
                report.n,
                report.ring,
                report.total,
                report.violations.len()
            );
            for v in &report.violations {
                let _ = writeln!(s, "{} * {}: {} != {}", v.left, v.right, v.lhs, v.rhs);
            }
            let _ = writeln!(s, "{}", verdict(report.pass()));
            s
        }
        _ => to_json(&report),
    };
    Ok(Outcome::check(body, report.pass(), R::characteristic() == 2))
}

fn center<R: KernelRing>(cli: &Cli, n: usize) -> Result<Outcome> {
    let alg = ArcAlgebra::<R>::khovanov(n, cli.reduced);
    let mut by_degree = Vec::new();
    let mut basis = Vec::new();
    for d in alg.degrees().into_iter().rev() {
        let part = alg.center_in_degree(d)?;
        if !part.is_empty() {
            by_degree.push(json!({ "degree": d, "rank": part.len() }));
        }
        basis.extend(part);
    }
    let body = match cli.format {
        OutputFormat::Text => {
            let mut s = format!("rank {}\n", basis.len());
            for z in &basis {
                let _ = writeln!(s, "  [{}] {z}", z.homogeneous_degree().unwrap_or_default());
            }
            s
        }
        _ => to_json(&json!({
            "n": n,
            "ring": R::KIND,
            "reduced": cli.reduced,
            "rank": basis.len(),
            "degrees": by_degree,
            "basis": basis,
        })),
    };
    Ok(Outcome::report(body))
}

fn bimodule_in<R: Coefficient>(
    cli: &Cli,
    m: usize,
    n: usize,
    tangle: Option<&str>,
    frob: Frobenius<R>,
    exec: Execution,
) -> Result<Outcome> {
    let expect = R::characteristic() == 2;
    if let Some(spec) = tangle {
        let t = FlatTangle::parse(m, n, spec)?;
        let report = verify_bimodule(&t, frob, exec)?;
        let body = match cli.format {
            OutputFormat::Text => {
                let mut s = format!("{t}\n");
                for checks in [&report.left, &report.right].into_iter().flatten() {
                    let _ = writeln!(
                        s,
                        "{:?}: bijective and graded {}, own side {}/{} failing, cross witness {}",
                        checks.side,
                        checks.graded_bijection,
                        checks.own_violations,
                        checks.own_checked,
                        checks.cross_witness.is_some()
                    );
                }
                let _ = writeln!(s, "maps coincide: {}\n{}", report.maps_coincide, verdict(report.pass));
                s
            }
            _ => to_json(&report),
        };
        return Ok(Outcome::check(body, report.pass, expect));
    }
    let tangles = FlatTangle::enumerate(m, n);
    let mut reports = Vec::new();
    for t in &tangles {
        reports.push(verify_bimodule(t, frob.clone(), exec)?);
    }
    let witness = find_witness(m, n, frob, exec)?;
    let all_pass = reports.iter().all(|r| r.pass);
    let pass = all_pass && witness.is_some();
    let body = match cli.format {
        OutputFormat::Text => {
            let mut s = String::new();
            for r in &reports {
                let _ = writeln!(s, "{} {}", r.tangle, verdict(r.pass));
            }
            match &witness {
                Some((t, w)) => {
                    let _ = writeln!(s, "witness: {t}, {} acting on {:?}", w.algebra, w.element);
                }
                None => {
                    let _ = writeln!(s, "no witness");
                }
            }
            let _ = writeln!(s, "{}", verdict(pass));
            s
        }
        _ => to_json(&json!({
            "m": m,
            "n": n,
            "ring": R::KIND,
            "tangles": tangles.len(),
            "reports": reports,
            "witness": witness.map(|(t, w)| json!({ "tangle": t, "witness": w })),
            "pass": pass,
        })),
    };
    Ok(Outcome::check(body, pass, expect))
}

fn render(cli: &Cli, left: &str, right: Option<&str>, labels: Option<&str>) -> Result<Outcome> {
    let a = Matching::parse(left)?;
    let b = match right {
        Some(r) => Matching::parse(r)?,
        None => a.clone(),
    };
    let format = match cli.format {
        OutputFormat::Svg => Some(Format::Svg),
        OutputFormat::Text => Some(Format::Ascii),
        OutputFormat::Json => None,
    };
    let body = match labels {
        Some(labels) => {
            let labels = labels
                .chars()
                .map(|c| c.to_string().parse::<Label>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| usage(format!("labels must be a string over 1 and x, got {labels:?}")))?;
            let g = Generator::from_labeling(a, b, Labeling::new(&labels), cli.reduced)?;
            match format {
                Some(f) => render_generator(&g, f),
                None => to_json(&json!({
                    "generator": GeneratorRepr::from(&g),
                    "diagram": g.diagram(),
                })),
            }
        }
        None => {
            let d = glue(&a, &b)?;
            match format {
                Some(f) => render_diagram(&d, f),
                None => to_json(&d),
            }
        }
    };
    Ok(Outcome::report(body))
}
