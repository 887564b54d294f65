//! Command-line front end: model building, checks, BCH and gauge
//! arithmetic, and Maurer-Cartan classification.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cdgl_core::cdgl::Cdgl;
use cdgl_core::checks::{self, CheckResult};
use cdgl_core::classify::{ClassReport, Classifier, ClassifyOptions};
use cdgl_core::lie::random::random_element;
use cdgl_core::lie::text::{identifiers, parse_element};
use cdgl_core::lie::{make_algebra, Generator, LieElement};
use cdgl_core::series::{bch, bernoulli, gauge};
use cdgl_core::simplicial::{build_model, cylinder_iso, ls_interval, Model, ModelDocument, SimplicialComplex};
use cdgl_core::CdglError;
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

const DEFAULT_MAX_TRUNC: usize = 8;

#[derive(Parser)]
#[command(name = "cdgl", version, about = "Exact cDGL algebra and Maurer-Cartan classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Truncation order N: compute modulo brackets of length > N.
    #[arg(long, default_value_t = 4)]
    trunc: usize,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the model of a complex and report d∘d.
    Model {
        complex: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Classify 0 and every vertex generator; compare with components + 1.
    Pi0 {
        complex: PathBuf,
        #[arg(long)]
        base_vertex: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Classify one Maurer-Cartan element of a complex's model.
    Classify {
        complex: PathBuf,
        element: String,
        #[arg(long)]
        base_vertex: Option<u32>,
        /// Also classify this many random gauge transforms of the element.
        #[arg(long, default_value_t = 0)]
        fuzz: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// BCH product of two expressions; every identifier is a degree-0 generator.
    Bch {
        x: String,
        y: String,
        #[command(flatten)]
        common: Common,
    },
    /// Gauge action of x on z in a model (builtin or JSON file).
    Gauge {
        x: String,
        z: String,
        /// `ls-interval`, `cylinder`, a model JSON or a complex JSON.
        #[arg(long, default_value = "ls-interval")]
        model: String,
        #[command(flatten)]
        common: Common,
    },
    /// The Bernoulli number B_n (B_1 = -1/2).
    Bernoulli {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a check suite: ls-interval, cylinder-iso, bch-laws, or a model/complex file.
    Check {
        target: String,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Input(String),
    Check(String),
}

impl From<CdglError> for Failure {
    fn from(e: CdglError) -> Self {
        match e {
            CdglError::DSquaredNonzero(_)
            | CdglError::Unsolvable(_)
            | CdglError::Verification(_)
            | CdglError::NonIncreasingLevels
            | CdglError::ReductionStuck { .. } => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<bool, Failure>;

fn max_trunc() -> std::result::Result<usize, Failure> {
    match std::env::var("CDGL_MAX_TRUNC") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Input(format!("CDGL_MAX_TRUNC is not a number: {v}"))),
        Err(_) => Ok(DEFAULT_MAX_TRUNC),
    }
}

fn check_trunc(n: usize) -> std::result::Result<usize, Failure> {
    let max = max_trunc()?;
    if n == 0 || n > max {
        return Err(Failure::Input(format!("--trunc must be between 1 and {max}, got {n}")));
    }
    Ok(n)
}

struct Output {
    sink: Box<dyn Write>,
}

impl Output {
    fn open(path: Option<&Path>) -> std::result::Result<Self, Failure> {
        let sink: Box<dyn Write> = match path {
            Some(p) => Box::new(io::BufWriter::new(fs::File::create(p)?)),
            None => Box::new(io::BufWriter::new(io::stdout().lock())),
        };
        Ok(Output { sink })
    }

    fn line(&mut self, text: &str) -> std::result::Result<(), Failure> {
        writeln!(self.sink, "{text}")?;
        Ok(())
    }

    fn json<T: Serialize>(&mut self, value: &T) -> std::result::Result<(), Failure> {
        self.line(&serde_json::to_string(value).expect("serializable"))
    }
}

impl Drop for Output {
    fn drop(&mut self) {
        let _ = self.sink.flush();
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> std::result::Result<SimplicialComplex, Failure> {
    Ok(SimplicialComplex::from_json(&read(path)?)?)
}

/// A model from a model document (when it has `generators`) or a complex.
fn load_model(path: &Path, trunc: usize) -> std::result::Result<Model, Failure> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Failure::Input(e.to_string()))?;
    if value.get("generators").is_some() {
        let doc: ModelDocument = serde_json::from_value(value).map_err(|e| Failure::Input(e.to_string()))?;
        check_trunc(doc.truncation)?;
        Ok(doc.to_model()?)
    } else {
        Ok(build_model(&SimplicialComplex::from_json(&text)?, trunc)?)
    }
}

fn cmd_model(complex: &Path, common: &Common) -> Outcome {
    let n = check_trunc(common.trunc)?;
    let x = load_complex(complex)?;
    let model = build_model(&x, n)?;
    let report = model.d_squared();
    let mut doc = model.to_document();
    doc.d_squared = Some((&report).into());
    let mut out = Output::open(common.out.as_deref())?;
    out.line(&serde_json::to_string_pretty(&doc).expect("serializable"))?;
    Ok(report.is_clean())
}

fn options(base_vertex: Option<u32>) -> ClassifyOptions {
    ClassifyOptions { base_vertex, ..ClassifyOptions::default() }
}

fn cmd_pi0(complex: &Path, base_vertex: Option<u32>, common: &Common) -> Outcome {
    let n = check_trunc(common.trunc)?;
    let model = build_model(&load_complex(complex)?, n)?;
    let report = Classifier::new(&model, &options(base_vertex))?.pi0_classes()?;
    let mut out = Output::open(common.out.as_deref())?;
    for (label, class) in &report.entries {
        let mut line = ClassReport::new(&LieElement::zero(model.ctx()), class);
        line.input = label.clone();
        out.json(&line)?;
    }
    let pass = report.matches_components();
    let summary =
        format!("components: {}, MC classes: {}, {}", report.components, report.count(), if pass { "PASS" } else { "FAIL" });
    out.json(&json!({"components": report.components, "classes": report.count(), "pass": pass, "summary": summary}))?;
    Ok(pass)
}

fn cmd_classify(complex: &Path, element: &str, base_vertex: Option<u32>, fuzz: usize, seed: u64, common: &Common) -> Outcome {
    let n = check_trunc(common.trunc)?;
    let model = build_model(&load_complex(complex)?, n)?;
    let u = parse_element(model.ctx(), element)?;
    if !model.cdgl.is_mc(&u)? {
        return Err(Failure::Input(format!("{element} is not a Maurer-Cartan element")));
    }
    let classifier = Classifier::new(&model, &options(base_vertex))?;
    let class = classifier.classify(&u)?;
    let mut out = Output::open(common.out.as_deref())?;
    out.json(&ClassReport::new(&u, &class))?;
    if fuzz == 0 {
        return Ok(true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stable = true;
    for _ in 0..fuzz {
        let g = random_element(model.ctx(), 0, 3, 4, &mut rng);
        let v = gauge(&g, &u, &model.cdgl)?;
        let c = classifier.classify(&v)?;
        stable &= c.verdict == class.verdict;
        out.json(&ClassReport::new(&v, &c))?;
    }
    out.json(&json!({"cases": fuzz + 1, "verdict": class.verdict, "stable": stable, "seed": seed}))?;
    Ok(stable)
}

fn cmd_bch(x: &str, y: &str, common: &Common) -> Outcome {
    let n = check_trunc(common.trunc)?;
    let mut names: Vec<String> = Vec::new();
    for id in identifiers(x).into_iter().chain(identifiers(y)) {
        if !names.contains(&id) {
            names.push(id);
        }
    }
    let gens = names.iter().enumerate().map(|(i, s)| Generator::new(i as u32, 0, s.clone())).collect();
    let ctx = make_algebra(gens, n)?;
    let value = bch(&parse_element(&ctx, x)?, &parse_element(&ctx, y)?)?;
    Output::open(common.out.as_deref())?.line(&value.to_string())?;
    Ok(true)
}

fn gauge_model(name: &str, n: usize) -> std::result::Result<Cdgl, Failure> {
    Ok(match name {
        "ls-interval" => ls_interval(n)?.cdgl,
        "cylinder" => cylinder_iso(n)?.cylinder,
        path => load_model(Path::new(path), n)?.cdgl,
    })
}

fn cmd_gauge(x: &str, z: &str, model: &str, common: &Common) -> Outcome {
    let n = check_trunc(common.trunc)?;
    let cdgl = gauge_model(model, n)?;
    let value = gauge(&parse_element(cdgl.ctx(), x)?, &parse_element(cdgl.ctx(), z)?, &cdgl)?;
    Output::open(common.out.as_deref())?.line(&value.to_string())?;
    Ok(true)
}

fn cmd_bernoulli(n: usize, out: Option<&Path>) -> Outcome {
    Output::open(out)?.line(&bernoulli(n).to_string())?;
    Ok(true)
}

fn cmd_check(target: &str, common: &Common) -> Outcome {
    let n = check_trunc(common.trunc)?;
    let results: Vec<CheckResult> = match target {
        "ls-interval" => checks::ls_interval_checks(n)?,
        "cylinder-iso" => checks::cylinder_iso_checks(n)?,
        "bch-laws" => checks::bch_law_checks(n)?,
        path => checks::model_checks(&load_model(Path::new(path), n)?),
    };
    let mut out = Output::open(common.out.as_deref())?;
    for r in &results {
        out.json(r)?;
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    out.json(&json!({"checks": results.len(), "failed": failed, "pass": failed == 0}))?;
    Ok(failed == 0)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Model { complex, common } => cmd_model(complex, common),
        Command::Pi0 { complex, base_vertex, common } => cmd_pi0(complex, *base_vertex, common),
        Command::Classify { complex, element, base_vertex, fuzz, seed, common } => {
            cmd_classify(complex, element, *base_vertex, *fuzz, *seed, common)
        }
        Command::Bch { x, y, common } => cmd_bch(x, y, common),
        Command::Gauge { x, z, model, common } => cmd_gauge(x, z, model, common),
        Command::Bernoulli { n, out } => cmd_bernoulli(*n, out.as_deref()),
        Command::Check { target, common } => cmd_check(target, common),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("cdgl: check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("cdgl: {msg}");
            ExitCode::from(2)
        }
    }
}
