//! `akh`: Khovanov, reduced and annular homology over F2, augmentations and
//! their spectral sequences.

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use akh_core::census::{fixture, fixture_names, forest_link, random_forest, MarkedForest};
use akh_core::complex::{Flavor, GradedComplex};
use akh_core::diagram::{augment, DiagramJson};
use akh_core::homology::{chain_euler, graded_euler, homology, kauffman_bracket, PoincarePolynomial, BRACKET_CAP};
use akh_core::spectral::{e2_vs_akh, verify_rank_inequalities, DoubleComplex, SpectralSequence};
use akh_core::{AnnularDiagram, Basepoint};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

/// Directory searched for `NAME.json` before the built-in fixtures.
const FIXTURE_DIR_ENV: &str = "AKH_FIXTURE_DIR";

#[derive(Parser)]
#[command(name = "akh", version, about = "Annular Khovanov homology over F2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Khovanov homology; unreduced unless `--flavor` says otherwise.
    Kh(Common),
    /// Reduced Khovanov homology at the diagram's basepoint.
    Khr(Common),
    /// Annular Khovanov homology.
    Akh(Common),
    /// The augmented diagram as JSON.
    Augment(Common),
    /// Pages of the spectral sequence of the augmentation.
    Ss(Common),
    /// Consistency checks; all fixtures when no diagram is given.
    Verify(Common),
    /// Diagrams of marked forests, read from `--input` or sampled.
    Census(CensusArgs),
}

#[derive(Args)]
struct Source {
    /// Built-in fixture, or `NAME.json` in $AKH_FIXTURE_DIR.
    #[arg(long, conflicts_with = "input")]
    fixture: Option<String>,
    /// Diagram JSON file.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum)]
    flavor: Option<FlavorArg>,
    /// Last page printed by `ss`; E_infinity is always printed.
    #[arg(long)]
    pages: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest crossing count a run may build a cube for.
    #[arg(long, default_value_t = 14)]
    cap: usize,
    /// Worker threads for grading blocks; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct CensusArgs {
    /// Forest JSON file: {"n": .., "edges": [[u, v], ..], "annular": [..]}.
    #[arg(long, conflicts_with = "random")]
    input: Option<PathBuf>,
    /// Number of random forests to sample.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 5)]
    vertices: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FlavorArg {
    Unreduced,
    Reduced,
    Annular,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Why a run stopped, with its exit status.
#[derive(Debug)]
enum Failure {
    Check(String),
    Input(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
            Failure::Cap(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Check(m) => write!(f, "check failed: {m}"),
            Failure::Input(m) | Failure::Cap(m) => write!(f, "{m}"),
        }
    }
}

impl From<akh_core::Error> for Failure {
    fn from(e: akh_core::Error) -> Self {
        use akh_core::Error as E;
        match e {
            E::CapExceeded { .. } | E::TooManyCircles(_) => Failure::Cap(e.to_string()),
            E::NotAComplex(_) | E::NotContained | E::BadCobordism(_) | E::LayoutFailed => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Run<T> = Result<T, Failure>;

/// A diagram together with the basepoint it was given, if any.
struct Loaded {
    name: String,
    diagram: AnnularDiagram,
    basepoint: Option<Basepoint>,
}

fn load_json(name: String, path: &Path) -> Run<Loaded> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let j = DiagramJson::parse(&text)?;
    let basepoint = j.to_pointed().ok().map(|p| p.basepoint);
    Ok(Loaded { name, diagram: j.to_diagram()?, basepoint })
}

fn load_fixture(name: &str) -> Run<Loaded> {
    if let Some(dir) = std::env::var_os(FIXTURE_DIR_ENV) {
        let path = Path::new(&dir).join(format!("{name}.json"));
        if path.exists() {
            return load_json(name.to_string(), &path);
        }
    }
    Ok(Loaded { name: name.to_string(), diagram: fixture(name)?, basepoint: None })
}

fn load(source: &Source) -> Run<Option<Loaded>> {
    match (&source.fixture, &source.input) {
        (Some(name), _) => load_fixture(name).map(Some),
        (None, Some(path)) => load_json(path.display().to_string(), path).map(Some),
        (None, None) => Ok(None),
    }
}

fn require(source: &Source) -> Run<Loaded> {
    load(source)?.ok_or_else(|| Failure::Input("give --fixture NAME or --input PATH".into()))
}

fn check_cap(d: &AnnularDiagram, cap: usize) -> Run<()> {
    if d.n() > cap {
        return Err(Failure::Cap(format!("{} crossings exceed the cap of {cap}", d.n())));
    }
    Ok(())
}

/// The basepoint given with the diagram, else the smallest arc, else loop 0.
fn default_basepoint(l: &Loaded) -> Run<Basepoint> {
    if let Some(b) = l.basepoint {
        return Ok(b);
    }
    if let Some(&a) = l.diagram.arc_ids().first() {
        return Ok(Basepoint::Arc(a));
    }
    if l.diagram.free_loops().is_empty() {
        return Err(Failure::Input("the empty diagram has no basepoint".into()));
    }
    Ok(Basepoint::Loop(0))
}

fn print_polynomial(p: &PoincarePolynomial, format: Format) {
    match format {
        Format::Text => println!("{p}"),
        Format::Json => println!("{}", json!({ "terms": p.terms(), "total": p.total() })),
    }
}

fn homology_command(args: &Common, default: FlavorArg) -> Run<()> {
    let l = require(&args.source)?;
    check_cap(&l.diagram, args.cap)?;
    let flavor = match args.flavor.unwrap_or(default) {
        FlavorArg::Unreduced => Flavor::Unreduced,
        FlavorArg::Reduced => Flavor::Reduced(default_basepoint(&l)?),
        FlavorArg::Annular => Flavor::Annular,
    };
    let c = GradedComplex::build(&l.diagram, flavor)?;
    print_polynomial(&homology(&c), args.format);
    Ok(())
}

fn augment_command(args: &Common) -> Run<()> {
    let l = require(&args.source)?;
    check_cap(&l.diagram, args.cap)?;
    let p = augment(&l.diagram);
    println!("{}", serde_json::to_string(&DiagramJson::from(&p)).expect("diagram serializes"));
    Ok(())
}

fn print_pages(ss: &SpectralSequence, to: usize) {
    for page in ss.pages.iter().skip(1).filter(|p| p.r <= to) {
        println!("E_{}: total {}", page.r, page.total());
        for (&(p, q, j), &d) in &page.dims {
            println!("  p={p} q={q} j={j}: {d}");
        }
    }
    let inf = ss.e_infinity();
    println!("E_infinity: total {}", inf.total());
    println!("collapsed_at_E2: {}", ss.collapsed_at_e2);
}

fn ss_command(args: &Common) -> Run<()> {
    let l = require(&args.source)?;
    let dc = DoubleComplex::of_annular(&l.diagram)?;
    check_cap(&dc.pointed.diagram, args.cap)?;
    let ss = dc.pages()?;
    let to = args.pages.unwrap_or(usize::MAX);
    match args.format {
        Format::Text => print_pages(&ss, to),
        Format::Json => println!("{}", ss.to_json(1, to)),
    }
    Ok(())
}

/// Every check on one diagram; the failures found, in order.
fn verify_one(d: &AnnularDiagram) -> Run<Vec<String>> {
    let mut failures = Vec::new();
    for flavor in [Flavor::Unreduced, Flavor::Annular] {
        if let Err(e) = GradedComplex::build(d, flavor)?.check() {
            failures.push(e.to_string());
        }
    }
    let kh = homology(&GradedComplex::build(d, Flavor::Unreduced)?);
    let chi = graded_euler(&kh);
    if chi != chain_euler(&GradedComplex::build(d, Flavor::Unreduced)?) {
        failures.push("Euler characteristic of homology differs from that of the chains".into());
    }
    if d.n() <= BRACKET_CAP && chi != kauffman_bracket(d)? {
        failures.push("Euler characteristic differs from the state sum".into());
    }
    let cmp = e2_vs_akh(d)?;
    if !cmp.e2_matches() {
        failures.push(format!("E2 differs from annular homology at {:?}", cmp.mismatches()));
    }
    if !cmp.converges() {
        failures.push("E_infinity differs from reduced homology of the augmentation".into());
    }
    let report = verify_rank_inequalities(d)?;
    if !report.holds() {
        failures.push(format!("rank inequality fails: {report:?}"));
    }
    Ok(failures)
}

fn verify_command(args: &Common) -> Run<()> {
    let targets = match load(&args.source)? {
        Some(l) => vec![l],
        None => fixture_names().into_iter().map(load_fixture).collect::<Run<_>>()?,
    };
    for l in &targets {
        check_cap(&augment(&l.diagram).diagram, args.cap)?;
    }
    let mut report = Vec::new();
    let mut bad = 0;
    for l in &targets {
        let failures = verify_one(&l.diagram)?;
        bad += usize::from(!failures.is_empty());
        match args.format {
            Format::Text if failures.is_empty() => println!("{}: ok", l.name),
            Format::Text => println!("{}: FAIL {}", l.name, failures.join("; ")),
            Format::Json => report.push(json!({ "name": l.name, "ok": failures.is_empty(), "failures": failures })),
        }
    }
    if args.format == Format::Json {
        println!("{}", serde_json::Value::Array(report));
    }
    if bad > 0 {
        return Err(Failure::Check(format!("{bad} of {} diagrams failed", targets.len())));
    }
    Ok(())
}

fn census_command(args: &CensusArgs) -> Run<()> {
    let forests = match (&args.input, args.random) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            vec![MarkedForest::from_json(&text)?]
        }
        (None, Some(count)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            (0..count).map(|_| random_forest(&mut rng, args.vertices, 0.6, 0.3)).collect()
        }
        (None, None) => return Err(Failure::Input("give --input PATH or --random COUNT".into())),
    };
    for f in forests {
        let d = forest_link(&f)?;
        let forest: serde_json::Value = serde_json::from_str(&f.to_json()).expect("forest json");
        let diagram: serde_json::Value = serde_json::from_str(&d.to_json()).expect("diagram json");
        println!("{}", json!({ "forest": forest, "diagram": diagram }));
    }
    Ok(())
}

fn set_jobs(jobs: usize) {
    if jobs > 0 {
        // a second initialization only happens in tests; ignore it
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
}

fn run(cli: Cli) -> Run<()> {
    match &cli.command {
        Command::Census(args) => census_command(args),
        Command::Kh(args) | Command::Khr(args) | Command::Akh(args) | Command::Augment(args) | Command::Ss(args)
        | Command::Verify(args) => {
            set_jobs(args.jobs);
            match cli.command {
                Command::Kh(_) => homology_command(args, FlavorArg::Unreduced),
                Command::Khr(_) => homology_command(args, FlavorArg::Reduced),
                Command::Akh(_) => homology_command(args, FlavorArg::Annular),
                Command::Augment(_) => augment_command(args),
                Command::Ss(_) => ss_command(args),
                _ => verify_command(args),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("akh: {f}");
            ExitCode::from(f.code())
        }
    }
}
