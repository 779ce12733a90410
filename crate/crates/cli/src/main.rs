use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use vclass_core::coaisle::{
    build_generators, filtration_to_chain, xi_membership, xi_membership_homological,
};
use vclass_core::cosilting::{class_equals_tor_description, module_table};
use vclass_core::filtrations::{for_each_filtration, AdmissibleFiltration, Annotation};
use vclass_core::fixtures::{fixture, Verdicts, NAMES};
use vclass_core::ideals::cyclic_vocabulary;
use vclass_core::io::{self, Document, SCHEMA_VERSION};
use vclass_core::systems::{AdmissibleSystem, Location};
use vclass_core::{svg, Error};

const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "vclass",
    version,
    about = "Interval systems and filtrations on spectra of valuation domains"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom of a system or filtration document
    Validate { path: PathBuf },
    /// Compute the classification report of a filtration
    Classify {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Find the interval or gap containing an ideal
    Locate {
        path: PathBuf,
        /// Degree to use when the document holds a filtration
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        degree: i64,
        /// `zero`, `prime:<p>` or `gen:lo=<p>,att=<p>,isoloc=<bool>`
        #[arg(long)]
        ideal: String,
    },
    /// List (or count) the filtrations of a finite spectrum over a window
    Enumerate {
        /// Any document; only its spectrum is used
        #[arg(long)]
        spectrum: PathBuf,
        /// Degrees as `a..b`, inclusive
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        count_only: bool,
    },
    /// Decide whether a uniserial module lies in the coaisle at a degree
    Xi {
        path: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        /// `<numerator>/<denominator>`, e.g. `loc:q/prime:q`
        #[arg(long)]
        module: String,
    },
    /// The chain of ring epimorphisms of a nowhere dense filtration
    Chain { path: PathBuf },
    /// Generators of the aisle
    Generators { path: PathBuf },
    /// Compare interval membership with the homological description
    Tor {
        path: PathBuf,
        /// Degree to use when the document holds a filtration
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        degree: i64,
        /// Report one module instead of the whole cyclic vocabulary
        #[arg(long)]
        module: Option<String>,
    },
    /// Write a reference filtration to `<name>.json`
    Fixture {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(NAMES))]
        name: String,
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
    /// Render a filtration as a standalone SVG
    Diagram {
        path: PathBuf,
        /// Output file; standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum Failure {
    /// The input was read but fails a check; the report is still printed.
    #[error("{0}")]
    Violations(String),
    #[error("{0}")]
    Input(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Violations(_) => 1,
            Failure::Input(_) => 2,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotNowhereDense(_)
            | Error::BudgetExceeded { .. }
            | Error::FormulationMismatch(_)
            | Error::InvalidOracle(_) => Failure::Violations(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("vclass: {f}");
            ExitCode::from(f.code())
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Validate { path } => validate(&read(&path)?),
        Command::Classify { path, format } => classify(&read(&path)?, format),
        Command::Locate {
            path,
            degree,
            ideal,
        } => locate(&read(&path)?, degree, &ideal),
        Command::Enumerate {
            spectrum,
            window,
            count_only,
        } => enumerate(&read(&spectrum)?, &window, count_only),
        Command::Xi {
            path,
            degree,
            module,
        } => xi(&filtration_of(read(&path)?)?, degree, &module),
        Command::Chain { path } => chain(&filtration_of(read(&path)?)?),
        Command::Generators { path } => generators(&filtration_of(read(&path)?)?),
        Command::Tor {
            path,
            degree,
            module,
        } => tor(&system_of(read(&path)?, degree)?, module.as_deref()),
        Command::Fixture { name, dir } => write_fixture(&name, &dir),
        Command::Diagram { path, out } => diagram(&filtration_of(read(&path)?)?, out.as_deref()),
    }
}

fn read(path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    io::parse_document(&text).map_err(|e| {
        Failure::Input(format!(
            "{} does not match the schema:\n{e}",
            path.display()
        ))
    })
}

fn filtration_of(doc: Document) -> Result<AdmissibleFiltration, Failure> {
    match doc {
        Document::Filtration { filtration, .. } => Ok(filtration),
        Document::System(x) => Ok(AdmissibleFiltration::constant(x)),
        Document::Spectrum(_) => Err(Failure::Input(
            "document holds neither a system nor a filtration".into(),
        )),
    }
}

fn system_of(doc: Document, degree: i64) -> Result<AdmissibleSystem, Failure> {
    match doc {
        Document::System(x) => Ok(x),
        Document::Filtration { filtration, .. } => Ok(filtration.system_at(degree)),
        Document::Spectrum(_) => Err(Failure::Input(
            "document holds neither a system nor a filtration".into(),
        )),
    }
}

fn emit(mut body: Value) {
    if let Some(o) = body.as_object_mut() {
        o.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    print!("{}", io::to_pretty(&body));
}

fn budget() -> Result<u64, Failure> {
    match std::env::var("VCLASS_BUDGET") {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_BUDGET),
        Err(e) => Err(Failure::Input(format!("VCLASS_BUDGET: {e}"))),
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&b| b > 0)
            .ok_or_else(|| {
                Failure::Input(format!(
                    "VCLASS_BUDGET must be a positive integer, got `{v}`"
                ))
            }),
    }
}

fn validate(doc: &Document) -> Outcome {
    let violations: Vec<Value> = match doc {
        Document::Spectrum(_) => Vec::new(),
        Document::System(x) => x
            .validate()
            .into_iter()
            .map(|v| json!({"axiom": format!("{:?}", v.axiom), "witness": v.witness}))
            .collect(),
        Document::Filtration { filtration, .. } => match filtration.validate() {
            Ok(vs) => vs
                .iter()
                .map(|v| serde_json::to_value(v).expect("serialisable"))
                .collect(),
            Err(e) => vec![json!({"axiom": "non_density", "witness": e.to_string()})],
        },
    };
    let valid = violations.is_empty();
    let count = violations.len();
    emit(json!({"valid": valid, "violations": violations}));
    if valid {
        Ok(())
    } else {
        Err(Failure::Violations(format!("{count} violation(s)")))
    }
}

fn classify(doc: &Document, format: Format) -> Outcome {
    let Document::Filtration {
        filtration,
        verdicts,
    } = doc
    else {
        return Err(Failure::Input(
            "classify needs a filtration document".into(),
        ));
    };
    let violations = filtration.validate()?;
    if !violations.is_empty() {
        return Err(Failure::Violations(format!(
            "filtration is not admissible: {}",
            violations
                .iter()
                .map(|v| format!("degree {}: {}", v.degree, v.witness))
                .collect::<Vec<_>>()
                .join("; ")
        )));
    }
    let mut report = filtration.classify()?;
    report.left_nondegenerate = verdicts.as_ref().and_then(|v| v.left_nondegenerate.clone());
    let mismatches = verdicts
        .as_ref()
        .map(|v: &Verdicts| v.mismatches(&report))
        .unwrap_or_default();
    match format {
        Format::Json => {
            let mut body = serde_json::to_value(&report).expect("serialisable");
            if verdicts.is_some() {
                body["verdict_mismatches"] = json!(mismatches);
            }
            emit(body);
        }
        Format::Text => print!("{}", text_report(&report, &mismatches, verdicts.is_some())),
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violations(format!(
            "{} verdict mismatch(es)",
            mismatches.len()
        )))
    }
}

fn text_report(
    report: &vclass_core::filtrations::ClassificationReport,
    mismatches: &[String],
    has_verdicts: bool,
) -> String {
    let mut out = format!("schema_version: {SCHEMA_VERSION}\n");
    for (name, value) in [
        ("nowhere_dense", report.nowhere_dense),
        ("compactly_generated", report.compactly_generated),
        ("bounded", report.bounded),
        ("right_nondegenerate", report.right_nondegenerate),
        ("co_intermediate", report.co_intermediate),
    ] {
        out.push_str(&format!("{name}: {value}\n"));
    }
    if let Some(Annotation { value, source }) = &report.left_nondegenerate {
        out.push_str(&format!("left_nondegenerate: {value} (source: {source})\n"));
    }
    match &report.epi_chain {
        Some(c) => out.push_str(&format!(
            "epi_chain: {}\nflat_chain: {}\n",
            c.display, c.flat
        )),
        None => out.push_str("epi_chain: none\n"),
    }
    if let Some(gens) = &report.generators {
        for g in gens {
            out.push_str(&format!("generator: {g}\n"));
        }
    }
    for n in &report.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    if has_verdicts {
        if mismatches.is_empty() {
            out.push_str("verdicts: all match\n");
        }
        for m in mismatches {
            out.push_str(&format!("mismatch: {m}\n"));
        }
    }
    out
}

fn locate(doc: &Document, degree: i64, literal: &str) -> Outcome {
    let system = system_of(doc.clone(), degree)?;
    let spec = system.spectrum();
    let ideal = io::parse_ideal(spec, literal)?;
    let mut body = json!({"ideal": ideal.literal(spec)});
    if matches!(doc, Document::Filtration { .. }) {
        body["degree"] = json!(degree);
    }
    match system.locate(&ideal)? {
        Location::InInterval(i) => {
            body["in_interval"] = json!([spec.name(&i.lower), spec.name(&i.upper)])
        }
        Location::InGap(g) => {
            body["in_gap"] = json!([spec.ext_name(&g.below), spec.ext_name(&g.above)])
        }
    }
    emit(body);
    Ok(())
}

fn parse_window(text: &str) -> Result<(i64, i64), Failure> {
    let bad = || {
        Failure::Input(format!(
            "window must look like `a..b` with a ≤ b, got `{text}`"
        ))
    };
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn enumerate(doc: &Document, window: &str, count_only: bool) -> Outcome {
    let window = parse_window(window)?;
    let budget = budget()?;
    let mut lines = String::new();
    let count = for_each_filtration(doc.spectrum(), window, budget, |f| {
        if !count_only {
            lines.push_str(&io::filtration_to_json(f).to_string());
            lines.push('\n');
        }
    })?;
    if count_only {
        println!("{count}");
    } else {
        print!("{lines}");
    }
    Ok(())
}

fn xi(f: &AdmissibleFiltration, degree: i64, literal: &str) -> Outcome {
    let spec = f.spectrum();
    let m = io::parse_module(spec, literal)?;
    let interval_form = xi_membership(f, degree, &m)?;
    let homological = xi_membership_homological(f, degree, &m)?;
    emit(json!({
        "degree": degree,
        "module": m.literal(spec),
        "in_coaisle": interval_form,
        "homological": homological,
    }));
    if interval_form == homological {
        Ok(())
    } else {
        Err(Failure::Violations(
            "interval and homological membership disagree".into(),
        ))
    }
}

fn chain(f: &AdmissibleFiltration) -> Outcome {
    let c = filtration_to_chain(f)?;
    emit(serde_json::to_value(&c).expect("serialisable"));
    Ok(())
}

fn generators(f: &AdmissibleFiltration) -> Outcome {
    let gens = build_generators(f);
    let display: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    emit(json!({"generators": gens, "display": display}));
    Ok(())
}

fn tor(x: &AdmissibleSystem, module: Option<&str>) -> Outcome {
    let spec = x.spectrum();
    match module {
        Some(literal) => {
            let m = io::parse_module(spec, literal)?;
            emit(serde_json::to_value(module_table(x, &m)?).expect("serialisable"));
            Ok(())
        }
        None => {
            let report = class_equals_tor_description(x, &cyclic_vocabulary(spec))?;
            let mismatches = report.mismatches.len();
            emit(serde_json::to_value(&report).expect("serialisable"));
            if mismatches == 0 {
                Ok(())
            } else {
                Err(Failure::Violations(format!("{mismatches} mismatch(es)")))
            }
        }
    }
}

fn write_fixture(name: &str, dir: &Path) -> Outcome {
    let fx = fixture(name).ok_or_else(|| Failure::Input(format!("unknown fixture `{name}`")))?;
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, io::to_pretty(&io::fixture_document(&fx)))
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    println!("{}", path.display());
    Ok(())
}

fn diagram(f: &AdmissibleFiltration, out: Option<&Path>) -> Outcome {
    let svg = svg::render(f);
    match out {
        Some(path) => std::fs::write(path, svg)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{svg}");
            Ok(())
        }
    }
}
