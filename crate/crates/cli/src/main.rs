use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use superengel::algebra::{Backend, HomogeneousElement, SuperAlgebra, DEFAULT_BUDGET};
use superengel::certificate::{chain_certificate, pipeline_certificate, qideal_certificate, verify_certificate, Verification};
use superengel::engine::{counterexample_search, SearchTemplate};
use superengel::format::{self, to_canonical_string};
use superengel::identities::DEFAULT_ENVELOPE_BUDGET;
use superengel::operators::{engel_check, EngelMode};
use superengel::report::{classify, report_document, ClassifyOptions};
use superengel::{corpus, Error};

#[derive(Parser)]
#[command(name = "superengel", version, about = "Exact computations with finite-dimensional superalgebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Backend for checks over all homogeneous elements.
    #[arg(long, global = true, default_value = "auto")]
    backend: Backend,
    /// Largest number of elements to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Grassmann generators used by the Jordan check.
    #[arg(long, global = true)]
    envelope_gens: Option<usize>,
    /// Write the JSON report or certificate to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
}

/// `ALGEBRA` is a definition file or `corpus:<spec>`, e.g.
/// `corpus:upper-tri(3,010)`.
#[derive(Subcommand)]
enum Command {
    /// Parse and validate an algebra file.
    Validate { algebra: String },
    /// Run every identity, nilpotency and Engel check.
    Classify { algebra: String },
    /// Check that R_x is nilpotent for every homogeneous x.
    Engel {
        algebra: String,
        /// Require alg<R_x, L_x> nilpotent instead.
        #[arg(long)]
        full: bool,
    },
    /// Build the normalizer chain and emit its certificate.
    Chain { algebra: String },
    /// Run the special Jordan pipeline on a subspace of an associative algebra.
    JordanPipeline { algebra: String, subspace: PathBuf },
    /// Check the Q-ideal inclusion for B = I + Fv.
    Qideal {
        algebra: String,
        /// File with a spanning set of I.
        subspace: PathBuf,
        /// Coordinates of v, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Replay a certificate and compare it byte for byte.
    VerifyCertificate { algebra: String, certificate: PathBuf },
    /// List or emit built-in algebras.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Enumerate coefficient assignments on the support of the 3-dimensional example table.
    Search {
        #[arg(long, default_value = "GF3")]
        field: String,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    List,
    Emit {
        spec: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(spec: &str) -> Result<SuperAlgebra, Failure> {
    match spec.strip_prefix("corpus:") {
        Some(name) => Ok(corpus::build(name)?),
        None => Ok(format::parse_algebra(&read(Path::new(spec))?)?),
    }
}

fn write_json(g: &Global, doc: &Value) -> Result<(), Failure> {
    if let Some(path) = &g.json {
        fs::write(path, to_canonical_string(doc)).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn shape(a: &SuperAlgebra) -> String {
    let valid = if a.validate().is_valid() { "valid" } else { "invalid" };
    format!("{}: {valid}, dim {} ({}|{}) over {}", a.name(), a.dim(), a.even_dim(), a.odd_dim(), a.field())
}

fn text(v: &Value) -> String {
    v.as_str().map_or_else(|| v.to_string(), str::to_string)
}

fn verdict(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "undecided",
    }
}

fn run(cli: Cli) -> Outcome {
    let g = &cli.global;
    match cli.command {
        Command::Validate { algebra } => {
            let a = load(&algebra)?;
            println!("{}", shape(&a));
            Ok(a.validate().is_valid())
        }
        Command::Classify { algebra } => {
            let a = load(&algebra)?;
            let start = Instant::now();
            let opts = ClassifyOptions {
                backend: g.backend,
                budget: g.budget,
                envelope_gens: g.envelope_gens,
                envelope_budget: DEFAULT_ENVELOPE_BUDGET,
            };
            let c = classify(&a, &opts);
            let body = c.to_json(&a);
            println!("{}", shape(&a));
            for (k, v) in c.summary() {
                let extra = match k {
                    "graded_nil" => c.graded_nil_index().map(|i| format!(" (index {i})")),
                    "nilpotent" => c.power_series.zero_index().map(|i| format!(" (index {i})")),
                    "r_nilpotent" => c.engel.as_ref().ok().and_then(|r| r.witness.as_ref()).map(|w| {
                        format!(" (witness {})", a.describe(w.element()))
                    }),
                    _ => None,
                };
                println!("{k}: {}{}", verdict(v), extra.unwrap_or_default());
            }
            write_json(g, &report_document("classify", &a, body, start.elapsed().as_millis()))?;
            Ok(true)
        }
        Command::Engel { algebra, full } => {
            let a = load(&algebra)?;
            let start = Instant::now();
            let mode = if full { EngelMode::FullEngel } else { EngelMode::RNilpotencyOnly };
            let r = engel_check(&a, mode, g.backend, g.budget)?;
            println!("engel ({:?}, {}): {}", r.mode, r.backend, verdict(r.verdict));
            if let (Some(w), Some((p, rank))) = (&r.witness, r.stable_rank) {
                println!("witness: {} (rank of R^{p} = rank of R^{} = {rank})", a.describe(w.element()), p + 1);
            }
            write_json(g, &report_document("engel", &a, format::engel_report(&a, &r), start.elapsed().as_millis()))?;
            Ok(r.verdict == Some(true))
        }
        Command::Chain { algebra } => {
            let a = load(&algebra)?;
            let (ok, doc) = chain_certificate(&a, g.backend, g.budget);
            let cert = &doc["certificate"];
            let steps = cert["steps"].as_array().map_or(0, Vec::len);
            for (n, s) in cert["steps"].as_array().into_iter().flatten().enumerate() {
                println!("step {}: v = {} ({}), C* index {}", n + 1, text(&s["v"]["label"]), text(&s["case"]["kind"]), text(&s["cstar_index"]));
            }
            let out = &cert["outcome"];
            if ok {
                println!("nilpotent: {steps} steps, A* index {}, A index {}", text(&out["operator_index"]), text(&out["algebra_index"]));
            } else {
                let w = &out["witness"];
                println!("failed: {} {}", text(&w["kind"]), w.get("element").map(|e| text(&e["label"])).unwrap_or_default());
            }
            write_json(g, &doc)?;
            Ok(ok)
        }
        Command::JordanPipeline { algebra, subspace } => {
            let a = load(&algebra)?;
            let j = format::parse_subspace(&a, &read(&subspace)?)?;
            let (ok, doc) = pipeline_certificate(&a, &j, g.backend, g.budget)?;
            let cert = &doc["certificate"];
            for (k, v) in cert["stages"].as_object().into_iter().flatten() {
                println!("{k}: {}", text(v));
            }
            let out = &cert["outcome"];
            if ok {
                println!("passed");
            } else {
                let w = out["witness"].get("label").map(|l| format!(", witness {}", text(l))).unwrap_or_default();
                println!("failed at stage {} ({}){w}: {}", text(&out["stage"]), text(&out["stage_name"]), text(&out["reason"]));
            }
            write_json(g, &doc)?;
            Ok(ok)
        }
        Command::Qideal { algebra, subspace, v } => {
            let a = load(&algebra)?;
            let i = format::parse_subspace(&a, &read(&subspace)?)?;
            let coords = v
                .split(',')
                .map(|c| a.field().parse_scalar(c))
                .collect::<superengel::Result<Vec<_>>>()?;
            let v = HomogeneousElement::new(&a, a.element(coords)?)?;
            match qideal_certificate(&a, &i, &v) {
                Ok((ok, doc)) => {
                    let c = &doc["certificate"];
                    println!("n = {}, dim Q = {}, inclusion: {}, B* index {}", text(&c["n"]), text(&c["q_dim"]), text(&c["inclusion"]), text(&c["bstar"]["index"]));
                    write_json(g, &doc)?;
                    Ok(ok)
                }
                Err(Error::PreconditionFailed(msg)) => {
                    println!("precondition failed: {msg}");
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::VerifyCertificate { algebra, certificate } => {
            let a = load(&algebra)?;
            match verify_certificate(&a, &read(&certificate)?)? {
                Verification::Identical => {
                    println!("certificate verified");
                    Ok(true)
                }
                Verification::Mismatch { path } => {
                    println!("mismatch at {path}");
                    Ok(false)
                }
            }
        }
        Command::Corpus { action: CorpusAction::List } => {
            for e in corpus::entries() {
                println!("{}", e.spec);
            }
            for f in corpus::families() {
                println!("{}{}  {}", f.name, if f.params.is_empty() { String::new() } else { format!("({})", f.params) }, f.summary);
            }
            Ok(true)
        }
        Command::Corpus { action: CorpusAction::Emit { spec, out } } => {
            let a = corpus::build(&spec)?;
            let text = format::algebra_to_string(&a);
            match out {
                Some(path) => fs::write(&path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(true)
        }
        Command::Search { field } => {
            let f = corpus::parse_field(&field)?;
            let start = Instant::now();
            let r = counterexample_search(&SearchTemplate::shestakov(f), g.budget)?;
            println!(
                "{} assignments, {} graded, {} alternative, {} alternative graded-nil non-nilpotent, {} violations",
                r.assignments,
                r.graded,
                r.alternative,
                r.hits.len(),
                r.violations.len()
            );
            for h in &r.hits {
                println!("hit: {}", h.algebra.name());
            }
            let body = format::search(&r);
            let doc = json!({
                "kind": "search",
                "tool": {"name": format::TOOL_NAME, "version": format::TOOL_VERSION},
                "field": f.to_string(),
                "report": body,
                "timing_ms": start.elapsed().as_millis().to_string(),
            });
            write_json(g, &doc)?;
            Ok(r.violations.is_empty())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
