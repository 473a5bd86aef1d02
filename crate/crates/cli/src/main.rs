use std::fs;
use std::process::ExitCode;
use std::sync::mpsc;
use std::thread;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use modal_interp::bench::{self, BenchRow, Method};
use modal_interp::formula::{modal_depth, nnf, sig, size_dag, size_string};
use modal_interp::nabla::{to_nabla_nf, uniform_interpolant};
use modal_interp::quasimodel::{self, Order, QuasiConfig};
use modal_interp::semantics::{eval, largest_bisimulation, KripkeModel};
use modal_interp::sequent::{self, Sequent};
use modal_interp::verify::{check_craig, check_lyndon, InterpolantReport};
use modal_interp::{parse, Error, Formula, SignatureSet};

#[derive(Parser, Debug)]
#[command(
    name = "modal-interp",
    version,
    about = "Interpolation toolkit for the modal logic K"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true, conflicts_with = "format")]
    json: bool,
    /// Randomise the elimination order with this seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Cap on the number of combined types.
    #[arg(long, global = true)]
    max_types: Option<usize>,
    /// Give up after this many milliseconds (exit 3).
    #[arg(long, global = true)]
    timeout_ms: Option<u64>,
    /// Show the elimination trace or proof tree.
    #[arg(long, global = true)]
    explain: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Nabla,
    Automata,
    Quasimodel,
    Sequent,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Nabla => vec![Method::Nabla],
            MethodArg::Automata => vec![Method::Automata],
            MethodArg::Quasimodel => vec![Method::Quasimodel],
            MethodArg::Sequent => vec![Method::Sequent],
            MethodArg::All => Method::ALL.to_vec(),
        }
    }
}

/// Formulas are given inline or as `@path`.
#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and print a formula with its sizes.
    Parse { formula: String },
    /// Negation normal form.
    Nnf { formula: String },
    /// Nabla normal form.
    NablaNf { formula: String },
    /// Satisfiability by type elimination.
    Sat { formula: String },
    /// Validity of a formula, or of `phi -> psi` when two are given.
    Valid { phi: String, psi: Option<String> },
    /// Craig interpolant of a valid implication.
    Interpolate {
        phi: String,
        psi: String,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        /// Include the full verification report.
        #[arg(long)]
        report: bool,
    },
    /// Uniform interpolant over the kept letters.
    Uniform {
        formula: String,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        keep: Vec<String>,
    },
    /// Evaluate a formula at the point of a JSON model.
    CheckModel {
        model: String,
        formula: String,
        /// World to evaluate at instead of the model's point.
        #[arg(long)]
        world: Option<String>,
    },
    /// Largest bisimulation between two JSON models.
    Bisim {
        left: String,
        right: String,
        /// Signature; defaults to the letters of both models.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        sig: Option<Vec<String>>,
    },
    /// Search for a G3K proof of `=> phi` or `phi => psi`.
    Prove { phi: String, psi: Option<String> },
    /// Benchmarks.
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Subcommand, Debug)]
enum BenchCommand {
    /// Interpolant sizes on the lower-bound family.
    LowerBound {
        #[arg(long, default_value_t = bench::DEFAULT_N_MAX)]
        n: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        /// Worker threads for the rows.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

struct Outcome {
    out: String,
    code: u8,
}

impl Outcome {
    fn new(out: String, positive: bool) -> Outcome {
        Outcome {
            out,
            code: if positive { 0 } else { 1 },
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Negative(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Resource(_) => Failure::Guard(e.to_string()),
            Error::Rejected(_) => Failure::Negative(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Run = Result<Outcome, Failure>;

fn read_arg(text: &str) -> Result<String, Failure> {
    match text.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}"))),
        None => Ok(text.to_string()),
    }
}

fn formula(text: &str) -> Result<Formula, Failure> {
    Ok(parse(read_arg(text)?.trim())?)
}

fn model(text: &str) -> Result<(KripkeModel, Option<usize>), Failure> {
    Ok(KripkeModel::from_json(&read_arg(text)?)?)
}

fn signature(letters: &[String]) -> SignatureSet {
    letters.iter().filter(|l| !l.is_empty()).map(String::as_str).collect()
}

impl Global {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format
        }
    }

    fn json(&self) -> bool {
        self.format() == Format::Json
    }

    fn config(&self) -> QuasiConfig {
        let mut c = QuasiConfig::default();
        if let Some(seed) = self.seed {
            c.order = Order::Random(seed);
        }
        if let Some(m) = self.max_types {
            c.max_types = m;
        }
        c
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn show_formula(g: &Global, key: &str, f: Formula) -> Outcome {
    let out = if g.json() {
        pretty(&json!({ key: f.to_string() }))
    } else {
        format!("{f}\n")
    };
    Outcome::new(out, true)
}

fn run(cli: &Cli) -> Run {
    let g = &cli.global;
    match &cli.command {
        Command::Parse { formula: text } => {
            let f = formula(text)?;
            let info = json!({
                "formula": f.to_string(),
                "size_string": size_string(f),
                "size_dag": size_dag(f),
                "modal_depth": modal_depth(f),
                "signature": sig(f),
            });
            let out = if g.json() {
                pretty(&info)
            } else {
                format!(
                    "{f}\nsize_string {}  size_dag {}  modal_depth {}\n",
                    size_string(f),
                    size_dag(f),
                    modal_depth(f)
                )
            };
            Ok(Outcome::new(out, true))
        }
        Command::Nnf { formula: text } => Ok(show_formula(g, "nnf", nnf(formula(text)?)?)),
        Command::NablaNf { formula: text } => Ok(show_formula(g, "nabla_nf", to_nabla_nf(formula(text)?)?)),
        Command::Sat { formula: text } => {
            let f = formula(text)?;
            let r = quasimodel::satisfiable_with(f, &g.config())?;
            let mut v = json!({ "satisfiable": r.satisfiable });
            if let Some(w) = &r.witness {
                v["witness"] = serde_json::to_value(w).expect("model");
            }
            if g.explain {
                v["trace"] = r.trace.to_json();
            }
            let out = if g.json() {
                pretty(&v)
            } else {
                let mut s = String::from(if r.satisfiable { "SAT\n" } else { "UNSAT\n" });
                if let Some(w) = &r.witness {
                    s += &format!("witness {}\n", w.to_json());
                }
                if g.explain {
                    s += &pretty(&r.trace.to_json());
                }
                s
            };
            Ok(Outcome::new(out, r.satisfiable))
        }
        Command::Valid { phi, psi } => {
            let (phi, psi) = match psi {
                Some(psi) => (formula(phi)?, formula(psi)?),
                None => (Formula::top(), formula(phi)?),
            };
            let trace = quasimodel::eliminate_with(phi, psi, &g.config())?;
            let valid = !trace.root_survives();
            let counter = if valid {
                None
            } else {
                quasimodel::satisfiable_with(Formula::and(phi, Formula::not(psi)), &g.config())?.witness
            };
            let mut v = json!({ "valid": valid });
            if let Some(m) = &counter {
                v["countermodel"] = serde_json::to_value(m).expect("model");
            }
            if g.explain {
                v["trace"] = trace.to_json();
            }
            let out = if g.json() {
                pretty(&v)
            } else {
                let mut s = String::from(if valid { "VALID\n" } else { "INVALID\n" });
                if let Some(m) = &counter {
                    s += &format!("countermodel {}\n", m.to_json());
                }
                if g.explain {
                    s += &pretty(&trace.to_json());
                }
                s
            };
            Ok(Outcome::new(out, valid))
        }
        Command::Interpolate {
            phi,
            psi,
            method,
            report,
        } => interpolate(g, formula(phi)?, formula(psi)?, &method.methods(), *report),
        Command::Uniform { formula: text, keep } => Ok(show_formula(
            g,
            "uniform",
            uniform_interpolant(formula(text)?, &signature(keep))?,
        )),
        Command::CheckModel {
            model: m,
            formula: text,
            world,
        } => {
            let (m, point) = model(m)?;
            let w = match world {
                Some(id) => m
                    .world(id)
                    .ok_or_else(|| Failure::Usage(format!("unknown world `{id}`")))?,
                None => point
                    .or((!m.is_empty()).then_some(0))
                    .ok_or_else(|| Failure::Usage("empty model".into()))?,
            };
            let holds = eval(&m, w, formula(text)?)?;
            let out = if g.json() {
                pretty(&json!({ "world": m.id(w), "holds": holds }))
            } else {
                format!("{}\n", if holds { "TRUE" } else { "FALSE" })
            };
            Ok(Outcome::new(out, holds))
        }
        Command::Bisim {
            left,
            right,
            sig: letters,
        } => {
            let ((m, mp), (n, np)) = (model(left)?, model(right)?);
            let sigma = match letters {
                Some(ls) => signature(ls),
                None => m.signature().union(&n.signature()),
            };
            let z = largest_bisimulation(&m, &n, &sigma);
            let linked = match (mp, np) {
                (Some(a), Some(b)) => Some(z.contains(m.id(a), n.id(b))),
                _ => None,
            };
            let out = if g.json() {
                pretty(&json!({ "relation": z, "points_bisimilar": linked }))
            } else {
                let mut s: String = z.pairs.iter().map(|(a, b)| format!("{a} ~ {b}\n")).collect();
                if let Some(l) = linked {
                    s += if l {
                        "points bisimilar\n"
                    } else {
                        "points not bisimilar\n"
                    };
                }
                s
            };
            Ok(Outcome::new(out, linked.unwrap_or(!z.pairs.is_empty())))
        }
        Command::Prove { phi, psi } => {
            let s = match psi {
                Some(psi) => Sequent::new([formula(phi)?], [formula(psi)?]),
                None => Sequent::new([], [formula(phi)?]),
            };
            let proof = sequent::prove(&s);
            let out = if g.json() {
                let mut v = json!({ "provable": proof.is_some() });
                if let (Some(p), true) = (&proof, g.explain) {
                    v["proof"] = Value::String(p.render());
                }
                pretty(&v)
            } else {
                let mut out = String::from(if proof.is_some() { "PROVABLE\n" } else { "UNPROVABLE\n" });
                if let (Some(p), true) = (&proof, g.explain) {
                    out += &p.render();
                }
                out
            };
            Ok(Outcome::new(out, proof.is_some()))
        }
        Command::Bench(BenchCommand::LowerBound { n, method, jobs }) => {
            let timeout = g.timeout_ms.map(Duration::from_millis);
            let rows = bench_rows(*n, &method.methods(), *jobs, timeout)?;
            let all = rows.iter().all(|r| r.verified);
            let out = match g.format() {
                Format::Json => serde_json::to_string_pretty(&rows).expect("json") + "\n",
                Format::Csv => csv_rows(&rows),
                Format::Text => {
                    let mut s = format!(
                        "{:>3} {:<11} {:>12} {:>9} {:>10} {}\n",
                        "n", "method", "size_string", "size_dag", "millis", "verified"
                    );
                    for r in &rows {
                        s += &format!(
                            "{:>3} {:<11} {:>12} {:>9} {:>10.2} {}\n",
                            r.n,
                            r.method.name(),
                            r.size_string,
                            r.size_dag,
                            r.millis,
                            r.error
                                .as_deref()
                                .map_or(r.verified.to_string(), |e| format!("false ({e})"))
                        );
                    }
                    s
                }
            };
            Ok(Outcome::new(out, all))
        }
    }
}

fn interpolate(g: &Global, phi: Formula, psi: Formula, methods: &[Method], report: bool) -> Run {
    let mut results = Vec::new();
    let mut all_ok = true;
    let mut text = String::new();
    for &m in methods {
        let mut explain = None;
        let theta = match m {
            Method::Quasimodel => {
                let (f, trace) = quasimodel::lyndon_interpolant_with(phi, psi, &g.config())?;
                explain = Some(trace.to_json());
                f
            }
            Method::Sequent => {
                let theta = sequent::craig_via_sequent(phi, psi)?;
                let s = Sequent::new([phi], [psi]);
                explain = sequent::prove(&s).map(|p| Value::String(p.render()));
                theta
            }
            _ => bench::interpolate(m, phi, psi)?,
        };
        let r: InterpolantReport = match m {
            Method::Quasimodel | Method::Sequent => check_lyndon(theta, phi, psi),
            _ => check_craig(theta, phi, psi),
        };
        let ok = r.all_ok();
        all_ok &= ok;
        let mut v = json!({ "method": m.name(), "interpolant": theta.to_string(), "verified": ok });
        if report {
            v["report"] = serde_json::to_value(&r).expect("report");
        }
        if g.explain {
            if let Some(e) = &explain {
                v["explain"] = e.clone();
            }
        }
        text += &format!("{}: {theta}\n", m.name());
        text += &format!(
            "  phi->theta {}  theta->psi {}  signature {}{}  size_string {}  size_dag {}\n",
            r.left_valid,
            r.right_valid,
            r.signature_ok,
            r.lyndon_ok.map_or(String::new(), |l| format!("  lyndon {l}")),
            r.size_string,
            r.size_dag
        );
        if report {
            text += &pretty(&v["report"]);
        }
        if g.explain {
            match &explain {
                Some(Value::String(s)) => text += s,
                Some(e) => text += &pretty(e),
                None => {}
            }
        }
        results.push(v);
    }
    let out = if g.json() { pretty(&Value::Array(results)) } else { text };
    Ok(Outcome::new(out, all_ok))
}

fn bench_rows(n: usize, methods: &[Method], jobs: usize, timeout: Option<Duration>) -> Result<Vec<BenchRow>, Failure> {
    let mut tasks = Vec::new();
    for k in 1..=n {
        let family = bench::lower_bound_family(k)?;
        tasks.extend(methods.iter().map(|&m| (k, m, family)));
    }
    let jobs = jobs.max(1);
    let mut rows = Vec::with_capacity(tasks.len());
    for chunk in tasks.chunks(jobs) {
        let done: Vec<BenchRow> = thread::scope(|s| {
            let handles: Vec<_> = chunk
                .iter()
                .map(|&(k, m, (phi, psi, chi))| s.spawn(move || bench::bench_row(k, m, phi, psi, chi, timeout)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("bench row")).collect()
        });
        rows.extend(done);
    }
    Ok(rows)
}

fn csv_rows(rows: &[BenchRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "method", "size_string", "size_dag", "millis", "verified"])
        .expect("csv");
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.method.name().to_string(),
            r.size_string.to_string(),
            r.size_dag.to_string(),
            format!("{:.3}", r.millis),
            r.verified.to_string(),
        ])
        .expect("csv");
    }
    String::from_utf8(w.into_inner().expect("csv")).expect("utf8")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let timeout = cli.global.timeout_ms.map(Duration::from_millis);
    let outcome = match (timeout, &cli.command) {
        // bench applies the timeout per row
        (Some(t), c) if !matches!(c, Command::Bench(_)) => {
            let (tx, rx) = mpsc::channel();
            thread::spawn(move || {
                let _ = tx.send(run(&cli));
            });
            rx.recv_timeout(t)
                .unwrap_or_else(|_| Err(Failure::Guard(format!("timed out after {} ms", t.as_millis()))))
        }
        _ => run(&cli),
    };
    match outcome {
        Ok(o) => {
            print!("{}", o.out);
            ExitCode::from(o.code)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Negative(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Guard(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
