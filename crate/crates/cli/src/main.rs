use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use jordan_core::degeneration::{verify_edge, verify_polynomial_deformation};
use jordan_core::format::{parse_algebra, parse_deformation, parse_family, write_algebra};
use jordan_core::graph::{j3_graph, j4_graph, rigidity_screen};
use jordan_core::invariants::format_seq;
use jordan_core::report::verify_paper;
use jordan_core::{classify, classify_real, profile, squaring_map, ClassId, Error, StructureTensor};

/// Invariants, classification and contractions of nilpotent Jordan algebras.
#[derive(Parser)]
#[command(name = "jordan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the invariant profile of an algebra.
    Invariants { file: PathBuf },
    /// Print the isomorphism class of an algebra.
    Classify {
        file: PathBuf,
        /// Classify over the reals (dimension 3, rational laws).
        #[arg(long)]
        real: bool,
    },
    /// Print the limit of an algebra along a family.
    Limit {
        file: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
    /// Check that a family contracts an algebra onto a class.
    VerifyEdge {
        file: PathBuf,
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        target: String,
    },
    /// Check a polynomial deformation of an algebra.
    Deform {
        file: PathBuf,
        #[arg(long)]
        direction: PathBuf,
    },
    /// Build the degeneration graph of J3 or J4.
    Graph {
        #[arg(value_enum)]
        variety: Variety,
        /// Write the transitive reduction as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Symmetrize an associative law.
    Squaring { file: PathBuf },
    /// Run every reproduction check.
    VerifyPaper {
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Variety {
    #[value(name = "J3")]
    J3,
    #[value(name = "J4")]
    J4,
}

enum Failure {
    Check(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(p) => Failure::Usage(p.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<StructureTensor, Failure> {
    parse_algebra(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Invariants { file } => {
            let phi = load_algebra(&file)?;
            println!("{}", profile(&phi)?);
        }
        Command::Classify { file, real } => {
            let phi = load_algebra(&file)?;
            let class = if real { classify_real(&phi)? } else { classify(&phi)? };
            println!("{class}");
        }
        Command::Limit { file, family } => {
            let phi = load_algebra(&file)?;
            let f = parse_family(&read(&family)?, phi.dim())
                .map_err(|e| Failure::Usage(format!("{}: {e}", family.display())))?;
            let lim = jordan_core::degeneration::limit_of_family(&phi, &f)?;
            if let Ok(c) = classify(&lim) {
                println!("# class {c}");
            }
            print!("{}", write_algebra(&lim));
        }
        Command::VerifyEdge {
            file,
            family,
            target,
        } => {
            let phi = load_algebra(&file)?;
            let target: ClassId = target.parse().map_err(|e| Failure::Usage(format!("--target: {e}")))?;
            let f = parse_family(&read(&family)?, phi.dim())
                .map_err(|e| Failure::Usage(format!("{}: {e}", family.display())))?;
            let edge = verify_edge(&phi, target, &f)?;
            let ineq = &edge.inequalities;
            println!("{} -> {}", edge.source, edge.target);
            println!(
                "char_seq {} orbit {} center {}",
                ineq.char_seq, ineq.orbit, ineq.center
            );
            if !edge.verified {
                return Err(Failure::Check("inequalities fail".into()));
            }
            println!("verified");
        }
        Command::Deform { file, direction } => {
            let phi = load_algebra(&file)?;
            let d = parse_deformation(&read(&direction)?, phi.dim())
                .map_err(|e| Failure::Usage(format!("{}: {e}", direction.display())))?;
            let r = verify_polynomial_deformation(&phi, &d)?;
            println!("base {}", r.base_class);
            println!("class at t=1 {}", r.class_at_one);
            for (t, c) in &r.sampled {
                println!("t={t} {c}");
            }
            println!("uniform {}", r.uniform);
            let ineq = &r.inequalities;
            println!(
                "char_seq {} orbit {} center {}",
                ineq.char_seq, ineq.orbit, ineq.center
            );
            println!("deformation {}", r.is_deformation());
        }
        Command::Graph { variety, dot } => {
            let (g, name) = match variety {
                Variety::J3 => (j3_graph(), "J3"),
                Variety::J4 => (j4_graph(), "J4"),
            };
            println!("edges");
            for e in g.edges() {
                println!("  {} -> {}  {:?}", e.source, e.target, e.evidence);
            }
            println!("transitive reduction");
            for (a, b) in g.transitive_reduction() {
                println!("  {a} -> {b}");
            }
            println!("closure");
            for c in g.nodes() {
                let reach: Vec<String> = g.closure_of(c).iter().map(ToString::to_string).collect();
                println!("  {c}: {}", reach.join(" "));
            }
            let sources: Vec<String> = g.sources().iter().map(ToString::to_string).collect();
            println!("sources {}", sources.join(" "));
            println!("acyclic {}", g.is_acyclic());
            for r in rigidity_screen(&g)? {
                println!(
                    "  {} no_incoming={} maximal_orbit={} unique_max_char_seq={}",
                    r.class_id, r.no_incoming, r.maximal_orbit, r.unique_max_char_seq
                );
            }
            for f in g.failures() {
                println!("not used: {} ({} -> {}): {}", f.name, f.source, f.target, f.reason);
            }
            if let Some(path) = dot {
                write(&path, &g.to_dot(name))?;
            }
        }
        Command::Squaring { file } => {
            let beta = load_algebra(&file)?;
            let phi = squaring_map(&beta)?;
            let class = classify(&phi)?;
            println!("# class {class}");
            print!("{}", write_algebra(&phi));
            if let Ok(p) = profile(&phi) {
                println!("# s={}", format_seq(&p.char_seq));
            }
        }
        Command::VerifyPaper { json } => {
            let report = verify_paper();
            print!("{report}");
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report)
                    .map_err(|e| Failure::Usage(e.to_string()))?;
                write(&path, &(text + "\n"))?;
            }
            if !report.all_passed() {
                return Err(Failure::Check(format!("{} checks failed", report.failed().len())));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
