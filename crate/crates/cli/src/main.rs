//! `adhp` command-line tool.
//!
//! Exit status: 0 when the command succeeded and every verdict held, 1 when
//! a verdict failed (disagreement, proof gap, rejected path), 2 for bad
//! input or I/O errors.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adhp::campaign::{run_campaign, CampaignConfig, Method};
use adhp::oracle::{EnumerationCap, SearchBudget};
use adhp::{
    emit_instance, emit_path, find_adhp, find_adhp_exhaustive, parse_instance, parse_path, random_hypertournament,
    ExceptionalKind, Hypertournament, Outcome, SearchOutcome,
};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "adhp", version, about = "Antidirected hamiltonian paths in k-hypertournaments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum MethodArg {
    Construct,
    Oracle,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Construct => Method::Construct,
            MethodArg::Oracle => Method::Oracle,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded random instance.
    Gen {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Find an antidirected hamiltonian path of an instance file.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "construct")]
        method: MethodArg,
        /// Write the constructor's branch trace to stderr as NDJSON.
        #[arg(long)]
        trace: bool,
    },
    /// Check a path file against an instance file.
    Check { file: PathBuf, path_file: PathBuf },
    /// Run every labeled instance of a signature.
    Enumerate {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        /// Largest enumeration allowed; defaults to ADHP_ENUM_CAP or 2^21.
        #[arg(long)]
        cap: Option<u128>,
    },
    /// Run a seeded sample of a signature.
    Sample {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: u64,
        #[arg(long, value_enum, default_value = "construct")]
        method: MethodArg,
    },
    /// Print one of the four exceptional structures.
    Canon { kind: ExceptionalKind },
}

/// A failed command: exit status and message.
struct Failure(u8, String);

impl Failure {
    fn input(msg: impl ToString) -> Self {
        Failure(2, msg.to_string())
    }

    fn verdict(msg: impl ToString) -> Self {
        Failure(1, msg.to_string())
    }
}

fn read_instance(path: &Path) -> Result<Hypertournament, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn solve(file: &Path, method: MethodArg, trace: bool, out: &mut impl Write) -> Result<(), Failure> {
    let h = read_instance(file)?;
    let method = Method::from(method);
    let mut oracle_found = None;
    if method != Method::Construct {
        let r = find_adhp_exhaustive(&h, SearchBudget::default_for(h.n()));
        oracle_found = Some(match r.outcome {
            SearchOutcome::Found(p) => {
                if method == Method::Oracle {
                    write!(out, "{}", emit_path(&p)).map_err(Failure::input)?;
                    return Ok(());
                }
                true
            }
            SearchOutcome::NoPathExists => {
                if method == Method::Oracle {
                    writeln!(out, "# no antidirected hamiltonian path").map_err(Failure::input)?;
                    return Ok(());
                }
                false
            }
            SearchOutcome::BudgetExhausted => return Err(Failure::verdict("oracle ran out of budget")),
        });
    }
    let outcome = find_adhp(&h).map_err(Failure::input)?;
    let constructed = matches!(outcome, Outcome::Path { .. });
    match outcome {
        Outcome::Path { path, trace: steps } => {
            write!(out, "{}", emit_path(&path)).map_err(Failure::input)?;
            if trace {
                let stderr = io::stderr();
                let mut err = stderr.lock();
                for step in &steps.steps {
                    serde_json::to_writer(&mut err, step).map_err(Failure::input)?;
                    writeln!(err).map_err(Failure::input)?;
                }
            }
        }
        Outcome::Exceptional(w) => {
            let iso: Vec<String> = w.iso.iter().map(|v| v.to_string()).collect();
            writeln!(out, "# no antidirected hamiltonian path: isomorphic to {} via {}", w.kind, iso.join(" "))
                .map_err(Failure::input)?;
        }
        Outcome::ProofGap(d) => {
            return Err(Failure::verdict(format!("proof gap at {}: {}", d.branch, d.precondition)));
        }
    }
    match oracle_found {
        Some(found) if found != constructed => Err(Failure::verdict("constructor and oracle disagree")),
        _ => Ok(()),
    }
}

fn check(file: &Path, path_file: &Path, out: &mut impl Write) -> Result<(), Failure> {
    let h = read_instance(file)?;
    let text = fs::read_to_string(path_file).map_err(|e| Failure::input(format!("{}: {e}", path_file.display())))?;
    let p = parse_path(&h, &text).map_err(|e| Failure::verdict(format!("{}: {e}", path_file.display())))?;
    if !p.is_hamiltonian(&h) {
        return Err(Failure::verdict(format!("path covers {} of {} vertices", p.len(), h.n())));
    }
    writeln!(out, "ok: {p}").map_err(Failure::input)
}

fn campaign(cfg: CampaignConfig, out: &mut impl Write) -> Result<(), Failure> {
    let summary = run_campaign(&cfg, out).map_err(Failure::input)?;
    if summary.ok() {
        Ok(())
    } else {
        Err(Failure::verdict(format!(
            "{} disagreements and {} proof gaps in {} instances",
            summary.disagreements, summary.gaps, summary.total
        )))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Gen { n, k, seed, output } => {
            let h = random_hypertournament(n, k, seed).map_err(Failure::input)?;
            match output {
                Some(path) => {
                    fs::write(&path, emit_instance(&h)).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
                }
                None => write!(out, "{}", emit_instance(&h)).map_err(Failure::input),
            }
        }
        Command::Solve { file, method, trace } => solve(&file, method, trace, &mut out),
        Command::Check { file, path_file } => check(&file, &path_file, &mut out),
        Command::Enumerate { n, k, method, cap } => {
            let mut cfg = CampaignConfig::enumerate(n, k, method.into());
            if let Some(c) = cap {
                cfg.cap = EnumerationCap::Limit(c);
            }
            campaign(cfg, &mut out)
        }
        Command::Sample { n, k, seed, count, method } => {
            campaign(CampaignConfig::sample(n, k, seed, count, method.into()), &mut out)
        }
        Command::Canon { kind } => write!(out, "{}", emit_instance(&kind.canonical())).map_err(Failure::input),
    };
    out.flush().map_err(Failure::input)?;
    result
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("adhp: {msg}");
            ExitCode::from(code)
        }
    }
}
