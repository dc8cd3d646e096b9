use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use regulus_core::audit::{run_audit, run_theorems, AuditReport, Profile};
use regulus_core::incidence::{classify_bundles, BundleKind};
use regulus_core::io::{load_structure, write_corpus, FormatError, ReportFile, StructureFile};
use regulus_core::pg3::structure_for_order;
use regulus_core::reguli::{conjugate, enumerate_reguli, regulus};
use regulus_core::report::{Status, DEFAULT_FAST_SEED};
use regulus_core::{IncidenceStructure, LineId};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "regulus",
    version,
    about = "Build, audit and query line-incidence structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the line-incidence structure of PG(3,q).
    Build {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check every axiom and theorem; exit 1 if any fails.
    Audit {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = ProfileArg::Full)]
        profile: ProfileArg,
        /// Sampling seed for the fast profile.
        #[arg(long)]
        seed: Option<u64>,
        /// Report file; printed to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the regulus of three skew lines and its conjugate.
    Regulus {
        path: PathBuf,
        /// Three comma-separated line labels.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        lines: Vec<String>,
    },
    /// Check the theorem items only.
    Theorems { path: PathBuf },
    /// Write a seeded corpus of single-pair flips plus a manifest.
    Mutate {
        path: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Print the derived points, planes or reguli as JSON label lists.
    Export {
        path: PathBuf,
        #[arg(long, value_enum)]
        what: ExportArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Full,
    Fast,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportArg {
    Points,
    Planes,
    Reguli,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Failure {
        Failure {
            code: if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_IO
            },
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("REGULUS_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| {
            Failure::input(format!(
                "REGULUS_THREADS must be a positive integer, got {value:?}"
            ))
        })?;
    // fails only if a pool already exists, which cannot happen this early
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("json values serialize")
    );
}

fn report_exit(report: &AuditReport) -> u8 {
    match report.overall() {
        Status::Pass => 0,
        _ => EXIT_FAIL,
    }
}

fn print_summary(s: &IncidenceStructure, report: &AuditReport) {
    for item in &report.items {
        let witness = item
            .witness
            .as_ref()
            .map(|w| format!("  [{}: {}]", w.role, s.labels_of(&w.lines).join(" ")))
            .unwrap_or_default();
        println!(
            "{:<28} {:<7} {:>12}{}",
            item.name,
            item.status.as_str(),
            item.cases_checked,
            witness
        );
    }
    println!("overall {}", report.overall().as_str());
}

fn cmd_build(q: u32, out: &Path) -> Outcome {
    let (model, s) = structure_for_order(q).map_err(|e| Failure::input(e.to_string()))?;
    StructureFile::from_structure(&s, Some(q)).save(out)?;
    println!(
        "PG(3,{q}): {} points, {} lines, {} planes",
        model.points.len(),
        model.lines.len(),
        model.planes.len()
    );
    Ok(0)
}

fn cmd_audit(path: &Path, profile: ProfileArg, seed: Option<u64>, out: Option<&Path>) -> Outcome {
    let profile = match (profile, seed) {
        (ProfileArg::Full, None) => Profile::Full,
        (ProfileArg::Full, Some(_)) => {
            return Err(Failure::input("--seed only applies to --profile fast"))
        }
        (ProfileArg::Fast, seed) => Profile::Fast {
            seed: seed.unwrap_or(DEFAULT_FAST_SEED),
        },
    };
    let (s, _) = load_structure(path)?;
    let report = run_audit(&s, profile);
    let file = ReportFile::from_report(&s, &report);
    match out {
        Some(out) => {
            file.save(out)?;
            print_summary(&s, &report);
        }
        None => print!("{}", file.to_json()),
    }
    Ok(report_exit(&report))
}

fn resolve(s: &IncidenceStructure, label: &str) -> Result<LineId, Failure> {
    s.lookup(label)
        .ok_or_else(|| Failure::input(format!("unknown line label {label:?}")))
}

fn cmd_regulus(path: &Path, labels: &[String]) -> Outcome {
    let (s, _) = load_structure(path)?;
    let [u, v, w] = labels else {
        return Err(Failure::input(format!(
            "--lines needs 3 labels, got {}",
            labels.len()
        )));
    };
    let ids = [resolve(&s, u)?, resolve(&s, v)?, resolve(&s, w)?];
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            if s.incident(a, b) {
                return Err(Failure::input(format!(
                    "lines {} and {} are not skew",
                    s.label(a),
                    s.label(b)
                )));
            }
        }
    }
    let r = match regulus(&s, ids[0], ids[1], ids[2]) {
        Ok(r) => r,
        Err(e) => {
            println!("regulus: undefined ({e})");
            return Ok(EXIT_FAIL);
        }
    };
    println!("regulus: {}", s.labels_of(&r.lines.to_vec()).join(" "));
    match conjugate(&s, &r) {
        Ok(c) => {
            println!("conjugate: {}", s.labels_of(&c.lines.to_vec()).join(" "));
            Ok(0)
        }
        Err(e) => {
            println!("conjugate: undefined ({e})");
            Ok(EXIT_FAIL)
        }
    }
}

fn cmd_theorems(path: &Path) -> Outcome {
    let (s, _) = load_structure(path)?;
    let report = run_theorems(&s, Profile::Full);
    print_summary(&s, &report);
    Ok(report_exit(&report))
}

fn cmd_mutate(path: &Path, seed: u64, count: usize, out_dir: &Path) -> Outcome {
    let (s, _) = load_structure(path)?;
    let manifest = write_corpus(&s, seed, count, out_dir)?;
    println!(
        "wrote {} mutants to {}",
        manifest.mutants.len(),
        out_dir.display()
    );
    Ok(0)
}

fn cmd_export(path: &Path, what: ExportArg) -> Outcome {
    let (s, _) = load_structure(path)?;
    let label_sets: Vec<Vec<String>> = match what {
        ExportArg::Points | ExportArg::Planes => {
            let cls = classify_bundles(&s).map_err(|e| Failure {
                code: EXIT_FAIL,
                message: format!("points and planes are undefined: {e}"),
            })?;
            let kind = match what {
                ExportArg::Points => BundleKind::Point,
                _ => BundleKind::Plane,
            };
            cls.bundles(kind)
                .iter()
                .map(|b| s.labels_of(&b.lines.to_vec()))
                .collect()
        }
        ExportArg::Reguli => enumerate_reguli(&s)
            .iter()
            .map(|r| s.labels_of(&r.lines.to_vec()))
            .collect(),
    };
    print_json(&serde_json::json!(label_sets));
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    configure_threads()?;
    match cli.command {
        Command::Build { q, out } => cmd_build(q, &out),
        Command::Audit {
            path,
            profile,
            seed,
            out,
        } => cmd_audit(&path, profile, seed, out.as_deref()),
        Command::Regulus { path, lines } => cmd_regulus(&path, &lines),
        Command::Theorems { path } => cmd_theorems(&path),
        Command::Mutate {
            path,
            seed,
            count,
            out_dir,
        } => cmd_mutate(&path, seed, count, &out_dir),
        Command::Export { path, what } => cmd_export(&path, what),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
