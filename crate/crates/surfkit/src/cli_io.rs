//! Command-line front end: argument parsing, data loading and report rendering.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::cayley_audit::{AuditError, Auditor};
use crate::complex_engine::{builtin_spec, connect_to_image, replay, ComplexError, ComplexName, PathCertificate};
use crate::curve_calculus::{BaseCurveTable, Curve, CurveCalculus, CurveError};
use crate::mapping_class::{
    builtin_presentation, load_presentation, verify_inner, default_bound, MappingClassError, MappingClassWord, Presentation, TwistGroup, Verdict,
};
use crate::pants_trivalent::{verify_quotient_connectivity, GraphError};

pub const DATA_DIR_ENV: &str = "SURFKIT_DATA_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    /// Input was understood but did not verify.
    #[error("{0}")]
    Verification(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    MappingClass(#[from] MappingClassError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Audit(#[from] AuditError),
}

impl CliError {
    /// 2 for inputs that fail validation or verification, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "surfkit", version, about = "Twist words, curve complexes and path certificates")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Directory holding presentation and base-curve files; overrides the environment variable.
    #[arg(long, global = true)]
    pub data_dir: Option<PathBuf>,
    /// Write the main output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Join the basepoint to its image under a word and certify every edge.
    Connect {
        /// C, C_nosep, C_sep, C_half, CutSystems, Pants or C_gamma (case, `_` and `-` ignored).
        #[arg(long)]
        complex: ComplexName,
        #[arg(long)]
        genus: u32,
        /// Space-separated generator tokens of the complex, e.g. "B2 A1^-1".
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Re-verify a certificate file.
    Replay {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Check that every relation of the presentation acts as an inner automorphism.
    VerifyPresentation {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(4..))]
        genus: u32,
        #[arg(long)]
        presentation: Option<PathBuf>,
        /// Conjugator search bound; defaults to a bound derived from each relation.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Connectivity of the shift graph on trivalent graphs with k vertices.
    PantsQuotient {
        #[arg(long)]
        k: usize,
    },
    /// Certify contractibility of every relation loop.
    Audit {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(4..))]
        genus: u32,
        #[arg(long)]
        presentation: Option<PathBuf>,
    },
    /// Geometric intersection number of two curves, each given as `name` or `name@word`.
    Intersect {
        c1: String,
        c2: String,
        #[arg(long)]
        genus: u32,
    },
    /// Export the base-curve catalogue.
    Catalogue {
        #[arg(long)]
        genus: u32,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn data_dir(cli: &Cli) -> Option<PathBuf> {
    cli.data_dir.clone().or_else(|| std::env::var_os(DATA_DIR_ENV).map(PathBuf::from))
}

fn presentation(cli: &Cli, genus: u32, explicit: &Option<PathBuf>) -> Result<Presentation, CliError> {
    let file = explicit.clone().or_else(|| data_dir(cli).map(|d| d.join(format!("presentation_g{genus}.json"))).filter(|p| p.exists()));
    match file {
        Some(p) => Ok(load_presentation(genus, &read(&p)?)?),
        None if genus == 4 => Ok(builtin_presentation()),
        None => Err(CliError::Verification(format!("no presentation file for genus {genus}"))),
    }
}

fn calculus(cli: &Cli, genus: u32) -> Result<CurveCalculus, CliError> {
    let file = data_dir(cli).map(|d| d.join(format!("base_curves_g{genus}.json"))).filter(|p| p.exists());
    Ok(match file {
        Some(p) => {
            let table = BaseCurveTable::from_json(&read(&p)?)?;
            if table.genus != genus {
                return Err(CliError::Verification(format!("{} is for genus {}", p.display(), table.genus)));
            }
            CurveCalculus::with_table(table)?
        }
        None => CurveCalculus::new(genus)?,
    })
}

fn parse_curve(calc: &CurveCalculus, s: &str) -> Result<Curve, CliError> {
    let (name, word) = s.split_once('@').unwrap_or((s, ""));
    let prefix = MappingClassWord::parse(calc.genus(), word)?;
    Ok(calc.curve(name.trim(), &prefix)?)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn no_dot(command: &str) -> CliError {
    CliError::Verification(format!("{command} has no DOT rendering; use json or text"))
}

fn render_certificate(cert: &PathCertificate, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = cert.to_json();
            s.push('\n');
            s
        }
        Format::Dot => cert.to_dot(),
        Format::Text => {
            let mut s = format!("{} genus {} word [{}]\n", cert.spec, cert.genus, cert.word.join(" "));
            for (k, v) in cert.vertices.iter().enumerate() {
                s.push_str(&format!("  v{k}: {}\n", serde_json::to_string(v).expect("vertex serializes")));
            }
            s.push_str(&format!("{} vertices, {} edges verified\n", cert.vertices.len(), cert.edges.len()));
            s
        }
    }
}

#[derive(Serialize)]
struct RelationVerdict {
    index: usize,
    family: String,
    #[serde(flatten)]
    verdict: Verdict,
}

/// Runs one command and returns the text to emit.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Connect { complex, genus, word } => {
            let spec = builtin_spec(*complex, *genus)?;
            let steps = spec.parse_word(word)?;
            let cert = connect_to_image(&spec, &steps)?;
            Ok(render_certificate(&cert, cli.format))
        }
        Command::Replay { cert } => {
            let cert: PathCertificate =
                serde_json::from_str(&read(cert)?).map_err(|e| CliError::Verification(format!("certificate schema: {e}")))?;
            let spec = builtin_spec(cert.spec, cert.genus)?;
            replay(&spec, &cert)?;
            Ok(match cli.format {
                Format::Text => format!("replay ok: {} vertices, {} edges\n", cert.vertices.len(), cert.edges.len()),
                _ => render_certificate(&cert, cli.format),
            })
        }
        Command::VerifyPresentation { genus, presentation: file, bound } => {
            let p = presentation(cli, *genus, file)?;
            let group = TwistGroup::new(*genus)?;
            let verdicts: Vec<RelationVerdict> = p
                .relations
                .iter()
                .enumerate()
                .map(|(index, r)| {
                    let m = p.word(r);
                    let b = bound.unwrap_or_else(|| default_bound(&group, &m));
                    RelationVerdict { index, family: r.family.to_string(), verdict: verify_inner(&group, &m, b) }
                })
                .collect();
            let bad: Vec<String> = verdicts
                .iter()
                .filter(|v| !v.verdict.is_accept())
                .map(|v| format!("relation {} ({}): {}", v.index, v.family, serde_json::to_string(&v.verdict).expect("verdict serializes")))
                .collect();
            let out = match cli.format {
                Format::Json => json(&verdicts),
                Format::Dot => return Err(no_dot("verify-presentation")),
                Format::Text => format!("{} relations, {} accepted\n", verdicts.len(), verdicts.len() - bad.len()),
            };
            if bad.is_empty() {
                Ok(out)
            } else {
                Err(CliError::Verification(format!("{out}{}", bad.join("\n"))))
            }
        }
        Command::PantsQuotient { k } => {
            let report = verify_quotient_connectivity(*k)?;
            let out = match cli.format {
                Format::Json => json(&report),
                Format::Dot => return Err(no_dot("pants-quotient")),
                Format::Text => format!(
                    "k = {}: {} classes, {}, diameter {}\n",
                    report.k,
                    report.classes,
                    if report.connected { "connected" } else { "disconnected" },
                    report.diameter
                ),
            };
            if report.connected {
                Ok(out)
            } else {
                Err(CliError::Verification(out))
            }
        }
        Command::Audit { genus, presentation: file } => {
            let p = presentation(cli, *genus, file)?;
            let report = Auditor::new(*genus)?.audit_presentation(&p)?;
            let out = match cli.format {
                Format::Json => json(&report),
                Format::Dot => return Err(no_dot("audit")),
                Format::Text => {
                    let mut s = String::new();
                    for e in &report.entries {
                        s.push_str(&format!("{:>3} {:<16} {:<15} {} vertices\n", e.index, e.family.to_string(), e.certificate.kind(), e.loop_vertices.len()));
                    }
                    s.push_str(&format!("{}\n", report.verdict));
                    s
                }
            };
            if report.passed() {
                Ok(out)
            } else {
                Err(CliError::Verification(out))
            }
        }
        Command::Intersect { c1, c2, genus } => {
            let calc = calculus(cli, *genus)?;
            let (x, y) = (parse_curve(&calc, c1)?, parse_curve(&calc, c2)?);
            let i = calc.intersection(&x, &y);
            let alg = calc.algebraic_intersection(&x, &y);
            Ok(match cli.format {
                Format::Json => json(&serde_json::json!({ "c1": c1, "c2": c2, "genus": genus, "intersection": i, "algebraic": alg })),
                Format::Dot => return Err(no_dot("intersect")),
                Format::Text => format!("{i}\n"),
            })
        }
        Command::Catalogue { genus } => {
            let calc = calculus(cli, *genus)?;
            match cli.format {
                Format::Dot => Err(no_dot("catalogue")),
                Format::Json => Ok(format!("{}\n", calc.table().to_json())),
                Format::Text => Ok(calc.table().curves.iter().map(|(n, c)| format!("{n}: {}\n", c.word)).collect()),
            }
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(out) => match &cli.out {
            Some(path) => match fs::write(path, out) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("cannot write {}: {e}", path.display());
                    1
                }
            },
            None => {
                print!("{out}");
                0
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
