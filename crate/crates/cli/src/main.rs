use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eigenrecon::recon::{
    default_t_samples, probe_permutation_conjecture, t_samples, verify_gm, verify_theorem_main, GmOptions, ProbeOutcome,
    DEFAULT_PERMUTATION_CAP, DEFAULT_TOL,
};
use eigenrecon::secular::{rank1_update_with, DEFAULT_DEFLATE_TOL};
use eigenrecon::spectrum::cluster_spectrum;
use eigenrecon::{deck, eigh, eigh_with_cluster_tol, parse_matrix, parse_vector, square_table_from_deck, verify_det_identity};
use eigenrecon::{EigenBasis, SpectralDeck, SymmetricMatrix};
use serde_json::{json, Value};

mod text;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: eigenrecon::Error },
    #[error(transparent)]
    Library(#[from] eigenrecon::Error),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "eigenrecon", version, about = "Eigenvector reconstruction from spectral decks and rank-one updates")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues, clusters and eigenvectors.
    Eig {
        a: PathBuf,
        #[arg(long)]
        cluster_tol: Option<f64>,
    },
    /// Spectra of the vertex-deleted submatrices.
    Deck {
        a: PathBuf,
        #[arg(long)]
        cluster_tol: Option<f64>,
    },
    /// Squared eigenvector entries recovered from the deck.
    Squares {
        a: PathBuf,
        #[arg(long)]
        cluster_tol: Option<f64>,
    },
    /// Eigenpairs of A + t·x xᵀ through the secular equation.
    Rank1 {
        a: PathBuf,
        /// Vector file, or `ones` for the all-ones vector.
        #[arg(long)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long)]
        deflate_tol: Option<f64>,
        #[arg(long)]
        cluster_tol: Option<f64>,
    },
    /// Full comparison report for a pair of matrices.
    GmVerify {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        multiset_deck: bool,
        /// `count,lo,hi`
        #[arg(long, allow_hyphen_values = true)]
        t_samples: Option<String>,
    },
    /// Lowest eigenpairs of A + tJ and B + tJ over sampled t.
    Tmain {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        t_samples: Option<String>,
    },
    /// Search for a permutation relating the i-th eigenvectors of A and B.
    ProbeTau {
        a: PathBuf,
        b: PathBuf,
        /// Eigenvalue index, 0-based in descending order.
        #[arg(long)]
        index: usize,
        #[arg(long, default_value_t = DEFAULT_PERMUTATION_CAP)]
        n_cap: usize,
    },
    /// Checks det(A + t·x xᵀ − λI) = det(A − λI)·P_t(λ) at random points.
    DetCheck {
        a: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value_t = 20)]
        probes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

struct Report {
    json: Value,
    text: String,
    pass: bool,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn load_matrix(path: &Path) -> Result<SymmetricMatrix, CliError> {
    parse_matrix(&read(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn load_vector(arg: &str, n: usize) -> Result<Vec<f64>, CliError> {
    if arg == "ones" {
        return Ok(vec![1.0; n]);
    }
    let path = Path::new(arg);
    let x = parse_vector(&read(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    if x.len() != n {
        return Err(eigenrecon::Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        }
        .into());
    }
    Ok(x)
}

fn load_pair(a: &Path, b: &Path) -> Result<(SymmetricMatrix, SymmetricMatrix), CliError> {
    let (a, b) = (load_matrix(a)?, load_matrix(b)?);
    if a.n() != b.n() {
        return Err(eigenrecon::Error::DimensionMismatch {
            expected: a.n(),
            found: b.n(),
        }
        .into());
    }
    Ok((a, b))
}

fn positive(name: &str, v: Option<f64>) -> Result<Option<f64>, CliError> {
    match v {
        Some(x) if !(x > 0.0 && x.is_finite()) => Err(CliError::Invalid(format!("--{name} must be positive, got {x}"))),
        _ => Ok(v),
    }
}

fn parse_t_samples(arg: Option<&str>) -> Result<Vec<f64>, CliError> {
    let Some(arg) = arg else {
        return Ok(default_t_samples());
    };
    let bad = || CliError::Invalid(format!("--t-samples expects count,lo,hi, got {arg:?}"));
    let parts: Vec<&str> = arg.split(',').map(str::trim).collect();
    let [count, lo, hi] = parts[..] else {
        return Err(bad());
    };
    let count: usize = count.parse().map_err(|_| bad())?;
    let lo: f64 = lo.parse().map_err(|_| bad())?;
    let hi: f64 = hi.parse().map_err(|_| bad())?;
    if count == 0 || !(lo.is_finite() && hi.is_finite()) {
        return Err(bad());
    }
    Ok(t_samples(count, lo, hi))
}

fn basis(a: &SymmetricMatrix, cluster_tol: Option<f64>) -> Result<EigenBasis, CliError> {
    Ok(match cluster_tol {
        Some(tol) => eigh_with_cluster_tol(a, tol)?,
        None => eigh(a)?,
    })
}

fn spectral_deck(a: &SymmetricMatrix, cluster_tol: Option<f64>) -> Result<SpectralDeck, CliError> {
    let d = deck(a)?;
    Ok(match cluster_tol {
        Some(tol) => SpectralDeck::from_cards(
            d.cards()
                .iter()
                .map(|c| cluster_spectrum(c.values().to_vec(), tol))
                .collect::<Result<_, _>>()?,
        ),
        None => d,
    })
}

fn clusters_json(basis: &EigenBasis) -> Value {
    basis
        .spectrum()
        .clusters()
        .iter()
        .map(|r| json!([r.start, r.end]))
        .collect()
}

fn run(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Eig { a, cluster_tol } => {
            let cluster_tol = positive("cluster-tol", cluster_tol)?;
            let b = basis(&load_matrix(&a)?, cluster_tol)?;
            Ok(Report {
                text: text::eig(&b),
                json: json!({
                    "n": b.n(),
                    "cluster_tol": b.spectrum().cluster_tol(),
                    "values": b.spectrum().values(),
                    "clusters": clusters_json(&b),
                    "vectors": b.vectors(),
                }),
                pass: true,
            })
        }
        Command::Deck { a, cluster_tol } => {
            let cluster_tol = positive("cluster-tol", cluster_tol)?;
            let a = load_matrix(&a)?;
            let parent = basis(&a, cluster_tol)?;
            let d = spectral_deck(&a, cluster_tol)?;
            let violation = d.interlacing_violation(parent.spectrum());
            let interlaces = d.interlaces(parent.spectrum());
            Ok(Report {
                text: text::deck(&parent, &d, violation),
                json: json!({
                    "n": a.n(),
                    "values": parent.spectrum().values(),
                    "cards": d.cards().iter().map(|c| c.values()).collect::<Vec<_>>(),
                    "interlacing_violation": violation,
                    "interlaces": interlaces,
                }),
                pass: interlaces,
            })
        }
        Command::Squares { a, cluster_tol } => {
            let cluster_tol = positive("cluster-tol", cluster_tol)?;
            let a = load_matrix(&a)?;
            let parent = basis(&a, cluster_tol)?;
            let table = square_table_from_deck(parent.spectrum(), &spectral_deck(&a, cluster_tol)?)?;
            for w in table.warnings() {
                eprintln!("warning: {w:?}");
            }
            Ok(Report {
                text: text::squares(&parent, &table),
                json: json!({
                    "values": parent.spectrum().values(),
                    "squares": table,
                }),
                pass: table.is_consistent(),
            })
        }
        Command::Rank1 {
            a,
            x,
            t,
            deflate_tol,
            cluster_tol,
        } => {
            let deflate_tol = positive("deflate-tol", deflate_tol)?.unwrap_or(DEFAULT_DEFLATE_TOL);
            let cluster_tol = positive("cluster-tol", cluster_tol)?;
            let a = load_matrix(&a)?;
            let x = load_vector(&x, a.n())?;
            let res = rank1_update_with(&basis(&a, cluster_tol)?, &x, t, deflate_tol)?;
            let margin = res.interlacing_margin(t);
            Ok(Report {
                text: text::rank1(&res, t),
                json: json!({
                    "n": a.n(),
                    "t": t,
                    "values": res.spectrum().values(),
                    "entries": res.entries(),
                    "vectors": res.vectors(),
                    "active_poles": res.active(),
                    "interlacing_margin": margin.is_finite().then_some(margin),
                }),
                pass: true,
            })
        }
        Command::GmVerify {
            a,
            b,
            tol,
            multiset_deck,
            t_samples,
        } => {
            let opts = GmOptions {
                tol: positive("tol", tol)?.unwrap_or(DEFAULT_TOL),
                multiset_deck,
                t_samples: parse_t_samples(t_samples.as_deref())?,
            };
            let (a, b) = load_pair(&a, &b)?;
            let report = verify_gm(&a, &b, &opts)?;
            Ok(Report {
                text: text::gm(&report),
                json: eigenrecon::json::to_value(&report),
                pass: report.pass,
            })
        }
        Command::Tmain { a, b, tol, t_samples } => {
            let tol = positive("tol", tol)?.unwrap_or(DEFAULT_TOL);
            let ts = parse_t_samples(t_samples.as_deref())?;
            let (a, b) = load_pair(&a, &b)?;
            let samples = verify_theorem_main(&a, &b, &ts)?;
            let inside: Vec<_> = samples.iter().filter(|s| !s.outside_interval()).collect();
            let agreeing = inside.iter().filter(|s| s.agrees(tol)).count();
            let cross_ok = samples.iter().all(|s| s.cross_check.pass);
            Ok(Report {
                text: text::tmain(&samples, tol),
                json: json!({
                    "tol": tol,
                    "samples": samples,
                    "inside_interval": inside.len(),
                    "agreeing": agreeing,
                    "cross_check_pass": cross_ok,
                }),
                pass: cross_ok && agreeing == inside.len(),
            })
        }
        Command::ProbeTau { a, b, index, n_cap } => {
            let (a, b) = load_pair(&a, &b)?;
            let outcome = probe_permutation_conjecture(&a, &b, index, n_cap)?;
            Ok(Report {
                text: text::probe(&outcome),
                pass: matches!(outcome, ProbeOutcome::Found { .. }),
                json: json!({ "index": index, "n_cap": n_cap, "result": outcome }),
            })
        }
        Command::DetCheck {
            a,
            x,
            t,
            probes,
            seed,
            tol,
        } => {
            let tol = positive("tol", Some(tol))?.unwrap_or_default();
            if probes == 0 {
                return Err(CliError::Invalid("--probes must be at least 1".into()));
            }
            let a = load_matrix(&a)?;
            let x = load_vector(&x, a.n())?;
            let report = verify_det_identity(&a, &x, t, probes, seed)?;
            let pass = report.max_relative_deviation <= tol;
            Ok(Report {
                text: text::det(&report, tol),
                json: json!({ "t": t, "seed": seed, "tol": tol, "report": report, "pass": pass }),
                pass,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            let out = match cli.format {
                Format::Json => eigenrecon::json::to_string_pretty(&report.json) + "\n",
                Format::Text => report.text,
            };
            // a closed pipe downstream is not an error worth reporting
            let _ = io::stdout().lock().write_all(out.as_bytes());
            if report.pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("check failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
