//! `qdis`: generate, analyze and disentangle two-qubit states from the shell.
//!
//! Exit codes: 0 success, 1 input or parse error, 2 unphysical state,
//! 3 ideal-disentanglement precondition failed.

mod state_file;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use qdis_core::channels::{apply_isotropic, quality_factor, threshold_ok, IsotropicChannel};
use qdis_core::cloning::{clone_eta, meets_threshold, min_copies, net_shrink, CloningMode};
use qdis_core::factory::{make_state, StateSpec};
use qdis_core::geometry::{decompose, profile_of, BlochDecomposition, CorrelationProfile};
use qdis_core::ideal::{batch_ideal_check, IDEAL_TOL};
use qdis_core::separability::{ppt_verdict, SeparabilityVerdict};
use qdis_core::state::DEFAULT_TOL;
use qdis_core::sweep::{threshold_sweep, SweepRow};
use qdis_core::TwoQubitState;
use serde::Serialize;
use serde_json::json;

use state_file::StateFile;

const TOL_ENV: &str = "QDIS_TOL";

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Unphysical(String),
    Precondition(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Unphysical(_) => 2,
            Failure::Precondition(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Unphysical(m) | Failure::Precondition(m) => m,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

#[derive(Parser)]
#[command(name = "qdis", version, about = "Two-qubit disentanglement toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a named or seeded random state as a JSON state file.
    Gen(GenArgs),
    /// Pauli decomposition, correlation profile and PPT verdict of a state.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Apply isotropic reduction channels with factors eta1 (qubit A) and eta2 (qubit B).
    Channel {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        eta1: f64,
        #[arg(long, allow_negative_numbers = true)]
        eta2: f64,
        /// Where to write the output state.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the eta1*eta2 <= 1/3 threshold with PPT scans over Schmidt states.
    Sweep {
        #[arg(long, default_value_t = 50)]
        eta_steps: usize,
        #[arg(long, default_value_t = 91)]
        theta_steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dephase qubit B of each state in a shared basis and check the reduced states survive.
    Ideal {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = IDEAL_TOL)]
        tol: f64,
    },
    /// Reduction factors of 1->M cloners and the copies needed to disentangle.
    Cloning {
        #[arg(long, default_value_t = 6)]
        max_m: i64,
    },
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(long, value_enum, required_unless_present = "spec", conflicts_with = "spec")]
    kind: Option<Kind>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    /// Bell state index: 0 Φ+, 1 Φ−, 2 Ψ+, 3 Ψ−.
    #[arg(long)]
    index: Option<u8>,
    #[arg(long)]
    seed: Option<u64>,
    /// Full text form, e.g. `schmidt:0.7854` or `pure:42`.
    #[arg(long)]
    spec: Option<String>,
    #[arg(long)]
    label: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Bell,
    Schmidt,
    Werner,
    Pure,
    Mixed,
    Product,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Gen(args) => gen(args),
        Command::Analyze { file, format } => analyze(&file, format),
        Command::Channel { file, eta1, eta2, out } => channel(&file, eta1, eta2, out.as_deref()),
        Command::Sweep {
            eta_steps,
            theta_steps,
            out,
        } => sweep(eta_steps, theta_steps, out.as_deref()),
        Command::Ideal { files, tol } => ideal(&files, tol),
        Command::Cloning { max_m } => cloning(max_m),
    }
}

fn tolerance() -> Result<f64, Failure> {
    match std::env::var(TOL_ENV) {
        Err(_) => Ok(DEFAULT_TOL),
        Ok(v) => match v.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t >= 0.0 => Ok(t),
            _ => Err(Failure::Input(format!("{TOL_ENV}={v:?} is not a non-negative number"))),
        },
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

fn gen(args: GenArgs) -> Result<(), Failure> {
    let text = match (args.spec, args.kind) {
        (Some(spec), _) => spec,
        (None, Some(kind)) => {
            let need = |v: Option<String>, flag: &str| v.ok_or_else(|| Failure::Input(format!("--kind needs --{flag}")));
            match kind {
                Kind::Bell => format!("bell:{}", args.index.unwrap_or(0)),
                Kind::Schmidt => format!("schmidt:{}", need(args.theta.map(|t| t.to_string()), "theta")?),
                Kind::Werner => format!("werner:{}", need(args.p.map(|p| p.to_string()), "p")?),
                Kind::Pure | Kind::Mixed | Kind::Product => {
                    let prefix = match kind {
                        Kind::Pure => "pure",
                        Kind::Mixed => "mixed",
                        _ => "product",
                    };
                    format!("{prefix}:{}", need(args.seed.map(|s| s.to_string()), "seed")?)
                }
            }
        }
        (None, None) => return Err(Failure::Input("one of --kind or --spec is required".into())),
    };
    let spec = StateSpec::from_str(&text).map_err(input)?;
    let state = make_state(&spec).map_err(input)?;
    let label = args.label.unwrap_or_else(|| spec.to_string());
    emit(args.out.as_deref(), &StateFile::new(&state, Some(label)).to_json())
}

#[derive(Serialize)]
struct Analysis {
    decomposition: BlochDecomposition,
    profile: CorrelationProfile,
    separability: SeparabilityVerdict,
}

impl Analysis {
    fn of(rho: &TwoQubitState) -> Result<Self, Failure> {
        let decomposition = decompose(rho).map_err(input)?;
        Ok(Analysis {
            profile: profile_of(&decomposition),
            separability: ppt_verdict(rho),
            decomposition,
        })
    }
}

fn analyze(file: &Path, format: Format) -> Result<(), Failure> {
    let (rho, label) = StateFile::load(file, tolerance()?)?;
    let a = Analysis::of(&rho)?;
    let text = match format {
        Format::Json => to_json(&json!({
            "label": label,
            "decomposition": a.decomposition,
            "profile": a.profile,
            "separability": a.separability,
        })),
        Format::Csv => {
            let d = &a.decomposition;
            let mut header = String::from("r1,r2,r3,s1,s2,s3");
            let mut row = String::new();
            for x in d.r.iter().chain(&d.s) {
                write!(row, "{x},").unwrap();
            }
            for i in 1..=3 {
                for j in 1..=3 {
                    write!(header, ",t{i}{j}").unwrap();
                    write!(row, "{},", d.t[i - 1][j - 1]).unwrap();
                }
            }
            format!(
                "{header},{},{}\n{row}{},{}\n",
                CorrelationProfile::CSV_HEADER,
                SeparabilityVerdict::CSV_HEADER,
                a.profile.csv_row(),
                a.separability.csv_row()
            )
        }
    };
    emit(None, &text)
}

fn channel(file: &Path, eta1: f64, eta2: f64, out: Option<&Path>) -> Result<(), Failure> {
    IsotropicChannel::new(eta1).map_err(input)?;
    IsotropicChannel::new(eta2).map_err(input)?;
    let (rho, label) = StateFile::load(file, tolerance()?)?;
    let after = apply_isotropic(&rho, eta1, eta2).map_err(input)?;
    let (b, a) = (Analysis::of(&rho)?, Analysis::of(&after)?);
    if let Some(path) = out {
        let label = label.map(|l| format!("{l} | iso({eta1},{eta2})"));
        emit(Some(path), &StateFile::new(&after, label).to_json())?;
    }
    emit(
        None,
        &to_json(&json!({
            "eta1": eta1,
            "eta2": eta2,
            "quality_factor": quality_factor(eta1, eta2),
            "threshold_ok": threshold_ok(eta1, eta2),
            "before": { "profile": b.profile, "separability": b.separability },
            "after": { "profile": a.profile, "separability": a.separability },
        })),
    )
}

fn sweep(eta_steps: usize, theta_steps: usize, out: Option<&Path>) -> Result<(), Failure> {
    if eta_steps < 2 || theta_steps < 2 {
        return Err(Failure::Input("--eta-steps and --theta-steps must be at least 2".into()));
    }
    let res = threshold_sweep(eta_steps, theta_steps).map_err(input)?;
    let mut text = String::with_capacity(80 * res.rows.len());
    text.push_str(SweepRow::CSV_HEADER);
    text.push('\n');
    for row in &res.rows {
        text.push_str(&row.csv_row());
        text.push('\n');
    }
    writeln!(text, "# disagreements,{}", res.disagreements).unwrap();
    emit(out, &text)
}

fn ideal(files: &[PathBuf], tol: f64) -> Result<(), Failure> {
    let state_tol = tolerance()?;
    let states = files
        .iter()
        .map(|f| StateFile::load(f, state_tol).map(|(s, _)| s))
        .collect::<Result<Vec<_>, _>>()?;
    let report = batch_ideal_check(&states, tol).map_err(input)?;
    let names: Vec<String> = files.iter().map(|f| f.display().to_string()).collect();
    emit(None, &to_json(&json!({ "files": names, "tol": tol, "report": report })))?;
    if let Some((i, j)) = report.failing_pair {
        return Err(Failure::Precondition(format!(
            "reduced states of qubit B in {} and {} do not commute",
            names[i], names[j]
        )));
    }
    if !report.all_ideal {
        let bad: Vec<&str> = report
            .reports
            .iter()
            .zip(&names)
            .filter(|(r, _)| !r.is_ideal(tol))
            .map(|(_, n)| n.as_str())
            .collect();
        return Err(Failure::Precondition(format!("not ideally disentangled: {}", bad.join(", "))));
    }
    Ok(())
}

fn cloning(max_m: i64) -> Result<(), Failure> {
    if max_m < 1 {
        return Err(Failure::Input(format!("--max-m must be at least 1, got {max_m}")));
    }
    let mut text = String::from("mode,M,eta,net_shrink,meets_threshold\n");
    for mode in CloningMode::ALL {
        for m in 1..=max_m {
            writeln!(
                text,
                "{mode},{m},{},{},{}",
                clone_eta(mode, m).map_err(input)?,
                net_shrink(mode, m).map_err(input)?,
                meets_threshold(mode, m).map_err(input)?
            )
            .unwrap();
        }
    }
    text.push_str("# M=1 rows are the identity map (eta=1)\n");
    for mode in CloningMode::ALL {
        writeln!(text, "# min_copies,{mode},{}", min_copies(mode)).unwrap();
    }
    emit(None, &text)
}
