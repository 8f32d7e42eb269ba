//! Command-line front end: distribution evaluation, parameter sweeps, the
//! built-in figure presets, beat diagnostics, and the verification suites.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage error, 3 I/O error.

mod beats;
mod output;
mod scan;

use clap::{Args, Parser, Subcommand, ValueEnum};
use husimi_core::correlation::{corr_c1, corr_c2, corr_c3, corr_total};
use husimi_core::marginals::{marginal_p, marginal_q};
use husimi_core::oracle;
use husimi_core::phase_space::husimi_fock;
use husimi_core::{DistributionKind, PhasePoint, SqueezeFrame};
use output::{CheckRecord, Row};
use scan::{FigurePreset, PointSpec, ScanSpec};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "husimi",
    about = "Squeezed-state Husimi distributions of Fock states: evaluation, scans, and verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one distribution at one point; prints a JSON record.
    Eval(EvalArgs),
    /// Sweep a distribution over an (n, φ, λ) grid.
    Scan(ScanArgs),
    /// Emit one of the built-in figure data sets.
    Figure(FigureArgs),
    /// Beat diagnostics (sign changes, envelope minima) over a scan CSV.
    Beats(BeatsArgs),
    /// Run a verification suite; exit 0 iff all checks pass.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Husimi,
    MarginalQ,
    MarginalP,
    CorrTotal,
    CorrC1,
    CorrC2,
    CorrC3,
}

impl From<KindArg> for DistributionKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Husimi => DistributionKind::Husimi,
            KindArg::MarginalQ => DistributionKind::MarginalQ,
            KindArg::MarginalP => DistributionKind::MarginalP,
            KindArg::CorrTotal => DistributionKind::CorrTotal,
            KindArg::CorrC1 => DistributionKind::CorrC1,
            KindArg::CorrC2 => DistributionKind::CorrC2,
            KindArg::CorrC3 => DistributionKind::CorrC3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    p: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    q: f64,
    #[arg(long)]
    lambda: f64,
    #[arg(long = "phi-deg", default_value_t = 0.0, allow_hyphen_values = true)]
    phi_deg: f64,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long, default_value_t = 0)]
    nmin: u32,
    #[arg(long, default_value_t = 200)]
    nmax: u32,
    /// Comma-separated squeeze parameters.
    #[arg(long, value_delimiter = ',', required = true)]
    lambda: Vec<f64>,
    /// Angle grid in degrees: START:STOP:STEP, or a single angle.
    #[arg(long = "phi-deg", default_value = "0", allow_hyphen_values = true)]
    phi_deg: String,
    /// Fixed phase point "p,q".
    #[arg(long, conflicts_with_all = ["circle", "fig2_param"], allow_hyphen_values = true)]
    point: Option<String>,
    /// Circle point "R2,THETA_DEG" on p²+q² = R².
    #[arg(long, conflicts_with = "fig2_param", allow_hyphen_values = true)]
    circle: Option<String>,
    /// Couple the circle angle to the frame angle (θ = 3φ/2, R² = 98).
    #[arg(long = "fig2-param")]
    fig2_param: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct FigureArgs {
    /// fig1a | fig1b | fig1c | fig1d | fig2 | fig3
    #[arg(long)]
    preset: String,
    #[arg(long)]
    out: PathBuf,
    /// Upper end of the photon-number axis.
    #[arg(long, default_value_t = 200)]
    nmax: u32,
}

#[derive(Args)]
struct BeatsArgs {
    /// A CSV file produced by `scan` or `figure`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// kernels | marginals | correlation | pde | identities | all
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

const EXIT_CHECK_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval(args) => cmd_eval(&args),
        Command::Scan(args) => cmd_scan(&args),
        Command::Figure(args) => cmd_figure(&args),
        Command::Beats(args) => cmd_beats(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CmdError::Io(e)) => {
            eprintln!("I/O error: {e}");
            ExitCode::from(EXIT_IO)
        }
        Err(CmdError::Eval(e)) => {
            eprintln!("evaluation error: {e}");
            ExitCode::from(EXIT_CHECK_FAILURE)
        }
    }
}

enum CmdError {
    Usage(String),
    Io(std::io::Error),
    Eval(husimi_core::Error),
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Io(e)
    }
}

fn parse_frame(lambda: f64, phi_deg: f64) -> Result<SqueezeFrame, CmdError> {
    SqueezeFrame::from_degrees(lambda, phi_deg)
        .map_err(|e| CmdError::Usage(format!("invalid frame: {e}")))
}

fn cmd_eval(args: &EvalArgs) -> Result<ExitCode, CmdError> {
    let frame = parse_frame(args.lambda, args.phi_deg)?;
    let point = PhasePoint::new(args.p, args.q);
    let kind: DistributionKind = args.kind.into();
    let mut sample = match kind {
        DistributionKind::Husimi => husimi_fock(args.n, point, &frame),
        DistributionKind::MarginalQ => marginal_q(args.n, point.q, &frame),
        DistributionKind::MarginalP => marginal_p(args.n, point.p, &frame),
        DistributionKind::CorrTotal => corr_total(args.n, point, &frame),
        DistributionKind::CorrC1 => corr_c1(args.n, point, &frame).map_err(CmdError::Eval)?,
        DistributionKind::CorrC2 => corr_c2(args.n, point, &frame).map_err(CmdError::Eval)?,
        DistributionKind::CorrC3 => corr_c3(args.n, point, &frame).map_err(CmdError::Eval)?,
    };
    sample.point = point;
    let row = Row::from_sample(&sample, args.phi_deg);
    println!("{}", serde_json::to_string(&row).expect("row serializes"));
    Ok(ExitCode::SUCCESS)
}

fn parse_phi_range(text: &str) -> Result<(f64, f64, f64), CmdError> {
    let parts: Vec<&str> = text.split(':').collect();
    let parse = |s: &str| -> Result<f64, CmdError> {
        s.parse()
            .map_err(|e| CmdError::Usage(format!("bad angle '{s}': {e}")))
    };
    match parts.as_slice() {
        [single] => {
            let v = parse(single)?;
            Ok((v, v, 1.0))
        }
        [start, stop, step] => Ok((parse(start)?, parse(stop)?, parse(step)?)),
        _ => Err(CmdError::Usage(format!(
            "bad --phi-deg '{text}': use START:STOP:STEP or ANGLE"
        ))),
    }
}

fn parse_pair(text: &str, what: &str) -> Result<(f64, f64), CmdError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(CmdError::Usage(format!(
            "bad {what} '{text}': expected two comma-separated numbers"
        )));
    }
    let a = parts[0]
        .parse()
        .map_err(|e| CmdError::Usage(format!("bad {what} '{text}': {e}")))?;
    let b = parts[1]
        .parse()
        .map_err(|e| CmdError::Usage(format!("bad {what} '{text}': {e}")))?;
    Ok((a, b))
}

fn write_rows(rows: &[Row], out: Option<&Path>, format: FormatArg) -> Result<(), CmdError> {
    let render = |w: &mut dyn Write| -> std::io::Result<()> {
        match format {
            FormatArg::Csv => output::write_csv(w, rows),
            FormatArg::Json => output::write_json(w, rows),
        }
    };
    match out {
        Some(path) => {
            let file = fs::File::create(path)?;
            let mut writer = std::io::BufWriter::new(file);
            render(&mut writer)?;
            writer.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            render(&mut lock)?;
        }
    }
    Ok(())
}

fn cmd_scan(args: &ScanArgs) -> Result<ExitCode, CmdError> {
    let (start, stop, step) = parse_phi_range(&args.phi_deg)?;
    let point = if args.fig2_param {
        PointSpec::CoupledAngle
    } else if let Some(circle) = &args.circle {
        let (r_sq, theta_deg) = parse_pair(circle, "--circle")?;
        PointSpec::Circle { r_sq, theta_deg }
    } else if let Some(point) = &args.point {
        let (p, q) = parse_pair(point, "--point")?;
        PointSpec::Explicit { p, q }
    } else {
        return Err(CmdError::Usage(
            "one of --point, --circle, --fig2-param is required".into(),
        ));
    };
    let spec = ScanSpec {
        kind: args.kind.into(),
        n_min: args.nmin,
        n_max: args.nmax,
        lambdas: args.lambda.clone(),
        phi_deg_start: start,
        phi_deg_stop: stop,
        phi_deg_step: step,
        point,
    };
    spec.validate().map_err(CmdError::Usage)?;
    let rows = spec.run().map_err(CmdError::Eval)?;
    write_rows(&rows, args.out.as_deref(), args.format)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_figure(args: &FigureArgs) -> Result<ExitCode, CmdError> {
    let preset = FigurePreset::parse(&args.preset)
        .ok_or_else(|| CmdError::Usage(format!("unknown preset '{}'", args.preset)))?;
    let spec = preset.scan(args.nmax);
    let rows = spec.run().map_err(CmdError::Eval)?;
    write_rows(&rows, Some(&args.out), FormatArg::Csv)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_beats(args: &BeatsArgs) -> Result<ExitCode, CmdError> {
    let text = fs::read_to_string(&args.input)?;
    let series = beats::parse_series(&text).map_err(CmdError::Usage)?;
    let reports: Vec<beats::BeatReport> = series.iter().map(beats::analyze).collect();
    let rendered = serde_json::to_string_pretty(&reports).expect("reports serialize");
    match &args.out {
        Some(path) => {
            fs::write(path, format!("{rendered}\n"))?;
        }
        None => println!("{rendered}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, CmdError> {
    let results = match args.suite.as_str() {
        "kernels" => oracle::suite_kernels(),
        "marginals" => oracle::suite_marginals(),
        "correlation" => oracle::suite_correlation(),
        "pde" => oracle::suite_pde(),
        "identities" => oracle::suite_identities(),
        "all" => oracle::suite_all(),
        other => return Err(CmdError::Usage(format!("unknown suite '{other}'"))),
    };
    let records: Vec<CheckRecord> = results.iter().map(CheckRecord::from).collect();
    let rendered = serde_json::to_string_pretty(&records).expect("records serialize");
    match &args.out {
        Some(path) => fs::write(path, format!("{rendered}\n"))?,
        None => println!("{rendered}"),
    }
    if oracle::all_pass(&results) {
        Ok(ExitCode::SUCCESS)
    } else {
        let failed = results.iter().filter(|r| !r.pass).count();
        eprintln!("{failed} of {} checks failed", results.len());
        Ok(ExitCode::from(EXIT_CHECK_FAILURE))
    }
}
