//! The `vpwave` command line: approximation errors, Lebesgue constants,
//! pyramid decomposition and reconstruction, and basis sampling.
//!
//! Exit codes: 0 on success, 2 for argument, domain or input-format errors,
//! 3 for inconsistent pyramid level chains, 1 when output cannot be written.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::bases::{
    ortho_to_values, q_expansion, qtilde_expansion, scaling_interp_expansion, scaling_ortho_expansion,
    wavelet_interp_expansion, wavelet_ortho_expansion,
};
use crate::cheb::{probe_grid, ChebExpansion, ChebGrid, DEFAULT_PROBE};
use crate::coeffs::VpLevel;
use crate::error::VpError;
use crate::functions::FunctionSpec;
use crate::operators::{error_curve, lebesgue_const, LebesgueKind, OperatorKind};
use crate::pyramid::{
    decompose_coeffs, decompose_multi, pyramid_from_json, pyramid_to_json, reconstruct_multi, MPolicy,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Vp(#[from] VpError),
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Vp(VpError::LevelChain(_)) => 3,
            Self::Vp(_) | Self::Input(_) | Self::Read { .. } => 2,
            Self::Write { .. } => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "vpwave", version, about = "VP polynomial approximation and wavelets on [-1, 1]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sup-norm approximation errors E_n^m as CSV `theta,n,m,error`.
    Error(ErrorArgs),
    /// Lebesgue constants as CSV `theta,n,m,value`, with a JSON sidecar.
    Lebesgue(LebesgueArgs),
    /// Project samples and split them into a pyramid JSON file.
    Decompose(DecomposeArgs),
    /// Rebuild samples at the top-level nodes from a pyramid JSON file.
    Reconstruct(ReconstructArgs),
    /// Sample one basis function on the probe grid as CSV `x,value`.
    Basis(BasisArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    Discrete,
    Fourier,
    Vp,
}

impl From<OpArg> for OperatorKind {
    fn from(op: OpArg) -> Self {
        match op {
            OpArg::Discrete => OperatorKind::DiscreteProj,
            OpArg::Fourier => OperatorKind::FourierProj,
            OpArg::Vp => OperatorKind::VpInterp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LebesgueArg {
    Lambda,
    LambdaTilde,
    LambdaBar,
    /// `lambda` and `lambda-tilde` side by side, flagging rows where
    /// `lambda > lambda-tilde`.
    Compare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Uniform,
    PerLevel,
}

impl From<PolicyArg> for MPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Uniform => MPolicy::Uniform,
            PolicyArg::PerLevel => MPolicy::PerLevel,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Phi,
    PhiOrtho,
    Psi,
    PsiOrtho,
    Q,
    QTilde,
}

#[derive(Debug, Args)]
pub struct ErrorArgs {
    /// Test function: sin, sin6sign, abs, abs03, runge.
    #[arg(long = "f", value_parser = parse_function)]
    pub function: FunctionSpec,
    #[arg(long, value_enum)]
    pub op: OpArg,
    /// Comma-separated values in (0, 1).
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_theta)]
    pub theta: Vec<f64>,
    /// `start:step:stop`, a comma list, or a single value.
    #[arg(long = "n", value_parser = parse_n_list)]
    pub n: NList,
    /// Probe grid size M of `cos(j pi / M)`, `j = 0..=M`.
    #[arg(long, default_value_t = DEFAULT_PROBE)]
    pub grid: usize,
    /// Output CSV; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LebesgueArgs {
    #[arg(long, value_enum)]
    pub kind: LebesgueArg,
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_theta)]
    pub theta: Vec<f64>,
    #[arg(long = "n", value_parser = parse_n_list)]
    pub n: NList,
    #[arg(long, default_value_t = DEFAULT_PROBE)]
    pub grid: usize,
    /// Output CSV; the sidecar goes next to it with extension `meta.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").required(true).args(["function", "samples"])))]
pub struct DecomposeArgs {
    /// Registry function sampled at the top-level nodes.
    #[arg(long = "f", value_parser = parse_function)]
    pub function: Option<FunctionSpec>,
    /// CSV of samples in node order; the last column of each row is used.
    #[arg(long)]
    pub samples: Option<PathBuf>,
    #[arg(long)]
    pub n0: usize,
    #[arg(long, visible_alias = "L")]
    pub levels: usize,
    #[arg(long, value_parser = parse_theta)]
    pub theta: f64,
    #[arg(long, value_enum, default_value = "uniform")]
    pub m_policy: PolicyArg,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    #[arg(long)]
    pub pyramid: PathBuf,
    /// Output CSV `x,value`; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    /// `k` (from 1) for phi/psi families, degree index `r` for q/q-tilde.
    #[arg(long, visible_aliases = ["k", "r"])]
    pub index: usize,
    #[arg(long, default_value_t = DEFAULT_PROBE)]
    pub grid: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A list of resolutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NList(pub Vec<usize>);

fn parse_function(s: &str) -> Result<FunctionSpec, String> {
    s.parse().map_err(|e: VpError| e.to_string())
}

fn parse_theta(s: &str) -> Result<f64, String> {
    let t: f64 = s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?;
    if t > 0.0 && t < 1.0 {
        Ok(t)
    } else {
        Err(format!("theta must lie in (0, 1), got {s}"))
    }
}

fn parse_n_list(s: &str) -> Result<NList, String> {
    let num = |p: &str| -> Result<usize, String> {
        p.trim().parse().map_err(|_| format!("not a positive integer: {p:?}"))
    };
    let parts: Vec<&str> = s.split(':').collect();
    let list = match parts.as_slice() {
        [start, step, stop] => {
            let (start, step, stop) = (num(start)?, num(step)?, num(stop)?);
            if step == 0 || start > stop {
                return Err(format!("empty range {s:?}"));
            }
            (start..=stop).step_by(step).collect()
        }
        [single] => single.split(',').map(num).collect::<Result<Vec<_>, _>>()?,
        _ => return Err(format!("expected start:step:stop, got {s:?}")),
    };
    if list.contains(&0) {
        return Err("resolutions must be positive".into());
    }
    Ok(NList(list))
}

fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("meta.json")
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|source| CliError::Write { path: p.into(), source }),
        None => io::stdout()
            .write_all(bytes)
            .map_err(|source| CliError::Write { path: "<stdout>".into(), source }),
    }
}

fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn real(x: f64) -> String {
    format!("{x:?}")
}

fn json_bytes(value: &serde_json::Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s.into_bytes()
}

fn cmd_error(args: &ErrorArgs) -> CliResult<()> {
    let kind: OperatorKind = args.op.into();
    let f = |x: f64| args.function.eval(x);
    let mut rows = Vec::new();
    for &theta in &args.theta {
        let curve = error_curve(f, kind, theta, &args.n.0, args.grid)?;
        for n in &curve.skipped {
            eprintln!("warning: theta = {theta}, n = {n}: no valid m = floor(theta n), skipped");
        }
        for p in &curve.points {
            rows.push(vec![real(theta), p.n.to_string(), p.m.to_string(), real(p.error)]);
        }
    }
    let bytes = csv_bytes(&["theta", "n", "m", "error"], &rows);
    if let Some(out) = &args.out {
        let meta = json!({
            "function": args.function.name(),
            "operator": kind.to_string(),
            "grid_size": args.grid,
            "probe": "cos(j pi / M), j = 0..=M",
            "fourier_quadrature": "Gauss-Chebyshev, 16 (n + m) nodes",
        });
        write_output(Some(out), &bytes)?;
        write_output(Some(&sidecar_path(out)), &json_bytes(&meta))
    } else {
        write_output(None, &bytes)
    }
}

fn cmd_lebesgue(args: &LebesgueArgs) -> CliResult<()> {
    let mut rows = Vec::new();
    let mut meta_rows = Vec::new();
    let mut violations = 0;
    for &theta in &args.theta {
        for &n in &args.n.0 {
            let Ok(level) = VpLevel::from_theta(n, theta) else {
                eprintln!("warning: theta = {theta}, n = {n}: no valid m = floor(theta n), skipped");
                continue;
            };
            let (m, lead) = (level.m(), vec![real(theta), n.to_string(), level.m().to_string()]);
            let kinds: &[LebesgueKind] = match args.kind {
                LebesgueArg::Lambda => &[LebesgueKind::Lambda],
                LebesgueArg::LambdaTilde => &[LebesgueKind::LambdaTilde],
                LebesgueArg::LambdaBar => &[LebesgueKind::LambdaBar],
                LebesgueArg::Compare => &[LebesgueKind::Lambda, LebesgueKind::LambdaTilde],
            };
            let mut values = Vec::new();
            for &kind in kinds {
                let rep = lebesgue_const(level, kind, args.grid)?;
                meta_rows.push(json!({
                    "theta": theta, "n": n, "m": m, "kind": kind.to_string(),
                    "value": rep.value, "argmax": rep.argmax, "quadrature": rep.quad_spec,
                }));
                values.push(rep.value);
            }
            let mut row = lead;
            row.extend(values.iter().map(|v| real(*v)));
            if args.kind == LebesgueArg::Compare {
                let holds = values[0] <= values[1];
                if !holds {
                    violations += 1;
                    eprintln!("note: theta = {theta}, n = {n}: lambda {} exceeds lambda-tilde {}", values[0], values[1]);
                }
                row.push(if holds { "holds" } else { "violated" }.into());
            }
            rows.push(row);
        }
    }
    let header: &[&str] = match args.kind {
        LebesgueArg::Compare => &["theta", "n", "m", "lambda", "lambda_tilde", "conjecture"],
        _ => &["theta", "n", "m", "value"],
    };
    let bytes = csv_bytes(header, &rows);
    match &args.out {
        Some(out) => {
            let kind = match args.kind {
                LebesgueArg::Lambda => "lambda",
                LebesgueArg::LambdaTilde => "lambda-tilde",
                LebesgueArg::LambdaBar => "lambda-bar",
                LebesgueArg::Compare => "compare",
            };
            let meta = json!({
                "kind": kind,
                "grid_size": args.grid,
                "probe": "cos(j pi / M), j = 0..=M, evaluated for x >= 0 by symmetry",
                "conjecture_violations": violations,
                "rows": meta_rows,
            });
            write_output(Some(out), &bytes)?;
            write_output(Some(&sidecar_path(out)), &json_bytes(&meta))
        }
        None => write_output(None, &bytes),
    }
}

fn read_samples(path: &Path) -> CliResult<Vec<f64>> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let Some(field) = record.iter().next_back().filter(|f| !f.is_empty()) else {
            continue;
        };
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => out.push(v),
            // a non-numeric first row is a header
            Err(_) if i == 0 => continue,
            _ => {
                return Err(CliError::Input(format!(
                    "{}: row {}: not a finite number: {field:?}",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok(out)
}

fn values_csv(values: &[f64]) -> CliResult<Vec<u8>> {
    let grid = ChebGrid::new(values.len())?;
    let rows: Vec<Vec<String>> = grid.nodes().iter().zip(values).map(|(x, v)| vec![real(*x), real(*v)]).collect();
    Ok(csv_bytes(&["x", "value"], &rows))
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn cmd_decompose(args: &DecomposeArgs) -> CliResult<()> {
    let top_n = args
        .n0
        .checked_mul(3usize.checked_pow(args.levels as u32).unwrap_or(usize::MAX))
        .filter(|&n| n != usize::MAX)
        .ok_or_else(|| CliError::Input("n0 3^L overflows".into()))?;
    let samples = match (&args.function, &args.samples) {
        (Some(f), _) => ChebGrid::new(top_n)?.sample(|x| f.eval(x)),
        (None, Some(path)) => read_samples(path)?,
        (None, None) => unreachable!("clap enforces the input group"),
    };
    if samples.len() != top_n {
        return Err(CliError::Input(format!(
            "{} samples given, n0 3^L = {top_n} required",
            samples.len()
        )));
    }
    let policy: MPolicy = args.m_policy.into();
    let d = decompose_multi(&samples, args.n0, args.levels, args.theta, policy)?;
    let projected = crate::operators::discrete_proj(&samples, d.top_level())?;
    let back = reconstruct_multi(&d)?;
    let deviation = max_abs_diff(&ortho_to_values(&back)?, &ortho_to_values(&projected)?);
    let mut text = pyramid_to_json(&d);
    text.push('\n');
    write_output(Some(&args.out), text.as_bytes())?;
    let chain: Vec<String> = d.details.iter().map(|x| format!("{}/{}", x.level.n(), x.level.m())).collect();
    println!(
        "levels (n/m): {} -> {}/{}",
        if chain.is_empty() { "-".into() } else { chain.join(" ") },
        d.top_level().n(),
        d.top_level().m()
    );
    println!("round-trip deviation: {deviation:e}");
    Ok(())
}

fn cmd_reconstruct(args: &ReconstructArgs) -> CliResult<()> {
    let text = fs::read_to_string(&args.pyramid).map_err(|source| CliError::Read {
        path: args.pyramid.clone(),
        source,
    })?;
    let d = pyramid_from_json(&text)?;
    let top = reconstruct_multi(&d)?;
    let again = decompose_coeffs(&top, d.n0, d.levels(), d.theta, d.policy)?;
    let mut deviation = max_abs_diff(&again.base.a, &d.base.a);
    for (x, y) in again.details.iter().zip(&d.details) {
        deviation = deviation.max(max_abs_diff(&x.b, &y.b));
    }
    let bytes = values_csv(&ortho_to_values(&top)?)?;
    write_output(args.out.as_deref(), &bytes)?;
    eprintln!("round-trip deviation: {deviation:e}");
    Ok(())
}

fn cmd_basis(args: &BasisArgs) -> CliResult<()> {
    let level = VpLevel::new(args.n, args.m)?;
    let k = args.index;
    let e: ChebExpansion = match args.family {
        Family::Phi => scaling_interp_expansion(level, k)?,
        Family::PhiOrtho => scaling_ortho_expansion(level, k)?,
        Family::Psi => wavelet_interp_expansion(level, k)?,
        Family::PsiOrtho => wavelet_ortho_expansion(level, k)?,
        Family::Q => q_expansion(level, k)?,
        Family::QTilde => qtilde_expansion(level, k)?,
    };
    if args.grid < 2 {
        return Err(VpError::InvalidArgument("probe grid needs M >= 2".into()).into());
    }
    let rows: Vec<Vec<String>> = probe_grid(args.grid)
        .into_iter()
        .map(|x| Ok(vec![real(x), real(e.eval(x)?)]))
        .collect::<CliResult<_>>()?;
    write_output(args.out.as_deref(), &csv_bytes(&["x", "value"], &rows))
}

pub fn execute(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Error(a) => cmd_error(a),
        Command::Lebesgue(a) => cmd_lebesgue(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Reconstruct(a) => cmd_reconstruct(a),
        Command::Basis(a) => cmd_basis(a),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("vpwave: {e}");
            e.exit_code()
        }
    }
}
