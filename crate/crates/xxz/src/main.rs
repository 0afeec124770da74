//! Command-line front end: single-point evaluation, sweeps written as
//! CSV/JSON, finite-chain oracle runs, and non-analyticity scans.

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use xxz::bethe::{self, Anisotropy};
use xxz::correlations;
use xxz::entanglement;
use xxz::error::Error;
use xxz::oracle::{self, Boundary, FiniteChainSpec};
use xxz::scanner::{self, SweepConfig, SweepResult, Thresholds};

#[derive(Parser)]
#[command(name = "xxz", about = "Ground-state entanglement of the spin-1/2 XXZ chain", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Symmetric,
    Ssb,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate all signals at a single anisotropy.
    Point {
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
        /// Separations, e.g. --r 1,2,3
        #[arg(long, value_delimiter = ',', default_value = "1")]
        r: Vec<usize>,
        /// Use the broken-symmetry branch in the ferro phase.
        #[arg(long)]
        ssb: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sweep the anisotropy over a grid and dump all signals.
    Sweep {
        /// Range as lo:hi, e.g. --range -2:0.9
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        r: Vec<usize>,
        #[arg(long)]
        ssb: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact diagonalization of a finite chain.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
        #[arg(long, value_enum, default_value = "periodic")]
        boundary: BoundaryArg,
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Measure the symmetric combination of a degenerate doublet.
        #[arg(long)]
        symmetrize: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Detect and classify non-analyticities in a swept signal.
    Scan {
        /// Range as lo:hi (ignored when --input is given).
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
        #[arg(long, default_value_t = 400)]
        points: usize,
        /// Signal name: e0, tzz, txx, c_tilde, c, c_tilde_ssb, c_ssb
        /// (r suffix optional, default 1), entropy_sym, entropy_ssb.
        #[arg(long)]
        signal: String,
        #[arg(long, value_enum, default_value = "ssb")]
        mode: Mode,
        /// Re-ingest a sweep previously written with `sweep --format json`.
        #[arg(long)]
        input: Option<std::path::PathBuf>,
        #[arg(long)]
        jump_threshold: Option<f64>,
        #[arg(long)]
        slope_threshold: Option<f64>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundaryArg {
    Periodic,
    Open,
}

/// Fixed 12-significant-digit float formatting keeps outputs byte-stable.
fn fmt(x: f64) -> String {
    format!("{x:.11e}")
}

/// Round to 12 significant digits before JSON serialization.
fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let exp = x.abs().log10().floor();
    let scale = 10f64.powf(11.0 - exp);
    (x * scale).round() / scale
}

fn json_num(x: f64) -> Value {
    json!(round12(x))
}

fn parse_range(s: &str) -> Result<(f64, f64), Error> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| Error::Domain(format!("range '{s}' must be lo:hi")))?;
    let lo: f64 = lo.trim().parse().map_err(|_| Error::Domain(format!("bad range bound '{lo}'")))?;
    let hi: f64 = hi.trim().parse().map_err(|_| Error::Domain(format!("bad range bound '{hi}'")))?;
    Ok((lo, hi))
}

fn emit(out: &OutputArgs, content: &str) -> Result<(), Error> {
    match &out.output {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::Numerical(format!("cannot write {}: {e}", path.display()))),
        None => {
            std::io::stdout()
                .write_all(content.as_bytes())
                .map_err(|e| Error::Numerical(format!("stdout: {e}")))
        }
    }
}

fn run_point(delta: f64, rs: &[usize], ssb: bool, out: &OutputArgs) -> Result<(), Error> {
    let d = Anisotropy::new(delta)?;
    let energy = bethe::ground_energy(d)?;
    let mut obj = json!({
        "config": { "subcommand": "point", "delta": delta, "r": rs, "ssb": ssb },
        "e0": json_num(energy.e0),
        "branch": format!("{:?}", energy.branch),
        "quad_error": json_num(energy.quad_error),
    });
    if let Some(published) = bethe::ferro_energy_published_sign(d) {
        // debug record of the opposite-sign ferro value
        obj["e0_opposite_sign"] = json_num(published);
    }
    let mut per_r = serde_json::Map::new();
    for &r in rs {
        let sym = correlations::correlators_at(d, r, false)?;
        let broken = if ssb { correlations::correlators_at(d, r, true)? } else { sym };
        let (c_tilde, c) = entanglement::concurrence_symmetric(&sym);
        let (c_tilde_ssb, c_ssb) = entanglement::concurrence_ssb(&broken)?;
        per_r.insert(
            r.to_string(),
            json!({
                "tzz": json_num(sym.tzz),
                "txx": json_num(sym.txx),
                "c_tilde": json_num(c_tilde),
                "c": json_num(c),
                "c_tilde_ssb": json_num(c_tilde_ssb),
                "c_ssb": json_num(c_ssb),
                "approximate": sym.approximate,
            }),
        );
    }
    obj["correlators"] = Value::Object(per_r);
    let m_broken = if ssb && d.is_ferro() { 1.0 } else { 0.0 };
    obj["entropy_sym"] = json_num(entanglement::entropy_one_site(0.0)?);
    obj["entropy_ssb"] = json_num(entanglement::entropy_one_site(m_broken)?);
    emit(out, &format!("{}\n", serde_json::to_string_pretty(&obj).unwrap()))
}

fn sweep_csv(result: &SweepResult) -> String {
    let mut s = String::from("delta");
    for (name, _) in &result.signals {
        s.push(',');
        s.push_str(name);
    }
    s.push('\n');
    for (i, g) in result.grid.iter().enumerate() {
        let _ = write!(s, "{}", fmt(*g));
        for (_, series) in &result.signals {
            let _ = write!(s, ",{}", fmt(series[i]));
        }
        s.push('\n');
    }
    s
}

fn sweep_json(result: &SweepResult) -> String {
    let mut v = serde_json::to_value(result).unwrap();
    round_json(&mut v);
    format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
}

fn round_json(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(x) = n.as_f64() {
                if n.is_f64() {
                    if let Some(r) = serde_json::Number::from_f64(round12(x)) {
                        *v = Value::Number(r);
                    }
                }
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_json),
        Value::Object(o) => o.values_mut().for_each(round_json),
        _ => {}
    }
}

fn run_sweep(
    range: &str,
    points: usize,
    rs: Vec<usize>,
    ssb: bool,
    out: &OutputArgs,
) -> Result<(), Error> {
    let (lo, hi) = parse_range(range)?;
    let config = SweepConfig::new(lo, hi, points, rs, ssb)?;
    let result = scanner::sweep(&config)?;
    let content = match out.format {
        Format::Csv => sweep_csv(&result),
        Format::Json => sweep_json(&result),
    };
    emit(out, &content)
}

fn run_oracle(
    n: usize,
    delta: f64,
    boundary: BoundaryArg,
    r: usize,
    symmetrize: bool,
    out: &OutputArgs,
) -> Result<(), Error> {
    let spec = FiniteChainSpec {
        n_sites: n,
        delta,
        boundary: match boundary {
            BoundaryArg::Periodic => Boundary::Periodic,
            BoundaryArg::Open => Boundary::Open,
        },
        sector: None,
    };
    let sol = oracle::diagonalize(&spec)?;
    let c = oracle::measure(&sol, r, symmetrize)?;
    let report = entanglement::concurrence_report(&c)?;
    let obj = json!({
        "config": {
            "subcommand": "oracle", "n": n, "delta": delta, "r": r,
            "boundary": if spec.boundary == Boundary::Periodic { "periodic" } else { "open" },
            "symmetrize": symmetrize,
        },
        "energy": json_num(sol.energy),
        "energy_per_site": json_num(sol.energy_per_site),
        "e0_convention": json_num(sol.energy_per_site / 4.0),
        "degeneracy": sol.degeneracy,
        "sz_sector": sol.sz_sector,
        "correlators": {
            "tzz": json_num(c.tzz), "txx": json_num(c.txx),
            "m": json_num(c.m), "r": c.r,
        },
        "concurrence": {
            "c_tilde": json_num(report.c_tilde), "c": json_num(report.c),
            "c_tilde_ssb": json_num(report.c_tilde_ssb), "c_ssb": json_num(report.c_ssb),
            "wootters": json_num(report.wootters),
        },
        "entropy_one_site": json_num(entanglement::entropy_one_site(c.m)?),
    });
    emit(out, &format!("{}\n", serde_json::to_string_pretty(&obj).unwrap()))
}

/// Accept bare signal names ("c", "tzz") as shorthand for separation 1.
fn canonical_signal(signal: &str) -> String {
    match signal {
        "e0" | "entropy_sym" | "entropy_ssb" => signal.to_string(),
        s if s.ends_with(|c: char| c.is_ascii_digit()) => s.to_string(),
        s => format!("{s}_1"),
    }
}

#[allow(clippy::too_many_arguments)]
fn run_scan(
    range: Option<&str>,
    points: usize,
    signal: &str,
    mode: Mode,
    input: Option<&std::path::Path>,
    jump_threshold: Option<f64>,
    slope_threshold: Option<f64>,
    out: &OutputArgs,
) -> Result<(), Error> {
    let sweep_result = match input {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<SweepResult>(&text)
                .map_err(|e| Error::Domain(format!("bad sweep JSON: {e}")))?
        }
        None => {
            let (lo, hi) =
                parse_range(range.ok_or_else(|| Error::Domain("scan needs --range or --input".into()))?)?;
            let config = SweepConfig::new(lo, hi, points, vec![1, 2, 3], mode == Mode::Ssb)?;
            // scanning needs only the requested signal's separation
            let sig = canonical_signal(signal);
            let r_needed = sig
                .rsplit('_')
                .next()
                .and_then(|s| s.parse::<usize>().ok())
                .unwrap_or(1);
            let config = SweepConfig { rs: vec![r_needed], ..config };
            scanner::sweep(&config)?
        }
    };
    let sig = canonical_signal(signal);
    let thresholds = Thresholds { jump: jump_threshold, slope: slope_threshold };
    let raw = scanner::detect_with(&sweep_result, &sig, thresholds)?;
    let classified: Result<Vec<_>, _> =
        raw.iter().map(|r| scanner::classify_origin(&sweep_result, r)).collect();
    let reports = classified?;
    let mut v = serde_json::to_value(json!({
        "config": {
            "subcommand": "scan", "signal": sig, "points": points,
            "mode": if mode == Mode::Ssb { "ssb" } else { "symmetric" },
        },
        "reports": reports,
    }))
    .unwrap();
    round_json(&mut v);
    emit(out, &format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Point { delta, r, ssb, out } => run_point(delta, &r, ssb, &out),
        Command::Sweep { range, points, r, ssb, out } => run_sweep(&range, points, r, ssb, &out),
        Command::Oracle { n, delta, boundary, r, symmetrize, out } => {
            run_oracle(n, delta, boundary, r, symmetrize, &out)
        }
        Command::Scan {
            range,
            points,
            signal,
            mode,
            input,
            jump_threshold,
            slope_threshold,
            out,
        } => run_scan(
            range.as_deref(),
            points,
            &signal,
            mode,
            input.as_deref(),
            jump_threshold,
            slope_threshold,
            &out,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ (Error::Domain(_) | Error::UnsupportedSeparation(_) | Error::Resource(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
