use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use pcf_zeros::chain::ChainConfig;
use pcf_zeros::pcf::is_hermite;
use pcf_zeros::report::{chain_exit_code, read_table, render_table, run_table, Format, RunReport};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

/// Complex zeros of the parabolic cylinder function U(a,z) in the second quadrant.
#[derive(Debug, Parser)]
#[command(name = "pcfzeros", version)]
struct Args {
    /// Parameter a (must not be -k+1/2, k = 1, 2, ...).
    #[arg(long = "a", allow_negative_numbers = true, required_unless_present = "table")]
    a: Option<f64>,
    /// Domain size: Im z in [0, L] for a < 0, Re z in [-L, 0] for a > 0.
    #[arg(long = "L", required_unless_present = "table")]
    l: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutFormat,
    /// Fill est_rel_error by independent evaluation of U and U'.
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = 1e-4)]
    delta: f64,
    #[arg(long, default_value_t = 1e-14)]
    eps: f64,
    #[arg(long = "taylor-order", default_value_t = 30)]
    taylor_order: usize,
    #[arg(long = "lg-order", default_value_t = 12)]
    lg_order: usize,
    /// Output file (standard output when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Batch file with one `a L` pair per line.
    #[arg(long, conflicts_with_all = ["a", "l"])]
    table: Option<PathBuf>,
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), std::io::Error> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn run(args: Args) -> Result<(), (i32, String)> {
    let cfg = ChainConfig {
        eps: args.eps,
        delta: args.delta,
        taylor_order: args.taylor_order,
        lg_order: args.lg_order,
        ..ChainConfig::default()
    };
    cfg.validate().map_err(|e| (1, e.to_string()))?;
    let format = match args.format {
        OutFormat::Csv => Format::Csv,
        OutFormat::Json => Format::Json,
    };
    let io = |e: std::io::Error| (1, e.to_string());
    if let Some(path) = &args.table {
        let entries = read_table(path).map_err(|e| (e.exit_code(), format!("{}: {e}", path.display())))?;
        let reports = run_table(&entries, &cfg, args.verify).map_err(|e| (e.exit_code(), e.to_string()))?;
        return emit(&render_table(&reports, format), &args.out).map_err(io);
    }
    let (a, l) = (args.a.expect("required by clap"), args.l.expect("required by clap"));
    if !a.is_finite() || !(l > 0.0) || !l.is_finite() {
        return Err((1, "a must be finite and L positive".to_string()));
    }
    if is_hermite(a) {
        return Err((1, format!("a = {a} is excluded: a = -k+1/2 (Hermite case) has no complex zero string")));
    }
    let report = RunReport::run(a, l, &cfg, args.verify).map_err(|e| (chain_exit_code(&e), e.to_string()))?;
    emit(&report.render(format), &args.out).map_err(io)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("pcfzeros: {msg}");
            ExitCode::from(code as u8)
        }
    }
}
