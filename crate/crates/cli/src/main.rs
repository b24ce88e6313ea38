mod config;
mod output;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quon_su2::symbol::{tabulate_cg_nonstandard, tabulate_fbar, tabulate_standard, StandardKind};
use quon_su2::{build_h, build_rep, build_spin_ops, build_ur, parse_r, to_nonstandard, HalfInt, OperatorMatrix, VerifyConfig};
use serde::Serialize;

/// Largest `2j` accepted anywhere on the command line.
const MAX_TWICE_J: i32 = 128;

#[derive(Parser, Debug)]
#[command(name = "quon-su2", version, about = "SU(2) from quon algebras: symbol tables, operator exports, verification")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write to this file (atomically) instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coupling coefficients (j1 j2 alpha1 alpha2 | j alpha; r) for every j and label.
    TabulateCg(CgArgs),
    /// fbar_r (or f_r with --small) over every label of (j1, j2, j3).
    TabulateFbar(FbarArgs),
    /// Standard CG, 3jm, 6j or 9j values with all spins up to --j-max.
    TabulateStandard(StandardArgs),
    /// H, U_r, J+, J-, J3, J^2 on F_j (--j), or the quon operators on F (--k).
    ExportOps(ExportArgs),
    /// Run every verification suite and report residuals.
    Verify(VerifyArgs),
}

fn half(s: &str) -> Result<HalfInt, String> {
    let h: HalfInt = s.parse().map_err(|e: quon_su2::Error| e.to_string())?;
    if h.twice < 0 {
        return Err(format!("{s} is negative"));
    }
    if h.twice > MAX_TWICE_J {
        return Err(format!("{s} exceeds the dimension guard 2j <= {MAX_TWICE_J}"));
    }
    Ok(h)
}

fn real(s: &str) -> Result<f64, String> {
    parse_r(s).map_err(|e| e.to_string())
}

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("cannot parse {s:?} as a number"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("tolerance must be positive, got {s}"))
    }
}

#[derive(Args, Debug)]
struct CgArgs {
    #[arg(long, value_parser = half)]
    j1: HalfInt,
    #[arg(long, value_parser = half)]
    j2: HalfInt,
    /// Decimal or p/q.
    #[arg(long, value_parser = real, default_value = "0")]
    r: f64,
}

#[derive(Args, Debug)]
struct FbarArgs {
    #[arg(long, value_parser = half)]
    j1: HalfInt,
    #[arg(long, value_parser = half)]
    j2: HalfInt,
    #[arg(long, value_parser = half)]
    j3: HalfInt,
    #[arg(long, value_parser = real, default_value = "0")]
    r: f64,
    /// Tabulate the Wigner-Eckart coefficient f_r instead of fbar_r.
    #[arg(long)]
    small: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Cg,
    Threejm,
    Sixj,
    Ninej,
}

#[derive(Args, Debug)]
struct StandardArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, value_parser = half, default_value = "1")]
    j_max: HalfInt,
}

#[derive(Args, Debug)]
struct ExportArgs {
    /// Spin of F_j.
    #[arg(long, value_parser = half, conflicts_with = "k", required_unless_present = "k")]
    j: Option<HalfInt>,
    /// Quon order; exports a+-, b+-, N_a, N_b on F_a, F_b and H, U_r on F.
    #[arg(long)]
    k: Option<i64>,
    /// Sets phi_r = 2 pi j r (with j = (k-1)/2 under --k).
    #[arg(long, value_parser = real, default_value = "0")]
    r: f64,
    /// Explicit phi_r for --k, overriding --r.
    #[arg(long, requires = "k", allow_hyphen_values = true)]
    phi: Option<f64>,
    /// Express the F_j operators in the |j, alpha; r> basis.
    #[arg(long, conflicts_with = "k")]
    alpha: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Largest spin for the spin-j and eigenbasis suites.
    #[arg(long, value_parser = half, default_value = "25/2")]
    j_max: HalfInt,
    /// Comma-separated r values.
    #[arg(long, value_parser = real, value_delimiter = ',', default_value = "0,0.37,1,2.5")]
    r: Vec<f64>,
    /// Comma-separated quon orders.
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,7,8,9,10,11,12")]
    k: Vec<i64>,
    /// One tolerance for every non-exact check.
    #[arg(long, value_parser = positive)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Random orthonormality entries per r.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, value_parser = half, default_value = "4")]
    random_j_max: HalfInt,
    #[arg(long, value_parser = half, default_value = "3/2")]
    coupling_j_max: HalfInt,
    /// Bound on j1 + j2 + j3 in the fbar symmetry check.
    #[arg(long, value_parser = half, default_value = "9/2")]
    fbar_max_sum: HalfInt,
    #[arg(long, value_parser = half, default_value = "3")]
    tensor_j_max: HalfInt,
    #[arg(long, value_parser = half, default_value = "2")]
    standard_j_max: HalfInt,
    /// Suppress the summary on stderr.
    #[arg(long)]
    quiet: bool,
}

enum Failure {
    Usage(String),
    Runtime(String),
    Verification(usize),
}

impl From<quon_su2::Error> for Failure {
    fn from(e: quon_su2::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

#[derive(Serialize)]
struct CgParams {
    j1: HalfInt,
    j2: HalfInt,
    r: f64,
}

#[derive(Serialize)]
struct FbarParams {
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    r: f64,
}

#[derive(Serialize)]
struct StandardParams {
    kind: &'static str,
    j_max: HalfInt,
}

#[derive(Serialize)]
struct SpinExport<'a> {
    j: HalfInt,
    r: f64,
    phi_r: f64,
    basis: &'static str,
    operators: BTreeMap<&'a str, &'a OperatorMatrix>,
}

#[derive(Serialize)]
struct QuonExport<'a> {
    k: i64,
    phi_r: f64,
    q: [f64; 2],
    operators: BTreeMap<&'a str, &'a OperatorMatrix>,
}

fn export_ops(a: &ExportArgs, format: Format) -> Result<Vec<u8>, Failure> {
    if let Some(k) = a.k {
        let rep = build_rep(k)?;
        let phi = a.phi.unwrap_or(PI * (k - 1) as f64 * a.r);
        let h = build_h(&rep);
        let u = build_ur(&rep, phi);
        let ops: Vec<(&str, &OperatorMatrix)> = vec![
            ("a+", &rep.a_plus),
            ("a-", &rep.a_minus),
            ("N_a", &rep.n_a),
            ("b+", &rep.b_plus),
            ("b-", &rep.b_minus),
            ("N_b", &rep.n_b),
            ("H", &h),
            ("U_r", &u),
        ];
        return Ok(match format {
            Format::Json => {
                let q = rep.deformation.q();
                output::json(&QuonExport {
                    k,
                    phi_r: phi,
                    q: [q.re, q.im],
                    operators: ops.into_iter().collect(),
                })
            }
            Format::Csv => output::operators_csv(&ops),
        });
    }
    let j = a.j.expect("clap enforces --j or --k");
    let s = build_spin_ops(j, a.r)?;
    let mut owned = [
        ("H", s.h.clone()),
        ("U_r", s.u_r.clone()),
        ("U_r^dag", s.u_r_dag.clone()),
        ("J+", s.j_plus.clone()),
        ("J-", s.j_minus.clone()),
        ("J3", s.j3.clone()),
        ("J2", s.casimir.clone()),
    ];
    if a.alpha {
        for (_, op) in owned.iter_mut() {
            *op = to_nonstandard(j, a.r, op)?;
        }
    }
    let ops: Vec<(&str, &OperatorMatrix)> = owned.iter().map(|(n, o)| (*n, o)).collect();
    Ok(match format {
        Format::Json => output::json(&SpinExport {
            j,
            r: a.r,
            phi_r: s.space.phi_r,
            basis: if a.alpha { "alpha" } else { "m" },
            operators: ops.into_iter().collect(),
        }),
        Format::Csv => output::operators_csv(&ops),
    })
}

fn verify(a: &VerifyArgs, format: Format, output_path: Option<&std::path::Path>) -> Result<(), Failure> {
    if a.r.is_empty() || a.k.is_empty() {
        return Err(Failure::Usage("--r and --k need at least one value".into()));
    }
    let cfg = VerifyConfig {
        j_max: a.j_max,
        r_values: a.r.clone(),
        k_values: a.k.clone(),
        tol: a.tol,
        seed: a.seed,
        random_samples: a.samples,
        random_j_max: a.random_j_max,
        coupling_j_max: a.coupling_j_max,
        fbar_twice_sum: a.fbar_max_sum.twice,
        tensor_j_max: a.tensor_j_max,
        standard_j_max: a.standard_j_max,
    };
    let start = std::time::Instant::now();
    let report = quon_su2::run_suite(&cfg)?;
    let bytes = match format {
        Format::Json => output::json(&report),
        Format::Csv => output::verify_csv(&report),
    };
    output::emit(output_path, &bytes)?;
    let failed = report.failures().count();
    if !a.quiet {
        for c in report.failures() {
            eprintln!("FAIL {} {:?}: residual {:e} > {:e}", c.name, c.parameters, c.residual, c.tolerance);
        }
        eprintln!(
            "{} checks, {} failed, seed {}, {:.2} s",
            report.checks.len(),
            failed,
            report.seed,
            start.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        return Err(Failure::Verification(failed));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = cli.output.as_deref();
    let bytes = match &cli.command {
        Command::TabulateCg(a) => {
            let rows = tabulate_cg_nonstandard(a.j1, a.j2, a.r)?;
            let p = CgParams { j1: a.j1, j2: a.j2, r: a.r };
            output::table(cli.format, "tabulate-cg", p, &rows)
        }
        Command::TabulateFbar(a) => {
            let rows = tabulate_fbar(a.j1, a.j2, a.j3, a.r, a.small)?;
            let p = FbarParams {
                j1: a.j1,
                j2: a.j2,
                j3: a.j3,
                r: a.r,
            };
            let name = if a.small { "tabulate-fbar --small" } else { "tabulate-fbar" };
            output::table(cli.format, name, p, &rows)
        }
        Command::TabulateStandard(a) => {
            let (kind, name) = match a.kind {
                Kind::Cg => (StandardKind::Cg, "cg"),
                Kind::Threejm => (StandardKind::ThreeJm, "threejm"),
                Kind::Sixj => (StandardKind::SixJ, "sixj"),
                Kind::Ninej => (StandardKind::NineJ, "ninej"),
            };
            let rows = tabulate_standard(kind, a.j_max)?;
            let p = StandardParams { kind: name, j_max: a.j_max };
            output::table(cli.format, "tabulate-standard", p, &rows)
        }
        Command::ExportOps(a) => export_ops(a, cli.format)?,
        Command::Verify(a) => return verify(a, cli.format, out),
    };
    output::emit(out, &bytes)?;
    Ok(())
}

fn init_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("WIGNER_NONSTD_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("WIGNER_NONSTD_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Runtime(e.to_string()))
}

fn main() -> ExitCode {
    let args = match config::merge(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(config::ConfigError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = init_threads().and_then(|_| run(cli));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(n)) => {
            eprintln!("verification failed: {n} check(s) out of tolerance");
            ExitCode::from(1)
        }
    }
}
