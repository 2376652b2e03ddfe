mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use monopole_vdim::bps::{self, BpsReport};
use monopole_vdim::clifford::{check_anticommutation, identity_suite, verify_connection_correction, CliffordElement};
use monopole_vdim::gaussian::Gaussian;
use monopole_vdim::index::{vdim_with, VdimOptions};
use monopole_vdim::indicial::{number_line, required_spectrum_cutoff, roots_csv, BoundarySpectra};
use monopole_vdim::numfmt::{fmt12, sig12};
use monopole_vdim::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use config::{ConfigError, RunConfig};

const SEED_VAR: &str = "MONOPOLE_VDIM_SEED";

#[derive(Parser)]
#[command(name = "monopole-vdim", version, about = "Virtual dimension of SU(2) monopole moduli on scattering 3-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Indicial roots in a window, with an ASCII number line.
    Roots(RootsArgs),
    /// Fredholm index at a weight.
    Vdim(VdimArgs),
    /// Laplace spectrum of the boundary as CSV.
    Spectrum(SpectrumArgs),
    /// Finite-difference checks of the deformation complex on the charge-one monopole.
    VerifyBps(BpsArgs),
    /// Exact Clifford algebra identities in dimension n.
    VerifyClifford(CliffordArgs),
}

#[derive(Args)]
struct RootsArgs {
    #[arg(long)]
    config: PathBuf,
    /// Half-width of the root window (defaults to the config's root_cutoff).
    #[arg(long)]
    cutoff: Option<f64>,
    #[arg(long)]
    json: bool,
    /// Also write the root table to this CSV file.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Columns of the number line.
    #[arg(long, default_value_t = 73)]
    width: usize,
}

#[derive(Args)]
struct VdimArgs {
    #[arg(long)]
    config: PathBuf,
    /// Weight; overrides the config value.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Root window half-width (defaults to the config's root_cutoff).
    #[arg(long)]
    cutoff: Option<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    config: PathBuf,
    /// Largest eigenvalue listed (defaults to what the root window needs).
    #[arg(long)]
    cutoff: Option<f64>,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct BpsArgs {
    /// Half-width R of the cube [-R, R]^3.
    #[arg(long, default_value_t = 8.0)]
    radius: f64,
    /// Grid points per axis on the coarsest level.
    #[arg(long, default_value_t = 33)]
    points: usize,
    /// Number of grids, each with h halved.
    #[arg(long, default_value_t = 2)]
    levels: usize,
    /// Random covectors for the symbol check.
    #[arg(long, default_value_t = 16)]
    samples: usize,
    #[arg(long)]
    json: bool,
    /// Write |Phi| on the coarsest grid as a legacy VTK file.
    #[arg(long)]
    vtk: Option<PathBuf>,
}

#[derive(Args)]
struct CliffordArgs {
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Random covector pairs for the anticommutation check.
    #[arg(long, default_value_t = 16)]
    samples: usize,
    #[arg(long)]
    json: bool,
}

/// Failure with its exit code.
#[derive(Debug)]
enum Failure {
    Input(String),
    AtRoot(String),
    Internal(String),
    ChecksFailed,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Internal(_) | Failure::ChecksFailed => 1,
            Failure::Input(_) => 2,
            Failure::AtRoot(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::AlphaAtRoot { .. } => Failure::AtRoot(e.to_string()),
            Error::IdentityViolation { .. } | Error::EigenSolver(_) | Error::CorruptProfile(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Input(e.0)
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

type Outcome = Result<(), Failure>;

#[derive(Serialize)]
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }
}

/// Rounds every float in `v` to 12 significant digits.
fn rounded(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n.as_f64().map(|x| json!(sig12(x))).unwrap_or(Value::Number(n)),
        Value::Array(a) => Value::Array(a.into_iter().map(rounded).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, rounded(v))).collect()),
        other => other,
    }
}

fn to_json(value: &impl Serialize) -> Result<String, Failure> {
    let v = serde_json::to_value(value).map_err(|e| Failure::Internal(e.to_string()))?;
    serde_json::to_string_pretty(&rounded(v)).map_err(|e| Failure::Internal(e.to_string()))
}

fn write_file(path: &Path, contents: &str) -> Outcome {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
    }
    std::fs::write(path, contents).map_err(|e| io_failure(path, e))
}

fn emit(out: &mut impl Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes()).map_err(|e| Failure::Internal(e.to_string()))?;
    if !text.ends_with('\n') {
        out.write_all(b"\n").map_err(|e| Failure::Internal(e.to_string()))?;
    }
    Ok(())
}

fn seed() -> Result<u64, Failure> {
    match std::env::var(SEED_VAR) {
        Err(_) => Ok(0),
        Ok(s) => s.trim().parse().map_err(|_| Failure::Input(format!("{SEED_VAR} must be an unsigned integer, got {s:?}"))),
    }
}

fn report_checks(out: &mut impl Write, checks: &[Check]) -> Outcome {
    for c in checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        emit(out, &format!("{mark}  {}  ({})", c.name, c.detail))?;
    }
    Ok(())
}

fn root_window(config: &RunConfig, cutoff: Option<f64>) -> Result<f64, Failure> {
    let c = cutoff.unwrap_or(config.root_cutoff);
    if !(c > 0.0 && c.is_finite()) {
        return Err(Failure::Input(format!("--cutoff must be positive, got {c}")));
    }
    Ok(c)
}

fn cmd_roots(args: &RootsArgs, out: &mut impl Write) -> Outcome {
    let config = RunConfig::load(&args.config)?;
    let surface = config.surface()?;
    let window = root_window(&config, args.cutoff)?;
    let roots = BoundarySpectra::compute(&surface, window)?.bspec(window)?;
    let csv = roots_csv(&roots);
    if let Some(path) = &args.csv {
        write_file(path, &csv)?;
    }
    if let Some(path) = config.output_path("roots.csv") {
        write_file(&path, &csv)?;
    }
    if args.json {
        let rows: Vec<Value> = roots
            .iter()
            .map(|r| {
                json!({
                    "value": r.value,
                    "multiplicity": r.multiplicity,
                    "topological": r.is_topological(),
                    "origins": r.contributions.iter().map(ToString::to_string).collect::<Vec<_>>(),
                })
            })
            .collect();
        return emit(out, &to_json(&json!({ "cutoff": window, "roots": rows }))?);
    }
    emit(out, &csv)?;
    emit(out, &number_line(&roots, window, args.width))
}

fn cmd_vdim(args: &VdimArgs, out: &mut impl Write) -> Outcome {
    let config = RunConfig::load(&args.config)?;
    let alpha = args
        .alpha
        .or(config.alpha)
        .ok_or_else(|| Failure::Input("no weight given: pass --alpha or set alpha in the config".into()))?;
    if !alpha.is_finite() {
        return Err(Failure::Input("alpha must be finite".into()));
    }
    let surface = config.surface()?;
    let window = root_window(&config, args.cutoff)?;
    let options = VdimOptions { root_cutoff: window, ricci_nonnegative: config.ricci_nonnegative, sobolev: None };
    let data = BoundarySpectra::compute(&surface, window)?;
    let report = vdim_with(&surface, &data, alpha, &options)?.rounded();
    let json = to_json(&report)?;
    if let Some(path) = config.output_path("vdim.json") {
        write_file(&path, &json)?;
    }
    if args.json {
        emit(out, &json)
    } else {
        emit(out, &report.to_table())
    }
}

fn cmd_spectrum(args: &SpectrumArgs, out: &mut impl Write) -> Outcome {
    let config = RunConfig::load(&args.config)?;
    let surface = config.surface()?;
    let cutoff = args.cutoff.unwrap_or_else(|| required_spectrum_cutoff(config.root_cutoff));
    if !(cutoff >= 0.0 && cutoff.is_finite()) {
        return Err(Failure::Input(format!("--cutoff must be nonnegative, got {cutoff}")));
    }
    let table = surface.spectrum(cutoff)?;
    let csv = table.to_csv();
    if let Some(path) = &args.csv {
        write_file(path, &csv)?;
    }
    if let Some(path) = config.output_path("spectrum.csv") {
        write_file(&path, &csv)?;
    }
    if args.json {
        let rows: Vec<Value> = table
            .entries
            .iter()
            .map(|e| json!({ "component": e.component, "eigenvalue": e.eigenvalue, "multiplicity": e.multiplicity }))
            .collect();
        emit(out, &to_json(&json!({ "cutoff": table.cutoff, "entries": rows }))?)
    } else {
        emit(out, &csv)
    }
}

fn bps_checks(report: &BpsReport) -> Vec<Check> {
    let mut checks = Vec::new();
    let rates = &report.convergence_rates;
    if let Some(&r) = rates.bogomolny.last() {
        checks.push(Check::new("Bogomolny residual ratio in [3.5, 4.5]", (3.5..=4.5).contains(&r), format!("ratio {}", fmt12(r))));
    }
    if let Some(&r) = rates.chain.last() {
        checks.push(Check::new("chain residual ratio >= 3", r >= 3.0, format!("ratio {}", fmt12(r))));
    }
    if let Some(&r) = rates.weitzenbock0.last() {
        checks.push(Check::new("Weitzenbock residual ratio on 0-forms >= 3", r >= 3.0, format!("ratio {}", fmt12(r))));
    }
    for level in &report.levels {
        let n = level.grid.n;
        checks.push(Check::new(
            format!("charge = 1 (n = {n})"),
            (level.charge - 1.0).abs() < 1e-6,
            format!("degree {}", fmt12(level.charge)),
        ));
        checks.push(Check::new(
            format!("dB(D1 gamma) = D2 D1 gamma (n = {n})"),
            level.chain_two_paths < 1e-12,
            format!("relative gap {:e}", sig12(level.chain_two_paths)),
        ));
        checks.push(Check::new(
            format!("Coulomb operator is the discrete adjoint of D1 (n = {n})"),
            level.coulomb_selfcheck < 1e-12,
            format!("relative gap {:e}", sig12(level.coulomb_selfcheck)),
        ));
        checks.push(Check::new(
            format!("<-[Phi,[Phi,g]], g> >= 0 (n = {n})"),
            level.potential_pairing >= 0.0,
            fmt12(level.potential_pairing),
        ));
    }
    checks
}

fn random_covector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-9..=9)).collect();
        if v.iter().any(|&c| c != 0) {
            return v;
        }
    }
}

fn cmd_verify_bps(args: &BpsArgs, out: &mut impl Write) -> Outcome {
    let report = bps::verify_bps(args.radius, args.points, args.levels)?;
    let mut checks = bps_checks(&report);
    let mut rng = ChaCha8Rng::seed_from_u64(seed()?);
    let mut symbols = vec![bps::symbol_exactness(&[1, 0, 0])?];
    for _ in 0..args.samples {
        symbols.push(bps::symbol_exactness(&random_covector(&mut rng, 3))?);
    }
    let failing: Vec<&bps::SymbolReport> = symbols.iter().filter(|s| !s.exact()).collect();
    checks.push(Check::new(
        "symbol sequence exact, composite zero",
        failing.is_empty(),
        format!("{} covectors, {} failing", symbols.len(), failing.len()),
    ));
    if let Some(path) = &args.vtk {
        let config = bps::bps_monopole(args.radius, args.points)?;
        let mut buf = Vec::new();
        bps::write_phi_vtk(&config, &mut buf).map_err(|e| Failure::Internal(e.to_string()))?;
        write_file(path, &String::from_utf8_lossy(&buf))?;
    }
    if args.json {
        let mut v = serde_json::to_value(&report).map_err(|e| Failure::Internal(e.to_string()))?;
        if let Value::Object(map) = &mut v {
            map.insert("symbol".into(), serde_json::to_value(&symbols).map_err(|e| Failure::Internal(e.to_string()))?);
            map.insert("checks".into(), serde_json::to_value(&checks).map_err(|e| Failure::Internal(e.to_string()))?);
        }
        emit(out, &to_json(&v)?)?;
    } else {
        emit(out, &format!("{:<6} {:<17} {:<17} {:<17} {:<17} {}", "n", "h", "bogomolny", "chain", "weitzenbock0", "weitzenbock2"))?;
        for l in &report.levels {
            emit(
                out,
                &format!(
                    "{:<6} {:<17} {:<17} {:<17} {:<17} {}",
                    l.grid.n,
                    fmt12(l.h),
                    fmt12(l.bogomolny_residual),
                    fmt12(l.chain_residual),
                    fmt12(l.weitzenbock_residual0),
                    fmt12(l.weitzenbock_residual2)
                ),
            )?;
        }
        report_checks(out, &checks)?;
    }
    if checks.iter().all(|c| c.passed) {
        Ok(())
    } else {
        Err(Failure::ChecksFailed)
    }
}

fn cmd_verify_clifford(args: &CliffordArgs, out: &mut impl Write) -> Outcome {
    let n = args.dim;
    if n > 9 {
        return Err(Failure::Input(format!("--dim must be at most 9, got {n}")));
    }
    let mut checks: Vec<Check> = identity_suite(n)?.into_iter().map(|c| Check::new(c.name, c.passed, c.detail)).collect();
    let correction = verify_connection_correction(n)?;
    for row in &correction.rows {
        checks.push(Check::new(
            format!("sum_i cl(e_i) E_0i = -N on {}", row.blade),
            row.passed(),
            format!("boundary form {} of degree {}, got {}, expected {}", row.boundary_blade, row.boundary_degree, row.computed, row.expected),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed()?);
    let mut failures = 0;
    for _ in 0..args.samples {
        let to_vec = |v: Vec<i64>| CliffordElement::vector(&v.into_iter().map(Gaussian::from_int).collect::<Vec<_>>());
        let xi = to_vec(random_covector(&mut rng, n));
        let eta = to_vec(random_covector(&mut rng, n));
        if !check_anticommutation(&xi, &eta)? {
            failures += 1;
        }
    }
    checks.push(Check::new(
        "cl(xi) cl(eta) + cl(eta) cl(xi) = -2 <xi, eta>",
        failures == 0,
        format!("{} random pairs, {failures} failing", args.samples),
    ));
    if args.json {
        emit(out, &to_json(&json!({ "n": n, "checks": checks }))?)?;
    } else {
        report_checks(out, &checks)?;
    }
    if checks.iter().all(|c| c.passed) {
        Ok(())
    } else {
        Err(Failure::ChecksFailed)
    }
}

fn run(cli: &Cli) -> Outcome {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match &cli.command {
        Command::Roots(a) => cmd_roots(a, &mut out),
        Command::Vdim(a) => cmd_vdim(a, &mut out),
        Command::Spectrum(a) => cmd_spectrum(a, &mut out),
        Command::VerifyBps(a) => cmd_verify_bps(a, &mut out),
        Command::VerifyClifford(a) => cmd_verify_clifford(a, &mut out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Input(msg) => eprintln!("error: {msg}"),
                Failure::AtRoot(msg) => eprintln!("error: {msg}"),
                Failure::Internal(msg) => eprintln!("internal error: {msg}"),
                Failure::ChecksFailed => eprintln!("one or more checks failed"),
            }
            ExitCode::from(failure.code())
        }
    }
}
