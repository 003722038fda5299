//! Command-line front end over the library.
//!
//! Eight subcommands cover the main capabilities: reachable-set tables
//! (`range`), state-vector simulation with a secret-independence check
//! (`simulate`), the Gram-rank optimality check (`gram`), the classical
//! sampling baseline (`classical`), secant-variety dimensions against the
//! closed-form table (`secant-dim`), the generic-rank formula against a
//! measured scan (`kc`), Monte Carlo typical-rank fractions
//! (`typical-rank`), and a combined query-count report (`report`).
//!
//! Every run emits a JSON or CSV envelope that records the tool version,
//! the seed, and the resolved configuration, so identical invocations
//! produce identical bytes.  Exit codes: 0 when every checked value agrees
//! with its expected counterpart, 2 when a computation finished but the
//! values disagree, 1 on usage or resource errors.  The environment
//! variable `POLYQUERY_THREADS` caps worker threads.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classical;
use crate::ffield::{Field, is_prime};
use crate::monomial::MonomialBasis;
use crate::qsim;
use crate::querymap::{self, DEFAULT_WORK_CAP, QueryRange, Strategy, checked_pow};
use crate::secant::{self, DEFAULT_MODULAR_PRIME, DEFAULT_TRIALS, SecantInstance};
use crate::tolerances;
use crate::waring::{self, FitConfig, Ground, McConfig, PowerSumModel, Sampler};
use crate::Error;

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Runs the CLI against the process arguments and maps the outcome to an
/// exit code.
pub fn main_entry() -> ExitCode {
    if let Ok(raw) = std::env::var("POLYQUERY_THREADS") {
        if let Ok(threads) = raw.trim().parse::<usize>() {
            if threads > 0 {
                // A repeated initialization keeps the first pool; that is fine.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
            }
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[derive(Parser)]
#[command(
    name = "polyquery",
    version,
    about = "Quantum-query polynomial interpolation toolkit",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate reachable phase sets and tabulate success ratios.
    Range(RangeCmd),
    /// Simulate the full pipeline and check secret independence.
    Simulate(SimulateCmd),
    /// Check the Gram-matrix rank of the outcome states.
    Gram(GramCmd),
    /// Run the classical sampling baseline round trip.
    Classical(ClassicalCmd),
    /// Measure secant-variety dimensions against the closed form.
    SecantDim(SecantDimCmd),
    /// Compare the generic-rank formula with a measured scan.
    Kc(KcCmd),
    /// Estimate the fraction of random forms with rank at most k.
    TypicalRank(TypicalRankCmd),
    /// Bundle query counts and success ratios across field sizes.
    Report(ReportCmd),
}

fn run(cli: &Cli) -> Result<bool, Error> {
    match &cli.cmd {
        Cmd::Range(c) => run_range(c),
        Cmd::Simulate(c) => run_simulate(c),
        Cmd::Gram(c) => run_gram(c),
        Cmd::Classical(c) => run_classical(c),
        Cmd::SecantDim(c) => run_secant_dim(c),
        Cmd::Kc(c) => run_kc(c),
        Cmd::TypicalRank(c) => run_typical_rank(c),
        Cmd::Report(c) => run_report(c),
    }
}

/// Finite-field selection shared by the field-based subcommands.
#[derive(Args)]
struct FieldOpts {
    /// Field characteristic.
    #[arg(long, default_value_t = 2)]
    p: u64,
    /// Extension degree.
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Modulus coefficients, constant first, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    modulus: Option<Vec<u64>>,
}

impl FieldOpts {
    fn build(&self) -> Result<Field, Error> {
        match &self.modulus {
            Some(m) => Field::with_modulus(self.p, self.r, m),
            None => Field::new(self.p, self.r),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Sumset,
}

impl StrategyArg {
    fn to_strategy(self) -> Strategy {
        match self {
            StrategyArg::Exhaustive => Strategy::Exhaustive,
            StrategyArg::Sumset => Strategy::Sumset,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroundArg {
    Real,
    Complex,
}

impl GroundArg {
    fn to_ground(self) -> Ground {
        match self {
            GroundArg::Real => Ground::Real,
            GroundArg::Complex => Ground::Complex,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SamplerArg {
    Gaussian,
    UnitSphere,
}

impl SamplerArg {
    fn to_sampler(self) -> Sampler {
        match self {
            SamplerArg::Gaussian => Sampler::Gaussian,
            SamplerArg::UnitSphere => Sampler::UnitSphere,
        }
    }
}

/// Envelope carried by every report.
#[derive(Serialize)]
struct Envelope<'a, C: Serialize, R: Serialize> {
    version: &'static str,
    command: &'static str,
    seed: u64,
    config: &'a C,
    results: &'a R,
}

/// Field parameters echoed into the config block.
#[derive(Serialize)]
struct FieldEcho {
    p: u64,
    r: u32,
    q: u64,
    modulus: Vec<u64>,
}

fn field_echo(field: &Field) -> FieldEcho {
    FieldEcho { p: field.p(), r: field.r(), q: field.q(), modulus: field.modulus().to_vec() }
}

fn to_json<T: Serialize>(value: &T, pretty: bool) -> Result<String, Error> {
    let out = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    out.map_err(|e| Error::InvalidInput(format!("serialization failed: {e}")))
}

/// Renders the JSON and CSV forms of one report.  The CSV form repeats the
/// envelope header as comment lines so both carry the same provenance.
fn render<C: Serialize, R: Serialize>(
    command: &'static str,
    seed: u64,
    config: &C,
    results: &R,
    header: &str,
    rows: &[String],
) -> Result<(String, String), Error> {
    let envelope = Envelope { version: VERSION, command, seed, config, results };
    let json = to_json(&envelope, true)? + "\n";
    let mut csv = String::new();
    csv.push_str(&format!("# version: {VERSION}\n"));
    csv.push_str(&format!("# command: {command}\n"));
    csv.push_str(&format!("# seed: {seed}\n"));
    csv.push_str(&format!("# config: {}\n", to_json(config, false)?));
    csv.push_str(header);
    csv.push('\n');
    for row in rows {
        csv.push_str(row);
        csv.push('\n');
    }
    Ok((json, csv))
}

fn emit(output: &OutputOpts, json: String, csv: String) -> Result<(), Error> {
    let text = match output.format {
        Format::Json => json,
        Format::Csv => csv,
    };
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Resolves `--k` or `--kmax` into the list of query counts to run.
fn resolve_ks(k: Option<usize>, kmax: Option<usize>, lo: usize) -> Result<Vec<usize>, Error> {
    match (k, kmax) {
        (Some(_), Some(_)) => {
            Err(Error::InvalidInput("give either --k or --kmax, not both".into()))
        }
        (Some(k), None) => Ok(vec![k]),
        (None, Some(m)) => Ok((lo..=m).collect()),
        (None, None) => Err(Error::InvalidInput("one of --k or --kmax is required".into())),
    }
}

/// Splits a prime power into `(p, r)`; rejects every other size.
fn factor_prime_power(q: u64) -> Result<(u64, u32), Error> {
    if q < 2 {
        return Err(Error::InvalidInput(format!("field size must be at least 2, got {q}")));
    }
    for r in (2..=63u32).rev() {
        let p = integer_root(q, r);
        if p >= 2 && p.checked_pow(r) == Some(q) && is_prime(p) {
            return Ok((p, r));
        }
    }
    if is_prime(q) {
        return Ok((q, 1));
    }
    Err(Error::InvalidInput(format!("{q} is not a prime power")))
}

/// Largest `x` with `x^r <= v`.
fn integer_root(v: u64, r: u32) -> u64 {
    let mut x = (v as f64).powf(1.0 / r as f64).round() as u64;
    while x > 1 && x.checked_pow(r).is_none_or(|p| p > v) {
        x -= 1;
    }
    while (x + 1).checked_pow(r).is_some_and(|p| p <= v) {
        x += 1;
    }
    x
}

fn resolve_fields(opts: &FieldOpts, q_list: &Option<Vec<u64>>) -> Result<Vec<Field>, Error> {
    match q_list {
        Some(qs) if !qs.is_empty() => {
            let mut out = Vec::with_capacity(qs.len());
            for &q in qs {
                let (p, r) = factor_prime_power(q)?;
                out.push(Field::new(p, r)?);
            }
            Ok(out)
        }
        _ => Ok(vec![opts.build()?]),
    }
}

#[derive(Args)]
struct RangeCmd {
    #[command(flatten)]
    field: FieldOpts,
    /// Prime-power field sizes to sweep; overrides --p and --r.
    #[arg(long = "q-list", value_delimiter = ',')]
    q_list: Option<Vec<u64>>,
    /// Number of variables.
    #[arg(long)]
    n: usize,
    /// Total degree bound.
    #[arg(long)]
    d: u32,
    /// Single query count.
    #[arg(long)]
    k: Option<usize>,
    /// Sweep query counts 0 through kmax.
    #[arg(long)]
    kmax: Option<usize>,
    /// Enumeration strategy.
    #[arg(long, value_enum, default_value_t = StrategyArg::Sumset)]
    strategy: StrategyArg,
    /// Restrict queries to nonzero evaluation points.
    #[arg(long)]
    restricted: bool,
    /// Cap on enumeration work.
    #[arg(long = "work-cap", default_value_t = DEFAULT_WORK_CAP as u64)]
    work_cap: u64,
    /// Seed, recorded in the envelope.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the range entries as CSV here, plus a .meta.json sidecar.
    #[arg(long)]
    dump: Option<PathBuf>,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Serialize)]
struct RangeConfig {
    fields: Vec<FieldEcho>,
    n: usize,
    d: u32,
    ks: Vec<usize>,
    strategy: Strategy,
    restricted: bool,
    work_cap: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    dump: Option<String>,
}

#[derive(Serialize)]
struct RangeRow {
    q: u64,
    k: usize,
    j: usize,
    size: u64,
    /// `q^J` as a decimal string; it can overflow an in-band JSON number.
    denominator: String,
    ratio: String,
    ratio_f64: f64,
}

const RANGE_HEADER: &str = "q,k,j,size,denominator,ratio,ratio_f64";

fn range_row(range: &QueryRange) -> RangeRow {
    let ratio = range.ratio();
    RangeRow {
        q: range.q(),
        k: range.k(),
        j: range.j(),
        size: range.size() as u64,
        denominator: ratio.denominator.to_string(),
        ratio: ratio.to_string(),
        ratio_f64: ratio.to_f64(),
    }
}

fn range_csv_row(row: &RangeRow) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        row.q, row.k, row.j, row.size, row.denominator, row.ratio, row.ratio_f64
    )
}

fn build_range(
    field: &Field,
    basis: &MonomialBasis,
    k: usize,
    strategy: Strategy,
    restricted: bool,
    work_cap: u64,
) -> Result<QueryRange, Error> {
    if restricted {
        querymap::enumerate_nonzero(field, basis, k, work_cap as u128)
    } else {
        querymap::enumerate(field, basis, k, strategy, work_cap as u128)
    }
}

fn run_range(cmd: &RangeCmd) -> Result<bool, Error> {
    let fields = resolve_fields(&cmd.field, &cmd.q_list)?;
    let ks = resolve_ks(cmd.k, cmd.kmax, 0)?;
    if cmd.dump.is_some() && (fields.len() != 1 || ks.len() != 1) {
        return Err(Error::InvalidInput("--dump needs a single field and a single --k".into()));
    }
    let basis = MonomialBasis::new(cmd.n, cmd.d)?;
    let strategy = cmd.strategy.to_strategy();
    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    for field in &fields {
        for &k in &ks {
            let range = build_range(field, &basis, k, strategy, cmd.restricted, cmd.work_cap)?;
            if let Some(path) = &cmd.dump {
                dump_range(&range, path)?;
            }
            let row = range_row(&range);
            csv_rows.push(range_csv_row(&row));
            rows.push(row);
        }
    }
    let config = RangeConfig {
        fields: fields.iter().map(field_echo).collect(),
        n: cmd.n,
        d: cmd.d,
        ks,
        strategy,
        restricted: cmd.restricted,
        work_cap: cmd.work_cap,
        dump: cmd.dump.as_ref().map(|p| p.display().to_string()),
    };
    let (json, csv) = render("range", cmd.seed, &config, &rows, RANGE_HEADER, &csv_rows)?;
    emit(&cmd.output, json, csv)?;
    Ok(true)
}

fn dump_range(range: &QueryRange, path: &PathBuf) -> Result<(), Error> {
    let mut buf = Vec::new();
    range.write_csv(&mut buf)?;
    fs::write(path, &buf)?;
    let sidecar = to_json(&range.sidecar(), true)? + "\n";
    let meta = PathBuf::from(format!("{}.meta.json", path.display()));
    fs::write(meta, sidecar)?;
    Ok(())
}

#[derive(Args)]
struct SimulateCmd {
    #[command(flatten)]
    field: FieldOpts,
    /// Number of variables.
    #[arg(long)]
    n: usize,
    /// Total degree bound.
    #[arg(long)]
    d: u32,
    /// Query count.
    #[arg(long)]
    k: usize,
    /// Secrets to sample when the exhaustive sweep is too large.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Enumeration strategy.
    #[arg(long, value_enum, default_value_t = StrategyArg::Sumset)]
    strategy: StrategyArg,
    /// Also check the Gram rank of the outcome states.
    #[arg(long)]
    gram: bool,
    /// Cap on enumeration work.
    #[arg(long = "work-cap", default_value_t = DEFAULT_WORK_CAP as u64)]
    work_cap: u64,
    /// Seed for the secret sweep.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Serialize)]
struct SimulateConfig {
    field: FieldEcho,
    n: usize,
    d: u32,
    k: usize,
    samples: usize,
    strategy: Strategy,
    gram: bool,
    work_cap: u64,
}

#[derive(Serialize)]
struct SimulateResults {
    k: usize,
    size: u64,
    denominator: String,
    ratio: String,
    ratio_f64: f64,
    /// Simulated success probability for the zero secret.
    simulated: f64,
    secrets_tested: usize,
    max_deviation: f64,
    tolerance: f64,
    within_tolerance: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    gram: Option<qsim::GramReport>,
}

fn run_simulate(cmd: &SimulateCmd) -> Result<bool, Error> {
    let field = cmd.field.build()?;
    let basis = MonomialBasis::new(cmd.n, cmd.d)?;
    let range =
        build_range(&field, &basis, cmd.k, cmd.strategy.to_strategy(), false, cmd.work_cap)?;
    let ratio = range.ratio();
    let simulated = qsim::success_probability(&range, &vec![0; range.j()])?;
    let (max_deviation, secrets_tested) =
        qsim::independence_max_deviation(&range, cmd.samples, cmd.seed)?;
    let tolerance = tolerances::SUCCESS_MATCH;
    let within_tolerance =
        max_deviation <= tolerance && (simulated - ratio.to_f64()).abs() <= tolerance;
    let gram = if cmd.gram { Some(qsim::gram_rank(&range)?) } else { None };
    let verified = within_tolerance && gram.as_ref().is_none_or(|g| g.tight);

    let results = SimulateResults {
        k: cmd.k,
        size: range.size() as u64,
        denominator: ratio.denominator.to_string(),
        ratio: ratio.to_string(),
        ratio_f64: ratio.to_f64(),
        simulated,
        secrets_tested,
        max_deviation,
        tolerance,
        within_tolerance,
        gram,
    };
    let config = SimulateConfig {
        field: field_echo(&field),
        n: cmd.n,
        d: cmd.d,
        k: cmd.k,
        samples: cmd.samples,
        strategy: cmd.strategy.to_strategy(),
        gram: cmd.gram,
        work_cap: cmd.work_cap,
    };
    let mut header = String::from(
        "k,size,denominator,ratio,ratio_f64,simulated,secrets_tested,max_deviation,within_tolerance",
    );
    let mut row = format!(
        "{},{},{},{},{},{},{},{},{}",
        results.k,
        results.size,
        results.denominator,
        results.ratio,
        results.ratio_f64,
        results.simulated,
        results.secrets_tested,
        results.max_deviation,
        results.within_tolerance
    );
    if let Some(g) = &results.gram {
        header.push_str(",gram_rank,gram_bound,gram_tight");
        row.push_str(&format!(",{},{},{}", g.rank, g.bound, g.tight));
    }
    let (json, csv) = render("simulate", cmd.seed, &config, &results, &header, &[row])?;
    emit(&cmd.output, json, csv)?;
    Ok(verified)
}

#[derive(Args)]
struct GramCmd {
    #[command(flatten)]
    field: FieldOpts,
    /// Number of variables.
    #[arg(long)]
    n: usize,
    /// Total degree bound.
    #[arg(long)]
    d: u32,
    /// Single query count.
    #[arg(long)]
    k: Option<usize>,
    /// Sweep query counts 0 through kmax.
    #[arg(long)]
    kmax: Option<usize>,
    /// Cap on enumeration work.
    #[arg(long = "work-cap", default_value_t = DEFAULT_WORK_CAP as u64)]
    work_cap: u64,
    /// Seed, recorded in the envelope.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Serialize)]
struct GramConfig {
    field: FieldEcho,
    n: usize,
    d: u32,
    ks: Vec<usize>,
    work_cap: u64,
}

#[derive(Serialize)]
struct GramRow {
    k: usize,
    size: u64,
    rank: usize,
    bound: usize,
    tight: bool,
}

fn run_gram(cmd: &GramCmd) -> Result<bool, Error> {
    let field = cmd.field.build()?;
    let basis = MonomialBasis::new(cmd.n, cmd.d)?;
    let ks = resolve_ks(cmd.k, cmd.kmax, 0)?;
    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    let mut verified = true;
    for &k in &ks {
        let range = build_range(&field, &basis, k, Strategy::Sumset, false, cmd.work_cap)?;
        let report = qsim::gram_rank(&range)?;
        verified &= report.tight;
        let row = GramRow {
            k,
            size: range.size() as u64,
            rank: report.rank,
            bound: report.bound,
            tight: report.tight,
        };
        csv_rows.push(format!("{},{},{},{},{}", row.k, row.size, row.rank, row.bound, row.tight));
        rows.push(row);
    }
    let config =
        GramConfig { field: field_echo(&field), n: cmd.n, d: cmd.d, ks, work_cap: cmd.work_cap };
    let (json, csv) =
        render("gram", cmd.seed, &config, &rows, "k,size,rank,bound,tight", &csv_rows)?;
    emit(&cmd.output, json, csv)?;
    Ok(verified)
}

#[derive(Args)]
struct ClassicalCmd {
    #[command(flatten)]
    field: FieldOpts,
    /// Number of variables.
    #[arg(long)]
    n: usize,
    /// Total degree bound.
    #[arg(long)]
    d: u32,
    /// Point-set draws allowed while hunting an invertible system.
    #[arg(long, default_value_t = classical::DEFAULT_SAMPLE_ATTEMPTS)]
    samples: u32,
    /// Seed for points and coefficients.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Serialize)]
struct ClassicalConfig {
    field: FieldEcho,
    n: usize,
    d: u32,
    samples: u32,
}

#[derive(Serialize)]
struct ClassicalResults {
    /// Coefficients to recover, which is also the required sample count.
    j: usize,
    /// `q^n` as a decimal string, or null when it overflows.
    points_available: Option<String>,
    /// Whether `q^n >= J`, so an invertible point set can exist.
    feasible: bool,
    found: bool,
    round_trip_exact: bool,
    queries_used: usize,
}

fn run_classical(cmd: &ClassicalCmd) -> Result<bool, Error> {
    let field = cmd.field.build()?;
    let basis = MonomialBasis::new(cmd.n, cmd.d)?;
    let j = basis.len();
    let q = field.q();
    let avail = checked_pow(q, cmd.n as u32);
    let feasible = avail.is_none_or(|v| v >= j as u128);

    let (found, round_trip_exact, queries_used) =
        match classical::sample_points_full_rank(&field, &basis, cmd.samples, cmd.seed) {
            Ok(points) => {
                let mut rng = ChaCha8Rng::seed_from_u64(cmd.seed.wrapping_add(1));
                let coeffs: Vec<u64> = (0..j).map(|_| rng.random_range(0..q)).collect();
                let samples = classical::observe_fq(&field, &basis, &coeffs, &points);
                let solved = classical::interpolate_fq(&field, &basis, &samples)?;
                (true, solved == coeffs, points.len())
            }
            Err(Error::Exhausted { .. }) => (false, false, 0),
            Err(e) => return Err(e),
        };
    let verified = if feasible { found && round_trip_exact } else { !found };

    let results = ClassicalResults {
        j,
        points_available: avail.map(|v| v.to_string()),
        feasible,
        found,
        round_trip_exact,
        queries_used,
    };
    let config =
        ClassicalConfig { field: field_echo(&field), n: cmd.n, d: cmd.d, samples: cmd.samples };
    let row = format!(
        "{},{},{},{},{},{}",
        results.j,
        results.points_available.as_deref().unwrap_or(""),
        results.feasible,
        results.found,
        results.round_trip_exact,
        results.queries_used
    );
    let (json, csv) = render(
        "classical",
        cmd.seed,
        &config,
        &results,
        "j,points_available,feasible,found,round_trip_exact,queries_used",
        &[row],
    )?;
    emit(&cmd.output, json, csv)?;
    Ok(verified)
}

#[derive(Args)]
struct SecantDimCmd {
    /// Number of affine variables.
    #[arg(long)]
    n: usize,
    /// Degree of the forms.
    #[arg(long)]
    d: u32,
    /// Single point count.
    #[arg(long)]
    k: Option<usize>,
    /// Sweep point counts 1 through kmax.
    #[arg(long)]
    kmax: Option<usize>,
    /// Random point sets per dimension measurement.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u32,
    /// Prime modulus for the rank computations.
    #[arg(long, default_value_t = DEFAULT_MODULAR_PRIME)]
    prime: u64,
    /// Seed for the random point sets.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Serialize)]
struct SecantDimConfig {
    n: usize,
    d: u32,
    ks: Vec<usize>,
    trials: u32,
    prime: u64,
}

fn run_secant_dim(cmd: &SecantDimCmd) -> Result<bool, Error> {
    let inst = SecantInstance::new(cmd.n, cmd.d)?;
    let ks = resolve_ks(cmd.k, cmd.kmax, 1)?;
    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    let mut verified = true;
    for &k in &ks {
        let report = secant::secant_dim(&inst, k, cmd.trials, cmd.prime, cmd.seed)?;
        verified &= report.matches;
        csv_rows.push(format!(
            "{},{},{},{}",
            report.k, report.observed, report.expected, report.matches
        ));
        rows.push(report);
    }
    let config =
        SecantDimConfig { n: cmd.n, d: cmd.d, ks, trials: cmd.trials, prime: cmd.prime };
    let (json, csv) =
        render("secant-dim", cmd.seed, &config, &rows, "k,observed,expected,matches", &csv_rows)?;
    emit(&cmd.output, json, csv)?;
    Ok(verified)
}

#[derive(Args)]
struct KcCmd {
    /// Number of affine variables.
    #[arg(long)]
    n: usize,
    /// Degree of the forms.
    #[arg(long)]
    d: u32,
    /// Random point sets per dimension measurement.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u32,
    /// Prime modulus for the rank computations.
    #[arg(long, default_value_t = DEFAULT_MODULAR_PRIME)]
    prime: u64,
    /// Seed for the random point sets.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Serialize)]
struct KcConfig {
    n: usize,
    d: u32,
    trials: u32,
    prime: u64,
}

#[derive(Serialize)]
struct KcResults {
    n: usize,
    d: u32,
    j: u64,
    formula: u64,
    observed: u64,
    matches: bool,
}

fn run_kc(cmd: &KcCmd) -> Result<bool, Error> {
    let inst = SecantInstance::new(cmd.n, cmd.d)?;
    let formula = secant::generic_rank_formula(cmd.n, cmd.d)?;
    let scan = secant::generic_rank_scan(&inst, cmd.trials, cmd.prime, cmd.seed)?;
    let formula = u64::try_from(formula).expect("bounded by the column cap");
    let observed = scan.rank as u64;
    let results = KcResults {
        n: cmd.n,
        d: cmd.d,
        j: u64::try_from(inst.j()).expect("bounded by the column cap"),
        formula,
        observed,
        matches: formula == observed,
    };
    let config = KcConfig { n: cmd.n, d: cmd.d, trials: cmd.trials, prime: cmd.prime };
    let row = format!(
        "{},{},{},{},{},{}",
        results.n, results.d, results.j, results.formula, results.observed, results.matches
    );
    let (json, csv) =
        render("kc", cmd.seed, &config, &results, "n,d,j,formula,observed,matches", &[row])?;
    emit(&cmd.output, json, csv)?;
    Ok(results.matches)
}

#[derive(Args)]
struct TypicalRankCmd {
    /// Number of affine variables.
    #[arg(long)]
    n: usize,
    /// Degree of the forms.
    #[arg(long)]
    d: u32,
    /// Ground field for the fits.
    #[arg(long = "field", value_enum, default_value_t = GroundArg::Real)]
    field: GroundArg,
    /// Single rank to test.
    #[arg(long)]
    k: Option<usize>,
    /// Sweep ranks 1 through kmax.
    #[arg(long)]
    kmax: Option<usize>,
    /// Monte Carlo sample count.
    #[arg(long, default_value_t = 200)]
    samples: u32,
    /// Distribution of the random targets.
    #[arg(long, value_enum, default_value_t = SamplerArg::Gaussian)]
    sampler: SamplerArg,
    /// Optimizer restarts per rank decision.
    #[arg(long, default_value_t = 20)]
    restarts: u32,
    /// Relative residual tolerance for a successful fit.
    #[arg(long, default_value_t = tolerances::FIT_TOLERANCE)]
    tol: f64,
    /// Seed for targets and optimizer starts.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Serialize)]
struct TypicalRankConfig {
    n: usize,
    d: u32,
    field: Ground,
    ks: Vec<usize>,
    samples: u32,
    sampler: Sampler,
    restarts: u32,
    tol: f64,
}

#[derive(Serialize)]
struct TypicalRow {
    k: usize,
    successes: u32,
    samples: u32,
    fraction: f64,
    wilson_low: f64,
    wilson_high: f64,
}

fn run_typical_rank(cmd: &TypicalRankCmd) -> Result<bool, Error> {
    let model = PowerSumModel::new(cmd.n, cmd.d)?;
    let ks = resolve_ks(cmd.k, cmd.kmax, 1)?;
    let mc = McConfig { samples: cmd.samples, sampler: cmd.sampler.to_sampler(), seed: cmd.seed };
    let fit = FitConfig { restarts: cmd.restarts, tolerance: cmd.tol, ..FitConfig::default() };
    let ground = cmd.field.to_ground();
    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    for &k in &ks {
        let est = waring::rank_fraction(&model, ground, k, &mc, &fit)?;
        let row = TypicalRow {
            k,
            successes: est.successes,
            samples: est.samples,
            fraction: est.fraction,
            wilson_low: est.wilson_low,
            wilson_high: est.wilson_high,
        };
        csv_rows.push(format!(
            "{},{},{},{},{},{}",
            row.k, row.successes, row.samples, row.fraction, row.wilson_low, row.wilson_high
        ));
        rows.push(row);
    }
    let config = TypicalRankConfig {
        n: cmd.n,
        d: cmd.d,
        field: ground,
        ks,
        samples: cmd.samples,
        sampler: cmd.sampler.to_sampler(),
        restarts: cmd.restarts,
        tol: cmd.tol,
    };
    let (json, csv) = render(
        "typical-rank",
        cmd.seed,
        &config,
        &rows,
        "k,successes,samples,fraction,wilson_low,wilson_high",
        &csv_rows,
    )?;
    emit(&cmd.output, json, csv)?;
    Ok(true)
}

#[derive(Args)]
struct ReportCmd {
    /// Prime-power field sizes to sweep.
    #[arg(long = "q-list", value_delimiter = ',', required = true)]
    q_list: Vec<u64>,
    /// Number of variables.
    #[arg(long)]
    n: usize,
    /// Total degree bound.
    #[arg(long)]
    d: u32,
    /// Sweep query counts 0 through kmax.
    #[arg(long, default_value_t = 4)]
    kmax: usize,
    /// Cap on enumeration work.
    #[arg(long = "work-cap", default_value_t = DEFAULT_WORK_CAP as u64)]
    work_cap: u64,
    /// Seed, recorded in the envelope.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Serialize)]
struct ReportConfig {
    q_list: Vec<u64>,
    n: usize,
    d: u32,
    kmax: usize,
    work_cap: u64,
}

#[derive(Serialize)]
struct ReportResults {
    /// Samples a classical learner needs: the coefficient count J.
    classical_queries: u64,
    /// Queries after which the success ratio approaches one for large q:
    /// ceil(d / (n + d) * J).
    quantum_queries: u64,
    /// Generic rank over the complex numbers for the same (n, d).
    generic_rank_complex: u64,
    rows: Vec<RangeRow>,
}

fn run_report(cmd: &ReportCmd) -> Result<bool, Error> {
    let basis = MonomialBasis::new(cmd.n, cmd.d)?;
    let j = basis.len() as u128;
    let split = (cmd.n + cmd.d as usize) as u128;
    let quantum = (cmd.d as u128 * j).div_ceil(split);
    let kc = secant::generic_rank_formula(cmd.n, cmd.d)?;

    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    for &q in &cmd.q_list {
        let (p, r) = factor_prime_power(q)?;
        let field = Field::new(p, r)?;
        for k in 0..=cmd.kmax {
            let range = build_range(&field, &basis, k, Strategy::Sumset, false, cmd.work_cap)?;
            let row = range_row(&range);
            csv_rows.push(range_csv_row(&row));
            rows.push(row);
        }
    }
    let results = ReportResults {
        classical_queries: j as u64,
        quantum_queries: u64::try_from(quantum).expect("small by the term cap"),
        generic_rank_complex: u64::try_from(kc).expect("small by the term cap"),
        rows,
    };
    let config = ReportConfig {
        q_list: cmd.q_list.clone(),
        n: cmd.n,
        d: cmd.d,
        kmax: cmd.kmax,
        work_cap: cmd.work_cap,
    };
    let mut header = String::new();
    header.push_str(&format!("# classical_queries: {}\n", results.classical_queries));
    header.push_str(&format!("# quantum_queries: {}\n", results.quantum_queries));
    header.push_str(&format!("# generic_rank_complex: {}\n", results.generic_rank_complex));
    header.push_str(RANGE_HEADER);
    let (json, csv) = render("report", cmd.seed, &config, &results, &header, &csv_rows)?;
    emit(&cmd.output, json, csv)?;
    Ok(true)
}
