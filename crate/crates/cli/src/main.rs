use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::str::FromStr;

use bpa_core::asymptotics;
use bpa_core::bfile::{self, BFile, Comparison};
use bpa_core::enumerate::{self, EnumerationBudget, DEFAULT_MAX_COUNT};
use bpa_core::format;
use bpa_core::identities::{self, GridSpec};
use bpa_core::stirling::{self, GsnKey, DEFAULT_ORACLE_CAP};
use bpa_core::{compute, Error, Method, Params};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

const FETCH_ENV: &str = "BPA_OEIS_BASE_URL";

#[derive(Parser)]
#[command(
    name = "bpa",
    version,
    about = "Barred preferential arrangement numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print H_0..H_n for one parameter point.
    Compute(ComputeArgs),
    /// Print generalized Stirling numbers S(n, i, alpha, beta, gamma).
    Stirling(StirlingArgs),
    /// Print generalized Bell numbers B_0..B_n.
    Bell(BellArgs),
    /// List (or count) every structure on {1..n}.
    Enumerate(EnumerateArgs),
    /// Check every identity over a parameter grid; JSON lines on stdout.
    Verify(VerifyArgs),
    /// Compare a computed prefix against a b-file.
    Bfile(BfileArgs),
    /// Growth-rate diagnostics as CSV.
    Growth(GrowthArgs),
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    #[arg(long, default_value_t = 1)]
    lambda: u32,
    #[arg(long, default_value_t = 1)]
    beta: u32,
    #[arg(long, default_value_t = 0)]
    gamma: u32,
}

impl ParamArgs {
    fn params(&self) -> Result<Params, Error> {
        Params::new(self.lambda, self.beta, self.gamma)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Plain,
    Csv,
    Bfile,
    Jsonl,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, visible_alias = "nmax")]
    n: u32,
    #[arg(long, default_value = "egf", value_parser = parse_method)]
    method: Method,
    #[arg(long, value_enum, default_value = "plain")]
    format: OutputFormat,
}

#[derive(Args)]
struct StirlingArgs {
    #[arg(long)]
    n: u32,
    /// Single column; all of 0..=n when omitted.
    #[arg(long)]
    i: Option<u32>,
    #[arg(long, default_value_t = 0)]
    alpha: u32,
    #[arg(long, default_value_t = 1)]
    beta: u32,
    #[arg(long, default_value_t = 0)]
    gamma: u32,
    /// Print the integers beta^i i! S instead of S.
    #[arg(long)]
    scaled: bool,
    /// Also count cell assignments by brute force and compare (alpha = 0).
    #[arg(long)]
    oracle: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum BellMethod {
    Closed,
    Dobinski,
}

#[derive(Args)]
struct BellArgs {
    #[arg(long, visible_alias = "nmax")]
    n: u32,
    #[arg(long, default_value_t = 0)]
    alpha: u32,
    #[arg(long, default_value_t = 1)]
    beta: u32,
    #[arg(long, default_value_t = 0)]
    gamma: u32,
    #[arg(long, value_enum, default_value = "closed")]
    method: BellMethod,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    n: u32,
    /// Refuse to start if more structures than this are predicted.
    #[arg(long, default_value_t = DEFAULT_MAX_COUNT)]
    budget: u64,
    /// Print only the number of structures.
    #[arg(long)]
    count: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 25)]
    nmax: u32,
    #[arg(long, default_value_t = 3)]
    lambda_max: u32,
    #[arg(long, default_value_t = 3)]
    beta_max: u32,
    #[arg(long, default_value_t = 3)]
    gamma_max: u32,
    /// Largest n for enumeration-backed checks.
    #[arg(long, default_value_t = 5)]
    enum_nmax: u32,
    /// Print only failing reports.
    #[arg(long)]
    failures_only: bool,
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["fixture", "check", "fetch"])))]
struct BfileArgs {
    /// Parameter point; defaults to the fixture's own point with --fixture.
    #[arg(long)]
    lambda: Option<u32>,
    #[arg(long)]
    beta: Option<u32>,
    #[arg(long)]
    gamma: Option<u32>,
    /// Bundled offline sequence id.
    #[arg(long)]
    fixture: Option<String>,
    /// Path of a b-file on disk.
    #[arg(long)]
    check: Option<String>,
    /// Sequence id to download from the server named by BPA_OEIS_BASE_URL.
    #[arg(long)]
    fetch: Option<String>,
    /// Compare only indices up to this bound.
    #[arg(long, default_value_t = 500)]
    nmax: u64,
}

#[derive(Args)]
struct GrowthArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = 100)]
    nmax: u32,
    /// Also check H_n <= n! q^n with q = beta/0.6931 + epsilon.
    #[arg(long)]
    bound: bool,
    #[arg(long, default_value = "1/10", value_parser = parse_rational)]
    epsilon: BigRational,
}

fn parse_method(s: &str) -> Result<Method, String> {
    Method::from_str(s).map_err(|e| e.to_string())
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    BigRational::from_str(s).map_err(|e| format!("{s:?}: {e}"))
}

enum CliError {
    Core(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// `Ok(passed)`: whether every check in the run passed.
type Outcome = Result<bool, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Stirling(a) => cmd_stirling(a),
        Command::Bell(a) => cmd_bell(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bfile(a) => cmd_bfile(a),
        Command::Growth(a) => cmd_growth(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CliError::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::OracleMismatch(_) | Error::NonExactDivision { .. } => 1,
                _ => 2,
            })
        }
    }
}

fn emit(text: &str) -> io::Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()
}

fn sequence_text(label: &str, values: &[BigInt], fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Plain => {
            let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            format!("{}\n", parts.join(" "))
        }
        OutputFormat::Csv => {
            let mut s = format!("n,{label}\n");
            for (n, v) in values.iter().enumerate() {
                s.push_str(&format!("{n},{v}\n"));
            }
            s
        }
        OutputFormat::Bfile => BFile::from_values(values, 0).write(),
        OutputFormat::Jsonl => {
            let mut s = String::new();
            for (n, v) in values.iter().enumerate() {
                s.push_str(&format!("{{\"n\":{n},\"value\":\"{v}\"}}\n"));
            }
            s
        }
    }
}

fn cmd_compute(a: ComputeArgs) -> Outcome {
    let params = a.params.params()?;
    let table = compute(&params, a.n as usize, a.method)?;
    let values: Vec<BigInt> = table.values.into_iter().map(BigInt::from).collect();
    emit(&sequence_text("H_n", &values, a.format))?;
    Ok(true)
}

fn cmd_stirling(a: StirlingArgs) -> Outcome {
    let columns = match a.i {
        Some(i) => vec![i],
        None => (0..=a.n).collect(),
    };
    if a.oracle && a.alpha != 0 {
        return Err(Error::InvalidParams("the cell-count oracle needs alpha = 0".into()).into());
    }
    let mut ok = true;
    let mut parts = Vec::new();
    for i in columns {
        let key = GsnKey::new(a.n, i, a.alpha, a.beta, a.gamma)?;
        let scaled = stirling::stirling_scaled(&key);
        if a.oracle {
            let counted = stirling::cell_count_oracle(a.n, i, a.beta, a.gamma, DEFAULT_ORACLE_CAP)?;
            if BigInt::from(counted.clone()) != scaled {
                eprintln!("mismatch at i = {i}: formula {scaled}, counted {counted}");
                ok = false;
            }
        }
        parts.push(if a.scaled {
            scaled.to_string()
        } else {
            stirling::stirling(&key).to_string()
        });
    }
    emit(&format!("{}\n", parts.join(" ")))?;
    Ok(ok)
}

fn cmd_bell(a: BellArgs) -> Outcome {
    let values = (0..=a.n)
        .map(|n| match a.method {
            BellMethod::Closed => stirling::bell(n, a.alpha, a.beta, a.gamma),
            BellMethod::Dobinski => stirling::bell_dobinski(n, a.alpha, a.beta, a.gamma),
        })
        .collect::<Result<Vec<_>, _>>()?;
    emit(&sequence_text("B_n", &values, OutputFormat::Plain))?;
    Ok(true)
}

fn cmd_enumerate(a: EnumerateArgs) -> Outcome {
    let params = a.params.params()?;
    let budget = EnumerationBudget::new(a.budget);
    if a.count {
        emit(&format!("{}\n", enumerate::count(a.n, &params, &budget)?))?;
        return Ok(true);
    }
    let mut out = BufWriter::new(io::stdout().lock());
    let mut line = String::new();
    for s in enumerate::enumerate(a.n, &params, &budget)? {
        line.clear();
        format::format_into(&mut line, &s);
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    out.flush()?;
    Ok(true)
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let grid = GridSpec {
        n_max: a.nmax,
        lambda_max: a.lambda_max,
        beta_max: a.beta_max,
        gamma_max: a.gamma_max,
        enumeration_n_max: a.enum_nmax,
        inject_fault: a.inject_fault,
    };
    let reports = identities::run_suite(&grid)?;
    let mut out = BufWriter::new(io::stdout().lock());
    for r in reports.iter().filter(|r| !a.failures_only || !r.pass) {
        writeln!(out, "{}", r.to_json_line())?;
    }
    out.flush()?;
    let failed: Vec<_> = reports.iter().filter(|r| !r.pass).collect();
    for r in &failed {
        eprintln!(
            "FAIL {} at n={} lambda={} beta={} gamma={}: {} != {}",
            r.identity, r.n, r.lambda, r.beta, r.gamma, r.lhs, r.rhs
        );
    }
    eprintln!("{} reports, {} failed", reports.len(), failed.len());
    Ok(failed.is_empty())
}

fn fetch(id: &str) -> Result<String, Error> {
    let base = std::env::var(FETCH_ENV)
        .map_err(|_| Error::BFile(format!("--fetch needs {FETCH_ENV} to be set")))?;
    let url = bfile::fetch_url(&base, id)?;
    ureq::get(&url)
        .call()
        .map_err(|e| Error::BFile(format!("fetching {url}: {e}")))?
        .into_string()
        .map_err(|e| Error::BFile(format!("reading {url}: {e}")))
}

fn cmd_bfile(a: BfileArgs) -> Outcome {
    let (text, default_params) = if let Some(id) = &a.fixture {
        let f =
            bfile::fixture(id).ok_or_else(|| Error::BFile(format!("no bundled fixture {id:?}")))?;
        (f.text.to_string(), Some(f.params))
    } else if let Some(path) = &a.check {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::BFile(format!("reading {path}: {e}")))?;
        (text, None)
    } else if let Some(id) = &a.fetch {
        (fetch(id)?, None)
    } else {
        unreachable!("clap requires one source");
    };
    let (l, b, g) = match (a.lambda, a.beta, a.gamma, default_params) {
        (None, None, None, Some(p)) => p,
        (l, b, g, _) => (l.unwrap_or(1), b.unwrap_or(1), g.unwrap_or(0)),
    };
    let params = Params::new(l, b, g)?;
    let mut table = BFile::parse(&text)?;
    table.entries.retain(|(i, _)| *i <= a.nmax);
    let Some(max_index) = table.max_index() else {
        return Err(Error::BFile("no entries to compare".into()).into());
    };
    let computed: Vec<BigInt> = compute(&params, max_index as usize, Method::Egf)?
        .values
        .into_iter()
        .map(BigInt::from)
        .collect();
    match table.compare(&computed) {
        Comparison::Match { terms } => {
            emit(&format!("match: {terms} terms for {params}\n"))?;
            Ok(true)
        }
        Comparison::Mismatch {
            index,
            expected,
            found,
        } => {
            emit(&format!(
                "mismatch at n = {index}: b-file {expected}, computed {found}\n"
            ))?;
            Ok(false)
        }
        Comparison::TooShort { index } => {
            Err(Error::BFile(format!("computed prefix does not reach index {index}")).into())
        }
    }
}

fn cmd_growth(a: GrowthArgs) -> Outcome {
    let params = a.params.params()?;
    let rows = asymptotics::ratio_table(&params, a.nmax)?;
    emit(&asymptotics::to_csv(&rows))?;
    if !a.bound {
        return Ok(true);
    }
    let check = asymptotics::bound_check(&params, &a.epsilon, 1..=a.nmax)?;
    match check.first_violation() {
        None => {
            eprintln!("bound holds for n = 1..={} with q = {}", a.nmax, check.q);
            Ok(true)
        }
        Some(n) => {
            let count = check.per_n.iter().filter(|(_, ok)| !ok).count();
            eprintln!(
                "bound fails at {count} of {} points (first n = {n}) with q = {}",
                check.per_n.len(),
                check.q
            );
            Ok(false)
        }
    }
}
