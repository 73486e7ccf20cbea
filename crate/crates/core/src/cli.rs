//! The `randlink` command-line harness.
//!
//! Every command writes one JSON document to stdout (`converge` also writes a
//! CSV file) carrying `"schema": 1` and a [`RunManifest`]. Diagnostics go to
//! stderr. Exit codes: 0 pass, 1 verification failure, 2 usage error,
//! 3 resource cap, 4 I/O error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::braid::BraidWord;
use crate::caps::Caps;
use crate::error::{check_cap, Error, Result};
use crate::exact::{self, ErdosCheck, HammersleyEstimate, ERDOS_MIN_N};
use crate::partition::{self, Partition};
use crate::rational::Rational;
use crate::walk::{self, DistributionKind, Executor, WalkConfig};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_IO: i32 = 4;

const AFTER_HELP: &str = "\
Exit codes:
  0  success / every verdict passed
  1  a verification verdict failed
  2  invalid arguments
  3  a resource cap was exceeded
  4  an output file could not be written

Caps (environment overrides):
  RANDLINK_MAX_EXACT_N       largest n for Stirling rows       (default 2000)
  RANDLINK_MAX_PARTITION_N   largest n for partition scans     (default 120)
  RANDLINK_MAX_EXHAUSTIVE_N  largest n for whole-group checks  (default 8)
  RANDLINK_MAX_WALKS         largest number of walks           (default 10000000)
  RANDLINK_MAX_STEPS         largest walk length k             (default 1000000)";

#[derive(Debug, Parser)]
#[command(
    name = "randlink",
    version,
    about = "Random links as closures of random braids",
    after_help = AFTER_HELP
)]
pub struct Cli {
    /// Worker threads for Monte Carlo runs; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact statistics of the number of closure components.
    Exact {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        what: ExactWhat,
    },
    /// Check a theorem over a range of n; exit code is the verdict.
    Verify {
        #[arg(long, value_enum)]
        target: VerifyTarget,
        /// Check a single n.
        #[arg(long, conflicts_with_all = ["from", "to"])]
        n: Option<usize>,
        #[arg(long)]
        from: Option<usize>,
        #[arg(long)]
        to: Option<usize>,
    },
    /// Monte Carlo estimate of closure statistics.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        walks: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "mu-c")]
        dist: Dist,
        /// Where to write the full empirical distribution as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write every trajectory, one JSON braid word per line.
        #[arg(long)]
        dump_trajectories: Option<PathBuf>,
    },
    /// Convergence table over a list of walk lengths, as CSV.
    Converge {
        #[arg(long)]
        n: usize,
        /// Comma-separated walk lengths.
        #[arg(long, value_delimiter = ',', required = true)]
        steps: Vec<usize>,
        #[arg(long)]
        walks: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "mu-c")]
        dist: Dist,
        /// CSV output; the manifest goes next to it as `<out>.manifest.json`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Closure statistics of one braid word given as {"n": .., "word": [..]}.
    Closure {
        /// Input file; stdin when omitted.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExactWhat {
    Stirling,
    Distribution,
    Mode,
    Harmonic,
    Expected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyTarget {
    Hammersley,
    Erdos,
    Lemma,
    Partition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Dist {
    MuC,
    Uniform,
}

impl From<Dist> for DistributionKind {
    fn from(d: Dist) -> Self {
        match d {
            Dist::MuC => DistributionKind::MuC,
            Dist::Uniform => DistributionKind::UniformPermutation,
        }
    }
}

/// Provenance block embedded in every output.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub master_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<&'static str>,
    pub tool_version: &'static str,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl RunManifest {
    fn new(command: &str, parameters: Value) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters,
            master_seed: None,
            generator: None,
            tool_version: env!("CARGO_PKG_VERSION"),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }

    fn seeded(mut self, seed: u64) -> Self {
        self.master_seed = Some(seed);
        self.generator = Some(walk::GENERATOR_ID);
        self
    }
}

/// What a command produced: the stdout document and whether it passed.
struct Outcome {
    document: Value,
    pass: bool,
}

fn document(manifest: &RunManifest, result: Value) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "manifest": manifest,
        "result": result,
    })
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ResourceLimit { .. } => EXIT_CAP,
        Error::Io(_) => EXIT_IO,
        Error::Falsified(_) | Error::Internal(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            return code;
        }
    };
    let caps = match Caps::from_env() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let executor = Executor {
        threads: cli.threads,
        caps,
    };
    match execute(&cli.command, &executor, stderr) {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.document)
                .expect("documents are plain JSON values");
            if let Err(e) = writeln!(stdout, "{text}") {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_IO;
            }
            if outcome.pass {
                EXIT_PASS
            } else {
                let _ = writeln!(stderr, "verification FAILED; see verdicts above");
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(command: &Command, executor: &Executor, stderr: &mut dyn Write) -> Result<Outcome> {
    match command {
        Command::Exact { n, what } => cmd_exact(*n, *what, &executor.caps),
        Command::Verify {
            target,
            n,
            from,
            to,
        } => {
            let (lo, hi) = verify_range(*target, *n, *from, *to, &executor.caps)?;
            cmd_verify(*target, lo, hi, &executor.caps)
        }
        Command::Simulate {
            n,
            k,
            walks,
            seed,
            dist,
            out,
            dump_trajectories,
        } => {
            let config = WalkConfig {
                n: *n,
                k: *k,
                walks: *walks,
                master_seed: *seed,
                distribution: (*dist).into(),
            };
            cmd_simulate(
                &config,
                out.as_deref(),
                dump_trajectories.as_deref(),
                executor,
                stderr,
            )
        }
        Command::Converge {
            n,
            steps,
            walks,
            seed,
            dist,
            out,
        } => {
            let config = WalkConfig {
                n: *n,
                k: 0,
                walks: *walks,
                master_seed: *seed,
                distribution: (*dist).into(),
            };
            cmd_converge(&config, steps, out, executor, stderr)
        }
        Command::Closure { input } => cmd_closure(input.as_deref()),
    }
}

fn cmd_exact(n: usize, what: ExactWhat, caps: &Caps) -> Result<Outcome> {
    let manifest = RunManifest::new("exact", json!({ "n": n, "what": what }));
    let result = match what {
        ExactWhat::Stirling => {
            let row = exact::stirling_row_capped(n, caps.exact_n)?;
            json!({ "n": n, "values": row.values().iter().map(|v| v.to_string()).collect::<Vec<_>>() })
        }
        ExactWhat::Distribution => {
            let d = exact::component_distribution_capped(n, caps.exact_n)?;
            json!({ "n": n, "values": d })
        }
        ExactWhat::Mode => json!(exact::most_expected_components_capped(n, caps.exact_n)?),
        ExactWhat::Harmonic => {
            check_cap("exact n", n, caps.exact_n)?;
            json!(exact::harmonic(n)?)
        }
        ExactWhat::Expected => json!(exact::expected_components_exact_capped(n, caps.exact_n)?),
    };
    Ok(Outcome {
        document: document(&manifest, result),
        pass: true,
    })
}

fn verify_range(
    target: VerifyTarget,
    n: Option<usize>,
    from: Option<usize>,
    to: Option<usize>,
    caps: &Caps,
) -> Result<(usize, usize)> {
    let (default_lo, default_hi) = match target {
        VerifyTarget::Hammersley => (3, caps.exact_n),
        VerifyTarget::Erdos => (ERDOS_MIN_N, caps.exact_n),
        VerifyTarget::Lemma => (3, caps.exhaustive_n),
        VerifyTarget::Partition => (3, caps.partition_n),
    };
    let (lo, hi) = match n {
        Some(n) => (n, n),
        None => (from.unwrap_or(default_lo), to.unwrap_or(default_hi)),
    };
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty range {lo}..={hi}")));
    }
    let min = match target {
        VerifyTarget::Erdos => ERDOS_MIN_N,
        _ => 3,
    };
    if lo < min {
        return Err(Error::InvalidArgument(format!(
            "{target:?} needs n >= {min}, got {lo}"
        )));
    }
    Ok((lo, hi))
}

#[derive(Serialize)]
struct HammersleyVerdict {
    #[serde(flatten)]
    estimate: HammersleyEstimate,
    /// The residual range is only asserted from the Erdős regime on.
    asserted: bool,
    pass: bool,
    /// Same check with `K` = index of the largest coefficient of
    /// `(x+1)⋯(x+n)`. Reported only; it does not affect `pass`.
    coefficient_index: HammersleyEstimate,
}

#[derive(Serialize)]
struct ErdosVerdict {
    #[serde(flatten)]
    check: ErdosCheck,
    /// Reported only; it does not affect the verdict.
    coefficient_index: ErdosCheck,
}

/// `(n, component mode, coefficient index mode)` for `n` in `lo..=hi`.
fn modes_with_coefficient_index(
    lo: usize,
    hi: usize,
    caps: &Caps,
) -> Result<Vec<(usize, exact::ComponentMode, exact::ComponentMode)>> {
    check_cap("exact n", hi, caps.exact_n)?;
    let mut out = Vec::with_capacity(hi + 1 - lo);
    let mut prev: Option<exact::ComponentMode> = None;
    for row in exact::stirling_rows(hi + 1, caps.exact_n + 1)?.skip(lo - 1) {
        if let Some(mode) = prev {
            out.push((row.n() - 1, mode, exact::coefficient_mode_of(&row)));
        }
        prev = Some(row.mode());
    }
    Ok(out)
}

#[derive(Serialize)]
struct PartitionVerdict {
    n: usize,
    argmax: Partition,
    unique: bool,
    #[serde(with = "crate::rational::biguint_string")]
    class_size: BigUint,
    probability: Rational,
    pass: bool,
}

fn cmd_verify(target: VerifyTarget, lo: usize, hi: usize, caps: &Caps) -> Result<Outcome> {
    let manifest = RunManifest::new(
        "verify",
        json!({ "target": target, "from": lo, "to": hi }),
    );
    let (verdicts, pass): (Vec<Value>, bool) = match target {
        VerifyTarget::Hammersley => {
            let mut out = Vec::new();
            for (n, mode, coeff) in modes_with_coefficient_index(lo, hi, caps)? {
                let estimate = HammersleyEstimate::from_mode(n, mode)?;
                let asserted = n >= ERDOS_MIN_N;
                out.push(HammersleyVerdict {
                    pass: !asserted || estimate.meets_claimed_range,
                    estimate,
                    asserted,
                    coefficient_index: HammersleyEstimate::from_mode(n, coeff)?,
                });
            }
            let pass = out.iter().all(|v| v.pass);
            (to_values(&out)?, pass)
        }
        VerifyTarget::Erdos => {
            let mut out = Vec::new();
            for (n, mode, coeff) in modes_with_coefficient_index(lo, hi, caps)? {
                out.push(ErdosVerdict {
                    check: ErdosCheck::from_mode(n, mode)?,
                    coefficient_index: ErdosCheck::from_mode(n, coeff)?,
                });
            }
            let pass = out.iter().all(|v| v.check.pass);
            (to_values(&out)?, pass)
        }
        VerifyTarget::Lemma => {
            let out = (lo..=hi)
                .map(|n| partition::verify_lemma_capped(n, caps.exhaustive_n))
                .collect::<Result<Vec<_>>>()?;
            let pass = out.iter().all(|r| r.pass);
            (to_values(&out)?, pass)
        }
        VerifyTarget::Partition => {
            let out = (lo..=hi)
                .map(|n| partition_verdict(n, caps))
                .collect::<Result<Vec<_>>>()?;
            let pass = out.iter().all(|v| v.pass);
            (to_values(&out)?, pass)
        }
    };
    let result = if verdicts.len() == 1 {
        verdicts.into_iter().next().unwrap()
    } else {
        json!({ "verdicts": verdicts, "pass": pass })
    };
    Ok(Outcome {
        document: document(&manifest, result),
        pass,
    })
}

fn partition_verdict(n: usize, caps: &Caps) -> Result<PartitionVerdict> {
    let scan = partition::scan_max_class(n, caps.partition_n)?;
    let record = partition::conjugacy_class_size(scan.winner())?;
    let expected_size = BigUint::from(n) * exact::factorial(n - 2);
    let pass = scan.winner() == &Partition::hook(n)?
        && scan.unique()
        && record.class_size == expected_size
        && record.probability == Rational::recip_of(n as u64 - 1);
    Ok(PartitionVerdict {
        n,
        argmax: record.partition,
        unique: scan.unique(),
        class_size: record.class_size,
        probability: record.probability,
        pass,
    })
}

fn to_values<T: Serialize>(items: &[T]) -> Result<Vec<Value>> {
    items
        .iter()
        .map(|i| serde_json::to_value(i).map_err(|e| Error::Internal(e.to_string())))
        .collect()
}

fn walk_parameters(config: &WalkConfig) -> Value {
    json!({
        "n": config.n,
        "k": config.k,
        "walks": config.walks,
        "seed": config.master_seed,
        "dist": config.distribution.as_str(),
    })
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn cmd_simulate(
    config: &WalkConfig,
    out: Option<&Path>,
    dump: Option<&Path>,
    executor: &Executor,
    stderr: &mut dyn Write,
) -> Result<Outcome> {
    for w in config.validate(&executor.caps)? {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let manifest = RunManifest::new("simulate", walk_parameters(config)).seeded(config.master_seed);
    let emp = executor.monte_carlo(config)?;
    emp.check_consistency()?;

    let exact_part = if config.n <= executor.caps.exact_n {
        let row = exact::stirling_row_capped(config.n, executor.caps.exact_n)?;
        let dist = exact::distribution_of(&row)?;
        json!({
            "mode": row.mode(),
            "harmonic": exact::harmonic(config.n)?,
            "tv_components": walk::tv_distance_components(&emp, &dist)?,
        })
    } else {
        Value::Null
    };

    if let Some(path) = out {
        let mut w = create(path)?;
        let body = json!({
            "schema": SCHEMA_VERSION,
            "manifest": manifest,
            "distribution": emp,
        });
        serde_json::to_writer_pretty(&mut w, &body).map_err(std::io::Error::from)?;
        writeln!(w)?;
        w.flush()?;
    }
    if let Some(path) = dump {
        let mut w = create(path)?;
        executor.dump_trajectories(config, &mut w)?;
        w.flush()?;
    }

    let summary = json!({
        "mean_components": emp.mean_components,
        "modal_components": emp.modal_components(),
        "modal_partition": emp.modal_partition(),
        "component_counts": emp.component_counts,
        "exact": exact_part,
        "out": out.map(|p| p.display().to_string()),
    });
    Ok(Outcome {
        document: document(&manifest, summary),
        pass: true,
    })
}

fn cmd_converge(
    config: &WalkConfig,
    steps: &[usize],
    out: &Path,
    executor: &Executor,
    stderr: &mut dyn Write,
) -> Result<Outcome> {
    for w in config.validate(&executor.caps)? {
        let _ = writeln!(stderr, "warning: {w}");
    }
    for &k in steps {
        check_cap("steps", k, executor.caps.steps)?;
    }
    let mut params = walk_parameters(config);
    params["steps"] = json!(steps);
    params.as_object_mut().unwrap().remove("k");
    let manifest = RunManifest::new("converge", params).seeded(config.master_seed);

    let exact = exact::component_distribution_capped(config.n, executor.caps.exact_n)?;
    let rows = executor.convergence_curve(config, steps, &exact)?;

    let mut w = create(out)?;
    walk::write_convergence_csv(&rows, &mut w)?;
    w.flush()?;
    let sidecar = manifest_path(out);
    let mut m = create(&sidecar)?;
    serde_json::to_writer_pretty(
        &mut m,
        &json!({ "schema": SCHEMA_VERSION, "manifest": manifest }),
    )
    .map_err(std::io::Error::from)?;
    writeln!(m)?;
    m.flush()?;

    let result = json!({
        "rows": rows.len(),
        "out": out.display().to_string(),
        "manifest_file": sidecar.display().to_string(),
    });
    Ok(Outcome {
        document: document(&manifest, result),
        pass: true,
    })
}

/// `<out>.manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn cmd_closure(input: Option<&Path>) -> Result<Outcome> {
    let mut text = String::new();
    match input {
        Some(path) => {
            File::open(path)?.read_to_string(&mut text)?;
        }
        None => {
            std::io::stdin().read_to_string(&mut text)?;
        }
    }
    let word: BraidWord = serde_json::from_str(&text).map_err(|e| match e.classify() {
        serde_json::error::Category::Io => Error::Io(e.into()),
        _ => Error::InvalidArgument(format!("braid word: {e}")),
    })?;
    let p = word.project();
    let cycles = p.cycle_decomposition();
    let manifest = RunManifest::new("closure", json!({ "braid": &word }));
    let result = json!({
        "n": word.n(),
        "length": word.len(),
        "permutation": p.images().iter().map(|&x| x + 1).collect::<Vec<_>>(),
        "cycles": cycles.one_indexed(),
        "components": cycles.len(),
        "partition": p.cycle_type(),
    });
    Ok(Outcome {
        document: document(&manifest, result),
        pass: true,
    })
}
