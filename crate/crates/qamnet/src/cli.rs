//! Command-line front end.
//!
//! Exit codes: 0 success, 1 ambiguous recognition under `--strict`, 2 usage
//! error, 3 IO or format error. Every failure prints one line starting with
//! `qamnet: ` on standard error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qamnet_core::bench::{self, CellSummary, ExperimentConfig, NoiseModel, TimingRow, TrialRecord};
use qamnet_core::{
    amplitude_encode, bipolar_encode, phase_encode, Complex64, EncodingKind, Hologram, RawPattern,
    RecallPath, Recognition, StatePattern, DEFAULT_MIN_CONFIDENCE,
};

use crate::error::{Error, Result};
use crate::{io, runner, store};

/// Environment variable that overrides the seed of a config file.
pub const SEED_ENV: &str = "QAM_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "qamnet",
    version,
    about = "Complex-valued Hebbian associative memory"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encode patterns from a CSV or PGM file into complex states.
    Encode(EncodeArgs),
    /// Store patterns in a memory file.
    Build(BuildArgs),
    /// Apply a memory to a probe and print the raw output vector.
    Recall(RecallArgs),
    /// Classify a probe against a memory.
    Recognize(RecognizeArgs),
    /// Recognition accuracy over pattern counts and noise levels.
    BenchCapacity(SweepArgs),
    /// Same sweep as bench-capacity with an optional noise-model override.
    BenchNoise(NoiseArgs),
    /// Compare amplitude and phase encodings.
    CheckEquivalence(BenchArgs),
    /// Time dense against lazy recall.
    BenchTiming(SweepArgs),
    /// Print size, trace and Hermiticity residual of a memory file.
    Info(InfoArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Encoding {
    Amplitude,
    Bipolar,
    Phase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathArg {
    Dense,
    Lazy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Jitter,
    Flip,
}

#[derive(Debug, Args)]
pub struct EncodingOpts {
    #[arg(long, value_enum, default_value_t = Encoding::Phase)]
    pub encoding: Encoding,
    /// Bipolar threshold: values at or above map to +1.
    #[arg(long, default_value_t = 0.5)]
    pub threshold: f64,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub enc: EncodingOpts,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// CSV (one pattern per row) or PGM file; repeat for several files.
    #[arg(long, required = true)]
    pub patterns: Vec<PathBuf>,
    #[command(flatten)]
    pub enc: EncodingOpts,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ProbeOpts {
    #[arg(long)]
    pub memory: PathBuf,
    /// CSV or PGM file holding the probe.
    #[arg(long)]
    pub input: PathBuf,
    /// Which CSV row to use as the probe.
    #[arg(long, default_value_t = 0)]
    pub row: usize,
    #[command(flatten)]
    pub enc: EncodingOpts,
}

#[derive(Debug, Args)]
pub struct RecallArgs {
    #[command(flatten)]
    pub probe: ProbeOpts,
    #[arg(long, value_enum, default_value_t = PathArg::Dense)]
    pub path: PathArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct RecognizeArgs {
    #[command(flatten)]
    pub probe: ProbeOpts,
    #[arg(long, default_value_t = DEFAULT_MIN_CONFIDENCE)]
    pub min_confidence: f64,
    /// Exit with status 1 when the decision is ambiguous.
    #[arg(long)]
    pub strict: bool,
    /// Accepted for uniformity; output is always JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// JSON experiment config.
    #[arg(long)]
    pub config: PathBuf,
    /// Overrides QAM_SEED and the config seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub bench: BenchArgs,
    /// Write zeros in the timing columns.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct NoiseArgs {
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[arg(long, value_enum)]
    pub model: Option<ModelArg>,
}

#[derive(Debug, Args)]
pub struct InfoArgs {
    #[arg(long)]
    pub memory: PathBuf,
    #[arg(long)]
    pub json: bool,
}

/// Parses `args` (program name first), runs the command, returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            let rendered = e.to_string();
            let line = rendered
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            eprintln!("qamnet: usage error: {line}");
            return 2;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            match e {
                Error::Usage(_) => eprintln!("qamnet: usage error: {msg}"),
                _ => eprintln!("qamnet: error: {msg}"),
            }
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Encode(a) => encode(a),
        Command::Build(a) => build(a),
        Command::Recall(a) => recall(a),
        Command::Recognize(a) => recognize(a),
        Command::BenchCapacity(a) => sweep(a, None),
        Command::BenchNoise(a) => sweep(a.sweep, a.model),
        Command::CheckEquivalence(a) => equivalence(a),
        Command::BenchTiming(a) => timing(a),
        Command::Info(a) => info(a),
    }
}

fn is_pgm(path: &Path) -> bool {
    matches!(
        path.extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .as_deref(),
        Some("pgm" | "pnm")
    )
}

pub fn load_patterns(path: &Path) -> Result<Vec<RawPattern>> {
    if is_pgm(path) {
        Ok(vec![io::load_pgm(path)?])
    } else {
        io::load_csv(path)
    }
}

fn encode_one(raw: &RawPattern, opts: &EncodingOpts) -> qamnet_core::Result<StatePattern> {
    match opts.encoding {
        Encoding::Amplitude => amplitude_encode(raw),
        Encoding::Bipolar => Ok(bipolar_encode(raw, opts.threshold)),
        Encoding::Phase => phase_encode(raw),
    }
}

fn encode_file(path: &Path, opts: &EncodingOpts) -> Result<Vec<StatePattern>> {
    load_patterns(path)?
        .iter()
        .enumerate()
        .map(|(i, raw)| {
            encode_one(raw, opts).map_err(|e| Error::format(path, format!("pattern {i}: {e}")))
        })
        .collect()
}

fn write_output(out: Option<&Path>, data: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, data).map_err(|e| Error::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(data)
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut s = serde_json::to_vec_pretty(value).expect("serializable");
    s.push(b'\n');
    s
}

fn pair(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Serialize)]
struct EncodedPattern<'a> {
    label: Option<&'a str>,
    amplitudes: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct EncodeOutput<'a> {
    encoding: &'a str,
    #[serde(rename = "N")]
    n: usize,
    patterns: Vec<EncodedPattern<'a>>,
}

fn encode(a: EncodeArgs) -> Result<i32> {
    let states = encode_file(&a.input, &a.enc)?;
    let data = if a.json {
        to_json(&EncodeOutput {
            encoding: states[0].kind().name(),
            n: states[0].dim(),
            patterns: states
                .iter()
                .map(|s| EncodedPattern {
                    label: s.label(),
                    amplitudes: s.iter().map(pair).collect(),
                })
                .collect(),
        })
    } else {
        let mut out = String::new();
        for s in &states {
            let cells: Vec<String> = match s.kind() {
                EncodingKind::Amplitude | EncodingKind::Bipolar => {
                    s.iter().map(|z| z.re.to_string()).collect()
                }
                _ => s
                    .iter()
                    .flat_map(|z| [z.re.to_string(), z.im.to_string()])
                    .collect(),
            };
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out.into_bytes()
    };
    write_output(a.out.as_deref(), &data)?;
    Ok(0)
}

#[derive(Serialize)]
struct BuildOutput<'a> {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "P")]
    p: usize,
    encoding: &'a str,
    out: String,
}

fn build(a: BuildArgs) -> Result<i32> {
    let mut states = Vec::new();
    for path in &a.patterns {
        states.extend(encode_file(path, &a.enc)?);
    }
    let memory = Hologram::build(&states)?;
    store::save(&memory, &a.out)?;
    let summary = BuildOutput {
        n: memory.dim(),
        p: memory.pattern_count(),
        encoding: states[0].kind().name(),
        out: a.out.display().to_string(),
    };
    if a.json {
        write_output(None, &to_json(&summary))?;
    } else {
        eprintln!("wrote {}: N={} P={}", summary.out, summary.n, summary.p);
    }
    Ok(0)
}

fn load_probe(opts: &ProbeOpts) -> Result<(Hologram, StatePattern)> {
    let memory = store::load(&opts.memory)?;
    let raws = load_patterns(&opts.input)?;
    let raw = raws.get(opts.row).ok_or_else(|| {
        Error::Usage(format!(
            "--row {} out of range: {} has {} pattern(s)",
            opts.row,
            opts.input.display(),
            raws.len()
        ))
    })?;
    let probe =
        encode_one(raw, &opts.enc).map_err(|e| Error::format(&opts.input, e.to_string()))?;
    if probe.dim() != memory.dim() {
        return Err(Error::format(
            &opts.input,
            format!(
                "probe has {} units, memory has {}",
                probe.dim(),
                memory.dim()
            ),
        ));
    }
    Ok((memory, probe))
}

#[derive(Serialize)]
struct RecallOutput {
    path: &'static str,
    norm: f64,
    output: Vec<[f64; 2]>,
}

fn recall(a: RecallArgs) -> Result<i32> {
    let (memory, probe) = load_probe(&a.probe)?;
    let (path, name) = match a.path {
        PathArg::Dense => (RecallPath::Dense, "dense"),
        PathArg::Lazy => (RecallPath::Lazy, "lazy"),
    };
    let output = memory.recall(&probe, path)?;
    let norm = qamnet_core::state::norm(&output);
    let data = if a.json {
        to_json(&RecallOutput {
            path: name,
            norm,
            output: output.iter().map(pair).collect(),
        })
    } else {
        let mut s = format!("# norm={norm}\nre,im\n");
        for z in &output {
            s.push_str(&format!("{},{}\n", z.re, z.im));
        }
        s.into_bytes()
    };
    write_output(a.out.as_deref(), &data)?;
    Ok(0)
}

#[derive(Serialize)]
struct RecognizeOutput<'a> {
    decision: &'static str,
    winner: Option<usize>,
    label: Option<&'a str>,
    confidence: f64,
    margin: f64,
    min_confidence: f64,
    coefficients: Vec<[f64; 2]>,
}

fn recognize(a: RecognizeArgs) -> Result<i32> {
    if !(0.0..=1.0).contains(&a.min_confidence) {
        return Err(Error::Usage(format!(
            "--min-confidence {} outside [0, 1]",
            a.min_confidence
        )));
    }
    let (memory, probe) = load_probe(&a.probe)?;
    let decision = memory.recognize(&probe, a.min_confidence)?;
    let report = decision.report();
    let out = RecognizeOutput {
        decision: match decision {
            Recognition::Recognized { .. } => "recognized",
            Recognition::Ambiguous { .. } => "ambiguous",
        },
        winner: report.winner,
        label: report.winner.and_then(|k| memory.label(k)),
        confidence: report.confidence,
        margin: report.margin,
        min_confidence: a.min_confidence,
        coefficients: report.coefficients.iter().map(pair).collect(),
    };
    write_output(None, &to_json(&out))?;
    Ok(match decision {
        Recognition::Ambiguous { .. } if a.strict => 1,
        _ => 0,
    })
}

#[derive(Serialize)]
struct InfoOutput<'a> {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "P")]
    p: usize,
    trace: [f64; 2],
    hermiticity_residual: f64,
    labels: &'a [Option<String>],
}

fn info(a: InfoArgs) -> Result<i32> {
    let memory = store::load(&a.memory)?;
    let out = InfoOutput {
        n: memory.dim(),
        p: memory.pattern_count(),
        trace: pair(&memory.trace()),
        hermiticity_residual: memory.hermiticity_residual(),
        labels: memory.labels(),
    };
    let data = if a.json {
        to_json(&out)
    } else {
        format!(
            "N: {}\nP: {}\ntrace: {} {:+}i\nhermiticity_residual: {:e}\n",
            out.n, out.p, out.trace[0], out.trace[1], out.hermiticity_residual
        )
        .into_bytes()
    };
    write_output(None, &data)?;
    Ok(0)
}

/// Reads the config and applies the seed precedence flag > QAM_SEED > file.
pub fn load_config(args: &BenchArgs) -> Result<ExperimentConfig> {
    let path = &args.config;
    let text = fs::read(path).map_err(|e| Error::io(path, e))?;
    let mut cfg: ExperimentConfig =
        serde_json::from_slice(&text).map_err(|source| Error::Json {
            path: path.clone(),
            source,
        })?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    } else if let Ok(env) = std::env::var(SEED_ENV) {
        cfg.seed = env
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("{SEED_ENV}={env:?} is not a u64")))?;
    }
    cfg.validate()
        .map_err(|e| Error::format(path, e.to_string()))?;
    Ok(cfg)
}

fn wants_json(args: &BenchArgs) -> bool {
    args.json
        || args
            .out
            .as_deref()
            .and_then(|p| p.extension())
            .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn csv_rows<T: Serialize>(rows: &[T]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory csv");
    }
    w.into_inner().expect("in-memory csv")
}

#[derive(Serialize)]
struct SweepOutput<'a> {
    config: &'a ExperimentConfig,
    records: &'a [TrialRecord],
    summary: Vec<CellSummary>,
}

fn sweep(a: SweepArgs, model: Option<ModelArg>) -> Result<i32> {
    let mut cfg = load_config(&a.bench)?;
    if let Some(m) = model {
        cfg.noise_model = match m {
            ModelArg::Jitter => NoiseModel::Jitter,
            ModelArg::Flip => NoiseModel::Flip,
        };
        cfg.validate().map_err(|e| Error::Usage(e.to_string()))?;
    }
    let result = runner::run_capacity_sweep(&cfg, !a.no_timing)?;
    let data = if wants_json(&a.bench) {
        to_json(&SweepOutput {
            config: &cfg,
            records: &result.records,
            summary: result.summary(),
        })
    } else {
        csv_rows(&result.records)
    };
    write_output(a.bench.out.as_deref(), &data)?;
    Ok(0)
}

#[derive(Serialize)]
struct EquivalenceOutput<'a> {
    config: &'a ExperimentConfig,
    bipolar_all_identical: bool,
    #[serde(flatten)]
    report: &'a bench::EquivalenceReport,
}

fn equivalence(a: BenchArgs) -> Result<i32> {
    let cfg = load_config(&a)?;
    let report = bench::run_equivalence_check(&cfg)?;
    if !report.bipolar.all_identical() {
        eprintln!("qamnet: warning: bipolar amplitude and phase encodings diverged");
    }
    let out = EquivalenceOutput {
        config: &cfg,
        bipolar_all_identical: report.bipolar.all_identical(),
        report: &report,
    };
    write_output(a.out.as_deref(), &to_json(&out))?;
    Ok(0)
}

#[derive(Serialize)]
struct TimingOutput<'a> {
    config: &'a ExperimentConfig,
    rows: &'a [TimingRow],
}

fn timing(a: SweepArgs) -> Result<i32> {
    let cfg = load_config(&a.bench)?;
    let mut rows = runner::run_timing(&cfg)?;
    if a.no_timing {
        for r in &mut rows {
            r.dense_median_ns = 0;
            r.lazy_median_ns = 0;
        }
    }
    let data = if wants_json(&a.bench) {
        to_json(&TimingOutput {
            config: &cfg,
            rows: &rows,
        })
    } else {
        csv_rows(&rows)
    };
    write_output(a.bench.out.as_deref(), &data)?;
    Ok(0)
}
