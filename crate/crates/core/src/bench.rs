//! Seeded experiments: capacity and noise sweeps, amplitude/phase
//! equivalence, dense/lazy timing.
//!
//! Every trial draws its randomness from a seed derived from the config seed
//! and the trial's coordinates, so trials are independent, can run in any
//! order, and reproduce bit for bit. Wall-clock time is injected through
//! [`Clock`] and kept out of the data fields.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::hint::black_box;

use crate::encode::{amplitude_encode, bipolar_encode, bipolar_phases, phase_encode, RawPattern};
use crate::error::{Error, Result};
use crate::memory::{
    relative_disagreement, Hologram, RecallPath, Recognition, DEFAULT_MIN_CONFIDENCE,
};
use crate::rng::{derive_seed, Rng};
use crate::state::{inner, StatePattern};

pub const MAX_DIMENSION: usize = 4096;
pub const MAX_PATTERNS: usize = 4096;

/// Agreement demanded of the two recall paths.
pub const PATH_TOLERANCE: f64 = 1e-10;

/// Pairwise amplitude overlap below which a stored set counts as well separated.
pub const SEPARATION_THRESHOLD: f64 = 0.3;

const STREAM_CAPACITY: u64 = 1;
const STREAM_BIPOLAR: u64 = 2;
const STREAM_GENERAL: u64 = 3;
const STREAM_TIMING: u64 = 4;

/// How a noise level perturbs a probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum NoiseModel {
    /// Each phase shifted by an independent uniform draw on `[−level, +level]` radians.
    #[default]
    Jitter,
    /// `round(level·N)` distinct units have their sign flipped (phase + π).
    Flip,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExperimentConfig {
    pub seed: u64,
    #[cfg_attr(feature = "serde", serde(rename = "N"))]
    pub n: usize,
    #[cfg_attr(feature = "serde", serde(rename = "P_values"))]
    pub p_values: Vec<usize>,
    pub noise_levels: Vec<f64>,
    pub trials: usize,
    #[cfg_attr(feature = "serde", serde(default = "default_min_confidence"))]
    pub min_confidence: f64,
    #[cfg_attr(feature = "serde", serde(default))]
    pub noise_model: NoiseModel,
    /// Extra dimensions for the timing benchmark; empty means just `n`.
    #[cfg_attr(
        feature = "serde",
        serde(rename = "N_values", default, skip_serializing_if = "Vec::is_empty")
    )]
    pub n_values: Vec<usize>,
}

#[cfg(feature = "serde")]
fn default_min_confidence() -> f64 {
    DEFAULT_MIN_CONFIDENCE
}

impl ExperimentConfig {
    pub fn new(
        seed: u64,
        n: usize,
        p_values: Vec<usize>,
        noise_levels: Vec<f64>,
        trials: usize,
    ) -> Self {
        Self {
            seed,
            n,
            p_values,
            noise_levels,
            trials,
            min_confidence: DEFAULT_MIN_CONFIDENCE,
            noise_model: NoiseModel::Jitter,
            n_values: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |why: String| Err(Error::InvalidConfig(why));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        for &n in core::iter::once(&self.n).chain(&self.n_values) {
            if n == 0 || n > MAX_DIMENSION {
                return bad(alloc::format!("N = {n} outside 1..={MAX_DIMENSION}"));
            }
        }
        if self.p_values.is_empty() {
            return bad("P_values is empty".into());
        }
        if let Some(p) = self.p_values.iter().find(|&&p| p == 0 || p > MAX_PATTERNS) {
            return bad(alloc::format!("P = {p} outside 1..={MAX_PATTERNS}"));
        }
        if self.noise_levels.is_empty() {
            return bad("noise_levels is empty".into());
        }
        for &level in &self.noise_levels {
            if !level.is_finite() || level < 0.0 {
                return bad(alloc::format!(
                    "noise level {level} must be finite and non-negative"
                ));
            }
            if self.noise_model == NoiseModel::Flip && level > 1.0 {
                return bad(alloc::format!("flip fraction {level} exceeds 1"));
            }
        }
        if !(0.0..=1.0).contains(&self.min_confidence) {
            return bad(alloc::format!(
                "min_confidence {} outside [0, 1]",
                self.min_confidence
            ));
        }
        Ok(())
    }

    pub fn timing_dimensions(&self) -> Vec<usize> {
        if self.n_values.is_empty() {
            alloc::vec![self.n]
        } else {
            self.n_values.clone()
        }
    }
}

/// Monotone nanosecond counter. Only differences are used.
pub trait Clock {
    fn now_ns(&mut self) -> u64;
}

/// A clock that never advances; all timing fields come out zero.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn now_ns(&mut self) -> u64 {
        0
    }
}

/// `P` patterns with i.i.d. phases uniform on `[0, 2π)`, modulus `1/√N`.
pub fn gen_random_phase_patterns(seed: u64, n: usize, p: usize) -> Vec<StatePattern> {
    let mut rng = Rng::new(seed);
    let mut phases = alloc::vec![0.0; n];
    (0..p)
        .map(|_| {
            for phi in phases.iter_mut() {
                *phi = TAU * rng.next_f64();
            }
            StatePattern::from_phases(&phases).expect("finite non-empty phases")
        })
        .collect()
}

fn require_unit_modulus(p: &StatePattern) -> Result<()> {
    let scale = libm::sqrt(p.dim() as f64);
    if p.iter().any(|z| (z.norm() * scale - 1.0).abs() > 1e-9) {
        return Err(Error::WrongEncoding {
            expected: "unit-modulus (phase or bipolar)",
            found: p.kind().name(),
        });
    }
    Ok(())
}

/// Adds uniform jitter on `[−jitter, +jitter]` to every phase.
/// Zero jitter returns the input unchanged.
pub fn perturb_phases(p: &StatePattern, jitter_radians: f64, seed: u64) -> Result<StatePattern> {
    require_unit_modulus(p)?;
    if jitter_radians == 0.0 {
        return Ok(p.clone());
    }
    let mut rng = Rng::new(seed);
    let phases: Vec<f64> = p
        .phases()
        .into_iter()
        .map(|phi| phi + rng.uniform(-jitter_radians, jitter_radians))
        .collect();
    Ok(StatePattern::from_phases(&phases)?.with_label(p.label().map(String::from)))
}

/// Negates `round(fraction·N)` distinct components chosen uniformly.
pub fn flip_units(p: &StatePattern, fraction: f64, seed: u64) -> Result<StatePattern> {
    if !(0.0..=1.0).contains(&fraction) {
        return Err(Error::InvalidConfig(alloc::format!(
            "flip fraction {fraction} outside [0, 1]"
        )));
    }
    let n = p.dim();
    let count = (libm::round(fraction * n as f64) as usize).min(n);
    let mut rng = Rng::new(seed);
    let mut order: Vec<usize> = (0..n).collect();
    let mut amps = p.amplitudes().to_vec();
    for i in 0..count {
        let j = i + rng.below(n - i);
        order.swap(i, j);
        amps[order[i]] = -amps[order[i]];
    }
    StatePattern::from_unit_vector(amps, p.kind())
        .map(|s| s.with_label(p.label().map(String::from)))
}

pub fn apply_noise(
    model: NoiseModel,
    p: &StatePattern,
    level: f64,
    seed: u64,
) -> Result<StatePattern> {
    match model {
        NoiseModel::Jitter => perturb_phases(p, level, seed),
        NoiseModel::Flip => flip_units(p, level, seed),
    }
}

/// Seeds used by one capacity trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialSeeds {
    pub patterns: u64,
    pub target: u64,
    pub noise: u64,
}

impl TrialSeeds {
    pub fn capacity(seed: u64, p: usize, noise_index: usize, trial: usize) -> Self {
        let t = derive_seed(
            seed,
            &[STREAM_CAPACITY, p as u64, noise_index as u64, trial as u64],
        );
        Self {
            patterns: derive_seed(t, &[0]),
            target: derive_seed(t, &[1]),
            noise: derive_seed(t, &[2]),
        }
    }
}

/// One probe of one freshly built memory.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrialRecord {
    #[cfg_attr(feature = "serde", serde(rename = "P"))]
    pub p: usize,
    pub noise: f64,
    pub trial: usize,
    pub target: usize,
    pub correct: bool,
    pub confidence: f64,
    pub margin: f64,
    pub dense_ns: u64,
    pub lazy_ns: u64,
}

/// Builds `P` random phase patterns, probes with a noisy copy of a
/// uniformly chosen one, and records whether recognition returns it.
pub fn capacity_trial<C: Clock + ?Sized>(
    cfg: &ExperimentConfig,
    p: usize,
    noise_index: usize,
    trial: usize,
    clock: &mut C,
) -> Result<TrialRecord> {
    let noise = cfg.noise_levels[noise_index];
    let seeds = TrialSeeds::capacity(cfg.seed, p, noise_index, trial);
    let patterns = gen_random_phase_patterns(seeds.patterns, cfg.n, p);
    let memory = Hologram::build(&patterns)?;
    let target = Rng::new(seeds.target).below(p);
    let probe = apply_noise(cfg.noise_model, &patterns[target], noise, seeds.noise)?;

    let t0 = clock.now_ns();
    black_box(memory.recall_dense(&probe)?);
    let t1 = clock.now_ns();
    black_box(memory.recall_lazy(&probe)?);
    let t2 = clock.now_ns();

    let decision = memory.recognize(&probe, cfg.min_confidence)?;
    let report = decision.report();
    Ok(TrialRecord {
        p,
        noise,
        trial,
        target,
        correct: decision.index() == Some(target),
        confidence: report.confidence,
        margin: report.margin,
        dense_ns: t1.saturating_sub(t0),
        lazy_ns: t2.saturating_sub(t1),
    })
}

/// Records in `(P, noise, trial)` order.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExperimentResult {
    pub records: Vec<TrialRecord>,
}

/// Aggregate over the trials of one `(P, noise)` cell.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CellSummary {
    #[cfg_attr(feature = "serde", serde(rename = "P"))]
    pub p: usize,
    pub noise: f64,
    pub trials: usize,
    pub correct: usize,
    pub accuracy: f64,
    /// 95% Wilson score interval.
    pub accuracy_low: f64,
    pub accuracy_high: f64,
    pub mean_confidence: f64,
    pub mean_margin: f64,
    pub margin_std_error: f64,
}

impl ExperimentResult {
    /// Same records with timing fields zeroed: the deterministic payload.
    pub fn without_timings(&self) -> Self {
        Self {
            records: self
                .records
                .iter()
                .map(|r| TrialRecord {
                    dense_ns: 0,
                    lazy_ns: 0,
                    ..r.clone()
                })
                .collect(),
        }
    }

    pub fn summary(&self) -> Vec<CellSummary> {
        let mut cells: Vec<CellSummary> = Vec::new();
        let mut start = 0;
        while start < self.records.len() {
            let key = (self.records[start].p, self.records[start].noise.to_bits());
            let end = self.records[start..]
                .iter()
                .position(|r| (r.p, r.noise.to_bits()) != key)
                .map_or(self.records.len(), |off| start + off);
            cells.push(summarize(&self.records[start..end]));
            start = end;
        }
        cells
    }
}

fn summarize(records: &[TrialRecord]) -> CellSummary {
    let trials = records.len();
    let correct = records.iter().filter(|r| r.correct).count();
    let margins: Vec<f64> = records.iter().map(|r| r.margin).collect();
    let (mean_margin, margin_std_error) = mean_and_std_error(&margins);
    let (accuracy_low, accuracy_high) = wilson_interval(correct, trials);
    CellSummary {
        p: records[0].p,
        noise: records[0].noise,
        trials,
        correct,
        accuracy: correct as f64 / trials as f64,
        accuracy_low,
        accuracy_high,
        mean_confidence: records.iter().map(|r| r.confidence).sum::<f64>() / trials as f64,
        mean_margin,
        margin_std_error,
    }
}

/// Sample mean and its standard error (sample deviation / √n).
pub fn mean_and_std_error(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, libm::sqrt(var / n))
}

/// 95% Wilson score interval for `successes` out of `n`.
pub fn wilson_interval(successes: usize, n: usize) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    const Z: f64 = 1.959_963_984_540_054;
    let n = n as f64;
    let phat = successes as f64 / n;
    let z2 = Z * Z;
    let denom = 1.0 + z2 / n;
    let centre = (phat + z2 / (2.0 * n)) / denom;
    let half = Z * libm::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

pub fn run_capacity_sweep<C: Clock + ?Sized>(
    cfg: &ExperimentConfig,
    clock: &mut C,
) -> Result<ExperimentResult> {
    cfg.validate()?;
    let mut records = Vec::with_capacity(cfg.p_values.len() * cfg.noise_levels.len() * cfg.trials);
    for &p in &cfg.p_values {
        for noise_index in 0..cfg.noise_levels.len() {
            for trial in 0..cfg.trials {
                records.push(capacity_trial(cfg, p, noise_index, trial, clock)?);
            }
        }
    }
    Ok(ExperimentResult { records })
}

/// Counts from the exact bipolar comparison.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BipolarSummary {
    /// Stored sets examined.
    pub cases: usize,
    /// Sets whose amplitude, phase and bipolar memories serialize identically.
    pub identical_memories: usize,
    pub probes: usize,
    /// Probes given the same decision and report by all three encodings.
    pub identical_decisions: usize,
}

impl BipolarSummary {
    pub fn all_identical(&self) -> bool {
        self.identical_memories == self.cases && self.identical_decisions == self.probes
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GeneralRecord {
    #[cfg_attr(feature = "serde", serde(rename = "P"))]
    pub p: usize,
    pub noise: f64,
    pub trial: usize,
    pub target: usize,
    pub amplitude_winner: Option<usize>,
    pub phase_winner: Option<usize>,
    pub agree: bool,
    pub max_pairwise_overlap: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GeneralCell {
    #[cfg_attr(feature = "serde", serde(rename = "P"))]
    pub p: usize,
    pub noise: f64,
    pub trials: usize,
    pub agreement_rate: f64,
    pub amplitude_accuracy: f64,
    pub phase_accuracy: f64,
    pub mean_max_pairwise_overlap: f64,
    /// Trials whose stored set is well separated.
    pub separated_trials: usize,
    pub separated_agreement_rate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EquivalenceReport {
    pub bipolar: BipolarSummary,
    pub general: Vec<GeneralCell>,
    pub general_records: Vec<GeneralRecord>,
}

fn random_bipolar(rng: &mut Rng, n: usize) -> RawPattern {
    let values = (0..n)
        .map(|_| if rng.coin() { 1.0 } else { -1.0 })
        .collect();
    RawPattern::new(values).expect("non-empty finite")
}

fn bipolar_case(
    cfg: &ExperimentConfig,
    p: usize,
    trial: usize,
    summary: &mut BipolarSummary,
) -> Result<()> {
    let mut rng = Rng::new(derive_seed(
        cfg.seed,
        &[STREAM_BIPOLAR, p as u64, trial as u64],
    ));
    let raws: Vec<RawPattern> = (0..p).map(|_| random_bipolar(&mut rng, cfg.n)).collect();
    let encode_all = |raw: &RawPattern| -> Result<[StatePattern; 3]> {
        Ok([
            amplitude_encode(raw)?,
            StatePattern::from_phases(&bipolar_phases(raw, 0.0))?,
            bipolar_encode(raw, 0.0),
        ])
    };
    let mut sets: [Vec<StatePattern>; 3] = Default::default();
    for raw in &raws {
        for (set, s) in sets.iter_mut().zip(encode_all(raw)?) {
            set.push(s);
        }
    }
    let memories = [
        Hologram::build(&sets[0])?,
        Hologram::build(&sets[1])?,
        Hologram::build(&sets[2])?,
    ];
    let bytes = memories[0].to_bytes();
    summary.cases += 1;
    if memories[1..].iter().all(|m| m.to_bytes() == bytes) {
        summary.identical_memories += 1;
    }

    let mut probes = raws.clone();
    probes.push(random_bipolar(&mut rng, cfg.n));
    for raw in &probes {
        let states = encode_all(raw)?;
        let decisions = memories
            .iter()
            .zip(&states)
            .map(|(m, s)| m.recognize(s, cfg.min_confidence))
            .collect::<Result<Vec<Recognition>>>()?;
        summary.probes += 1;
        if decisions[1..].iter().all(|d| *d == decisions[0]) {
            summary.identical_decisions += 1;
        }
    }
    Ok(())
}

fn max_pairwise_overlap(states: &[StatePattern]) -> f64 {
    let mut worst = 0.0f64;
    for (a, sa) in states.iter().enumerate() {
        for sb in &states[a + 1..] {
            worst = worst.max(inner(sa, sb).norm());
        }
    }
    worst
}

fn general_trial(
    cfg: &ExperimentConfig,
    p: usize,
    noise_index: usize,
    trial: usize,
) -> Result<GeneralRecord> {
    let noise = cfg.noise_levels[noise_index];
    let mut rng = Rng::new(derive_seed(
        cfg.seed,
        &[STREAM_GENERAL, p as u64, noise_index as u64, trial as u64],
    ));
    let raws = (0..p)
        .map(|_| RawPattern::new((0..cfg.n).map(|_| rng.uniform(-1.0, 1.0)).collect()))
        .collect::<Result<Vec<_>>>()?;
    let amps = raws
        .iter()
        .map(amplitude_encode)
        .collect::<Result<Vec<_>>>()?;
    let phases = raws.iter().map(phase_encode).collect::<Result<Vec<_>>>()?;
    let amp_memory = Hologram::build(&amps)?;
    let phase_memory = Hologram::build(&phases)?;

    let target = rng.below(p);
    let probe = RawPattern::new(
        raws[target]
            .values()
            .iter()
            .map(|v| v + noise * rng.uniform(-1.0, 1.0))
            .collect(),
    )?;
    let amplitude_winner = amp_memory.overlaps(&amplitude_encode(&probe)?)?.winner;
    let phase_winner = phase_memory.overlaps(&phase_encode(&probe)?)?.winner;
    Ok(GeneralRecord {
        p,
        noise,
        trial,
        target,
        amplitude_winner,
        phase_winner,
        agree: amplitude_winner == phase_winner,
        max_pairwise_overlap: max_pairwise_overlap(&amps),
    })
}

fn general_cell(records: &[GeneralRecord]) -> GeneralCell {
    let n = records.len() as f64;
    let rate =
        |f: &dyn Fn(&GeneralRecord) -> bool| records.iter().filter(|r| f(r)).count() as f64 / n;
    let separated: Vec<&GeneralRecord> = records
        .iter()
        .filter(|r| r.max_pairwise_overlap < SEPARATION_THRESHOLD)
        .collect();
    GeneralCell {
        p: records[0].p,
        noise: records[0].noise,
        trials: records.len(),
        agreement_rate: rate(&|r| r.agree),
        amplitude_accuracy: rate(&|r| r.amplitude_winner == Some(r.target)),
        phase_accuracy: rate(&|r| r.phase_winner == Some(r.target)),
        mean_max_pairwise_overlap: records.iter().map(|r| r.max_pairwise_overlap).sum::<f64>() / n,
        separated_trials: separated.len(),
        separated_agreement_rate: (!separated.is_empty())
            .then(|| separated.iter().filter(|r| r.agree).count() as f64 / separated.len() as f64),
    }
}

/// Exact bipolar identity check plus the empirical amplitude-vs-phase
/// comparison on real-valued data uniform on `[−1, 1)`.
///
/// The bipolar part probes each stored set with every stored pattern and one
/// fresh random pattern. The general part adds `noise·U(−1, 1)` to a stored
/// pattern's raw values and encodes the probe both ways.
pub fn run_equivalence_check(cfg: &ExperimentConfig) -> Result<EquivalenceReport> {
    cfg.validate()?;
    if cfg.n < 2 {
        return Err(Error::InvalidConfig(
            "equivalence check needs N >= 2".into(),
        ));
    }
    let mut bipolar = BipolarSummary::default();
    let mut general_records = Vec::new();
    let mut general = Vec::new();
    for &p in &cfg.p_values {
        for trial in 0..cfg.trials {
            bipolar_case(cfg, p, trial, &mut bipolar)?;
        }
        for noise_index in 0..cfg.noise_levels.len() {
            let start = general_records.len();
            for trial in 0..cfg.trials {
                general_records.push(general_trial(cfg, p, noise_index, trial)?);
            }
            general.push(general_cell(&general_records[start..]));
        }
    }
    Ok(EquivalenceReport {
        bipolar,
        general,
        general_records,
    })
}

/// Timing and cost of both recall paths at one `(N, P)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TimingRow {
    #[cfg_attr(feature = "serde", serde(rename = "N"))]
    pub n: usize,
    #[cfg_attr(feature = "serde", serde(rename = "P"))]
    pub p: usize,
    pub trials: usize,
    pub max_disagreement: f64,
    pub dense_values_read: usize,
    pub lazy_values_read: usize,
    pub dense_median_ns: u64,
    pub lazy_median_ns: u64,
}

/// The memory and probe timed in one trial.
pub fn timing_instance(
    seed: u64,
    n: usize,
    p: usize,
    trial: usize,
) -> Result<(Hologram, StatePattern)> {
    let s = derive_seed(seed, &[STREAM_TIMING, n as u64, p as u64, trial as u64]);
    let patterns = gen_random_phase_patterns(derive_seed(s, &[0]), n, p);
    let probe = gen_random_phase_patterns(derive_seed(s, &[1]), n, 1)
        .pop()
        .expect("one pattern");
    Ok((Hologram::build(&patterns)?, probe))
}

fn median(xs: &mut [u64]) -> u64 {
    xs.sort_unstable();
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        xs[m - 1] / 2 + xs[m] / 2 + (xs[m - 1] % 2 + xs[m] % 2) / 2
    }
}

/// Median wall time of both recall paths per `(N, P)`. Fails if the paths
/// ever disagree by more than [`PATH_TOLERANCE`]; timings are never compared.
pub fn run_timing<C: Clock + ?Sized>(
    cfg: &ExperimentConfig,
    clock: &mut C,
) -> Result<Vec<TimingRow>> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for n in cfg.timing_dimensions() {
        for &p in &cfg.p_values {
            let mut dense_ns = Vec::with_capacity(cfg.trials);
            let mut lazy_ns = Vec::with_capacity(cfg.trials);
            let mut worst = 0.0f64;
            for trial in 0..cfg.trials {
                let (memory, probe) = timing_instance(cfg.seed, n, p, trial)?;
                let t0 = clock.now_ns();
                let dense = black_box(memory.recall_dense(&probe)?);
                let t1 = clock.now_ns();
                let lazy = black_box(memory.recall_lazy(&probe)?);
                let t2 = clock.now_ns();
                dense_ns.push(t1.saturating_sub(t0));
                lazy_ns.push(t2.saturating_sub(t1));
                let d = relative_disagreement(&dense, &lazy);
                if !(d <= PATH_TOLERANCE) {
                    return Err(Error::PathDisagreement {
                        n,
                        p,
                        disagreement: d,
                    });
                }
                worst = worst.max(d);
            }
            rows.push(TimingRow {
                n,
                p,
                trials: cfg.trials,
                max_disagreement: worst,
                dense_values_read: RecallPath::Dense.values_read(n, p),
                lazy_values_read: RecallPath::Lazy.values_read(n, p),
                dense_median_ns: median(&mut dense_ns),
                lazy_median_ns: median(&mut lazy_ns),
            });
        }
    }
    Ok(rows)
}
