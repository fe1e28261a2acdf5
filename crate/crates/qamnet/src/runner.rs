//! Experiment drivers with a wall clock and parallel trials.

use std::time::Instant;

use rayon::prelude::*;

use qamnet_core::bench::{
    self, capacity_trial, Clock, ExperimentConfig, ExperimentResult, TimingRow,
};

/// Nanoseconds since the clock was created.
#[derive(Debug, Clone, Copy)]
pub struct InstantClock(Instant);

impl InstantClock {
    pub fn new() -> Self {
        Self(Instant::now())
    }
}

impl Default for InstantClock {
    fn default() -> Self {
        Self::new()
    }
}

impl Clock for InstantClock {
    fn now_ns(&mut self) -> u64 {
        self.0.elapsed().as_nanos() as u64
    }
}

/// Capacity/noise sweep with trials spread over the rayon pool. Records come
/// back in the same `(P, noise, trial)` order as the sequential sweep.
pub fn run_capacity_sweep(
    cfg: &ExperimentConfig,
    timed: bool,
) -> qamnet_core::Result<ExperimentResult> {
    cfg.validate()?;
    let cells: Vec<(usize, usize, usize)> = cfg
        .p_values
        .iter()
        .flat_map(|&p| {
            (0..cfg.noise_levels.len()).flat_map(move |ni| (0..cfg.trials).map(move |t| (p, ni, t)))
        })
        .collect();
    let records = cells
        .into_par_iter()
        .map(|(p, ni, t)| {
            if timed {
                capacity_trial(cfg, p, ni, t, &mut InstantClock::new())
            } else {
                capacity_trial(cfg, p, ni, t, &mut bench::NoClock)
            }
        })
        .collect::<qamnet_core::Result<Vec<_>>>()?;
    Ok(ExperimentResult { records })
}

/// Timing runs on the calling thread only.
pub fn run_timing(cfg: &ExperimentConfig) -> qamnet_core::Result<Vec<TimingRow>> {
    bench::run_timing(cfg, &mut InstantClock::new())
}
