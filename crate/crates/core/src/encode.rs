//! Raw data patterns and their mapping to complex states.
//!
//! Three encodings are provided:
//!
//! * amplitude: `ψ_j = v_j / ‖v‖`, real components;
//! * bipolar: `ψ_j = ±1/√N` by thresholding, equivalently phases 0 or π;
//! * phase: `ψ_j = e^{iφ_j}/√N` where `φ_j` is the sigmoid map of `v_j`
//!   against the pattern's own mean and population standard deviation.
//!
//! Every encoder returns a unit-norm [`StatePattern`].

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{inv_sqrt_dim, phasor, EncodingKind, StatePattern};

/// Distance from 0 or 2π below which a phase is treated as saturated.
pub const SATURATION_TOLERANCE: f64 = 1e-12;

/// A vector of finite real data values, one per unit.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RawPattern {
    values: Vec<f64>,
    label: Option<String>,
}

impl RawPattern {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            values,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn stats(&self) -> PatternStats {
        pattern_stats(self)
    }
}

/// Mean and population standard deviation of one pattern.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PatternStats {
    pub mean: f64,
    pub std: f64,
}

pub fn pattern_stats(p: &RawPattern) -> PatternStats {
    let n = p.values.len() as f64;
    let mean = p.values.iter().sum::<f64>() / n;
    let var = p
        .values
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .sum::<f64>()
        / n;
    PatternStats {
        mean,
        std: libm::sqrt(var),
    }
}

/// `φ = 2π / (1 + exp((mean − v)/std))`, strictly increasing in `v`, π at the mean.
pub fn sigmoid_phase_map(v: f64, stats: &PatternStats) -> Result<f64> {
    if !(stats.std > 0.0) {
        return Err(Error::ConstantPattern);
    }
    Ok(TAU / (1.0 + libm::exp((stats.mean - v) / stats.std)))
}

/// Inverse of [`sigmoid_phase_map`] on `(0, 2π)`.
pub fn inverse_sigmoid_phase(phi: f64, stats: &PatternStats) -> f64 {
    stats.mean - stats.std * libm::log(TAU / phi - 1.0)
}

pub fn phase_encode(p: &RawPattern) -> Result<StatePattern> {
    let stats = pattern_stats(p);
    let scale = inv_sqrt_dim(p.dim());
    let amplitudes = p
        .values
        .iter()
        .map(|&v| sigmoid_phase_map(v, &stats).map(|phi| phasor(phi) * scale))
        .collect::<Result<Vec<_>>>()?;
    Ok(StatePattern::from_parts(
        amplitudes,
        EncodingKind::Phase,
        p.label.clone(),
    ))
}

pub fn amplitude_encode(p: &RawPattern) -> Result<StatePattern> {
    let norm = libm::sqrt(p.values.iter().map(|v| v * v).sum::<f64>());
    if norm == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let amplitudes = p
        .values
        .iter()
        .map(|&v| Complex64::new(v / norm, 0.0))
        .collect();
    Ok(StatePattern::from_parts(
        amplitudes,
        EncodingKind::Amplitude,
        p.label.clone(),
    ))
}

/// `v_j ≥ threshold` maps to `+1/√N` (phase 0), everything else to `−1/√N` (phase π).
pub fn bipolar_encode(p: &RawPattern, threshold: f64) -> StatePattern {
    let scale = inv_sqrt_dim(p.dim());
    let amplitudes = p
        .values
        .iter()
        .map(|&v| {
            let sign = if v >= threshold { 1.0 } else { -1.0 };
            Complex64::new(sign * scale, 0.0)
        })
        .collect();
    StatePattern::from_parts(amplitudes, EncodingKind::Bipolar, p.label.clone())
}

/// The phases `{0, π}` that [`bipolar_encode`] implicitly assigns.
pub fn bipolar_phases(p: &RawPattern, threshold: f64) -> Vec<f64> {
    p.values
        .iter()
        .map(|&v| if v >= threshold { 0.0 } else { PI })
        .collect()
}

/// Reads a phase-encoded state back into data space using the original
/// pattern's statistics.
pub fn decode_phase(s: &StatePattern, stats: &PatternStats) -> Result<RawPattern> {
    if s.kind() != EncodingKind::Phase {
        return Err(Error::WrongEncoding {
            expected: EncodingKind::Phase.name(),
            found: s.kind().name(),
        });
    }
    let values = s
        .phases()
        .into_iter()
        .enumerate()
        .map(|(index, phi)| {
            if phi < SATURATION_TOLERANCE || TAU - phi < SATURATION_TOLERANCE {
                Err(Error::PhaseSaturated { index, phase: phi })
            } else {
                Ok(inverse_sigmoid_phase(phi, stats))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let raw = RawPattern::new(values)?;
    Ok(match s.label() {
        Some(l) => raw.with_label(l),
        None => raw,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::norm_sqr;
    use alloc::vec;

    fn raw(v: &[f64]) -> RawPattern {
        RawPattern::new(v.to_vec()).unwrap()
    }

    #[test]
    fn raw_pattern_rejects_empty_and_non_finite() {
        assert_eq!(RawPattern::new(vec![]), Err(Error::EmptyPattern));
        assert_eq!(
            RawPattern::new(vec![1.0, f64::NAN]),
            Err(Error::NonFinite { index: 1 })
        );
        assert_eq!(
            RawPattern::new(vec![f64::INFINITY]),
            Err(Error::NonFinite { index: 0 })
        );
    }

    #[test]
    fn stats_of_hand_examples() {
        assert_eq!(
            pattern_stats(&raw(&[1.0, 1.0, 1.0])),
            PatternStats {
                mean: 1.0,
                std: 0.0
            }
        );
        assert_eq!(
            pattern_stats(&raw(&[0.0, 2.0])),
            PatternStats {
                mean: 1.0,
                std: 1.0
            }
        );
    }

    #[test]
    fn stats_match_streaming_reference() {
        // Welford's single-pass recurrence; mpmath gives mean 0.55, std 0.33541019662496845446.
        let data = [0.1, 0.4, 0.7, 1.0];
        let (mut n, mut mean, mut m2) = (0.0f64, 0.0f64, 0.0f64);
        for &x in &data {
            n += 1.0;
            let d = x - mean;
            mean += d / n;
            m2 += d * (x - mean);
        }
        let s = pattern_stats(&raw(&data));
        assert!((s.mean - mean).abs() < 1e-15);
        assert!((s.std - libm::sqrt(m2 / n)).abs() < 1e-15);
        assert!((s.mean - 0.55).abs() < 1e-15);
        assert!((s.std - 0.335_410_196_624_968_45).abs() < 1e-15);
    }

    #[test]
    fn sigmoid_midpoint_and_quarter() {
        let stats = PatternStats {
            mean: 2.0,
            std: 0.5,
        };
        assert!((sigmoid_phase_map(2.0, &stats).unwrap() - PI).abs() < 1e-12);
        // (mean - v)/std = ln 3 gives 2π/4
        let v = 2.0 - 0.5 * libm::log(3.0);
        assert!((sigmoid_phase_map(v, &stats).unwrap() - PI / 2.0).abs() < 1e-12);
        let far = sigmoid_phase_map(1e6, &stats).unwrap();
        assert!(far <= TAU && TAU - far < 1e-12);
    }

    #[test]
    fn sigmoid_rejects_zero_std() {
        let stats = PatternStats {
            mean: 1.0,
            std: 0.0,
        };
        assert_eq!(sigmoid_phase_map(1.0, &stats), Err(Error::ConstantPattern));
        assert_eq!(phase_encode(&raw(&[3.0, 3.0])), Err(Error::ConstantPattern));
    }

    #[test]
    fn phase_encode_two_point_closed_form() {
        // mpmath, 40 digits
        let s = phase_encode(&raw(&[0.0, 2.0])).unwrap();
        let expect = [
            Complex64::new(-0.083_955_998_188_059_462_6, 0.702_104_971_046_528_452_2),
            Complex64::new(-0.083_955_998_188_059_462_6, -0.702_104_971_046_528_452_2),
        ];
        for (got, want) in s.iter().zip(expect) {
            assert!((got - want).norm() < 1e-14, "{got} vs {want}");
        }
        let phi = s.phases();
        assert!((phi[0] - 1.689_808_787_243_947_4).abs() < 1e-13);
        assert!((phi[1] - 4.593_376_519_935_639).abs() < 1e-13);
        assert_eq!(s.kind(), EncodingKind::Phase);
    }

    #[test]
    fn amplitude_hand_examples() {
        let s = amplitude_encode(&raw(&[3.0, 4.0])).unwrap();
        assert_eq!(
            s.amplitudes(),
            &[Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)]
        );
        assert_eq!(amplitude_encode(&raw(&[0.0, 0.0])), Err(Error::ZeroNorm));
        let s = amplitude_encode(&raw(&[1.0, -1.0, 1.0, -1.0])).unwrap();
        let re: Vec<f64> = s.iter().map(|z| z.re).collect();
        assert_eq!(re, vec![0.5, -0.5, 0.5, -0.5]);
    }

    #[test]
    fn bipolar_threshold_and_tie() {
        let s = bipolar_encode(&raw(&[0.9, 0.1]), 0.5);
        let h = 1.0 / libm::sqrt(2.0);
        assert_eq!(
            s.amplitudes(),
            &[Complex64::new(h, 0.0), Complex64::new(-h, 0.0)]
        );
        let s = bipolar_encode(&raw(&[0.7, 0.8, 0.9]), 0.5);
        assert!(s.iter().all(|z| z.re > 0.0));
        let s = bipolar_encode(&raw(&[0.5, 0.4]), 0.5);
        assert!(s[0].re > 0.0 && s[1].re < 0.0);
    }

    #[test]
    fn bipolar_equals_zero_pi_phases_bitwise() {
        let p = raw(&[0.2, 0.9, 0.5, 0.49, 1.0]);
        let b = bipolar_encode(&p, 0.5);
        let ph = StatePattern::from_phases(&bipolar_phases(&p, 0.5)).unwrap();
        for (x, y) in b.iter().zip(ph.iter()) {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }

    #[test]
    fn decode_midpoint_and_closed_form() {
        let stats = PatternStats {
            mean: 0.0,
            std: 1.0,
        };
        let s = StatePattern::from_phases(&[PI, PI / 2.0]).unwrap();
        let d = decode_phase(&s, &stats).unwrap();
        assert!(d.values()[0].abs() < 1e-12);
        assert!((d.values()[1] + libm::log(3.0)).abs() < 1e-12);
    }

    #[test]
    fn decode_rejects_saturated_and_wrong_kind() {
        let stats = PatternStats {
            mean: 0.0,
            std: 1.0,
        };
        let s = StatePattern::from_phases(&[0.0, 1.0]).unwrap();
        assert!(matches!(
            decode_phase(&s, &stats),
            Err(Error::PhaseSaturated { index: 0, .. })
        ));
        let a = amplitude_encode(&raw(&[1.0, 2.0])).unwrap();
        assert!(matches!(
            decode_phase(&a, &stats),
            Err(Error::WrongEncoding { .. })
        ));
    }

    #[test]
    fn decode_roundtrip_small() {
        let p = raw(&[0.1, 0.4, 0.7, 1.0]).with_label("x");
        let s = phase_encode(&p).unwrap();
        assert!((norm_sqr(&s) - 1.0).abs() < 1e-12);
        let d = decode_phase(&s, &p.stats()).unwrap();
        for (a, b) in d.values().iter().zip(p.values()) {
            assert!((a - b).abs() < 1e-9);
        }
        assert_eq!(d.label(), Some("x"));
    }
}
