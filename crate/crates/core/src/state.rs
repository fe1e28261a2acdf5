//! Normalized complex state vectors.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::Deref;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on `|‖ψ‖ − 1|` for inputs that must be unit-norm.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// How a state's components carry information.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum EncodingKind {
    /// Real amplitudes, phases restricted to 0 or π by sign.
    Amplitude,
    /// ±1/√N components.
    Bipolar,
    /// Constant modulus 1/√N, information in the phase.
    Phase,
    /// Arbitrary amplitude and phase per component.
    General,
}

impl EncodingKind {
    pub fn name(self) -> &'static str {
        match self {
            EncodingKind::Amplitude => "amplitude",
            EncodingKind::Bipolar => "bipolar",
            EncodingKind::Phase => "phase",
            EncodingKind::General => "general",
        }
    }

    /// Whether every component has modulus exactly 1/√N by construction.
    pub fn is_unit_modulus(self) -> bool {
        matches!(self, EncodingKind::Bipolar | EncodingKind::Phase)
    }
}

/// `e^{iφ}`, exact for φ = 0 and φ = π.
///
/// `sin(π)` in binary floating point is about 1.2e-16 rather than zero; the
/// special case keeps phase-{0, π} states bit-identical to their ±1
/// amplitude counterparts.
#[inline]
pub fn phasor(phi: f64) -> Complex64 {
    if phi == 0.0 {
        Complex64::new(1.0, 0.0)
    } else if phi == PI {
        Complex64::new(-1.0, 0.0)
    } else {
        Complex64::new(libm::cos(phi), libm::sin(phi))
    }
}

/// `1/√N`, computed the same way by every encoder.
#[inline]
pub(crate) fn inv_sqrt_dim(n: usize) -> f64 {
    1.0 / libm::sqrt(n as f64)
}

pub fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

pub fn norm(v: &[Complex64]) -> f64 {
    libm::sqrt(norm_sqr(v))
}

/// Hermitian inner product `Σ_j conj(a_j)·b_j`.
#[inline]
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter()
        .zip(b)
        .fold(Complex64::new(0.0, 0.0), |acc, (x, y)| acc + x.conj() * y)
}

/// Fold an angle from `atan2` into `(0, 2π]`.
#[inline]
pub(crate) fn fold_phase(arg: f64) -> f64 {
    if arg <= 0.0 {
        arg + 2.0 * PI
    } else {
        arg
    }
}

/// A unit-norm complex vector ψ of dimension N.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StatePattern {
    amplitudes: Vec<Complex64>,
    kind: EncodingKind,
    label: Option<String>,
}

impl StatePattern {
    /// Wraps an already unit-norm vector, checking the norm.
    pub fn from_unit_vector(amplitudes: Vec<Complex64>, kind: EncodingKind) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let norm = norm(&amplitudes);
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self {
            amplitudes,
            kind,
            label: None,
        })
    }

    /// Divides `amplitudes` by its Euclidean norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>, kind: EncodingKind) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if let Some(index) = amplitudes
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite { index });
        }
        let n = norm(&amplitudes);
        if n == 0.0 {
            return Err(Error::ZeroNorm);
        }
        for z in &mut amplitudes {
            *z /= n;
        }
        Ok(Self {
            amplitudes,
            kind,
            label: None,
        })
    }

    /// Pure-phase state `ψ_j = e^{iφ_j}/√N`.
    pub fn from_phases(phases: &[f64]) -> Result<Self> {
        if phases.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if let Some(index) = phases.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let scale = inv_sqrt_dim(phases.len());
        Ok(Self {
            amplitudes: phases.iter().map(|&phi| phasor(phi) * scale).collect(),
            kind: EncodingKind::Phase,
            label: None,
        })
    }

    pub(crate) fn from_parts(
        amplitudes: Vec<Complex64>,
        kind: EncodingKind,
        label: Option<String>,
    ) -> Self {
        Self {
            amplitudes,
            kind,
            label,
        }
    }

    pub fn with_label(mut self, label: Option<String>) -> Self {
        self.label = label;
        self
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn kind(&self) -> EncodingKind {
        self.kind
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// Per-component phases folded into `(0, 2π]`.
    pub fn phases(&self) -> Vec<f64> {
        self.amplitudes
            .iter()
            .map(|z| fold_phase(libm::atan2(z.im, z.re)))
            .collect()
    }
}

impl Deref for StatePattern {
    type Target = [Complex64];

    fn deref(&self) -> &[Complex64] {
        &self.amplitudes
    }
}
