//! Hebbian hologram and single-pass recall.
//!
//! The hologram is the N×N matrix `J_hj = Σ_k ψ^k_h · conj(ψ^k_j)`. Recall
//! applies it once to an input (`Σ_j J_hj x_j`). The same output can be
//! produced without the matrix by first projecting the input on every stored
//! pattern, `c^k = ⟨ψ^k, x⟩`, and then summing `Σ_k c^k ψ^k`. The two paths
//! cost O(N²) and O(PN) respectively and must agree to rounding.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{inner, norm, norm_sqr, StatePattern, NORM_TOLERANCE};

/// Default `min_confidence` for [`Hologram::recognize`].
pub const DEFAULT_MIN_CONFIDENCE: f64 = 0.8;

/// Maximum tolerated `|J_hj − conj(J_jh)|`.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

/// Maximum tolerated `|trace(J) − P|`.
pub const TRACE_TOLERANCE: f64 = 1e-9;

/// Which recall route to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum RecallPath {
    /// Apply the stored N×N matrix.
    Dense,
    /// Project on the stored patterns and resynthesize.
    Lazy,
}

impl RecallPath {
    /// Complex numbers read by one recall: matrix plus input for dense,
    /// two passes over the stored patterns plus input for lazy.
    pub fn values_read(self, dim: usize, patterns: usize) -> usize {
        match self {
            RecallPath::Dense => dim * dim + dim,
            RecallPath::Lazy => 2 * patterns * dim + dim,
        }
    }
}

/// Complex propagator built from P unit-norm patterns. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Hologram {
    dim: usize,
    matrix: Vec<Complex64>,
    stored: Vec<Vec<Complex64>>,
    labels: Vec<Option<String>>,
}

/// The projection coefficients of one input plus the winning pattern.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OverlapReport {
    pub coefficients: Vec<Complex64>,
    /// Index of the largest `|c^k|`, lowest index on ties. `None` only when
    /// every coefficient is exactly zero.
    pub winner: Option<usize>,
    /// `|c^{winner}|`.
    pub confidence: f64,
    /// `|c^{winner}| − max_{k≠winner} |c^k|`; equals `confidence` when P = 1.
    pub margin: f64,
}

impl OverlapReport {
    pub fn from_coefficients(coefficients: Vec<Complex64>) -> Self {
        let mut winner = None;
        let mut best = 0.0f64;
        for (k, c) in coefficients.iter().enumerate() {
            let m = c.norm();
            if m > best {
                best = m;
                winner = Some(k);
            }
        }
        let margin = match winner {
            Some(w) => {
                let runner_up = coefficients
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != w)
                    .map(|(_, c)| c.norm())
                    .fold(0.0f64, f64::max);
                best - runner_up
            }
            None => 0.0,
        };
        Self {
            coefficients,
            winner,
            confidence: best,
            margin,
        }
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c.norm()).collect()
    }
}

/// Outcome of [`Hologram::recognize`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "decision", rename_all = "lowercase"))]
pub enum Recognition {
    Recognized {
        index: usize,
        report: OverlapReport,
    },
    /// No coefficient reached the threshold: the output is a mixture.
    Ambiguous {
        report: OverlapReport,
    },
}

impl Recognition {
    pub fn index(&self) -> Option<usize> {
        match self {
            Recognition::Recognized { index, .. } => Some(*index),
            Recognition::Ambiguous { .. } => None,
        }
    }

    pub fn report(&self) -> &OverlapReport {
        match self {
            Recognition::Recognized { report, .. } | Recognition::Ambiguous { report } => report,
        }
    }
}

impl Hologram {
    /// Hebbian storage of `patterns`. Labels are taken from the patterns.
    ///
    /// Each pattern must satisfy `|‖ψ‖² − 1| ≤ 1e-9 / P`, which bounds the
    /// trace error by 1e-9.
    pub fn build(patterns: &[StatePattern]) -> Result<Self> {
        let first = patterns.first().ok_or(Error::NoPatterns)?;
        let dim = first.dim();
        let p = patterns.len();
        let per_pattern = TRACE_TOLERANCE / p as f64;
        for s in patterns {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: s.dim(),
                });
            }
            let n2 = norm_sqr(s);
            if !n2.is_finite() || (n2 - 1.0).abs() > per_pattern {
                return Err(Error::NotNormalized {
                    norm: libm::sqrt(n2),
                });
            }
        }
        let stored: Vec<Vec<Complex64>> =
            patterns.iter().map(|s| s.amplitudes().to_vec()).collect();
        let labels = patterns
            .iter()
            .map(|s| s.label().map(String::from))
            .collect();
        Ok(Self::from_stored(dim, stored, labels))
    }

    /// Builds the matrix from vectors already known to be valid.
    pub(crate) fn from_stored(
        dim: usize,
        stored: Vec<Vec<Complex64>>,
        labels: Vec<Option<String>>,
    ) -> Self {
        let matrix = outer_product_sum(dim, &stored);
        Self {
            dim,
            matrix,
            stored,
            labels,
        }
    }

    pub(crate) fn from_raw_parts(
        dim: usize,
        matrix: Vec<Complex64>,
        stored: Vec<Vec<Complex64>>,
        labels: Vec<Option<String>>,
    ) -> Self {
        Self {
            dim,
            matrix,
            stored,
            labels,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pattern_count(&self) -> usize {
        self.stored.len()
    }

    /// Row-major N×N entries.
    pub fn matrix(&self) -> &[Complex64] {
        &self.matrix
    }

    pub fn entry(&self, h: usize, j: usize) -> Complex64 {
        self.matrix[h * self.dim + j]
    }

    pub fn stored(&self, k: usize) -> &[Complex64] {
        &self.stored[k]
    }

    pub fn stored_patterns(&self) -> impl Iterator<Item = &[Complex64]> {
        self.stored.iter().map(Vec::as_slice)
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn label(&self, k: usize) -> Option<&str> {
        self.labels[k].as_deref()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|h| self.entry(h, h)).sum()
    }

    /// `max_{h,j} |J_hj − conj(J_jh)|`.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for h in 0..self.dim {
            for j in h..self.dim {
                worst = worst.max((self.entry(h, j) - self.entry(j, h).conj()).norm());
            }
        }
        worst
    }

    /// Checks Hermiticity, the trace identity and stored-pattern norms.
    pub fn verify_invariants(&self) -> Result<()> {
        let herm = self.hermiticity_residual();
        if !(herm <= HERMITIAN_TOLERANCE) {
            return Err(Error::Corrupt(alloc::format!(
                "hermiticity residual {herm:e} exceeds {HERMITIAN_TOLERANCE:e}"
            )));
        }
        let p = self.pattern_count() as f64;
        let trace = self.trace();
        if !((trace - Complex64::new(p, 0.0)).norm() <= TRACE_TOLERANCE) {
            return Err(Error::Corrupt(alloc::format!(
                "trace {trace} differs from pattern count {p}"
            )));
        }
        for (k, s) in self.stored.iter().enumerate() {
            let n = norm(s);
            if !((n - 1.0).abs() <= NORM_TOLERANCE) {
                return Err(Error::Corrupt(alloc::format!(
                    "stored pattern {k} has norm {n}"
                )));
            }
        }
        Ok(())
    }

    fn check_dim(&self, input: &[Complex64]) -> Result<()> {
        if input.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: input.len(),
            });
        }
        Ok(())
    }

    /// `output_h = Σ_j J_hj · input_j`, not renormalized.
    pub fn recall_dense(&self, input: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_dim(input)?;
        Ok(self
            .matrix
            .chunks_exact(self.dim)
            .map(|row| {
                row.iter()
                    .zip(input)
                    .fold(Complex64::new(0.0, 0.0), |acc, (a, x)| acc + a * x)
            })
            .collect())
    }

    /// `output = Σ_k c^k ψ^k` with `c^k = ⟨ψ^k, input⟩`, not renormalized.
    pub fn recall_lazy(&self, input: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_dim(input)?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for psi in &self.stored {
            let c = inner(psi, input);
            for (o, z) in out.iter_mut().zip(psi) {
                *o += c * z;
            }
        }
        Ok(out)
    }

    pub fn recall(&self, input: &[Complex64], path: RecallPath) -> Result<Vec<Complex64>> {
        match path {
            RecallPath::Dense => self.recall_dense(input),
            RecallPath::Lazy => self.recall_lazy(input),
        }
    }

    /// Projection coefficients without the unit-norm check on the input.
    pub fn coefficients(&self, input: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_dim(input)?;
        Ok(self.stored.iter().map(|psi| inner(psi, input)).collect())
    }

    pub fn overlaps(&self, input: &[Complex64]) -> Result<OverlapReport> {
        self.check_dim(input)?;
        let n = norm(input);
        if !((n - 1.0).abs() <= NORM_TOLERANCE) {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(OverlapReport::from_coefficients(self.coefficients(input)?))
    }

    pub fn recognize(&self, input: &[Complex64], min_confidence: f64) -> Result<Recognition> {
        if !(0.0..=1.0).contains(&min_confidence) {
            return Err(Error::InvalidConfidence(min_confidence));
        }
        let report = self.overlaps(input)?;
        Ok(match report.winner {
            Some(index) if report.confidence >= min_confidence => {
                Recognition::Recognized { index, report }
            }
            _ => Recognition::Ambiguous { report },
        })
    }
}

/// `Σ_k ψ^k (ψ^k)†`, upper triangle accumulated then mirrored by conjugation,
/// so the result is Hermitian bit for bit.
fn outer_product_sum(dim: usize, stored: &[Vec<Complex64>]) -> Vec<Complex64> {
    let mut m = vec![Complex64::new(0.0, 0.0); dim * dim];
    for psi in stored {
        for h in 0..dim {
            let a = psi[h];
            let row = &mut m[h * dim..(h + 1) * dim];
            for j in h..dim {
                row[j] += a * psi[j].conj();
            }
        }
    }
    for h in 0..dim {
        for j in 0..h {
            m[h * dim + j] = m[j * dim + h].conj();
        }
    }
    m
}

/// Worst componentwise disagreement between two outputs, relative to the
/// larger infinity norm of the pair. Zero when both are zero.
pub fn relative_disagreement(a: &[Complex64], b: &[Complex64]) -> f64 {
    let scale = a.iter().chain(b).map(|z| z.norm()).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0f64, f64::max)
        / scale
}
