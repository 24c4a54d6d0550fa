//! Dimensionless scenario description and result containers.
//!
//! Every quantity is stored in units of the interaction timescale `T`: the
//! gap is `Ω·T`, the smearing is `σ/T`, the delay is `t_Δ/T` and so on. The
//! library never stores a dimensionful value, so the coupling constant in
//! [`PairConfig::coupling_strength`] is the adimensional `λ̄` (for n = 2,
//! where convention is not fixed by the usual tables, we take
//! `λ̄ = λ·T^{(n-1)/2-p}` with p = 1 for derivative coupling).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{HarvestError, Result};

/// How the detectors couple to the field: to its amplitude or to its time
/// derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coupling {
    Amplitude,
    Derivative,
}

impl Coupling {
    /// Number of time derivatives on each leg of the two-point function
    /// (0 for amplitude, 1 for derivative coupling).
    pub fn derivative_order(self) -> u32 {
        match self {
            Coupling::Amplitude => 0,
            Coupling::Derivative => 1,
        }
    }
}

/// Full dimensionless description of a two-detector scenario.
///
/// Equal detectors, Gaussian switching `χ(t) = e^{-t²/T²}` centred at
/// `t_A`, `t_B = t_A + delay`, and Gaussian smearing of width `smearing`
/// (`smearing = 0` is the pointlike limit). `ir_cutoff` must be present
/// exactly when `dim = 1` with amplitude coupling, where the massless
/// field is IR divergent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairConfig {
    /// Spatial dimension n, one of {1, 2, 3}.
    pub dim: u32,
    pub coupling: Coupling,
    /// Ω·T.
    pub gap: f64,
    /// σ/T ≥ 0; zero means pointlike detectors.
    pub smearing: f64,
    /// t_Δ/T = (t_B - t_A)/T.
    pub delay: f64,
    /// |x_Δ|/T ≥ 0.
    pub separation: f64,
    /// (t_A + t_B)/T; enters only the phase of the correlation term.
    #[serde(default)]
    pub time_offset: f64,
    /// Adimensional coupling λ̄ ≥ 0.
    pub coupling_strength: f64,
    /// Λ·T, required iff dim = 1 with amplitude coupling.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ir_cutoff: Option<f64>,
}

impl PairConfig {
    /// Checks all invariants and normalizes `separation` to its magnitude.
    pub fn validate(mut self) -> Result<Self> {
        if !(1..=3).contains(&self.dim) {
            return Err(HarvestError::UnsupportedDimension(self.dim));
        }
        if self.smearing < 0.0 {
            return Err(HarvestError::NegativeWidth(self.smearing));
        }
        if self.coupling_strength < 0.0 {
            return Err(HarvestError::NegativeCoupling(self.coupling_strength));
        }
        self.separation = self.separation.abs();
        let needs_cutoff = self.dim == 1 && self.coupling == Coupling::Amplitude;
        match (needs_cutoff, self.ir_cutoff) {
            (true, None) => return Err(HarvestError::MissingCutoff),
            (true, Some(l)) if l <= 0.0 => return Err(HarvestError::NonPositiveCutoff(l)),
            (false, Some(_)) => return Err(HarvestError::ForbiddenCutoff),
            _ => {}
        }
        Ok(self)
    }

    /// Lower momentum limit of every radial integral: the IR cutoff when one
    /// applies, zero otherwise.
    pub fn k_lower(&self) -> f64 {
        self.ir_cutoff.unwrap_or(0.0)
    }
}

/// Per-field absolute error bounds reported by the quadrature engine.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct ElementErrors {
    pub local_noise: f64,
    pub cross_noise: f64,
    pub correlation: f64,
    pub correlation_plus: f64,
    pub correlation_minus: f64,
}

impl ElementErrors {
    /// Combined bound for the decomposition identity M⁺ + M⁻ = M.
    pub fn combined_correlation(&self) -> f64 {
        self.correlation + self.correlation_plus + self.correlation_minus
    }
}

/// The computed quintuple (L, L_AB, M, M⁺, M⁻) plus the negativity.
#[derive(Debug, Clone)]
pub struct MatrixElements {
    /// Local excitation noise L ≥ 0.
    pub local_noise: f64,
    /// Cross-noise L_AB.
    pub cross_noise: Complex64,
    /// Entangling correlation M.
    pub correlation: Complex64,
    /// Genuine-harvesting part M⁺ (anticommutator contribution).
    pub correlation_plus: Complex64,
    /// Communication-mediated part M⁻ (commutator contribution).
    pub correlation_minus: Complex64,
    /// N = max(|M| - L, 0).
    pub negativity: f64,
    pub errors: ElementErrors,
}

/// Two-qubit state in the basis {gg, eg, ge, ee}.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub entries: [[Complex64; 4]; 4],
}

impl DensityMatrix {
    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..4).all(|i| {
            (0..4).all(|j| (self.entries[i][j] - self.entries[j][i].conj()).norm() <= tol)
        })
    }

    /// Partial transpose on detector B (basis index a + 2b).
    pub fn partial_transpose_b(&self) -> DensityMatrix {
        let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
        for a in 0..2 {
            for b in 0..2 {
                for ap in 0..2 {
                    for bp in 0..2 {
                        // (a,b),(a',b') <- (a,b'),(a',b)
                        out[a + 2 * b][ap + 2 * bp] =
                            self.entries[a + 2 * bp][ap + 2 * b];
                    }
                }
            }
        }
        DensityMatrix { entries: out }
    }
}

/// Builds the leading-order joint state from computed matrix elements.
///
/// Positivity of the full matrix only holds to O(λ̄⁴), so it is not asserted;
/// the weaker diagonal condition 1 - 2L ≥ 0 is.
pub fn assemble_rho(elements: &MatrixElements) -> Result<DensityMatrix> {
    let l = elements.local_noise;
    let gg = 1.0 - 2.0 * l;
    if gg < 0.0 {
        return Err(HarvestError::NoisyNegativeDiagonal(gg));
    }
    let z = Complex64::new(0.0, 0.0);
    let lab = elements.cross_noise;
    let m = elements.correlation;
    let entries = [
        [Complex64::new(gg, 0.0), z, z, m.conj()],
        [z, Complex64::new(l, 0.0), lab, z],
        [z, lab.conj(), Complex64::new(l, 0.0), z],
        [m, z, z, z],
    ];
    Ok(DensityMatrix { entries })
}
