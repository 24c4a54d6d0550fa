//! Special functions, vacuum commutator kernels and Gaussian smearing
//! helpers.
//!
//! The commutator (antisymmetric) part of the two-point function lives on
//! the light cone in odd spatial dimensions, so those kernels are kept as
//! structured distributional values: lists of delta-derivative terms plus,
//! in n = 1, a Heaviside plateau. Consumers integrate them analytically via
//! [`smeared_delta_derivative`]; nothing ever samples them pointwise. Only
//! the n = 2 kernel has a pointwise interior form, and within a relative
//! band of 1e-6 around the cone it is deliberately left to the smeared
//! momentum-space representation.

use errorfunctions::ComplexErrorFunctions;
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{HarvestError, Result};
use crate::quad::{integrate_semi_infinite, Hints, QuadratureSpec};
use crate::types::PairConfig;

/// Relative width of the light-cone band where the n = 2 pointwise forms
/// are refused.
pub const LIGHT_CONE_BAND: f64 = 1e-6;

/// Faddeeva function w(z) = e^{-z²} erfc(-iz).
///
/// Backed by a machine-precision implementation; the contract here is
/// relative accuracy 1e-10 or better away from overflow, which happens for
/// strongly negative imaginary parts where w grows like e^{|z|²}.
pub fn faddeeva(z: Complex64) -> Result<Complex64> {
    let w = z.w();
    if w.re.is_finite() && w.im.is_finite() {
        Ok(w)
    } else {
        Err(HarvestError::FaddeevaOverflow(z))
    }
}

/// erfc for real arguments through the same backend.
pub fn erfc_real(x: f64) -> f64 {
    errorfunctions::RealErrorFunctions::erfc(x)
}

/// Bessel function J₀ to absolute accuracy 1e-12.
///
/// Ascending series below |x| = 9; above that the full-period trapezoid of
/// (1/2π)∫ cos(x sin θ) dθ, whose aliasing error is 2 J_N(x) and therefore
/// negligible once N ≳ 2.8|x| + 32.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x < 9.0 {
        let q = 0.25 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        for m in 1..200 {
            term *= -q / ((m * m) as f64);
            sum += term;
            if term.abs() < 1e-18 * sum.abs().max(1e-3) {
                break;
            }
        }
        sum
    } else {
        let n = (2.8 * x + 32.0).ceil() as usize;
        let mut sum = 0.0;
        for j in 0..n {
            let theta = 2.0 * PI * j as f64 / n as f64;
            sum += (x * theta.sin()).cos();
        }
        sum / n as f64
    }
}

/// Normalized Gaussian profile: `normalization · e^{-(x-c)²/(2s²)} / (s√2π)`,
/// so its integral over the line equals `normalization`.
#[derive(Debug, Clone, Copy)]
pub struct GaussianProfile {
    pub center: f64,
    pub width: f64,
    pub normalization: f64,
}

impl GaussianProfile {
    pub fn unit(center: f64, width: f64) -> Self {
        GaussianProfile {
            center,
            width,
            normalization: 1.0,
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        let u = (x - self.center) / self.width;
        self.normalization * (-0.5 * u * u).exp() / (self.width * (2.0 * PI).sqrt())
    }

    /// j-th derivative via the probabilists' Hermite polynomials,
    /// d^j/dx^j g = (-1/s)^j He_j(u) g with u = (x-c)/s.
    pub fn derivative(&self, j: u32, x: f64) -> Result<f64> {
        let u = (x - self.center) / self.width;
        let he = match j {
            0 => 1.0,
            1 => u,
            2 => u * u - 1.0,
            3 => u * (u * u - 3.0),
            4 => u * u * (u * u - 6.0) + 3.0,
            _ => return Err(HarvestError::UnsupportedOrder(j)),
        };
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * he * self.width.powi(-(j as i32)) * self.value(x))
    }

    /// ∫ g(x) sin(ωx) dx for this Gaussian.
    pub fn fourier_sin(&self, omega: f64) -> f64 {
        self.normalization
            * (-0.5 * omega * omega * self.width * self.width).exp()
            * (omega * self.center).sin()
    }
}

/// ∫ δ^{(j)}(u - center) g(u) du = (-1)^j g^{(j)}(center), j ≤ 4.
pub fn smeared_delta_derivative(j: u32, center: f64, g: &GaussianProfile) -> Result<f64> {
    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * g.derivative(j, center)?)
}

/// Coefficients and angular factors of the commutator kernels.
pub struct KernelConstants;

impl KernelConstants {
    /// The a_j of the odd-n kernel; only n = 3 is tabulated, where
    /// a₀ = 1/8π reproduces the momentum-space commutator.
    pub fn a_coeffs(n: u32) -> Result<Vec<f64>> {
        match n {
            3 => Ok(vec![1.0 / (8.0 * PI)]),
            _ => Err(HarvestError::UnsupportedDimension(n)),
        }
    }

    /// Angular average of the plane wave over the unit sphere:
    /// Φ₁ = cos, Φ₂ = J₀, Φ₃ = sin(u)/u.
    pub fn angular_factor(n: u32, u: f64) -> f64 {
        match n {
            1 => u.cos(),
            2 => bessel_j0(u),
            3 => {
                if u.abs() < 1e-2 {
                    let u2 = u * u;
                    1.0 - u2 / 6.0 + u2 * u2 / 120.0 - u2 * u2 * u2 / 5040.0
                } else {
                    u.sin() / u
                }
            }
            _ => f64::NAN,
        }
    }

    /// Area of the unit (n-1)-sphere; for n = 1 the two half-lines count as
    /// S₀ = 2.
    pub fn sphere_area(n: u32) -> f64 {
        match n {
            1 => 2.0,
            2 => 2.0 * PI,
            3 => 4.0 * PI,
            _ => f64::NAN,
        }
    }
}

/// One `coeff · δ^{(order)}(Δt - support)` term of a distributional kernel.
#[derive(Debug, Clone, Copy)]
pub struct DeltaTerm {
    pub coeff: Complex64,
    pub order: u32,
    pub support: f64,
}

/// Structured distributional kernel at fixed spatial separation: delta
/// terms in Δt plus the locally integrable plateau evaluated at the queried
/// Δt (nonzero only for the n = 1 commutator itself).
#[derive(Debug, Clone)]
pub struct DistributionalKernel {
    pub deltas: Vec<DeltaTerm>,
    pub plateau: Complex64,
}

impl DistributionalKernel {
    /// Pairing of the delta terms with a Gaussian test function in Δt.
    pub fn smear_deltas(&self, g: &GaussianProfile) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for term in &self.deltas {
            acc += term.coeff * smeared_delta_derivative(term.order, term.support, g)?;
        }
        Ok(acc)
    }
}

/// Value of a commutator kernel: pointwise where that is meaningful (n = 2
/// off the cone), a distributional description otherwise.
#[derive(Debug, Clone)]
pub enum KernelForm {
    Pointwise(Complex64),
    Distribution(DistributionalKernel),
}

impl KernelForm {
    pub fn pointwise(&self) -> Option<Complex64> {
        match self {
            KernelForm::Pointwise(v) => Some(*v),
            KernelForm::Distribution(_) => None,
        }
    }
}

fn heaviside(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

fn on_cone(dt: f64, r: f64) -> bool {
    (dt * dt - r * r).abs() < LIGHT_CONE_BAND * (dt * dt + r * r)
}

/// Antisymmetric part W⁻ₙ(Δt, r) of the vacuum two-point function.
pub fn w_minus(n: u32, dt: f64, r: f64) -> Result<KernelForm> {
    match n {
        1 => {
            let plateau = Complex64::new(0.0, -0.25) * (heaviside(r + dt) - heaviside(r - dt));
            Ok(KernelForm::Distribution(DistributionalKernel {
                deltas: Vec::new(),
                plateau,
            }))
        }
        2 => {
            if r > dt.abs() {
                return Ok(KernelForm::Pointwise(Complex64::new(0.0, 0.0)));
            }
            if on_cone(dt, r) {
                return Err(HarvestError::OnLightCone);
            }
            let v = -dt.signum() / (4.0 * PI * (dt * dt - r * r).sqrt());
            Ok(KernelForm::Pointwise(Complex64::new(0.0, v)))
        }
        3 => {
            if r <= 0.0 {
                return Err(HarvestError::WrongRegime(
                    "n=3 commutator kernel requires r > 0".into(),
                ));
            }
            let a0 = KernelConstants::a_coeffs(3)?[0];
            let c = Complex64::new(0.0, a0 / r);
            Ok(KernelForm::Distribution(DistributionalKernel {
                deltas: vec![
                    DeltaTerm {
                        coeff: c,
                        order: 0,
                        support: -r,
                    },
                    DeltaTerm {
                        coeff: -c,
                        order: 0,
                        support: r,
                    },
                ],
                plateau: Complex64::new(0.0, 0.0),
            }))
        }
        _ => Err(HarvestError::UnsupportedDimension(n)),
    }
}

/// ∂t∂t' W⁻ₙ(Δt, r), the kernel mediating communication for derivative
/// coupling.
pub fn w_minus_dtdt(n: u32, dt: f64, r: f64) -> Result<KernelForm> {
    match n {
        1 => {
            let c = Complex64::new(0.0, 0.25);
            Ok(KernelForm::Distribution(DistributionalKernel {
                deltas: vec![
                    DeltaTerm {
                        coeff: c,
                        order: 1,
                        support: -r,
                    },
                    DeltaTerm {
                        coeff: c,
                        order: 1,
                        support: r,
                    },
                ],
                plateau: Complex64::new(0.0, 0.0),
            }))
        }
        2 => {
            if r > dt.abs() {
                return Ok(KernelForm::Pointwise(Complex64::new(0.0, 0.0)));
            }
            if on_cone(dt, r) {
                return Err(HarvestError::OnLightCone);
            }
            let s = dt * dt - r * r;
            let v = dt.signum() * (2.0 * dt * dt + r * r) / (4.0 * PI * s.powf(2.5));
            Ok(KernelForm::Pointwise(Complex64::new(0.0, v)))
        }
        3 => {
            if r <= 0.0 {
                return Err(HarvestError::WrongRegime(
                    "n=3 commutator kernel requires r > 0".into(),
                ));
            }
            let a0 = KernelConstants::a_coeffs(3)?[0];
            let c = Complex64::new(0.0, a0 / r);
            Ok(KernelForm::Distribution(DistributionalKernel {
                deltas: vec![
                    DeltaTerm {
                        coeff: -c,
                        order: 2,
                        support: -r,
                    },
                    DeltaTerm {
                        coeff: c,
                        order: 2,
                        support: r,
                    },
                ],
                plateau: Complex64::new(0.0, 0.0),
            }))
        }
        _ => Err(HarvestError::UnsupportedDimension(n)),
    }
}

/// ∫ W⁻ₙ(Δt, r) g(Δt) dΔt with a Gaussian test function.
///
/// n = 1 integrates the Heaviside plateau in closed form, n = 3 pairs the
/// delta terms, and n = 2 uses the smeared momentum representation, which
/// is the only form defined across the cone.
pub fn smear_w_minus(n: u32, r: f64, g: &GaussianProfile, spec: &QuadratureSpec) -> Result<Complex64> {
    match n {
        1 => {
            let s2 = std::f64::consts::SQRT_2 * g.width;
            let upper = 0.5 * g.normalization * erfc_real((r - g.center) / s2);
            let lower = 0.5 * g.normalization * erfc_real((r + g.center) / s2);
            Ok(Complex64::new(0.0, -0.25) * (upper - lower))
        }
        2 => {
            // -(i/4π) ∫ dω J₀(ωr) ∫ g(Δt) sin(ωΔt) dΔt
            let uv = QuadratureSpec::uv_cutoff(g.width, 0.0, false)
                .max(8.0 / g.width.max(1e-6))
                .min(1e7);
            let local = spec.with_uv_scale(uv);
            let hint = Hints::with_period(2.0 * PI / (r + g.center.abs()).max(1e-3));
            let res = integrate_semi_infinite(
                |w| Complex64::new(bessel_j0(w * r) * g.fourier_sin(w), 0.0),
                0.0,
                &local,
                &hint,
            );
            if !res.converged {
                return Err(HarvestError::NonConvergence("smeared W2 minus".into()));
            }
            Ok(Complex64::new(0.0, -1.0 / (4.0 * PI)) * res.value)
        }
        3 => match w_minus(3, 0.0, r)? {
            KernelForm::Distribution(d) => d.smear_deltas(g),
            KernelForm::Pointwise(_) => unreachable!(),
        },
        _ => Err(HarvestError::UnsupportedDimension(n)),
    }
}

/// ∫ ∂t∂t'W⁻ₙ(Δt, r) g(Δt) dΔt with a Gaussian test function.
pub fn smear_w_minus_dtdt(
    n: u32,
    r: f64,
    g: &GaussianProfile,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    match n {
        1 | 3 => match w_minus_dtdt(n, 0.0, r)? {
            KernelForm::Distribution(d) => d.smear_deltas(g),
            KernelForm::Pointwise(_) => unreachable!(),
        },
        2 => {
            // -(i/4π) ∫ dω ω² J₀(ωr) ∫ g(Δt) sin(ωΔt) dΔt
            let uv = QuadratureSpec::uv_cutoff(g.width, 0.0, false)
                .max(8.0 / g.width.max(1e-6))
                .min(1e7);
            let local = spec.with_uv_scale(uv);
            let hint = Hints::with_period(2.0 * PI / (r + g.center.abs()).max(1e-3));
            let res = integrate_semi_infinite(
                |w| Complex64::new(w * w * bessel_j0(w * r) * g.fourier_sin(w), 0.0),
                0.0,
                &local,
                &hint,
            );
            if !res.converged {
                return Err(HarvestError::NonConvergence("smeared dtdt W2 minus".into()));
            }
            Ok(Complex64::new(0.0, -1.0 / (4.0 * PI)) * res.value)
        }
        _ => Err(HarvestError::UnsupportedDimension(n)),
    }
}

/// Whether the momentum weight should carry the separation oscillation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralMode {
    /// Coincident detectors (local noise): no angular factor.
    ForL,
    /// Separated detectors: includes Φₙ(k |x_Δ|).
    ForM,
}

/// Radial momentum weight of every matrix-element integral:
/// `S_{n-1} k^{n-1} ω^{2p-1} e^{-k²σ²/2} Φₙ(k|x_Δ|) / (2 (2π)ⁿ)`,
/// with ω = k and p the number of time derivatives in the coupling.
pub fn spectral_density(config: &PairConfig, k: f64, mode: SpectralMode) -> f64 {
    let n = config.dim;
    let p = config.coupling.derivative_order();
    let omega_power = match p {
        0 => 1.0 / k,
        _ => k,
    };
    let damping = if config.smearing > 0.0 {
        (-0.5 * k * k * config.smearing * config.smearing).exp()
    } else {
        1.0
    };
    let angular = match mode {
        SpectralMode::ForL => 1.0,
        SpectralMode::ForM => KernelConstants::angular_factor(n, k * config.separation),
    };
    KernelConstants::sphere_area(n) * k.powi(n as i32 - 1) * omega_power * damping * angular
        / (2.0 * (2.0 * PI).powi(n as i32))
}
