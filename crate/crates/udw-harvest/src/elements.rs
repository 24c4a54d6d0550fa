//! Matrix elements of the evolved detector pair: L, L_AB, M and the split
//! of M into harvesting and communication parts, with the negativity.
//!
//! Everything is reduced to radial momentum integrals. The switching
//! Gaussians integrate out exactly: the local terms keep the damping factor
//! `e^{-(Ω+ω)²/2}`, while M keeps the one-dimensional time integral
//!
//! ```text
//! G(ω) = ∫ dt e^{-t²/2} e^{-iω|t - t_Δ|},
//! ```
//!
//! which is evaluated in closed form through the Faddeeva function by
//! splitting at the kink (the Analytic path) or numerically as part of a 2D
//! quadrature (the Brute2d path). The commutator part M⁻ replaces
//! `e^{-iω|·|}` by its odd part, i.e. it keeps `i·Im G`; its RealSpace path
//! instead integrates the distributional kernels against the smearing
//! profile and shares nothing with the Faddeeva route.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{HarvestError, Result};
use crate::kernels::{erfc_real, faddeeva, spectral_density, SpectralMode};
use crate::quad::{integrate_hinted, integrate_semi_infinite, Hints, QuadratureSpec};
use crate::types::{Coupling, ElementErrors, MatrixElements, PairConfig};

/// Half-width of every time-domain integration window, in units of the
/// reduced Gaussian's width; e^{-9²/2} is far below every tolerance in use.
const TIME_WINDOW: f64 = 9.0;

/// Evaluation route for the correlation term M.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelationPath {
    /// Radial momentum integral with the closed-form time factor.
    Analytic,
    /// Direct 2D quadrature over (t₋, k).
    Brute2d,
}

/// Evaluation route for the communication part M⁻.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinusPath {
    /// Distributional light-cone kernels integrated in position space.
    RealSpace,
    /// Odd part of the time factor under the radial momentum integral.
    Momentum,
}

/// A validated configuration plus quadrature controls and the reduced
/// prefactor C.
#[derive(Debug, Clone)]
pub struct EvaluationContext {
    pub config: PairConfig,
    pub spec: QuadratureSpec,
}

impl EvaluationContext {
    pub fn new(config: PairConfig) -> Result<Self> {
        let config = config.validate()?;
        let spec = QuadratureSpec {
            abs_tol: 1e-14,
            rel_tol: 1e-8,
            max_subdivisions: 4000,
            uv_scale: 40.0,
        };
        Ok(EvaluationContext { config, spec })
    }

    pub fn with_spec(mut self, spec: QuadratureSpec) -> Self {
        self.spec = spec;
        self
    }

    /// C = -√(π/2) λ̄² e^{iΩ(t_A+t_B) - Ω²/2}; |C| is independent of the
    /// time offset, which only rotates the phase of M.
    pub fn prefactor(&self) -> Complex64 {
        let cfg = &self.config;
        let magnitude = (PI / 2.0).sqrt()
            * cfg.coupling_strength
            * cfg.coupling_strength
            * (-0.5 * cfg.gap * cfg.gap).exp();
        -Complex64::from_polar(magnitude, cfg.gap * cfg.time_offset)
    }

    fn spec_local(&self) -> QuadratureSpec {
        self.spec
            .with_uv_scale(QuadratureSpec::uv_cutoff(self.config.smearing, self.config.gap, true))
    }

    fn spec_correlation(&self) -> QuadratureSpec {
        self.spec
            .with_uv_scale(QuadratureSpec::uv_cutoff(self.config.smearing, self.config.gap, false))
    }

    fn oscillation_hint(&self) -> Hints {
        let freq = self.config.separation.max(self.config.delay.abs()).max(1.0);
        Hints::with_period(2.0 * PI / freq)
    }

    fn require_smeared(&self, what: &str) -> Result<()> {
        if self.config.smearing > 0.0 {
            Ok(())
        } else {
            Err(HarvestError::WrongRegime(format!(
                "{what} needs smearing > 0: with pointlike detectors the momentum \
                 integrand loses its Gaussian damping (use the real-space route for M⁻)"
            )))
        }
    }
}

/// Stable evaluation of e^{-a²/2} e^{-iaω} w((ia - ω)/√2), the scaled
/// half-line Gaussian integral ∫_a^∞ e^{-t²/2 - iωt} dt = √(π/2)·ghalf(a,ω).
/// The reflection w(z) = 2e^{-z²} - w(-z) is folded into the prefactor for
/// a < 0 so no intermediate overflows.
fn ghalf(a: f64, omega: f64) -> Result<Complex64> {
    let sqrt2 = std::f64::consts::SQRT_2;
    if a >= 0.0 {
        let w = faddeeva(Complex64::new(-omega / sqrt2, a / sqrt2))?;
        Ok(Complex64::from_polar((-0.5 * a * a).exp(), -a * omega) * w)
    } else {
        let w = faddeeva(Complex64::new(omega / sqrt2, -a / sqrt2))?;
        let reflected = Complex64::from_polar((-0.5 * a * a).exp(), -a * omega) * w;
        Ok(Complex64::new(2.0 * (-0.5 * omega * omega).exp(), 0.0) - reflected)
    }
}

/// G(ω) = ∫ dt e^{-t²/2} e^{-iω|t - t_Δ|} split at the kink.
fn time_factor(omega: f64, delay: f64) -> Result<Complex64> {
    let h_plus = ghalf(delay, omega)?;
    let h_minus = ghalf(-delay, omega)?;
    let phase = Complex64::from_polar(1.0, omega * delay);
    Ok((PI / 2.0).sqrt() * (phase * h_plus + phase.conj() * h_minus))
}

/// Local noise L and its quadrature error bound.
pub fn local_noise(ctx: &EvaluationContext) -> Result<(f64, f64)> {
    let cfg = &ctx.config;
    let lam2 = cfg.coupling_strength * cfg.coupling_strength;
    if lam2 == 0.0 {
        return Ok((0.0, 0.0));
    }
    let spec = ctx.spec_local();
    let gap = cfg.gap;
    let res = integrate_semi_infinite(
        |k| {
            let w = spectral_density(cfg, k, SpectralMode::ForL);
            Complex64::new(w * (-0.5 * (gap + k) * (gap + k)).exp(), 0.0)
        },
        cfg.k_lower(),
        &spec,
        &Hints::default(),
    );
    if !res.converged {
        return Err(HarvestError::NonConvergence("local noise".into()));
    }
    let l = lam2 * PI * res.value.re;
    let err = lam2 * PI * res.err;
    debug_assert!(res.value.im.abs() <= 1e-10 * res.value.re.abs() + 1e-300);
    Ok((l, err))
}

/// Cross noise L_AB: the L integrand dressed with the angular factor and
/// the delay phases.
pub fn cross_noise(ctx: &EvaluationContext) -> Result<(Complex64, f64)> {
    let cfg = &ctx.config;
    let lam2 = cfg.coupling_strength * cfg.coupling_strength;
    if lam2 == 0.0 {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    let spec = ctx.spec_local();
    let gap = cfg.gap;
    let delay = cfg.delay;
    let res = integrate_semi_infinite(
        |k| {
            let w = spectral_density(cfg, k, SpectralMode::ForM);
            Complex64::from_polar(w * (-0.5 * (gap + k) * (gap + k)).exp(), -k * delay)
        },
        cfg.k_lower(),
        &spec,
        &ctx.oscillation_hint(),
    );
    if !res.converged {
        return Err(HarvestError::NonConvergence("cross noise".into()));
    }
    let phase = Complex64::from_polar(1.0, -gap * delay);
    Ok((lam2 * PI * phase * res.value, lam2 * PI * res.err))
}

/// Entangling correlation M.
pub fn correlation_m(ctx: &EvaluationContext, path: CorrelationPath) -> Result<(Complex64, f64)> {
    let cfg = &ctx.config;
    if cfg.coupling_strength == 0.0 {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    ctx.require_smeared("the correlation term M")?;
    let c = ctx.prefactor();
    let spec = ctx.spec_correlation();
    let res = match path {
        CorrelationPath::Analytic => {
            let delay = cfg.delay;
            let mut failure: Option<HarvestError> = None;
            let res = integrate_semi_infinite(
                |k| {
                    let w = spectral_density(cfg, k, SpectralMode::ForM);
                    match time_factor(k, delay) {
                        Ok(g) => g * w,
                        Err(e) => {
                            failure.get_or_insert(e);
                            Complex64::new(f64::NAN, f64::NAN)
                        }
                    }
                },
                cfg.k_lower(),
                &spec,
                &ctx.oscillation_hint(),
            );
            if let Some(e) = failure {
                return Err(e);
            }
            res
        }
        CorrelationPath::Brute2d => {
            let delay = cfg.delay;
            let (t_lo, t_hi) = (-TIME_WINDOW, TIME_WINDOW);
            let t_hints = if delay.abs() < TIME_WINDOW {
                Hints::with_breakpoints(&[delay])
            } else {
                Hints::default()
            };
            let max_kink = (delay.abs() + TIME_WINDOW + cfg.separation).max(1.0);
            let k_hints = Hints::with_period(2.0 * PI / max_kink);
            crate::quad::integrate_2d(
                |t, k| {
                    let w = spectral_density(cfg, k, SpectralMode::ForM);
                    Complex64::from_polar(w * (-0.5 * t * t).exp(), -k * (t - delay).abs())
                },
                (t_lo, t_hi),
                (cfg.k_lower(), spec.uv_scale),
                &spec,
                &t_hints,
                &k_hints,
            )
        }
    };
    if !res.converged {
        return Err(HarvestError::NonConvergence(format!(
            "correlation M ({path:?})"
        )));
    }
    Ok((c * res.value, c.norm() * res.err))
}

/// Communication-mediated part M⁻.
pub fn correlation_m_minus(ctx: &EvaluationContext, path: MinusPath) -> Result<(Complex64, f64)> {
    let cfg = &ctx.config;
    if cfg.coupling_strength == 0.0 {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    match path {
        MinusPath::Momentum => {
            ctx.require_smeared("the momentum route for M⁻")?;
            momentum_minus_piece(ctx, cfg.k_lower(), None)
        }
        MinusPath::RealSpace => real_space_minus(ctx),
    }
}

/// C · ∫ w(k) · i·Im G(k) dk over [k_lo, k_hi or uv].
fn momentum_minus_piece(
    ctx: &EvaluationContext,
    k_lo: f64,
    k_hi: Option<f64>,
) -> Result<(Complex64, f64)> {
    let cfg = &ctx.config;
    let c = ctx.prefactor();
    let spec = ctx.spec_correlation();
    let delay = cfg.delay;
    let mut failure: Option<HarvestError> = None;
    let integrand = |k: f64| {
        let w = spectral_density(cfg, k, SpectralMode::ForM);
        match time_factor(k, delay) {
            Ok(g) => Complex64::new(0.0, g.im) * w,
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(f64::NAN, f64::NAN)
            }
        }
    };
    let res = match k_hi {
        Some(hi) => integrate_hinted(integrand, k_lo, hi, &spec, &ctx.oscillation_hint()),
        None => integrate_semi_infinite(integrand, k_lo, &spec, &ctx.oscillation_hint()),
    };
    if let Some(e) = failure {
        return Err(e);
    }
    if !res.converged {
        return Err(HarvestError::NonConvergence("correlation M minus".into()));
    }
    Ok((c * res.value, c.norm() * res.err))
}

fn real_space_minus(ctx: &EvaluationContext) -> Result<(Complex64, f64)> {
    let cfg = &ctx.config;
    let c = ctx.prefactor();
    let sigma = cfg.smearing;
    let delay = cfg.delay;
    let r = cfg.separation;
    let gauss = |u: f64| (-0.5 * u * u).exp();
    // Second derivative of e^{-t²/2}.
    let gauss_dd = |u: f64| (u * u - 1.0) * (-0.5 * u * u).exp();

    let i = Complex64::new(0.0, 1.0);
    let (value, err) = match (cfg.dim, cfg.coupling) {
        (1, Coupling::Derivative) => {
            // Two shifted-Gaussian terms from the δ' kernel on each branch
            // of the cone.
            let phi = |u: f64| u * gauss(u);
            let t_factor = |y: f64| phi(y + delay) + phi(y - delay);
            if sigma == 0.0 {
                (i * c / 4.0 * t_factor(r), 0.0)
            } else {
                let res = smearing_average(sigma, r, t_factor, &ctx.spec);
                if !res.converged {
                    return Err(HarvestError::NonConvergence("real-space M minus".into()));
                }
                (i * c / 4.0 * res.value, c.norm() / 4.0 * res.err)
            }
        }
        (1, Coupling::Amplitude) => {
            // Heaviside plateau: the time integral leaves erf differences.
            let t_factor = |y: f64| {
                (2.0 * PI).sqrt()
                    - (PI / 2.0).sqrt()
                        * (erf((delay + y) / std::f64::consts::SQRT_2)
                            - erf((delay - y) / std::f64::consts::SQRT_2))
            };
            let (theta_part, theta_err) = if sigma == 0.0 {
                (-i * c / 4.0 * t_factor(r), 0.0)
            } else {
                let res = smearing_average(sigma, r, t_factor, &ctx.spec);
                if !res.converged {
                    return Err(HarvestError::NonConvergence("real-space M minus".into()));
                }
                (-i * c / 4.0 * res.value, c.norm() / 4.0 * res.err)
            };
            // The Θ-form kernel carries no IR cutoff; subtract the [0, Λ)
            // momentum sliver so both routes regularize identically.
            let (sliver, sliver_err) = momentum_minus_piece(ctx, 0.0, Some(cfg.k_lower()))?;
            return Ok((theta_part - sliver, theta_err + sliver_err));
        }
        (3, coupling) => {
            if r <= 0.0 {
                return Err(HarvestError::WrongRegime(
                    "the n=3 real-space route needs separation > 0".into(),
                ));
            }
            let a0 = crate::kernels::KernelConstants::a_coeffs(3)?[0];
            // Delta kernel: one Gaussian per cone branch; its second
            // derivative for the derivative coupling.
            let sign = match coupling {
                Coupling::Derivative => 1.0,
                Coupling::Amplitude => -1.0,
            };
            let t_factor: Box<dyn Fn(f64) -> f64> = match coupling {
                Coupling::Derivative => Box::new(|y: f64| gauss_dd(delay + y) + gauss_dd(delay - y)),
                Coupling::Amplitude => Box::new(|y: f64| gauss(delay + y) + gauss(delay - y)),
            };
            if sigma == 0.0 {
                (sign * i * c * a0 / r * t_factor(r), 0.0)
            } else {
                // Radial reduction of the smearing convolution: the angular
                // average turns into the difference of Gaussians shifted to
                // the two cone crossings y = ±r.
                let norm = 1.0 / (sigma * (2.0 * PI).sqrt());
                let lo = (r - TIME_WINDOW * sigma).max(0.0);
                let hi = r + TIME_WINDOW * sigma;
                let res = integrate_hinted(
                    |y| {
                        let shifted = gauss((y - r) / sigma) - gauss((y + r) / sigma);
                        Complex64::new(norm * shifted * t_factor(y), 0.0)
                    },
                    lo,
                    hi,
                    &ctx.spec,
                    &Hints::default(),
                );
                if !res.converged {
                    return Err(HarvestError::NonConvergence("real-space M minus".into()));
                }
                (
                    sign * i * c * a0 / r * res.value,
                    a0 / r * c.norm() * res.err,
                )
            }
        }
        (2, _) => {
            return Err(HarvestError::WrongRegime(
                "n=2 has no real-space route for M⁻; use the momentum path".into(),
            ))
        }
        (n, _) => return Err(HarvestError::UnsupportedDimension(n)),
    };
    Ok((value, err))
}

/// ∫ dx g_σ(x) f(|x - r|) against the normalized n=1 smearing convolution
/// Gaussian of width σ.
fn smearing_average<F: Fn(f64) -> f64>(
    sigma: f64,
    r: f64,
    f: F,
    spec: &QuadratureSpec,
) -> crate::quad::QuadResult {
    let norm = 1.0 / (sigma * (2.0 * PI).sqrt());
    let lo = -TIME_WINDOW * sigma;
    let hi = TIME_WINDOW * sigma;
    let hints = if r < hi {
        Hints::with_breakpoints(&[r, -r])
    } else {
        Hints::default()
    };
    integrate_hinted(
        |x| {
            let u = x / sigma;
            Complex64::new(norm * (-0.5 * u * u).exp() * f((x - r).abs()), 0.0)
        },
        lo,
        hi,
        spec,
        &hints,
    )
}

fn erf(x: f64) -> f64 {
    1.0 - erfc_real(x)
}

/// Genuine-harvesting part M⁺ = M - M⁻ (primary definition).
pub fn correlation_m_plus(ctx: &EvaluationContext) -> Result<(Complex64, f64)> {
    let (m, m_err) = correlation_m(ctx, CorrelationPath::Analytic)?;
    let (m_minus, mm_err) = correlation_m_minus(ctx, default_minus_path(&ctx.config))?;
    Ok((m - m_minus, m_err + mm_err))
}

/// Momentum-space cross-check of M⁺: the even (cosine) part of the time
/// factor under the same radial integral.
pub fn correlation_m_plus_momentum(ctx: &EvaluationContext) -> Result<(Complex64, f64)> {
    let cfg = &ctx.config;
    if cfg.coupling_strength == 0.0 {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    ctx.require_smeared("the momentum route for M⁺")?;
    let c = ctx.prefactor();
    let spec = ctx.spec_correlation();
    let delay = cfg.delay;
    let mut failure: Option<HarvestError> = None;
    let res = integrate_semi_infinite(
        |k| {
            let w = spectral_density(cfg, k, SpectralMode::ForM);
            match time_factor(k, delay) {
                Ok(g) => Complex64::new(g.re, 0.0) * w,
                Err(e) => {
                    failure.get_or_insert(e);
                    Complex64::new(f64::NAN, f64::NAN)
                }
            }
        },
        cfg.k_lower(),
        &spec,
        &ctx.oscillation_hint(),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    if !res.converged {
        return Err(HarvestError::NonConvergence("correlation M plus".into()));
    }
    Ok((c * res.value, c.norm() * res.err))
}

/// The route used for M⁻ when the caller does not pick one: real space for
/// the odd dimensions (exact in the distributional kernels, and the only
/// route at σ = 0), momentum for n = 2.
pub fn default_minus_path(config: &PairConfig) -> MinusPath {
    match config.dim {
        2 => MinusPath::Momentum,
        _ => MinusPath::RealSpace,
    }
}

/// Recomputes M and M⁻ through their independent routes and fails with
/// [`HarvestError::PathDisagreement`] when either pair differs beyond five
/// times the combined error estimates. A disagreement signals an
/// implementation bug, never a physics feature.
pub fn dual_path_check(ctx: &EvaluationContext) -> Result<()> {
    let (ma, ea) = correlation_m(ctx, CorrelationPath::Analytic)?;
    let (mb, eb) = correlation_m(ctx, CorrelationPath::Brute2d)?;
    if (ma - mb).norm() > 5.0 * (ea + eb) + 1e-15 {
        return Err(HarvestError::PathDisagreement(format!(
            "M analytic {ma} vs brute-2D {mb}, budget {}",
            5.0 * (ea + eb)
        )));
    }
    if ctx.config.dim != 2 {
        let (mr, er) = correlation_m_minus(ctx, MinusPath::RealSpace)?;
        let (mm, em) = correlation_m_minus(ctx, MinusPath::Momentum)?;
        if (mr - mm).norm() > 5.0 * (er + em) + 1e-15 {
            return Err(HarvestError::PathDisagreement(format!(
                "M⁻ real-space {mr} vs momentum {mm}, budget {}",
                5.0 * (er + em)
            )));
        }
    }
    Ok(())
}

/// Closed-form pointlike asymptotic of M⁻ in n = 1 derivative coupling,
/// valid for σ → 0 and (|x_Δ| + |t_Δ|) ≫ 1.
pub fn pointlike_m_minus_1d(ctx: &EvaluationContext) -> Result<Complex64> {
    let cfg = &ctx.config;
    if cfg.dim != 1 || cfg.coupling != Coupling::Derivative {
        return Err(HarvestError::WrongRegime(
            "the pointlike closed form applies to n=1 derivative coupling only".into(),
        ));
    }
    let u = cfg.separation - cfg.delay.abs();
    Ok(Complex64::new(0.0, 0.25) * ctx.prefactor() * u * (-0.5 * u * u).exp())
}

/// N = max(|M| - L, 0).
pub fn negativity(local_noise: f64, correlation: Complex64) -> f64 {
    (correlation.norm() - local_noise).max(0.0)
}

/// All elements at one configuration with the default routes.
pub fn compute_elements(ctx: &EvaluationContext) -> Result<MatrixElements> {
    let (l, l_err) = local_noise(ctx)?;
    let (lab, lab_err) = cross_noise(ctx)?;
    let zero = ctx.config.coupling_strength == 0.0;
    let ((m, m_err), (mm, mm_err)) = if zero {
        ((Complex64::new(0.0, 0.0), 0.0), (Complex64::new(0.0, 0.0), 0.0))
    } else {
        (
            correlation_m(ctx, CorrelationPath::Analytic)?,
            correlation_m_minus(ctx, default_minus_path(&ctx.config))?,
        )
    };
    let m_plus = m - mm;
    Ok(MatrixElements {
        local_noise: l,
        cross_noise: lab,
        correlation: m,
        correlation_plus: m_plus,
        correlation_minus: mm,
        negativity: negativity(l, m),
        errors: ElementErrors {
            local_noise: l_err,
            cross_noise: lab_err,
            correlation: m_err,
            correlation_plus: m_err + mm_err,
            correlation_minus: mm_err,
        },
    })
}
