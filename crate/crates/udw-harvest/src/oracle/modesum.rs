//! Brute-force evaluation of L and M on a periodic box: the momentum
//! integral becomes a plane-wave mode sum and the switching integrals are
//! done by quadrature, so none of the continuum machinery (closed-form time
//! factors, radial weights, truncation rules) is shared with the main path.

use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::PI;

use crate::error::{HarvestError, Result};
use crate::quad::{integrate_hinted, Hints, QuadratureSpec};
use crate::types::{Coupling, PairConfig};

/// Periodic box discretization of the field.
#[derive(Debug, Clone, Copy)]
pub struct ModeBox {
    /// Box size in units of T.
    pub box_length: f64,
    /// Maximum mode index per axis; momenta run over 2πj/L, j = -N..N, j≠0.
    pub mode_cut: usize,
    pub dim: u32,
}

impl ModeBox {
    /// Box that resolves the configured scales: big enough that image
    /// charges are negligible, fine enough to sample the switching and
    /// smearing damping, deep enough to cover the UV floor of the continuum
    /// integrals. A config with an IR cutoff needs mode spacing well below
    /// Λ, or the logarithmic edge of the dropped-mode region misses the
    /// continuum cutoff by up to one spacing.
    pub fn for_config(config: &PairConfig) -> ModeBox {
        let mut box_length = 10.0 * (config.separation + 7.0);
        if let Some(cutoff) = config.ir_cutoff {
            box_length = box_length.max(2.0 * PI * 10.0 / cutoff);
        }
        let k_target = config.gap + 40.0;
        let mode_cut = (k_target * box_length / (2.0 * PI)).ceil() as usize;
        ModeBox {
            box_length,
            mode_cut,
            dim: config.dim,
        }
    }
}

/// L and M from the mode sum, with the flag from the last doubling of
/// `mode_cut`.
#[derive(Debug, Clone, Copy)]
pub struct ModeSumElements {
    pub local_noise: f64,
    pub correlation: Complex64,
    pub converged: bool,
}

fn check_resolution(config: &PairConfig, mbox: &ModeBox) -> Result<()> {
    if mbox.dim != config.dim {
        return Err(HarvestError::UnresolvedScales(format!(
            "box dimension {} differs from config dimension {}",
            mbox.dim, config.dim
        )));
    }
    if mbox.box_length < 10.0 * (config.separation + 7.0) {
        return Err(HarvestError::UnresolvedScales(format!(
            "box length {} below 10(|x_Δ| + 7T) = {}",
            mbox.box_length,
            10.0 * (config.separation + 7.0)
        )));
    }
    let spacing = 2.0 * PI / mbox.box_length;
    let needed = if config.smearing > 0.0 {
        (1.0 / config.smearing).min(1.0) / 10.0
    } else {
        0.1
    };
    if spacing > needed {
        return Err(HarvestError::UnresolvedScales(format!(
            "mode spacing {spacing} above the resolution heuristic {needed}"
        )));
    }
    let count = (2 * mbox.mode_cut + 1).pow(config.dim);
    if count > 1_000_000 {
        return Err(HarvestError::UnresolvedScales(format!(
            "{count} modes exceed the 1e6 budget"
        )));
    }
    Ok(())
}

/// ∫ χ(t) e^{iνt} dt for the bare switching χ(t) = e^{-t²}, by quadrature.
fn switching_transform(nu: f64, spec: &QuadratureSpec) -> Complex64 {
    let hints = if nu.abs() > 1.0 {
        Hints::with_period(2.0 * PI / nu.abs())
    } else {
        Hints::default()
    };
    integrate_hinted(
        |t| Complex64::from_polar((-t * t).exp(), nu * t),
        -7.0,
        7.0,
        spec,
        &hints,
    )
    .value
}

/// ∫ e^{-t²/2} e^{iνt} dt, the t₊ factor left after rotating the double
/// time integral of M to (t₊, t₋) coordinates.
fn plus_transform(nu: f64, spec: &QuadratureSpec) -> Complex64 {
    let hints = if nu.abs() > 1.0 {
        Hints::with_period(2.0 * PI / nu.abs())
    } else {
        Hints::default()
    };
    integrate_hinted(
        |t| Complex64::from_polar((-0.5 * t * t).exp(), nu * t),
        -10.0,
        10.0,
        spec,
        &hints,
    )
    .value
}

/// ∫ e^{-t²/2} e^{-iω|t - t_Δ|} dt by quadrature with a kink breakpoint.
fn kinked_transform(omega: f64, delay: f64, spec: &QuadratureSpec) -> Complex64 {
    let lim = 10.0 + delay.abs().min(12.0);
    let mut hints = if delay.abs() < lim {
        Hints::with_breakpoints(&[delay])
    } else {
        Hints::default()
    };
    if omega > 1.0 {
        hints = hints.and_period(2.0 * PI / omega);
    }
    integrate_hinted(
        |t| Complex64::from_polar((-0.5 * t * t).exp(), -omega * (t - delay).abs()),
        -lim,
        lim,
        spec,
        &hints,
    )
    .value
}

/// Mode-sum L and M for a validated config.
///
/// The double time integral of M factorizes exactly in (t₊, t₋) = (t+t',
/// t-t') coordinates; both factors are integrated numerically. The k = 0
/// mode is excluded in every dimension, and for n = 1 amplitude coupling
/// all modes below the IR cutoff are dropped.
pub fn discrete_mode_elements(config: &PairConfig, mbox: &ModeBox) -> Result<ModeSumElements> {
    let config = config.clone().validate()?;
    check_resolution(&config, mbox)?;

    let spec = QuadratureSpec {
        abs_tol: 1e-13,
        rel_tol: 1e-9,
        max_subdivisions: 4000,
        uv_scale: 0.0,
    };
    let lam2 = config.coupling_strength * config.coupling_strength;
    if lam2 == 0.0 {
        return Ok(ModeSumElements {
            local_noise: 0.0,
            correlation: Complex64::new(0.0, 0.0),
            converged: true,
        });
    }
    let p = config.coupling.derivative_order();
    let length = mbox.box_length;
    let dk = 2.0 * PI / length;
    let gap = config.gap;
    let n = config.dim;
    let volume = length.powi(n as i32);

    // t₊ factor of M, shared by all modes; 0.5 is the (t₊, t₋) Jacobian.
    let a_plus = plus_transform(gap, &spec) * 0.5;
    let m_phase = -Complex64::from_polar(lam2, gap * config.time_offset);

    let mut kinked_cache: HashMap<u64, Complex64> = HashMap::new();
    let mut sw_cache: HashMap<u64, f64> = HashMap::new();

    let mut l_half = 0.0;
    let mut m_half = Complex64::new(0.0, 0.0);
    let mut l_full = 0.0;
    let mut m_full = Complex64::new(0.0, 0.0);
    let half_cut = (mbox.mode_cut / 2).max(1);

    let cut = mbox.mode_cut as i64;
    let mut lattice = vec![-cut; n as usize];
    'outer: loop {
        let j2: i64 = lattice.iter().map(|j| j * j).sum();
        if j2 != 0 {
            let within_half = lattice.iter().all(|j| j.abs() <= half_cut as i64);
            let k = dk * (j2 as f64).sqrt();
            let omega = k;
            let keep = !(n == 1
                && config.coupling == Coupling::Amplitude
                && omega < config.k_lower());
            if keep {
                let omega_pow = match p {
                    0 => 1.0 / omega,
                    _ => omega,
                };
                let smear = (-0.5 * k * k * config.smearing * config.smearing).exp();
                let weight = omega_pow / (2.0 * volume);

                // Local noise: |∫χ e^{i(Ω+ω)t}|² per mode.
                let sw_key = j2 as u64;
                let sw = *sw_cache.entry(sw_key).or_insert_with(|| {
                    switching_transform(gap + omega, &spec).norm_sqr()
                });
                let l_term = lam2 * weight * smear * sw;

                // Correlation: phase from the separation, kinked t₋ factor.
                let kx = dk * lattice[0] as f64;
                let b = *kinked_cache.entry(j2 as u64).or_insert_with(|| {
                    kinked_transform(omega, config.delay, &spec)
                });
                let m_term = m_phase
                    * Complex64::from_polar(weight * smear, -kx * config.separation)
                    * a_plus
                    * b;

                l_full += l_term;
                m_full += m_term;
                if within_half {
                    l_half += l_term;
                    m_half += m_term;
                }
            }
        }
        // Odometer increment over [-cut, cut]^n.
        for axis in 0..=n as usize {
            if axis == n as usize {
                break 'outer;
            }
            lattice[axis] += 1;
            if lattice[axis] <= cut {
                continue 'outer;
            }
            lattice[axis] = -cut;
        }
    }

    let l_ok = (l_full - l_half).abs() <= 0.01 * l_full.abs().max(1e-300);
    let m_ok = (m_full - m_half).norm() <= 0.01 * m_full.norm().max(1e-300);
    Ok(ModeSumElements {
        local_noise: l_full,
        correlation: m_full,
        converged: l_ok && m_ok,
    })
}
