//! Exact finite-dimensional check of the signaling structure: two qubits A
//! and B coupled to interaction-picture observables of a mediator C.
//!
//! The part of B's final state attributable to A,
//! `ρ_B^signal = Tr_AC(U ρ U† - U_B ρ U_B†)`, vanishes identically when the
//! mediator observables commute at all time pairs, no matter the coupling
//! strength; at leading order in λ it is produced solely by the commutator
//! [C_A(t), C_B(t')], which the 2D quadrature of [`leading_order_signal`]
//! evaluates with exact matrix commutators.

use num_complex::Complex64;

use super::linalg::{reduce_to_b, CMat, CVec};
use crate::error::{HarvestError, Result};
use crate::quad::{integrate_hinted, Hints, QuadratureSpec};

/// The mediating system C.
#[derive(Debug, Clone, Copy)]
pub enum Mediator {
    Qubit { freq: f64 },
    TruncatedOscillator { levels: usize, freq: f64 },
}

impl Mediator {
    pub fn levels(&self) -> usize {
        match self {
            Mediator::Qubit { .. } => 2,
            Mediator::TruncatedOscillator { levels, .. } => *levels,
        }
    }
}

/// Preset pair of mediator observables C_A(t), C_B(t).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObservablePreset {
    /// Both detectors couple to the same static observable; all commutators
    /// vanish and no signal can pass, although correlations still form.
    Commuting,
    /// Both couple to the interaction-picture quadrature x̂(t), whose
    /// unequal-time commutators are nonzero, like a field's.
    FieldLike,
}

/// Initial qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitState {
    Ground,
    /// (|g⟩ + |e⟩)/√2, which gives the monopole moment a nonzero mean.
    PlusX,
}

/// One detector line: Gaussian switching centred on `window_center` with
/// unit width and strong support `window_center ± 3.5`.
#[derive(Debug, Clone, Copy)]
pub struct DetectorLine {
    pub window_center: f64,
    pub gap: f64,
    pub initial: QubitState,
}

/// Finite-dimensional tripartite A-C-B scenario with piecewise-constant
/// scheduling.
#[derive(Debug, Clone)]
pub struct SignalScenario {
    pub mediator: Mediator,
    pub preset: ObservablePreset,
    pub lambda: f64,
    pub det_a: DetectorLine,
    pub det_b: DetectorLine,
    /// Initial scheduling step; `evolve` halves it until convergence.
    pub dt: f64,
}

/// Which couplings participate in the evolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Include {
    Both,
    OnlyB,
}

const WINDOW_HALF_WIDTH: f64 = 3.5;

impl SignalScenario {
    /// Commuting preset: strong coupling, overlapping windows, ground-state
    /// qubits. Correlates A and B through the shared quadrature while the
    /// signal stays exactly zero.
    pub fn commuting(lambda: f64) -> SignalScenario {
        SignalScenario {
            mediator: Mediator::TruncatedOscillator {
                levels: 12,
                freq: 1.3,
            },
            preset: ObservablePreset::Commuting,
            lambda,
            det_a: DetectorLine {
                window_center: 0.0,
                gap: 0.0,
                initial: QubitState::Ground,
            },
            det_b: DetectorLine {
                window_center: 1.0,
                gap: 0.0,
                initial: QubitState::Ground,
            },
            dt: 0.05,
        }
    }

    /// Field-like preset: A's window precedes B's and overlaps it, A starts
    /// in |+⟩ so the leading-order signal does not vanish by symmetry.
    pub fn field_like(lambda: f64) -> SignalScenario {
        SignalScenario {
            mediator: Mediator::TruncatedOscillator {
                levels: 12,
                freq: 1.3,
            },
            preset: ObservablePreset::FieldLike,
            lambda,
            det_a: DetectorLine {
                window_center: 0.0,
                gap: 0.0,
                initial: QubitState::PlusX,
            },
            det_b: DetectorLine {
                window_center: 2.0,
                gap: 0.0,
                initial: QubitState::Ground,
            },
            dt: 0.05,
        }
    }

    pub fn with_levels(mut self, levels: usize) -> Self {
        if let Mediator::TruncatedOscillator { freq, .. } = self.mediator {
            self.mediator = Mediator::TruncatedOscillator { levels, freq };
        }
        self
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (2, 2, self.mediator.levels())
    }

    fn window(&self) -> (f64, f64) {
        let lo = (self.det_a.window_center - WINDOW_HALF_WIDTH)
            .min(self.det_b.window_center - WINDOW_HALF_WIDTH);
        let hi = (self.det_a.window_center + WINDOW_HALF_WIDTH)
            .max(self.det_b.window_center + WINDOW_HALF_WIDTH);
        (lo, hi)
    }

    fn chi(&self, det: &DetectorLine, t: f64) -> f64 {
        let u = t - det.window_center;
        if u.abs() > WINDOW_HALF_WIDTH {
            0.0
        } else {
            (-u * u).exp()
        }
    }

    /// Mediator observable in the interaction picture at time t.
    pub fn mediator_observable(&self, t: f64) -> CMat {
        let dc = self.mediator.levels();
        match (self.preset, self.mediator) {
            (ObservablePreset::Commuting, _) => {
                // Static quadrature x̂ = (a + a†)/√2 (σ_x for a qubit).
                let mut m = CMat::zeros(dc, dc);
                for j in 1..dc {
                    let v = Complex64::new((j as f64).sqrt() / 2f64.sqrt(), 0.0);
                    m[(j - 1, j)] = v;
                    m[(j, j - 1)] = v;
                }
                m
            }
            (ObservablePreset::FieldLike, Mediator::TruncatedOscillator { freq, .. }) => {
                // x̂(t) = (a e^{-iωt} + a† e^{iωt})/√2.
                let mut m = CMat::zeros(dc, dc);
                for j in 1..dc {
                    let amp = (j as f64).sqrt() / 2f64.sqrt();
                    m[(j - 1, j)] = Complex64::from_polar(amp, -freq * t);
                    m[(j, j - 1)] = Complex64::from_polar(amp, freq * t);
                }
                m
            }
            (ObservablePreset::FieldLike, Mediator::Qubit { freq }) => {
                // σ_x(t) under H_C = ω σ_z / 2.
                let mut m = CMat::zeros(2, 2);
                m[(0, 1)] = Complex64::from_polar(1.0, freq * t);
                m[(1, 0)] = Complex64::from_polar(1.0, -freq * t);
                m
            }
        }
    }

    /// Interaction-picture monopole moment μ(t) = e^{iΩt}σ⁺ + e^{-iΩt}σ⁻.
    fn monopole(gap: f64, t: f64) -> CMat {
        let mut m = CMat::zeros(2, 2);
        m[(0, 1)] = Complex64::from_polar(1.0, -gap * t);
        m[(1, 0)] = Complex64::from_polar(1.0, gap * t);
        m
    }

    fn qubit_vec(state: QubitState) -> CVec {
        match state {
            QubitState::Ground => CVec::from_vec(vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
            ]),
            QubitState::PlusX => CVec::from_vec(vec![
                Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            ]),
        }
    }

    /// Product initial state |A⟩⊗|B⟩⊗|0_C⟩.
    pub fn initial_state(&self) -> CVec {
        let (da, db, dc) = self.dims();
        let a = Self::qubit_vec(self.det_a.initial);
        let b = Self::qubit_vec(self.det_b.initial);
        let mut psi = CVec::zeros(da * db * dc);
        for ia in 0..da {
            for ib in 0..db {
                psi[(ia * db + ib) * dc] = a[ia] * b[ib];
            }
        }
        psi
    }

    /// The two kron'd coupling operators at time t (switching not applied).
    fn coupling_ops(&self, t: f64) -> (CMat, CMat) {
        let (da, db, _) = self.dims();
        let c = self.mediator_observable(t);
        let mu_a = Self::monopole(self.det_a.gap, t);
        let mu_b = Self::monopole(self.det_b.gap, t);
        let id_a = CMat::identity(da, da);
        let id_b = CMat::identity(db, db);
        let ka = mu_a.kronecker(&id_b).kronecker(&c);
        let kb = id_a.kronecker(&mu_b).kronecker(&c);
        (ka, kb)
    }

    fn hamiltonian(&self, t: f64, include: Include) -> CMat {
        let (ka, kb) = self.coupling_ops(t);
        let xa = match include {
            Include::Both => self.lambda * self.chi(&self.det_a, t),
            Include::OnlyB => 0.0,
        };
        let xb = self.lambda * self.chi(&self.det_b, t);
        ka * Complex64::new(xa, 0.0) + kb * Complex64::new(xb, 0.0)
    }
}

/// ψ ← e^{-iM} ψ by a Taylor series on matrix-vector products; the step
/// norms in play are far below 1, so the series is short and exact to
/// machine precision.
fn expm_apply(m: &CMat, psi: &CVec) -> CVec {
    let mut out = psi.clone();
    let mut term = psi.clone();
    let scale = Complex64::new(0.0, -1.0);
    for k in 1..200 {
        term = m * &term * (scale / k as f64);
        out += &term;
        if term.norm() <= 1e-18 * out.norm() {
            break;
        }
    }
    out
}

/// Fixed-step evolution: per step the generator is ∫H dt sampled at the
/// two-node Gauss points, so the scalar scheduling error is negligible and
/// the O(dt²) step error comes only from operator ordering. Commuting
/// couplings therefore factorize exactly at any step size.
pub fn evolve_fixed(scenario: &SignalScenario, include: Include, dt: f64) -> CVec {
    let (t0, t1) = scenario.window();
    let steps = ((t1 - t0) / dt).ceil() as usize;
    let dt = (t1 - t0) / steps as f64;
    let gauss_off = dt * 0.5 / 3.0f64.sqrt();
    let half = Complex64::new(0.5 * dt, 0.0);
    let mut psi = scenario.initial_state();
    for s in 0..steps {
        let t_mid = t0 + (s as f64 + 0.5) * dt;
        let h1 = scenario.hamiltonian(t_mid - gauss_off, include);
        let h2 = scenario.hamiltonian(t_mid + gauss_off, include);
        let generator = (h1 + h2) * half;
        psi = expm_apply(&generator, &psi);
    }
    psi
}

/// Evolution with the step halved until the final state moves by less than
/// 1e-10 in norm.
pub fn evolve(scenario: &SignalScenario, include: Include) -> Result<CVec> {
    let mut dt = scenario.dt;
    let mut prev = evolve_fixed(scenario, include, dt);
    for _ in 0..14 {
        dt *= 0.5;
        let (t0, t1) = scenario.window();
        if (t1 - t0) / dt > 2e6 {
            return Err(HarvestError::StepNotConverged);
        }
        let next = evolve_fixed(scenario, include, dt);
        let diff = (&next - &prev).norm();
        if diff < 1e-10 {
            return Ok(next);
        }
        prev = next;
    }
    Err(HarvestError::StepNotConverged)
}

/// ρ_B^signal = Tr_AC(U ρ₀ U† - U_B ρ₀ U_B†) and its trace norm.
pub fn rho_b_signal(scenario: &SignalScenario) -> Result<(CMat, f64)> {
    let full = evolve(scenario, Include::Both)?;
    let only_b = evolve(scenario, Include::OnlyB)?;
    let dims = scenario.dims();
    let diff = reduce_to_b(&full, dims) - reduce_to_b(&only_b, dims);
    let norm = trace_norm_2(&diff);
    Ok((diff, norm))
}

/// Trace norm of a Hermitian 2x2 matrix from its closed-form eigenvalues.
fn trace_norm_2(m: &CMat) -> f64 {
    let half_tr = 0.5 * (m[(0, 0)].re + m[(1, 1)].re);
    let half_gap = 0.5 * (m[(0, 0)].re - m[(1, 1)].re);
    let disc = (half_gap * half_gap + m[(0, 1)].norm_sqr()).sqrt();
    (half_tr + disc).abs() + (half_tr - disc).abs()
}

/// Leading-order signal
/// ∫dt ∫_t dt' [Ô_B(t'), Tr_AC(ρ̂₀ Ô_A(t) [Ĉ_A(t), Ĉ_B(t')])]
/// by iterated quadrature over the scheduling window, with exact matrix
/// commutators. For the product initial state the partial trace factorizes
/// into ⟨Ô_A(t)⟩ and the mediator commutator average.
pub fn leading_order_signal(scenario: &SignalScenario) -> Result<CMat> {
    let spec = QuadratureSpec {
        abs_tol: 1e-12,
        rel_tol: 1e-9,
        max_subdivisions: 1000,
        uv_scale: 0.0,
    };
    let (t0, t1) = scenario.window();
    let a = &scenario.det_a;
    let b = &scenario.det_b;
    let rho_a = SignalScenario::qubit_vec(a.initial);
    // ⟨μ_A(t)⟩ in the initial A state.
    let mean_mu_a = |t: f64| {
        let mu = SignalScenario::monopole(a.gap, t);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                acc += rho_a[i].conj() * mu[(i, j)] * rho_a[j];
            }
        }
        acc
    };
    // ⟨0_C| [C(t), C(t')] |0_C⟩.
    let commutator_mean = |t: f64, tp: f64| {
        let ca = scenario.mediator_observable(t);
        let cb = scenario.mediator_observable(tp);
        let comm = &ca * &cb - &cb * &ca;
        comm[(0, 0)]
    };
    let lambda2 = scenario.lambda * scenario.lambda;
    // Two scalar double integrals, one per σ± component of μ_B(t').
    let mut failed = false;
    let mut outer = |sign: f64| {
        let res = integrate_hinted(
            |t| {
                let xa = scenario.chi(a, t);
                if xa == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let inner = integrate_hinted(
                    |tp| {
                        let xb = scenario.chi(b, tp);
                        if xb == 0.0 {
                            return Complex64::new(0.0, 0.0);
                        }
                        Complex64::from_polar(xb, sign * b.gap * tp) * commutator_mean(t, tp)
                    },
                    t,
                    t1,
                    &spec,
                    &Hints::default(),
                );
                mean_mu_a(t) * inner.value * xa
            },
            t0,
            t1,
            &spec,
            &Hints::default(),
        );
        if !res.converged {
            failed = true;
        }
        res.value * lambda2
    };
    let s_plus = outer(1.0);
    let s_minus = outer(-1.0);
    if failed {
        return Err(HarvestError::NonConvergence("leading-order signal".into()));
    }
    // [σ±, ρ_B] blocks assembled from the scalar integrals.
    let rho_b_vec = SignalScenario::qubit_vec(b.initial);
    let mut rho_b = CMat::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            rho_b[(i, j)] = rho_b_vec[i] * rho_b_vec[j].conj();
        }
    }
    let mut sigma_plus = CMat::zeros(2, 2);
    sigma_plus[(1, 0)] = Complex64::new(1.0, 0.0);
    let sigma_minus = sigma_plus.adjoint();
    let commutator =
        |op: &CMat, rho: &CMat| -> CMat { op * rho - rho * op };
    let term = commutator(&sigma_plus, &rho_b) * s_plus + commutator(&sigma_minus, &rho_b) * s_minus;
    // [O_B, [..]] structure: the outer commutator with O_B(t') was already
    // distributed over σ± above; term is i-times-Hermitian once the Dyson
    // prefactors are included.
    Ok(term)
}
