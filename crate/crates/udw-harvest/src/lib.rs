//! Entanglement harvesting for a pair of Unruh-DeWitt detectors coupled to
//! the massless scalar vacuum of flat (n+1)-dimensional spacetime, for both
//! the usual amplitude coupling and the derivative coupling.
//!
//! The crate computes the leading-order joint density matrix of two equal,
//! Gaussian-switched, Gaussian-smeared detectors: the local noise `L`, the
//! cross term `L_AB`, the entangling correlation `M`, and the split
//! `M = M⁺ + M⁻` into the part sourced by field correlations (genuine
//! harvesting) and the part mediated by the field commutator
//! (communication). The negativity is `N = max(|M| - L, 0)`.
//!
//! Everything is dimensionless in units of the interaction timescale `T`;
//! see [`types::PairConfig`]. Supported dimensions are n ∈ {1, 2, 3}; the
//! n = 1 amplitude coupling carries the mandatory IR cutoff.
//!
//! Two independent validation layers live in [`oracle`]: a discrete-mode
//! box sum reproducing `L` and `M` without any of the continuum machinery,
//! and an exact tripartite simulator demonstrating that communication
//! through a mediator is carried, at leading order, entirely by the
//! commutator of the mediator observables - and is impossible when they
//! commute.
//!
//! The `examples/` directory has one runnable example per capability:
//!
//! ```text
//! cargo run --release --example single_point
//! cargo run --release --example figure_sweep
//! cargo run --release --example separation_sweep
//! cargo run --release --example pointlike_limit
//! cargo run --release --example kernel_checks
//! cargo run --release --example mode_sum_oracle
//! cargo run --release --example signaling_check
//! ```
//!
//! The same functionality is scripted by the thin `udw-harvest` binary
//! (subcommands `compute`, `sweep`, `figure2`, `oracle-check`,
//! `signal-check`).

pub mod elements;
pub mod error;
pub mod kernels;
pub mod oracle;
pub mod quad;
pub mod sweep;
pub mod types;

pub use elements::{
    compute_elements, correlation_m, correlation_m_minus, correlation_m_plus,
    correlation_m_plus_momentum, cross_noise, dual_path_check, local_noise, negativity,
    pointlike_m_minus_1d, CorrelationPath, EvaluationContext, MinusPath,
};
pub use error::{HarvestError, Result};
pub use quad::{QuadResult, QuadratureSpec};
pub use sweep::{figure_preset, run_compute, run_sweep, FigureScenario, SweepAxis, SweepRequest};
pub use types::{assemble_rho, Coupling, DensityMatrix, ElementErrors, MatrixElements, PairConfig};
