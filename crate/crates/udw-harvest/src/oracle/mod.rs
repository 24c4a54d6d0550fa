//! Independent validation paths: a discrete-mode brute-force evaluation of
//! L and M on a periodic box, and an exact finite-dimensional simulator for
//! the signaling structure of mediated couplings.

pub mod linalg;
pub mod modesum;
pub mod signal;

pub use linalg::{hermitian_eigenvalues, mutual_information_ab, trace_norm, CMat, CVec};
pub use modesum::{discrete_mode_elements, ModeBox, ModeSumElements};
pub use signal::{
    evolve, evolve_fixed, leading_order_signal, rho_b_signal, DetectorLine, Include, Mediator,
    ObservablePreset, QubitState, SignalScenario,
};
