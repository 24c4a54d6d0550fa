//! Compute every matrix element for one detector-pair configuration and
//! assemble the joint density matrix.
//!
//! ```text
//! cargo run --release --example single_point
//! ```

use udw_harvest::{
    assemble_rho, compute_elements, Coupling, EvaluationContext, PairConfig,
};

fn main() {
    // Derivative coupling in 1+1D at full light contact: the scenario where
    // the communication term cancels exactly and the entanglement peak is
    // genuinely harvested.
    let config = PairConfig {
        dim: 1,
        coupling: Coupling::Derivative,
        gap: 4.0,
        smearing: 0.05,
        delay: 5.0,
        separation: 5.0,
        time_offset: 0.0,
        coupling_strength: 1.0,
        ir_cutoff: None,
    };

    let ctx = EvaluationContext::new(config).expect("valid configuration");
    let e = compute_elements(&ctx).expect("matrix elements");

    println!("L      = {:.8e}   (± {:.1e})", e.local_noise, e.errors.local_noise);
    println!(
        "L_AB   = {:.8e} + {:.8e} i   (|L_AB| = {:.8e})",
        e.cross_noise.re,
        e.cross_noise.im,
        e.cross_noise.norm()
    );
    println!("|M|    = {:.8e}   (± {:.1e})", e.correlation.norm(), e.errors.correlation);
    println!("|M⁺|   = {:.8e}", e.correlation_plus.norm());
    println!("|M⁻|   = {:.8e}", e.correlation_minus.norm());
    println!("N      = {:.8e}", e.negativity);

    let rho = assemble_rho(&e).expect("perturbative regime");
    println!("\njoint state in the basis {{gg, eg, ge, ee}}:");
    for row in &rho.entries {
        let cells: Vec<String> = row
            .iter()
            .map(|z| format!("{:+.3e}{:+.3e}i", z.re, z.im))
            .collect();
        println!("  [ {} ]", cells.join("  "));
    }
    println!("\ntrace = {:.3e}, hermitian: {}", rho.trace().re, rho.is_hermitian(1e-15));
}
