//! Check the continuum matrix elements against the brute-force
//! discrete-mode evaluation on a periodic box.
//!
//! ```text
//! cargo run --release --example mode_sum_oracle
//! ```

use udw_harvest::elements::{correlation_m, local_noise, CorrelationPath, EvaluationContext};
use udw_harvest::oracle::{discrete_mode_elements, ModeBox};
use udw_harvest::{Coupling, PairConfig};

fn main() {
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

    let mbox = ModeBox::for_config(&config);
    println!(
        "box: length {} T, {} modes per side, spacing {:.4}/T",
        mbox.box_length,
        mbox.mode_cut,
        2.0 * std::f64::consts::PI / mbox.box_length
    );

    let sum = discrete_mode_elements(&config, &mbox).expect("resolved box");
    let ctx = EvaluationContext::new(config).unwrap();
    let (l, _) = local_noise(&ctx).unwrap();
    let (m, _) = correlation_m(&ctx, CorrelationPath::Analytic).unwrap();

    println!("continuum   L = {l:.8e}    |M| = {:.8e}", m.norm());
    println!(
        "mode sum    L = {:.8e}    |M| = {:.8e}   (refinement converged: {})",
        sum.local_noise,
        sum.correlation.norm(),
        sum.converged
    );
    println!(
        "relative    L: {:.2e}          |M|: {:.2e}",
        (sum.local_noise - l).abs() / l,
        (sum.correlation.norm() - m.norm()).abs() / m.norm()
    );
}
