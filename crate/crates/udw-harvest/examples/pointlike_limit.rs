//! The pointlike closed form of the communication term in 1+1D derivative
//! coupling against the full quadrature, across the light cone.
//!
//! ```text
//! cargo run --release --example pointlike_limit
//! ```

use udw_harvest::{
    correlation_m_minus, pointlike_m_minus_1d, Coupling, EvaluationContext, MinusPath, PairConfig,
};

fn main() {
    let base = PairConfig {
        dim: 1,
        coupling: Coupling::Derivative,
        gap: 4.0,
        smearing: 1e-3,
        delay: 0.0,
        separation: 5.0,
        time_offset: 0.0,
        coupling_strength: 1.0,
        ir_cutoff: None,
    };

    println!("t_Δ/T    |M⁻| closed form   |M⁻| quadrature    relative gap");
    for i in 0..=16 {
        let delay = 3.0 + 0.25 * i as f64;
        let ctx = EvaluationContext::new(PairConfig {
            delay,
            ..base.clone()
        })
        .unwrap();
        let closed = pointlike_m_minus_1d(&ctx).unwrap();
        let (quad, _) = correlation_m_minus(&ctx, MinusPath::RealSpace).unwrap();
        let rel = if quad.norm() > 1e-12 * ctx.prefactor().norm() {
            format!("{:.2e}", (closed - quad).norm() / quad.norm())
        } else {
            "(on the cone: both ~ 0)".into()
        };
        println!(
            "{delay:5.2}    {:.8e}     {:.8e}     {rel}",
            closed.norm(),
            quad.norm()
        );
    }
}
