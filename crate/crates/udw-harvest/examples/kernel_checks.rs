//! Tour of the commutator kernels: distributional structure, the n = 2
//! closed form against its finite difference, and the smeared consistency
//! between position- and momentum-space representations.
//!
//! ```text
//! cargo run --release --example kernel_checks
//! ```

use num_complex::Complex64;
use std::f64::consts::PI;
use udw_harvest::kernels::{
    bessel_j0, faddeeva, smear_w_minus_dtdt, w_minus, w_minus_dtdt, GaussianProfile, KernelForm,
};
use udw_harvest::quad::QuadratureSpec;

fn main() {
    println!("special functions:");
    println!("  w(0)        = {}", faddeeva(Complex64::new(0.0, 0.0)).unwrap());
    println!("  w(i)        = {}", faddeeva(Complex64::new(0.0, 1.0)).unwrap());
    println!("  J0(0)       = {}", bessel_j0(0.0));
    println!("  J0(2.40482555769577) = {:+.2e}  (first zero)", bessel_j0(2.404825557695773));

    println!("\nn = 1: commutator is a Heaviside plateau, its ∂t∂t' two δ' terms:");
    match w_minus(1, 2.0, 1.0).unwrap() {
        KernelForm::Distribution(d) => println!("  W₁⁻(Δt=2, r=1) plateau = {}", d.plateau),
        _ => unreachable!(),
    }
    match w_minus_dtdt(1, 0.0, 1.0).unwrap() {
        KernelForm::Distribution(d) => {
            for t in &d.deltas {
                println!(
                    "  ∂t∂t'W₁⁻ term: {} · δ^({})(Δt - ({}))",
                    t.coeff, t.order, t.support
                );
            }
        }
        _ => unreachable!(),
    }

    println!("\nn = 2: interior closed form vs mixed finite difference of W₂⁻:");
    let (dt, r, h) = (2.0, 1.0, 1e-4);
    let w = |t: f64| w_minus(2, t, r).unwrap().pointwise().unwrap();
    let fd = -(w(dt + 2.0 * h) - w(dt) * 2.0 + w(dt - 2.0 * h)) / Complex64::new(4.0 * h * h, 0.0);
    let closed = w_minus_dtdt(2, dt, r).unwrap().pointwise().unwrap();
    println!("  finite difference: {fd:.10e}");
    println!("  closed form:       {closed:.10e}");

    println!("\nn = 3: δ'' kernel smeared against a Gaussian vs the momentum integral:");
    let spec = QuadratureSpec::default();
    let g = GaussianProfile::unit(1.8, 0.3);
    let r = 2.0;
    let smeared = smear_w_minus_dtdt(3, r, &g, &spec).unwrap();
    // -(i/4π²) ∫ dω ω³ sinc(ωr) ĝ_sin(ω): same object through the mode
    // expansion.
    let uv = QuadratureSpec::uv_cutoff(g.width, 0.0, false);
    let momentum = udw_harvest::quad::integrate_semi_infinite(
        |omega| {
            Complex64::new(
                omega.powi(3) * (omega * r).sin() / (omega * r) * g.fourier_sin(omega),
                0.0,
            )
        },
        0.0,
        &spec.with_uv_scale(uv),
        &udw_harvest::quad::Hints::with_period(2.0 * PI / (r + g.center)),
    )
    .value
        * Complex64::new(0.0, -1.0 / (4.0 * PI * PI));
    println!("  smeared δ'' form:  {smeared:.10e}");
    println!("  momentum integral: {momentum:.10e}");
}
