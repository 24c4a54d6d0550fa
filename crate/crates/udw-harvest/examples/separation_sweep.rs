//! Sweep the detector separation at fixed switching delay: how harvesting
//! falls off as the pair is pulled apart at fixed timing.
//!
//! ```text
//! cargo run --release --example separation_sweep
//! ```

use udw_harvest::sweep::{figure_preset, run_sweep, to_csv, FigureScenario, SweepAxis};

fn main() {
    let mut request = figure_preset(FigureScenario::B);
    request.base.delay = 5.0;
    request.axis = SweepAxis::Separation;
    request.start = 0.5;
    request.stop = 10.0;
    request.points = 39;

    let run = run_sweep(&request, None, None).expect("sweep");
    print!("{}", to_csv(&run));

    let best = run
        .rows
        .iter()
        .map(|r| (r.axis_value, r.outcome.as_ref().unwrap().negativity))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    eprintln!(
        "# negativity maximal at |x_Δ|/T = {} (N = {:.3e}), i.e. at light contact with t_Δ/T = 5",
        best.0, best.1
    );
}
