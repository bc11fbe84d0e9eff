//! Detects the Heisenberg algebraic soliton and compares the closed-form
//! solution with the adaptive integrator over one unit of time.
//!
//! ```sh
//! cargo run --example soliton_closed_form
//! ```

use ricciflow::catalog;
use ricciflow::curvature::{ricci, Metric};
use ricciflow::flow::{closed_form_soliton_flow, detect_algebraic_soliton, integrate_flow, FlowOptions};

fn main() {
    let heis = catalog::get("heis3").unwrap().algebra;
    let metric = Metric::canonical(3);

    let sol = detect_algebraic_soliton(&heis, &metric).unwrap();
    println!(
        "soliton: c = {}, derivation residual = {:.2e}",
        sol.c, sol.derivation_residual
    );
    println!("D = {:.1}", sol.d);

    let ric0 = ricci(&heis, &metric).unwrap().ric;
    let traj = integrate_flow(&heis, &metric, 1.0, &FlowOptions::default()).unwrap();
    println!("{:>8} {:>12} {:>12} {:>10}", "t", "p11", "(3t+1)^1/3", "rel err");
    for sample in traj.samples.iter().step_by(traj.samples.len() / 8) {
        let closed = closed_form_soliton_flow(&sol, &ric0, sample.t).unwrap();
        let rel = (sample.p.matrix() - closed.matrix()).amax() / closed.matrix().norm();
        println!(
            "{:8.3} {:12.8} {:12.8} {:10.2e}",
            sample.t,
            sample.p.matrix()[(0, 0)],
            (3.0 * sample.t + 1.0).powf(1.0 / 3.0),
            rel
        );
    }
}
