//! Integrates the flow from the canonical metric on the filiform `n4`
//! algebra and shows the diagonality diagnostics picking up the loss of
//! diagonality, in contrast with the Heisenberg soliton.
//!
//! ```sh
//! cargo run --example flow_nondiagonal
//! ```

use ricciflow::catalog;
use ricciflow::curvature::Metric;
use ricciflow::flow::{diagonality_report, integrate_flow, FlowOptions};

fn main() {
    for name in ["n4", "heis3"] {
        let l = catalog::get(name).unwrap().algebra;
        let traj =
            integrate_flow(&l, &Metric::canonical(l.dim()), 0.2, &FlowOptions::default()).unwrap();
        let diag = diagonality_report(&traj).unwrap();
        println!(
            "{name:6} status = {:?}, steps = {}, max pairwise commutator = {:.3e}",
            traj.status,
            traj.samples.len() - 1,
            diag.max_commutator
        );
        let p = traj.final_metric().matrix();
        println!("P(0.2) = {p:.5}");
    }
}
