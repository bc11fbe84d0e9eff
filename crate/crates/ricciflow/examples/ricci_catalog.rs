//! Ricci operators of the catalog entries with the canonical metric,
//! decomposed into the nilpotent part, the Killing part, and the
//! mean-curvature part.
//!
//! ```sh
//! cargo run --example ricci_catalog
//! ```

use ricciflow::catalog;
use ricciflow::curvature::{ricci, Metric};

fn main() {
    for name in catalog::list() {
        let entry = catalog::get(name).unwrap();
        let n = entry.algebra.dim();
        let report = ricci(&entry.algebra, &Metric::canonical(n)).unwrap();
        println!("== {name} (dim {n}) ==");
        println!("Ric  = {:.4}", report.ric);
        println!("M    = {:.4}", report.m);
        if report.b.amax() > 1e-12 {
            println!("B    = {:.4}", report.b);
        }
        if report.h.amax() > 1e-12 {
            println!("H    = {:.4}", report.h.transpose());
        }
    }
}
