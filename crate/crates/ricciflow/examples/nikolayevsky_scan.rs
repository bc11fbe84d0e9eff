//! Scans the two-parameter family of nilpotent types for dimensions where a
//! counting inequality already rules out any nice basis, and runs the
//! simple-derivation nice-basis search on a known negative control.
//!
//! ```sh
//! cargo run --example nikolayevsky_scan
//! ```

use ricciflow::catalog;
use ricciflow::nice::{nikolayevsky_no_nice_type, simple_derivation_nice_basis};

fn main() {
    println!("(p, q) pairs with q > p where the inequality certifies no nice basis:");
    for p in 1..=10u64 {
        for q in (p + 1)..=11 {
            if nikolayevsky_no_nice_type(p, q) {
                println!("  ({p}, {q})  dimension {}", p + q);
            }
        }
    }

    let l = catalog::get("L6_11").unwrap().algebra;
    match simple_derivation_nice_basis(&l, 1) {
        Some(_) => println!("L6_11: search found a nice basis (unexpected)"),
        None => println!("L6_11: simple-derivation search failed, as expected"),
    }
}
