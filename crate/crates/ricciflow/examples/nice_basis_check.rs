//! Nice-basis verdicts for every catalog entry, cross-checked against the
//! root-space criterion where it applies.
//!
//! ```sh
//! cargo run --example nice_basis_check
//! ```

use ricciflow::catalog;
use ricciflow::nice::{is_nice_basis, nice_via_roots};

fn main() {
    for name in catalog::list() {
        let entry = catalog::get(name).unwrap();
        let verdict = is_nice_basis(&entry.algebra);
        print!("{name:8} nice = {}", verdict.nice);
        if let Some([a, b]) = verdict.witness {
            print!("  (witness brackets {a:?} and {b:?})");
        }
        match nice_via_roots(&entry.algebra) {
            Ok(v) => print!("  root criterion agrees: {}", v.nice == verdict.nice),
            Err(_) => print!("  root criterion: not applicable"),
        }
        println!();
    }
}
