//! Fits the proportionality constant between the Ricci form of a nilpotent
//! algebra and the moment map of the change-of-basis action, showing it is
//! the same for every algebra.
//!
//! ```sh
//! cargo run --example moment_map_constant
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ricciflow::algebra::random_nilpotent;
use ricciflow::catalog;
use ricciflow::curvature::moment_map_check;

fn main() {
    println!("{:>12} {:>14} {:>12}", "algebra", "kappa", "residual");
    for name in ["heis3", "L6_11", "L6_13", "n4"] {
        let l = catalog::get(name).unwrap().algebra;
        let fit = moment_map_check(&l).unwrap();
        println!("{name:>12} {:14.10} {:12.2e}", fit.kappa, fit.residual);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for idx in 0..4 {
        let l = random_nilpotent(4 + idx % 3, &mut rng);
        let fit = moment_map_check(&l).unwrap();
        println!("{:>12} {:14.10} {:12.2e}", format!("random-{idx}"), fit.kappa, fit.residual);
    }
}
