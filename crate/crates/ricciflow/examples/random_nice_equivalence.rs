//! Empirical check of the equivalence between having a nice basis and being
//! stably Ricci-diagonal, over seeded random nilpotent algebras.
//!
//! ```sh
//! cargo run --release --example random_nice_equivalence
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ricciflow::algebra::random_nilpotent;
use ricciflow::curvature::stably_ricci_diagonal_numeric;
use ricciflow::nice::is_nice_basis;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut nice_count, mut disagreements) = (0usize, 0usize);
    let total = 200;
    for idx in 0..total {
        let l = random_nilpotent(3 + idx % 4, &mut rng);
        let nice = is_nice_basis(&l).nice;
        let verdict = stably_ricci_diagonal_numeric(&l, 50, 1);
        if nice {
            nice_count += 1;
        }
        if nice != verdict.stably_diagonal {
            disagreements += 1;
            println!("DISAGREEMENT at instance {idx}: {}", l.to_json());
        }
    }
    println!(
        "{total} instances: {nice_count} nice, {} not nice, {disagreements} disagreements",
        total - nice_count
    );
}
