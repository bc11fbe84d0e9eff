//! Randomized invariants over seeded algebra/metric generators.

use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ricciflow::algebra::{random_nilpotent, BasisChange, LieAlgebra};
use ricciflow::curvature::{ricci, Metric};
use ricciflow::nice::is_nice_basis;

fn pool_algebra(seed: u64, dim: usize) -> LieAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_nilpotent(dim, &mut rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Serialization round trip is bit-exact.
    #[test]
    fn json_round_trip(seed in 0u64..1000, dim in 3usize..7) {
        let l = pool_algebra(seed, dim);
        let back = LieAlgebra::from_json(&l.to_json()).unwrap();
        prop_assert_eq!(l.entries(), back.entries());
    }

    /// Random strictly triangular brackets are nilpotent with zero-ish
    /// Jacobi defect.
    #[test]
    fn generator_is_valid(seed in 0u64..1000, dim in 3usize..7) {
        let l = pool_algebra(seed, dim);
        prop_assert!(l.jacobi_defect() <= 1e-9);
        prop_assert!(l.is_nilpotent());
    }

    /// Niceness is invariant under diagonal rescaling of the basis.
    #[test]
    fn nice_invariant_under_diagonal_scaling(
        seed in 0u64..500,
        dim in 3usize..7,
        scales in prop::collection::vec(0.25f64..4.0, 6),
    ) {
        let l = pool_algebra(seed, dim);
        let a = BasisChange::diagonal(&scales[..dim]).unwrap();
        let t = l.change_basis(&a).unwrap();
        prop_assert_eq!(is_nice_basis(&l).nice, is_nice_basis(&t).nice);
    }

    /// The Ricci form `Rc = P Ric` is symmetric for arbitrary SPD metrics.
    #[test]
    fn ricci_form_is_symmetric(
        seed in 0u64..500,
        dim in 3usize..6,
        entries in prop::collection::vec(-0.9f64..0.9, 36),
    ) {
        let l = pool_algebra(seed, dim);
        // SPD via A^T A + I
        let a = DMatrix::from_fn(dim, dim, |r, c| entries[r * dim + c]);
        let p = a.transpose() * &a + DMatrix::identity(dim, dim);
        let metric = Metric::new(p).unwrap();
        let report = ricci(&l, &metric).unwrap();
        let asym = (&report.rc - report.rc.transpose()).amax();
        prop_assert!(asym < 1e-9, "asymmetry {asym}");
    }

    /// Uniform metric scaling `sP` scales the Ricci operator by `1/s` on
    /// nilpotent algebras.
    #[test]
    fn ricci_scaling_law(seed in 0u64..500, dim in 3usize..6, s in 0.2f64..5.0) {
        let l = pool_algebra(seed, dim);
        let base = ricci(&l, &Metric::canonical(dim)).unwrap().ric;
        let scaled = ricci(&l, &Metric::new(DMatrix::identity(dim, dim) * s).unwrap())
            .unwrap()
            .ric;
        prop_assert!((scaled * s - base).amax() < 1e-9);
    }
}
