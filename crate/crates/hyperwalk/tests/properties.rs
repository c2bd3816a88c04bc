//! Randomized invariants over the state representations, the symmetry
//! operators and the two probability routes.

use proptest::prelude::*;

use hyperwalk::fock::{from_assignment, to_assignment, ModeOccupation};
use hyperwalk::interference::{
    determinant, full_distribution, permanent, probability, probability_oracle, TransitionProblem,
};
use hyperwalk::stats::StatKind;
use hyperwalk::symmetry::{apply_symmetry, independent_symmetries, invariance_group, SymmetrySet};
use hyperwalk::unitary::{build_tensor, random_unitary, ComplexMatrix};

fn occupation(modes: usize, max_count: u32) -> impl Strategy<Value = ModeOccupation> {
    proptest::collection::vec(0..=max_count, modes).prop_map(ModeOccupation::new)
}

fn any_statistics() -> impl Strategy<Value = StatKind> {
    prop_oneof![
        Just(StatKind::Boson),
        Just(StatKind::Fermion),
        Just(StatKind::Distinguishable),
    ]
}

fn tally(modes: Vec<u32>, mode_count: usize) -> ModeOccupation {
    let mut counts = vec![0u32; mode_count];
    for m in modes {
        counts[m as usize - 1] += 1;
    }
    ModeOccupation::new(counts)
}

/// A statistics kind plus a matching occupation of exactly `particles`
/// particles over four modes (0/1 occupancy for fermions).
fn occupation_for(kind: StatKind, particles: usize) -> impl Strategy<Value = ModeOccupation> {
    let strategy: BoxedStrategy<Vec<u32>> = match kind {
        StatKind::Fermion => prop::sample::subsequence(vec![1u32, 2, 3, 4], particles).boxed(),
        _ => prop::collection::vec(1u32..=4, particles).boxed(),
    };
    strategy.prop_map(move |modes| tally(modes, 4))
}

fn transition_case() -> impl Strategy<Value = (StatKind, ModeOccupation, ModeOccupation)> {
    (any_statistics(), 1usize..=4).prop_flat_map(|(kind, particles)| {
        (
            Just(kind),
            occupation_for(kind, particles),
            occupation_for(kind, particles),
        )
    })
}

proptest! {
    #[test]
    fn occupation_assignment_round_trip(occ in occupation(11, 6)) {
        let back = from_assignment(&to_assignment(&occ), occ.modes()).unwrap();
        prop_assert_eq!(back, occ);
    }

    #[test]
    fn reflections_are_involutions(occ in occupation(8, 5), mask in 1u32..8) {
        let set = SymmetrySet::from_mask(mask).unwrap();
        let once = apply_symmetry(&set, &occ).unwrap();
        let twice = apply_symmetry(&set, &once).unwrap();
        prop_assert_eq!(twice, occ);
    }

    #[test]
    fn reflection_composition_is_symmetric_difference(
        occ in occupation(16, 3),
        ma in 1u32..16,
        mb in 1u32..16,
    ) {
        let a = SymmetrySet::from_mask(ma).unwrap();
        let b = SymmetrySet::from_mask(mb).unwrap();
        let chained = apply_symmetry(&a, &apply_symmetry(&b, &occ).unwrap()).unwrap();
        match a.symmetric_difference(&b) {
            Some(c) => prop_assert_eq!(chained, apply_symmetry(&c, &occ).unwrap()),
            None => prop_assert_eq!(chained, occ),
        }
    }

    #[test]
    fn particle_number_divides_by_independent_symmetries(occ in occupation(8, 4)) {
        // The consistency assertion inside the rank computation must hold
        // for arbitrary occupations.
        let rank = independent_symmetries(&occ, 3).unwrap();
        if rank >= 1 {
            prop_assert_eq!(occ.particles() % (1 << rank), 0);
        }
        // And the group really fixes the state.
        for set in invariance_group(&occ, 3).unwrap() {
            prop_assert_eq!(apply_symmetry(&set, &occ).unwrap(), occ.clone());
        }
    }

    #[test]
    fn permanent_agrees_with_expansion_on_random_unitaries(
        n in 1usize..=5,
        seed in 0u64..500,
    ) {
        let m = random_unitary(n, seed);
        let ryser = permanent(&m).unwrap();
        let expansion = permanent_by_expansion(&m);
        prop_assert!((ryser - expansion).norm() < 1e-11);
    }

    #[test]
    fn determinant_of_a_unitary_has_unit_modulus(n in 1usize..=6, seed in 0u64..500) {
        let m = random_unitary(n, seed);
        prop_assert!((determinant(&m).norm() - 1.0).abs() < 1e-11);
    }

    #[test]
    fn production_path_matches_path_sum((kind, r, s) in transition_case()) {
        let u = build_tensor(2).unwrap();
        let tp = TransitionProblem::new(&u, r, s, kind).unwrap();
        let fast = probability(&tp).unwrap();
        let slow = probability_oracle(&tp).unwrap();
        prop_assert!((fast - slow).abs() < 1e-10, "{} vs {}", fast, slow);
    }

    #[test]
    fn output_distributions_normalize(
        (kind, initial, _) in transition_case(),
        seed in 0u64..100,
    ) {
        let u = random_unitary(4, seed);
        let dist = full_distribution(&u, &initial, kind).unwrap();
        let total: f64 = dist.iter().map(|(_, p)| p).sum();
        prop_assert!((total - 1.0).abs() < 1e-8, "sums to {}", total);
    }
}

/// Reference permanent: direct sum over all column permutations.
fn permanent_by_expansion(matrix: &ComplexMatrix) -> num_complex::Complex64 {
    fn recurse(matrix: &ComplexMatrix, row: usize, used: &mut Vec<bool>) -> num_complex::Complex64 {
        if row == matrix.rows() {
            return num_complex::Complex64::new(1.0, 0.0);
        }
        let mut total = num_complex::Complex64::ZERO;
        for col in 0..matrix.cols() {
            if !used[col] {
                used[col] = true;
                total += matrix.get(row, col) * recurse(matrix, row + 1, used);
                used[col] = false;
            }
        }
        total
    }
    recurse(matrix, 0, &mut vec![false; matrix.cols()])
}
