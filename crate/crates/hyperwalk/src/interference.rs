//! Exact many-body transition probabilities.
//!
//! The production path evaluates a matrix function of the transition
//! submatrix: a permanent for bosons (Ryser's formula with Gray-code subset
//! updates, `O(2^N * N)`), a determinant for fermions (LU with partial
//! pivoting), and a permanent of elementwise squared moduli for
//! distinguishable particles. The reference path,
//! [`probability_oracle`], evaluates the coherent sum over all distinct
//! many-particle paths literally and exists purely to cross-check the
//! production path on small instances.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{ln_binomial, to_assignment, ModeOccupation};
use crate::stats::StatKind;
use crate::unitary::ComplexMatrix;

/// Default particle cap for permanent evaluation; override with the
/// `HYPERWALK_MAX_N` environment variable.
pub const DEFAULT_PERMANENT_BOUND: u32 = 20;
/// Particle cap for the factorial-cost path-sum oracle.
pub const ORACLE_BOUND: u32 = 9;
/// Largest final-state space `full_distribution` will enumerate.
pub const ENUMERATION_LIMIT: f64 = 1e7;
/// Cap on `state count * mode count` for materialized enumerations.
pub const ENUMERATION_ENTRY_LIMIT: f64 = 2e8;
/// Environment variable overriding [`DEFAULT_PERMANENT_BOUND`].
pub const PERMANENT_BOUND_ENV: &str = "HYPERWALK_MAX_N";

/// Current particle cap for permanents.
pub fn permanent_bound() -> u32 {
    std::env::var(PERMANENT_BOUND_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_PERMANENT_BOUND)
}

/// One transition instance: a unitary, an initial and a final occupation,
/// and the exchange statistics connecting them.
#[derive(Clone, Debug)]
pub struct TransitionProblem<'a> {
    unitary: &'a ComplexMatrix,
    initial: ModeOccupation,
    final_state: ModeOccupation,
    statistics: StatKind,
}

impl<'a> TransitionProblem<'a> {
    pub fn new(
        unitary: &'a ComplexMatrix,
        initial: ModeOccupation,
        final_state: ModeOccupation,
        statistics: StatKind,
    ) -> Result<Self> {
        if !unitary.is_square() {
            return Err(Error::MatrixShape {
                rows: unitary.rows(),
                cols: unitary.cols(),
                expected_rows: unitary.rows(),
                expected_cols: unitary.rows(),
            });
        }
        let modes = unitary.rows();
        for occ in [&initial, &final_state] {
            if occ.modes() != modes {
                return Err(Error::ModeCountMismatch {
                    expected: modes,
                    actual: occ.modes(),
                });
            }
            statistics.strategy().validate_occupation(occ)?;
        }
        if initial.particles() != final_state.particles() {
            return Err(Error::ParticleMismatch {
                initial: initial.particles(),
                final_: final_state.particles(),
            });
        }
        Ok(Self {
            unitary,
            initial,
            final_state,
            statistics,
        })
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        self.unitary
    }

    pub fn initial(&self) -> &ModeOccupation {
        &self.initial
    }

    pub fn final_state(&self) -> &ModeOccupation {
        &self.final_state
    }

    pub fn statistics(&self) -> StatKind {
        self.statistics
    }

    pub fn particles(&self) -> u32 {
        self.initial.particles()
    }
}

/// The `N x N` transition submatrix: row `j` is the unitary row of the
/// mode housing the `j`-th initial particle, column `k` the unitary column
/// of the mode receiving the `k`-th final particle. Rows and columns repeat
/// with occupation multiplicity.
#[derive(Clone, Debug)]
pub struct Submatrix {
    matrix: ComplexMatrix,
    row_modes: Vec<u32>,
    col_modes: Vec<u32>,
}

impl Submatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// 1-based source mode of each row.
    pub fn row_modes(&self) -> &[u32] {
        &self.row_modes
    }

    /// 1-based target mode of each column.
    pub fn col_modes(&self) -> &[u32] {
        &self.col_modes
    }

    /// The matrix of elementwise `|entry|^2`, as used for distinguishable
    /// particles.
    pub fn elementwise_norm_sqr(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.matrix.rows(), self.matrix.cols(), |r, c| {
            Complex64::new(self.matrix.get(r, c).norm_sqr(), 0.0)
        })
    }
}

pub fn build_submatrix(problem: &TransitionProblem<'_>) -> Submatrix {
    let rows = to_assignment(problem.initial());
    let cols = to_assignment(problem.final_state());
    let matrix = ComplexMatrix::from_fn(rows.modes().len(), cols.modes().len(), |r, c| {
        problem
            .unitary()
            .get(rows.modes()[r] as usize - 1, cols.modes()[c] as usize - 1)
    });
    Submatrix {
        matrix,
        row_modes: rows.modes().to_vec(),
        col_modes: cols.modes().to_vec(),
    }
}

/// Permanent by Ryser's formula over all non-empty column subsets, walked
/// in Gray-code order so each step updates the running row sums by a
/// single column. Exact in exact arithmetic; `O(2^N * N)` flops.
pub fn permanent(matrix: &ComplexMatrix) -> Result<Complex64> {
    assert!(matrix.is_square(), "permanent needs a square matrix");
    let n = matrix.rows();
    let bound = permanent_bound();
    if n as u32 > bound {
        return Err(Error::PermanentBound {
            particles: n as u32,
            bound,
        });
    }
    if n == 0 {
        return Ok(Complex64::ONE);
    }
    let mut row_sums = vec![Complex64::ZERO; n];
    let mut total = Complex64::ZERO;
    let mut previous_subset = 0u64;
    for k in 1u64..(1u64 << n) {
        let subset = k ^ (k >> 1);
        let toggled = (subset ^ previous_subset).trailing_zeros() as usize;
        if subset & (1 << toggled) != 0 {
            for (r, sum) in row_sums.iter_mut().enumerate() {
                *sum += matrix.get(r, toggled);
            }
        } else {
            for (r, sum) in row_sums.iter_mut().enumerate() {
                *sum -= matrix.get(r, toggled);
            }
        }
        previous_subset = subset;
        let product: Complex64 = row_sums.iter().product();
        if (n as u32 - subset.count_ones()).is_multiple_of(2) {
            total += product;
        } else {
            total -= product;
        }
    }
    Ok(total)
}

/// Determinant by LU decomposition with partial pivoting. Singular
/// matrices return zero.
pub fn determinant(matrix: &ComplexMatrix) -> Complex64 {
    assert!(matrix.is_square(), "determinant needs a square matrix");
    let n = matrix.rows();
    if n == 0 {
        return Complex64::ONE;
    }
    let mut a: Vec<Complex64> = (0..n * n).map(|idx| matrix.get(idx / n, idx % n)).collect();
    let mut det = Complex64::ONE;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r1, &r2| {
                a[r1 * n + col]
                    .norm_sqr()
                    .total_cmp(&a[r2 * n + col].norm_sqr())
            })
            .unwrap();
        if a[pivot * n + col] == Complex64::ZERO {
            return Complex64::ZERO;
        }
        if pivot != col {
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
            }
            det = -det;
        }
        let diagonal = a[col * n + col];
        det *= diagonal;
        for row in col + 1..n {
            let factor = a[row * n + col] / diagonal;
            if factor == Complex64::ZERO {
                continue;
            }
            for j in col..n {
                let sub = factor * a[col * n + j];
                a[row * n + j] -= sub;
            }
        }
    }
    det
}

/// Product of factorials of all occupation numbers.
pub fn occupation_prefactor(occ: &ModeOccupation) -> f64 {
    occ.counts().iter().map(|&c| factorial(c)).product()
}

/// `k!` in double precision; log-space accumulation past 20 where the
/// direct product would lose accuracy to overflow-scale magnitudes.
pub fn factorial(k: u32) -> f64 {
    if k <= 20 {
        (2..=k as u64).map(|x| x as f64).product()
    } else {
        ln_factorial(k).exp()
    }
}

pub fn ln_factorial(k: u32) -> f64 {
    (2..=k as u64).map(|x| (x as f64).ln()).sum()
}

/// Transition probability through the production path: submatrix plus the
/// statistics strategy's matrix function.
pub fn probability(problem: &TransitionProblem<'_>) -> Result<f64> {
    let submatrix = build_submatrix(problem);
    let value = problem.statistics().strategy().transition_probability(
        &submatrix,
        problem.initial(),
        problem.final_state(),
    )?;
    assert!(
        (-1e-9..=1.0 + 1e-9).contains(&value),
        "probability {} outside [0,1]",
        value
    );
    Ok(value)
}

/// Transition probability evaluated literally as the coherent (or, for
/// distinguishable particles, incoherent) sum over all distinct orderings
/// of the final mode assignment list. Factorial cost; bounded at
/// [`ORACLE_BOUND`] particles. Independent of the permanent and
/// determinant routines by construction.
pub fn probability_oracle(problem: &TransitionProblem<'_>) -> Result<f64> {
    let particles = problem.particles();
    if particles > ORACLE_BOUND {
        return Err(Error::OracleBound {
            particles,
            bound: ORACLE_BOUND,
        });
    }
    let rows = to_assignment(problem.initial());
    let cols = to_assignment(problem.final_state());
    let unitary = problem.unitary();
    let amplitude_of = |modes: &[u32]| -> Complex64 {
        modes
            .iter()
            .zip(rows.modes())
            .map(|(&target, &source)| unitary.get(source as usize - 1, target as usize - 1))
            .product()
    };
    match problem.statistics() {
        StatKind::Boson => {
            let mut sum = Complex64::ZERO;
            for_each_arrangement(cols.modes(), &mut |arrangement, _sign| {
                sum += amplitude_of(arrangement);
            });
            let prefactor = occupation_prefactor(problem.final_state())
                / occupation_prefactor(problem.initial());
            Ok(sum.norm_sqr() * prefactor)
        }
        StatKind::Fermion => {
            let mut sum = Complex64::ZERO;
            for_each_arrangement(cols.modes(), &mut |arrangement, sign| {
                if sign > 0 {
                    sum += amplitude_of(arrangement);
                } else {
                    sum -= amplitude_of(arrangement);
                }
            });
            Ok(sum.norm_sqr())
        }
        StatKind::Distinguishable => {
            let mut sum = 0.0;
            for_each_arrangement(cols.modes(), &mut |arrangement, _sign| {
                sum += arrangement
                    .iter()
                    .zip(rows.modes())
                    .map(|(&target, &source)| {
                        unitary
                            .get(source as usize - 1, target as usize - 1)
                            .norm_sqr()
                    })
                    .product::<f64>();
            });
            Ok(sum)
        }
    }
}

/// Visit every distinct ordering of a sorted multiset exactly once. The
/// sign passed along is the permutation parity relative to the sorted
/// order, well-defined whenever the entries are distinct.
fn for_each_arrangement(sorted: &[u32], visit: &mut impl FnMut(&[u32], i32)) {
    let mut classes: Vec<(u32, u32)> = Vec::new();
    for &value in sorted {
        match classes.last_mut() {
            Some((v, count)) if *v == value => *count += 1,
            _ => classes.push((value, 1)),
        }
    }
    let mut prefix = Vec::with_capacity(sorted.len());
    recurse_arrangements(&mut classes, &mut prefix, sorted.len(), 1, visit);
}

fn recurse_arrangements(
    classes: &mut Vec<(u32, u32)>,
    prefix: &mut Vec<u32>,
    remaining: usize,
    sign: i32,
    visit: &mut impl FnMut(&[u32], i32),
) {
    if remaining == 0 {
        visit(prefix, sign);
        return;
    }
    let mut preceding = 0u32;
    for idx in 0..classes.len() {
        let (value, count) = classes[idx];
        if count > 0 {
            // Pulling this element to the front crosses `preceding` others.
            let next_sign = if preceding.is_multiple_of(2) {
                sign
            } else {
                -sign
            };
            classes[idx].1 -= 1;
            prefix.push(value);
            recurse_arrangements(classes, prefix, remaining - 1, next_sign, visit);
            prefix.pop();
            classes[idx].1 += 1;
        }
        preceding += count;
    }
}

/// Probability of every reachable final state, in enumeration order.
/// Final states are processed in parallel chunks; the output order is
/// fixed by the enumeration index regardless of worker count.
pub fn full_distribution(
    unitary: &ComplexMatrix,
    initial: &ModeOccupation,
    statistics: StatKind,
) -> Result<Vec<(ModeOccupation, f64)>> {
    let strategy = statistics.strategy();
    strategy.validate_occupation(initial)?;
    let modes = unitary.rows();
    if initial.modes() != modes {
        return Err(Error::ModeCountMismatch {
            expected: modes,
            actual: initial.modes(),
        });
    }
    let particles = initial.particles();
    check_enumeration_feasible(statistics, modes, particles)?;
    if statistics != StatKind::Fermion && particles > permanent_bound() {
        return Err(Error::PermanentBound {
            particles,
            bound: permanent_bound(),
        });
    }
    let mut finals = strategy.enumerate_finals(modes, particles)?;
    let mut distribution = Vec::new();
    loop {
        let chunk: Vec<ModeOccupation> = finals.by_ref().take(DISTRIBUTION_CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let evaluated: Vec<(ModeOccupation, f64)> = chunk
            .into_par_iter()
            .map(|final_state| {
                let problem = TransitionProblem::new(
                    unitary,
                    initial.clone(),
                    final_state.clone(),
                    statistics,
                )?;
                let p = probability(&problem)?;
                Ok((final_state, p))
            })
            .collect::<Result<_>>()?;
        distribution.extend(evaluated);
    }
    Ok(distribution)
}

const DISTRIBUTION_CHUNK: usize = 4096;

/// Reject state spaces too large to enumerate, without overflowing the
/// exact count. Besides the state-count cap, the total occupation-vector
/// footprint is held under [`ENUMERATION_ENTRY_LIMIT`] entries so that
/// wide graphs with few particles cannot exhaust memory.
pub fn check_enumeration_feasible(
    statistics: StatKind,
    modes: usize,
    particles: u32,
) -> Result<()> {
    if modes == 0 {
        return Err(Error::InvalidInput("mode count must be at least 1".into()));
    }
    let ln_count = match statistics {
        StatKind::Fermion => {
            if particles as usize > modes {
                return Err(Error::TooManyFermions { particles, modes });
            }
            ln_binomial(modes as u64, particles as u64)
        }
        _ => ln_binomial(modes as u64 + particles as u64 - 1, particles as u64),
    };
    let limit = ENUMERATION_LIMIT.min(ENUMERATION_ENTRY_LIMIT / modes as f64);
    if ln_count > limit.ln() {
        return Err(Error::EnumerationBound {
            count: ln_count.exp(),
            limit,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitary::{build_tensor, random_unitary};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn occ(counts: &[u32]) -> ModeOccupation {
        ModeOccupation::new(counts.to_vec())
    }

    /// Permanent by direct permutation expansion; the slow reference this
    /// module's Ryser implementation is checked against.
    fn permanent_naive(matrix: &ComplexMatrix) -> Complex64 {
        let n = matrix.rows();
        let cols: Vec<u32> = (1..=n as u32).collect();
        let mut total = Complex64::ZERO;
        for_each_arrangement(&cols, &mut |arrangement, _| {
            total += arrangement
                .iter()
                .enumerate()
                .map(|(r, &col)| matrix.get(r, col as usize - 1))
                .product::<Complex64>();
        });
        total
    }

    #[test]
    fn permanent_of_balanced_coupler_vanishes() {
        let u = build_tensor(1).unwrap();
        assert!(permanent(&u).unwrap().norm() < 1e-15);
    }

    #[test]
    fn permanent_trivia() {
        assert!((permanent(&ComplexMatrix::identity(5)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let ones = ComplexMatrix::from_fn(3, 3, |_, _| c(1.0, 0.0));
        assert!((permanent(&ones).unwrap() - c(6.0, 0.0)).norm() < 1e-12);
        assert_eq!(permanent(&ComplexMatrix::zeros(0, 0)).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn permanent_matches_naive_expansion() {
        for n in 1..=7usize {
            let m = random_unitary(n, n as u64 + 100);
            let fast = permanent(&m).unwrap();
            let slow = permanent_naive(&m);
            assert!((fast - slow).norm() < 1e-11, "n = {}", n);
        }
    }

    #[test]
    fn permanent_matches_naive_expansion_at_the_oracle_bound() {
        let m = random_unitary(ORACLE_BOUND as usize, 999);
        let fast = permanent(&m).unwrap();
        let slow = permanent_naive(&m);
        assert!((fast - slow).norm() < 1e-10);
    }

    #[test]
    fn permanent_is_invariant_under_row_swap() {
        let m = random_unitary(4, 11);
        let mut swapped = ComplexMatrix::zeros(4, 4);
        for r in 0..4 {
            let target = match r {
                0 => 1,
                1 => 0,
                other => other,
            };
            for cidx in 0..4 {
                swapped.set(target, cidx, m.get(r, cidx));
            }
        }
        let a = permanent(&m).unwrap();
        let b = permanent(&swapped).unwrap();
        assert!((a - b).norm() < 1e-12);
        let da = determinant(&m);
        let db = determinant(&swapped);
        assert!((da + db).norm() < 1e-12, "determinant must flip sign");
    }

    #[test]
    fn permanent_bound_is_enforced() {
        let n = permanent_bound() as usize + 1;
        let m = ComplexMatrix::identity(n);
        assert!(matches!(permanent(&m), Err(Error::PermanentBound { .. })));
    }

    #[test]
    fn determinant_values() {
        let u = build_tensor(1).unwrap();
        assert!((determinant(&u).norm_sqr() - 1.0).abs() < 1e-14);
        assert!((determinant(&ComplexMatrix::identity(6)) - c(1.0, 0.0)).norm() < 1e-14);
        let rank1 = ComplexMatrix::from_fn(2, 2, |r, cidx| {
            if (r + cidx) % 2 == 0 {
                c(0.5, 0.0)
            } else {
                c(-0.5, 0.0)
            }
        });
        assert!(determinant(&rank1).norm() < 1e-15);
    }

    #[test]
    fn determinant_matches_product_of_eigenphases_for_unitaries() {
        // |det U| = 1 for any unitary.
        for n in 1..=6usize {
            let u = random_unitary(n, 500 + n as u64);
            assert!((determinant(&u).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn submatrix_examples() {
        let u1 = build_tensor(1).unwrap();
        let tp = TransitionProblem::new(&u1, occ(&[1, 1]), occ(&[1, 1]), StatKind::Boson).unwrap();
        let sub = build_submatrix(&tp);
        assert!(sub.matrix().max_abs_diff(&u1) < 1e-15);

        let tp = TransitionProblem::new(&u1, occ(&[2, 0]), occ(&[1, 1]), StatKind::Boson).unwrap();
        let sub = build_submatrix(&tp);
        assert_eq!(sub.row_modes(), &[1, 1]);
        assert_eq!(sub.col_modes(), &[1, 2]);
        assert!((sub.matrix().get(0, 0) - sub.matrix().get(1, 0)).norm() < 1e-15);

        let u2 = build_tensor(2).unwrap();
        let tp = TransitionProblem::new(
            &u2,
            occ(&[1, 0, 0, 1]),
            occ(&[1, 0, 0, 1]),
            StatKind::Fermion,
        )
        .unwrap();
        let sub = build_submatrix(&tp);
        let expect =
            ComplexMatrix::from_fn(
                2,
                2,
                |r, cidx| {
                    if r == cidx {
                        c(0.5, 0.0)
                    } else {
                        c(-0.5, 0.0)
                    }
                },
            );
        assert!(sub.matrix().max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn two_particle_probabilities_on_the_coupler() {
        let u = build_tensor(1).unwrap();
        let r = occ(&[1, 1]);
        for (kind, expect) in [
            (StatKind::Boson, 0.0),
            (StatKind::Fermion, 1.0),
            (StatKind::Distinguishable, 0.5),
        ] {
            let tp = TransitionProblem::new(&u, r.clone(), r.clone(), kind).unwrap();
            assert!(
                (probability(&tp).unwrap() - expect).abs() < 1e-12,
                "{:?}",
                kind
            );
        }
    }

    #[test]
    fn bunched_oracle_case() {
        let u = build_tensor(1).unwrap();
        let tp = TransitionProblem::new(&u, occ(&[2, 0]), occ(&[1, 1]), StatKind::Boson).unwrap();
        assert!((probability_oracle(&tp).unwrap() - 0.5).abs() < 1e-12);
        assert!((probability(&tp).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn fermion_suppressed_transition_on_d2() {
        let u = build_tensor(2).unwrap();
        let tp = TransitionProblem::new(
            &u,
            occ(&[1, 0, 0, 1]),
            occ(&[1, 0, 0, 1]),
            StatKind::Fermion,
        )
        .unwrap();
        assert!(probability(&tp).unwrap() < 1e-15);
        assert!(probability_oracle(&tp).unwrap() < 1e-15);
    }

    #[test]
    fn oracle_agrees_with_production_path_exhaustively() {
        // All transitions with up to 3 particles on the two- and
        // three-dimensional hypercubes, all three statistics.
        for dimension in [2usize, 3] {
            let u = build_tensor(dimension).unwrap();
            for kind in [
                StatKind::Boson,
                StatKind::Fermion,
                StatKind::Distinguishable,
            ] {
                let strategy = kind.strategy();
                for particles in 1..=3u32 {
                    let initials: Vec<_> = strategy
                        .enumerate_finals(1 << dimension, particles)
                        .unwrap()
                        .collect();
                    for r in &initials {
                        for s in &initials {
                            let tp =
                                TransitionProblem::new(&u, r.clone(), s.clone(), kind).unwrap();
                            let fast = probability(&tp).unwrap();
                            let slow = probability_oracle(&tp).unwrap();
                            assert!(
                                (fast - slow).abs() < 1e-10,
                                "{:?} {:?} -> {:?}: {} vs {}",
                                kind,
                                r,
                                s,
                                fast,
                                slow
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_bound_is_enforced() {
        let u = build_tensor(2).unwrap();
        let tp = TransitionProblem::new(
            &u,
            occ(&[10, 0, 0, 0]),
            occ(&[10, 0, 0, 0]),
            StatKind::Boson,
        )
        .unwrap();
        assert!(matches!(
            probability_oracle(&tp),
            Err(Error::OracleBound { .. })
        ));
    }

    #[test]
    fn distributions_normalize() {
        let u2 = build_tensor(2).unwrap();
        for kind in [
            StatKind::Boson,
            StatKind::Fermion,
            StatKind::Distinguishable,
        ] {
            for initial in [occ(&[1, 0, 0, 1]), occ(&[1, 1, 0, 0])] {
                let dist = full_distribution(&u2, &initial, kind).unwrap();
                let total: f64 = dist.iter().map(|(_, p)| p).sum();
                assert!((total - 1.0).abs() < 1e-10, "{:?} {:?}", kind, initial);
            }
        }
    }

    #[test]
    fn fermion_distribution_on_the_coupler_is_a_point_mass() {
        let u = build_tensor(1).unwrap();
        let dist = full_distribution(&u, &occ(&[1, 1]), StatKind::Fermion).unwrap();
        assert_eq!(dist.len(), 1);
        assert_eq!(dist[0].0, occ(&[1, 1]));
        assert!((dist[0].1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fermion_distribution_on_d2_has_six_records() {
        let u = build_tensor(2).unwrap();
        let dist = full_distribution(&u, &occ(&[1, 0, 0, 1]), StatKind::Fermion).unwrap();
        assert_eq!(dist.len(), 6);
        let total: f64 = dist.iter().map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn transition_problem_validation() {
        let u = build_tensor(1).unwrap();
        assert!(matches!(
            TransitionProblem::new(&u, occ(&[2, 0]), occ(&[1, 1]), StatKind::Fermion),
            Err(Error::PauliViolation { .. })
        ));
        assert!(matches!(
            TransitionProblem::new(&u, occ(&[1, 1]), occ(&[1, 0]), StatKind::Boson),
            Err(Error::ParticleMismatch { .. })
        ));
        assert!(matches!(
            TransitionProblem::new(&u, occ(&[1, 1, 0]), occ(&[1, 1, 0]), StatKind::Boson),
            Err(Error::ModeCountMismatch { .. })
        ));
    }

    #[test]
    fn distinguishable_probabilities_ignore_phases() {
        // Multiply rows and columns by random phases; the incoherent
        // probability must not move.
        let u = build_tensor(2).unwrap();
        let mut rng_state = 0x9e3779b97f4a7c15u64;
        let mut next_phase = move || {
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1);
            (rng_state >> 11) as f64 / (1u64 << 53) as f64 * std::f64::consts::TAU
        };
        let row_phases: Vec<Complex64> = (0..4)
            .map(|_| Complex64::from_polar(1.0, next_phase()))
            .collect();
        let col_phases: Vec<Complex64> = (0..4)
            .map(|_| Complex64::from_polar(1.0, next_phase()))
            .collect();
        let dressed = ComplexMatrix::from_fn(4, 4, |r, cidx| {
            row_phases[r] * u.get(r, cidx) * col_phases[cidx]
        });
        let r = occ(&[2, 0, 1, 0]);
        let s = occ(&[0, 1, 1, 1]);
        let plain =
            TransitionProblem::new(&u, r.clone(), s.clone(), StatKind::Distinguishable).unwrap();
        let phased = TransitionProblem::new(&dressed, r, s, StatKind::Distinguishable).unwrap();
        assert!((probability(&plain).unwrap() - probability(&phased).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn fermion_probability_ignores_assignment_order() {
        // |det|^2 kills the antisymmetric sign: shuffling submatrix rows
        // leaves the probability alone.
        let u = build_tensor(2).unwrap();
        let tp = TransitionProblem::new(
            &u,
            occ(&[1, 1, 1, 0]),
            occ(&[0, 1, 1, 1]),
            StatKind::Fermion,
        )
        .unwrap();
        let sub = build_submatrix(&tp);
        let reference = determinant(sub.matrix()).norm_sqr();
        let m = sub.matrix();
        for shuffle in [[1usize, 0, 2], [2, 1, 0], [1, 2, 0]] {
            let shuffled = ComplexMatrix::from_fn(3, 3, |r, cidx| m.get(shuffle[r], cidx));
            assert!((determinant(&shuffled).norm_sqr() - reference).abs() < 1e-13);
        }
    }

    #[test]
    fn enumeration_limit_is_enforced() {
        assert!(check_enumeration_feasible(StatKind::Boson, 4096, 20).is_err());
        assert!(check_enumeration_feasible(StatKind::Boson, 8, 8).is_ok());
        // Under the state-count cap but over the memory cap: two particles
        // on 4096 modes give 8.4e6 states of 4096 entries each.
        assert!(matches!(
            check_enumeration_feasible(StatKind::Boson, 4096, 2),
            Err(Error::EnumerationBound { .. })
        ));
        assert!(check_enumeration_feasible(StatKind::Fermion, 4096, 1).is_ok());
    }
}
