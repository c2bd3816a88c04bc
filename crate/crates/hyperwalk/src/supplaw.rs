//! Analytic suppression laws and their executable verification.
//!
//! Every composite reflection that leaves the initial state invariant
//! splits the modes into two balanced subsets and certifies, purely from
//! that partitioning, that a class of final states interferes to exactly
//! zero: for bosons every final state with an odd particle count on the
//! minus subset, for fermions every final state whose count differs from
//! `N/2`. The law is sufficient, never necessary; final states outside
//! its reach may still vanish, and the verifier treats those as
//! informational only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::ModeOccupation;
use crate::interference::{check_enumeration_feasible, full_distribution, permanent_bound};
use crate::stats::StatKind;
use crate::symmetry::{group_rank, invariance_group, partition, PartitionLabeling, SymmetrySet};
use crate::unitary::{build_generalized, HypercubeSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Suppressed,
    Allowed,
}

impl Verdict {
    pub fn is_suppressed(&self) -> bool {
        matches!(self, Verdict::Suppressed)
    }
}

fn law_verdict(
    statistics: StatKind,
    labeling: &PartitionLabeling,
    final_state: &ModeOccupation,
) -> Result<Verdict> {
    statistics
        .strategy()
        .law_verdict(labeling, final_state)
        .ok_or(Error::NoSuppressionLaw(statistics.as_str()))
}

fn predict(
    statistics: StatKind,
    set: &SymmetrySet,
    final_state: &ModeOccupation,
    graph: &HypercubeSpec,
) -> Result<Verdict> {
    if final_state.modes() != graph.modes() {
        return Err(Error::ModeCountMismatch {
            expected: graph.modes(),
            actual: final_state.modes(),
        });
    }
    set.validate(graph.hc_dimension(), graph.modes())?;
    statistics.strategy().validate_occupation(final_state)?;
    let labeling = partition(set, graph.modes())?;
    law_verdict(statistics, &labeling, final_state)
}

/// Bosonic suppression law: a final state with an odd particle count on
/// the minus subset of the partitioning is suppressed. The caller is
/// responsible for having verified that the initial state is invariant
/// under `set`; the verdict itself depends only on the final state.
pub fn predict_boson(
    set: &SymmetrySet,
    final_state: &ModeOccupation,
    graph: &HypercubeSpec,
) -> Result<Verdict> {
    predict(StatKind::Boson, set, final_state, graph)
}

/// Fermionic suppression law: a final state is suppressed unless exactly
/// half of the particles sit on the minus subset.
pub fn predict_fermion(
    set: &SymmetrySet,
    final_state: &ModeOccupation,
    graph: &HypercubeSpec,
) -> Result<Verdict> {
    predict(StatKind::Fermion, set, final_state, graph)
}

/// Per-final-state outcome of the law under every relevant symmetry.
#[derive(Clone, Debug, Serialize)]
pub struct PredictionRecord {
    pub final_state: ModeOccupation,
    /// One verdict per invariance-group member, in ascending set order.
    pub verdicts: Vec<VerdictEntry>,
    pub any_suppressed: bool,
    /// The first symmetry set (in ascending order) that suppresses this
    /// state, or `None` when the law allows it everywhere.
    pub classification: Option<SymmetrySet>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictEntry {
    pub symmetry: SymmetrySet,
    pub verdict: Verdict,
}

/// Full classification of a final-state space under the initial state's
/// invariance group.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub initial: ModeOccupation,
    pub statistics: StatKind,
    pub eta: u32,
    pub invariance_group: Vec<SymmetrySet>,
    /// False when the initial state has no invariances, in which case
    /// every record carries empty verdicts.
    pub law_applicable: bool,
    pub records: Vec<PredictionRecord>,
}

/// Classify every reachable final state under every member of the initial
/// state's invariance group (all members, not a generating set: composite
/// symmetries suppress states the generators miss).
pub fn classify(
    initial: &ModeOccupation,
    graph: &HypercubeSpec,
    statistics: StatKind,
) -> Result<Classification> {
    if !statistics.strategy().has_suppression_law() {
        return Err(Error::NoSuppressionLaw(statistics.as_str()));
    }
    if initial.modes() != graph.modes() {
        return Err(Error::ModeCountMismatch {
            expected: graph.modes(),
            actual: initial.modes(),
        });
    }
    statistics.strategy().validate_occupation(initial)?;
    let particles = initial.particles();
    check_enumeration_feasible(statistics, graph.modes(), particles)?;

    let mut group = invariance_group(initial, graph.hc_dimension())?;
    group.sort();
    let eta = group_rank(&group);
    let labelings: Vec<(SymmetrySet, PartitionLabeling)> = group
        .iter()
        .map(|set| Ok((*set, partition(set, graph.modes())?)))
        .collect::<Result<_>>()?;

    let records = statistics
        .strategy()
        .enumerate_finals(graph.modes(), particles)?
        .map(|final_state| {
            let verdicts: Vec<VerdictEntry> = labelings
                .iter()
                .map(|(set, labeling)| {
                    Ok(VerdictEntry {
                        symmetry: *set,
                        verdict: law_verdict(statistics, labeling, &final_state)?,
                    })
                })
                .collect::<Result<_>>()?;
            let classification = verdicts
                .iter()
                .find(|entry| entry.verdict.is_suppressed())
                .map(|entry| entry.symmetry);
            Ok(PredictionRecord {
                any_suppressed: classification.is_some(),
                final_state,
                verdicts,
                classification,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Classification {
        initial: initial.clone(),
        statistics,
        eta,
        law_applicable: !group.is_empty(),
        invariance_group: group,
        records,
    })
}

/// Law-predicted suppression ratios: the closed-form estimate for bosons
/// and both the exact binomial form and its large-lattice limit for
/// fermions.
#[derive(Clone, Debug, Serialize)]
pub struct ApproxRatio {
    pub statistics: StatKind,
    pub eta: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub particles: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modes: Option<usize>,
    /// `1 - 2^-eta` for bosons; for fermions the exact binomial form when
    /// the mode count is known, otherwise the large-lattice limit.
    pub ratio: f64,
    /// Fermionic large-lattice limit, always reported alongside.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<f64>,
}

/// Evaluate the predicted suppression ratio for `eta` independent
/// symmetries. Fermions require the particle number (divisible by
/// `2^eta`); passing the mode count selects the exact binomial form.
pub fn ratio_approx(
    eta: u32,
    statistics: StatKind,
    particles: Option<u32>,
    modes: Option<usize>,
) -> Result<ApproxRatio> {
    if eta == 0 {
        return Err(Error::InvalidInput(
            "suppression ratios require at least one independent symmetry".into(),
        ));
    }
    match statistics {
        StatKind::Boson => Ok(ApproxRatio {
            statistics,
            eta,
            particles,
            modes,
            ratio: 1.0 - 0.5f64.powi(eta as i32),
            limit: None,
        }),
        StatKind::Fermion => {
            let n_particles = particles.ok_or_else(|| {
                Error::InvalidInput("fermionic ratios require the particle number".into())
            })?;
            let cells = 1u32 << eta;
            if n_particles % cells != 0 {
                return Err(Error::DivisibilityViolation {
                    particles: n_particles,
                    eta,
                });
            }
            let per_cell = n_particles / cells;
            let limit = fermion_ratio_limit(eta, n_particles);
            let ratio = match modes {
                Some(n_modes) => {
                    if n_modes % cells as usize != 0 || (n_particles as usize) > n_modes {
                        return Err(Error::InvalidInput(format!(
                            "mode count {} incompatible with {} particles under 2^{} cells",
                            n_modes, n_particles, eta
                        )));
                    }
                    let cell_modes = n_modes as u64 / cells as u64;
                    let ln_allowed =
                        cells as f64 * crate::fock::ln_binomial(cell_modes, per_cell as u64);
                    let ln_all = crate::fock::ln_binomial(n_modes as u64, n_particles as u64);
                    1.0 - (ln_allowed - ln_all).exp()
                }
                None => limit,
            };
            Ok(ApproxRatio {
                statistics,
                eta,
                particles,
                modes,
                ratio,
                limit: Some(limit),
            })
        }
        StatKind::Distinguishable => Err(Error::NoSuppressionLaw(statistics.as_str())),
    }
}

/// Fermionic suppression ratio in the limit of many more modes than
/// particles: `1 - N! / (2^(eta N) * ((N / 2^eta)!)^(2^eta))`.
fn fermion_ratio_limit(eta: u32, particles: u32) -> f64 {
    let cells = 1u64 << eta;
    let per_cell = particles as u64 / cells;
    let ln_term = crate::interference::ln_factorial(particles)
        - (eta as f64) * (particles as f64) * std::f64::consts::LN_2
        - cells as f64 * crate::interference::ln_factorial(per_cell as u32);
    1.0 - ln_term.exp()
}

/// Exact suppressed fraction from full classification, with the analytic
/// prediction alongside.
#[derive(Clone, Debug, Serialize)]
pub struct RatioReport {
    pub initial: ModeOccupation,
    pub statistics: StatKind,
    pub eta: u32,
    pub exact_suppressed: u64,
    pub exact_total: u64,
    pub exact_ratio: f64,
    /// Analytic prediction; absent when the state has no invariances.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_ratio: Option<f64>,
}

pub fn ratio_exact(
    initial: &ModeOccupation,
    graph: &HypercubeSpec,
    statistics: StatKind,
) -> Result<RatioReport> {
    let classification = classify(initial, graph, statistics)?;
    let exact_total = classification.records.len() as u64;
    let exact_suppressed = classification
        .records
        .iter()
        .filter(|r| r.any_suppressed)
        .count() as u64;
    let (approx_ratio, limit_ratio) = if classification.eta >= 1 {
        let approx = ratio_approx(
            classification.eta,
            statistics,
            Some(initial.particles()),
            Some(graph.modes()),
        )?;
        (Some(approx.ratio), approx.limit)
    } else {
        (None, None)
    };
    Ok(RatioReport {
        initial: initial.clone(),
        statistics,
        eta: classification.eta,
        exact_suppressed,
        exact_total,
        exact_ratio: exact_suppressed as f64 / exact_total as f64,
        approx_ratio,
        limit_ratio,
    })
}

/// Executable form of the law's promise: every final state predicted
/// suppressed must carry a computed probability below the tolerance.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub initial: ModeOccupation,
    pub eta: u32,
    pub symmetry_sets: Vec<SymmetrySet>,
    pub predicted_suppressed_count: u64,
    pub total_finals: u64,
    /// Largest computed probability among predicted-suppressed states;
    /// absent when nothing is predicted.
    pub max_predicted_probability: Option<f64>,
    pub pass: bool,
    /// Final states the law does not cover whose probability nevertheless
    /// falls below the tolerance. Informational: the law is sufficient,
    /// not necessary.
    pub extra_zero_count: u64,
}

/// Verify the suppression law against brute-force probabilities on the
/// graph's transfer unitary. Never fails because of an unpredicted zero.
pub fn verify(
    initial: &ModeOccupation,
    graph: &HypercubeSpec,
    statistics: StatKind,
    tolerance: f64,
) -> Result<VerificationReport> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {}",
            tolerance
        )));
    }
    if statistics != StatKind::Fermion && initial.particles() > permanent_bound() {
        return Err(Error::PermanentBound {
            particles: initial.particles(),
            bound: permanent_bound(),
        });
    }
    let classification = classify(initial, graph, statistics)?;
    let unitary = build_generalized(graph)?;
    let distribution = full_distribution(&unitary, initial, statistics)?;
    assert_eq!(classification.records.len(), distribution.len());

    let mut predicted = 0u64;
    let mut extra_zero = 0u64;
    let mut max_predicted: Option<f64> = None;
    for (record, (final_state, probability)) in
        classification.records.iter().zip(distribution.iter())
    {
        debug_assert_eq!(&record.final_state, final_state);
        if record.any_suppressed {
            predicted += 1;
            max_predicted = Some(max_predicted.map_or(*probability, |m| m.max(*probability)));
        } else if *probability < tolerance {
            extra_zero += 1;
        }
    }
    Ok(VerificationReport {
        initial: initial.clone(),
        eta: classification.eta,
        symmetry_sets: classification.invariance_group,
        predicted_suppressed_count: predicted,
        total_finals: classification.records.len() as u64,
        max_predicted_probability: max_predicted,
        pass: max_predicted.is_none_or(|m| m < tolerance),
        extra_zero_count: extra_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn occ(counts: &[u32]) -> ModeOccupation {
        ModeOccupation::new(counts.to_vec())
    }

    fn sym(ps: &[usize]) -> SymmetrySet {
        SymmetrySet::from_segmentations(ps).unwrap()
    }

    #[test]
    fn boson_predictor_flags_odd_counts() {
        let cube = HypercubeSpec::bare(3).unwrap();
        // Five particles on the minus subset of (2,8).
        let verdict = predict_boson(&sym(&[2, 8]), &occ(&[1, 1, 1, 2, 2, 0, 0, 1]), &cube).unwrap();
        assert_eq!(verdict, Verdict::Suppressed);
        // Three particles on the minus subset of (4).
        let verdict = predict_boson(&sym(&[4]), &occ(&[2, 0, 2, 0, 2, 1, 0, 1]), &cube).unwrap();
        assert_eq!(verdict, Verdict::Suppressed);
        // Fully even configuration stays allowed.
        let verdict = predict_boson(&sym(&[2, 8]), &occ(&[1, 2, 0, 2, 2, 0, 0, 1]), &cube).unwrap();
        assert_eq!(verdict, Verdict::Allowed);
    }

    #[test]
    fn boson_predictor_on_subgraph_counts_whole_blocks() {
        let triangle =
            HypercubeSpec::new(1, 3, Some(crate::unitary::random_unitary(3, 9))).unwrap();
        let verdict = predict_boson(&sym(&[2]), &occ(&[3, 0, 0, 0, 1, 0]), &triangle).unwrap();
        assert_eq!(verdict, Verdict::Suppressed);
        let verdict = predict_boson(&sym(&[2]), &occ(&[1, 1, 1, 0, 1, 0]), &triangle).unwrap();
        assert_eq!(verdict, Verdict::Suppressed);
        let verdict = predict_boson(&sym(&[2]), &occ(&[2, 0, 0, 1, 1, 0]), &triangle).unwrap();
        assert_eq!(verdict, Verdict::Allowed);
    }

    #[test]
    fn fermion_predictor_requires_balance() {
        let square = HypercubeSpec::bare(2).unwrap();
        assert_eq!(
            predict_fermion(&sym(&[2, 4]), &occ(&[1, 0, 0, 1]), &square).unwrap(),
            Verdict::Suppressed
        );
        assert_eq!(
            predict_fermion(&sym(&[2, 4]), &occ(&[1, 1, 0, 0]), &square).unwrap(),
            Verdict::Allowed
        );
        let pair = HypercubeSpec::bare(1).unwrap();
        assert_eq!(
            predict_fermion(&sym(&[2]), &occ(&[1, 1]), &pair).unwrap(),
            Verdict::Allowed
        );
        assert!(predict_fermion(&sym(&[2]), &occ(&[2, 0]), &pair).is_err());
    }

    #[test]
    fn classify_covers_only_the_invariance_group() {
        let cube = HypercubeSpec::bare(3).unwrap();
        let r_a = occ(&[3, 0, 1, 0, 0, 3, 0, 1]);
        let classification = classify(&r_a, &cube, StatKind::Boson).unwrap();
        assert_eq!(classification.eta, 1);
        assert_eq!(classification.invariance_group, vec![sym(&[2, 8])]);
        assert!(classification.law_applicable);
        assert_eq!(classification.records.len(), 6435);
        for record in &classification.records {
            assert_eq!(record.verdicts.len(), 1);
            assert_eq!(record.verdicts[0].symmetry, sym(&[2, 8]));
            assert_eq!(record.any_suppressed, record.classification.is_some());
        }
    }

    #[test]
    fn classify_handles_states_without_invariances() {
        let cube = HypercubeSpec::bare(3).unwrap();
        let mut corner = vec![0u32; 8];
        corner[0] = 1;
        let classification = classify(&occ(&corner), &cube, StatKind::Boson).unwrap();
        assert_eq!(classification.eta, 0);
        assert!(!classification.law_applicable);
        assert!(classification
            .records
            .iter()
            .all(|r| r.verdicts.is_empty() && !r.any_suppressed));
    }

    #[test]
    fn classify_rejects_distinguishable_particles() {
        let cube = HypercubeSpec::bare(2).unwrap();
        assert!(matches!(
            classify(&occ(&[1, 1, 0, 0]), &cube, StatKind::Distinguishable),
            Err(Error::NoSuppressionLaw(_))
        ));
    }

    #[test]
    fn suppression_grows_monotonically_with_the_invariance_group() {
        // Everything suppressed for the less symmetric state must stay
        // suppressed for states with a larger invariance group.
        let cube = HypercubeSpec::bare(3).unwrap();
        let r_a = occ(&[3, 0, 1, 0, 0, 3, 0, 1]);
        let r_b = occ(&[0, 0, 2, 2, 0, 0, 2, 2]);
        let r_c = ModeOccupation::uniform(8);
        let ca = classify(&r_a, &cube, StatKind::Boson).unwrap();
        let cb = classify(&r_b, &cube, StatKind::Boson).unwrap();
        let cc = classify(&r_c, &cube, StatKind::Boson).unwrap();
        for ((a, b), c) in ca
            .records
            .iter()
            .zip(cb.records.iter())
            .zip(cc.records.iter())
        {
            assert_eq!(a.final_state, b.final_state);
            if a.any_suppressed {
                assert!(b.any_suppressed, "state {:?}", a.final_state);
            }
            if b.any_suppressed {
                assert!(c.any_suppressed, "state {:?}", b.final_state);
            }
        }
    }

    #[test]
    fn parity_relations_between_the_two_laws() {
        // For N divisible by four the boson condition implies the fermion
        // one; for N = 2 mod 4 a boson-allowed state is always
        // fermion-suppressed.
        let modes = 8;
        for particles in [2u32, 4, 6, 8] {
            for mask in 1..8u32 {
                let set = SymmetrySet::from_mask(mask).unwrap();
                let labeling = partition(&set, modes).unwrap();
                for final_state in crate::fock::enumerate_fermion_finals(modes, particles).unwrap()
                {
                    let boson = StatKind::Boson
                        .strategy()
                        .law_verdict(&labeling, &final_state)
                        .unwrap();
                    let fermion = StatKind::Fermion
                        .strategy()
                        .law_verdict(&labeling, &final_state)
                        .unwrap();
                    if particles % 4 == 0 && boson.is_suppressed() {
                        assert!(fermion.is_suppressed());
                    }
                    if particles % 4 == 2 && !boson.is_suppressed() {
                        assert!(fermion.is_suppressed());
                    }
                }
            }
        }
    }

    #[test]
    fn subgraph_verdicts_depend_only_on_block_totals() {
        let triangle =
            HypercubeSpec::new(1, 3, Some(crate::unitary::random_unitary(3, 21))).unwrap();
        let set = sym(&[2]);
        // All arrangements of (2,1) particles on the two blocks.
        let base = occ(&[2, 0, 0, 1, 0, 0]);
        let rearranged = [
            occ(&[0, 2, 0, 0, 1, 0]),
            occ(&[1, 1, 0, 0, 0, 1]),
            occ(&[0, 0, 2, 1, 0, 0]),
        ];
        let reference = predict_boson(&set, &base, &triangle).unwrap();
        for state in rearranged {
            assert_eq!(predict_boson(&set, &state, &triangle).unwrap(), reference);
        }
    }

    #[test]
    fn approx_ratio_values() {
        assert!((ratio_approx(1, StatKind::Boson, None, None).unwrap().ratio - 0.5).abs() < 1e-15);
        assert!(
            (ratio_approx(3, StatKind::Boson, None, None).unwrap().ratio - 0.875).abs() < 1e-15
        );

        let fermion = ratio_approx(2, StatKind::Fermion, Some(4), None).unwrap();
        assert!((fermion.ratio - 0.90625).abs() < 1e-12);
        assert!((fermion.limit.unwrap() - 0.90625).abs() < 1e-12);

        let exact = ratio_approx(2, StatKind::Fermion, Some(4), Some(8)).unwrap();
        assert!((exact.ratio - 27.0 / 35.0).abs() < 1e-12);

        assert!(matches!(
            ratio_approx(2, StatKind::Fermion, Some(6), None),
            Err(Error::DivisibilityViolation { .. })
        ));
        assert!(ratio_approx(0, StatKind::Boson, None, None).is_err());
        assert!(ratio_approx(1, StatKind::Distinguishable, None, None).is_err());
    }

    #[test]
    fn fermion_limit_at_maximal_symmetry() {
        // N = 2^eta particles: the limit collapses to 1 - N!/N^N.
        for eta in 1..=3u32 {
            let particles = 1u32 << eta;
            let report = ratio_approx(eta, StatKind::Fermion, Some(particles), None).unwrap();
            let expect = 1.0
                - crate::interference::factorial(particles)
                    / (particles as f64).powi(particles as i32);
            assert!((report.ratio - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_fermion_ratio_on_the_cube() {
        let cube = HypercubeSpec::bare(3).unwrap();
        let initial = occ(&[1, 1, 0, 0, 1, 1, 0, 0]);
        let report = ratio_exact(&initial, &cube, StatKind::Fermion).unwrap();
        assert_eq!(report.eta, 2);
        assert_eq!(report.exact_total, 70);
        assert_eq!(report.exact_suppressed, 54);
        assert!((report.exact_ratio - 27.0 / 35.0).abs() < 1e-12);
        assert!((report.approx_ratio.unwrap() - 27.0 / 35.0).abs() < 1e-12);
    }

    #[test]
    fn verify_fermion_pair_on_the_square() {
        let square = HypercubeSpec::bare(2).unwrap();
        let report = verify(&occ(&[1, 0, 0, 1]), &square, StatKind::Fermion, 1e-10).unwrap();
        assert!(report.pass);
        assert_eq!(report.eta, 1);
        assert_eq!(report.symmetry_sets, vec![sym(&[2, 4])]);
        assert_eq!(report.total_finals, 6);
        assert_eq!(report.predicted_suppressed_count, 2);
        assert!(report.max_predicted_probability.unwrap() < 1e-10);
        assert_eq!(report.extra_zero_count, 0);
    }

    #[test]
    fn verify_without_invariances_passes_vacuously() {
        let triangle =
            HypercubeSpec::new(1, 3, Some(crate::unitary::random_unitary(3, 33))).unwrap();
        let report = verify(&occ(&[2, 0, 0, 1, 1, 0]), &triangle, StatKind::Boson, 1e-10).unwrap();
        assert!(report.pass);
        assert_eq!(report.eta, 0);
        assert!(report.symmetry_sets.is_empty());
        assert_eq!(report.predicted_suppressed_count, 0);
        assert!(report.max_predicted_probability.is_none());
    }

    #[test]
    fn verify_enforces_the_permanent_bound() {
        let cube = HypercubeSpec::bare(3).unwrap();
        let mut counts = vec![0u32; 8];
        counts[0] = permanent_bound() + 2;
        counts[7] = permanent_bound() + 2;
        assert!(matches!(
            verify(&occ(&counts), &cube, StatKind::Boson, 1e-10),
            Err(Error::PermanentBound { .. })
        ));
    }

    #[test]
    fn verdict_map_round_trips_per_symmetry() {
        // Spot check that classify and the standalone predictors agree.
        let cube = HypercubeSpec::bare(3).unwrap();
        let r_b = occ(&[0, 0, 2, 2, 0, 0, 2, 2]);
        let classification = classify(&r_b, &cube, StatKind::Boson).unwrap();
        let sample = &classification.records[123];
        let by_set: BTreeMap<SymmetrySet, Verdict> = sample
            .verdicts
            .iter()
            .map(|e| (e.symmetry, e.verdict))
            .collect();
        for (set, verdict) in by_set {
            assert_eq!(
                predict_boson(&set, &sample.final_state, &cube).unwrap(),
                verdict
            );
        }
    }
}
