//! Particle-statistics strategies.
//!
//! Boson, fermion and distinguishable-particle transport differ in three
//! interchangeable pieces of behaviour: the shape of the final-state space,
//! the matrix function turning a transition submatrix into a probability,
//! and whether an analytic suppression law exists. Each variant implements
//! the [`Statistics`] trait; the [`StatisticsRegistry`] resolves a strategy
//! from its CLI name at runtime.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{
    count_boson_finals, count_fermion_finals, enumerate_boson_finals, enumerate_fermion_finals,
    ModeOccupation,
};
use crate::interference::{determinant, occupation_prefactor, permanent, Submatrix};
use crate::supplaw::Verdict;
use crate::symmetry::PartitionLabeling;

/// Which exchange statistics a transition problem uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatKind {
    Boson,
    Fermion,
    Distinguishable,
}

impl StatKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            StatKind::Boson => "boson",
            StatKind::Fermion => "fermion",
            StatKind::Distinguishable => "distinguishable",
        }
    }

    /// The strategy object implementing this statistics.
    pub fn strategy(&self) -> &'static dyn Statistics {
        match self {
            StatKind::Boson => &BOSONS,
            StatKind::Fermion => &FERMIONS,
            StatKind::Distinguishable => &DISTINGUISHABLE,
        }
    }
}

impl fmt::Display for StatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "boson" | "bosons" | "b" => Ok(StatKind::Boson),
            "fermion" | "fermions" | "f" => Ok(StatKind::Fermion),
            "dist" | "distinguishable" | "d" => Ok(StatKind::Distinguishable),
            other => Err(Error::InvalidInput(format!(
                "unknown statistics {:?}: expected boson, fermion or dist",
                other
            ))),
        }
    }
}

/// One interchangeable particle-statistics backend.
pub trait Statistics: Send + Sync {
    /// Canonical registry name.
    fn name(&self) -> &'static str;

    /// Additional accepted names.
    fn aliases(&self) -> &'static [&'static str] {
        &[]
    }

    fn kind(&self) -> StatKind;

    /// Reject occupations this statistics cannot realize.
    fn validate_occupation(&self, occ: &ModeOccupation) -> Result<()>;

    /// Every reachable final state, lazily, in the canonical order.
    fn enumerate_finals(
        &self,
        modes: usize,
        particles: u32,
    ) -> Result<Box<dyn Iterator<Item = ModeOccupation> + Send>>;

    /// Exact size of the final-state space.
    fn count_finals(&self, modes: usize, particles: u32) -> Result<u128>;

    /// Transition probability from the amplitude submatrix.
    fn transition_probability(
        &self,
        sub: &Submatrix,
        initial: &ModeOccupation,
        final_state: &ModeOccupation,
    ) -> Result<f64>;

    /// Whether an analytic suppression law exists for this statistics.
    fn has_suppression_law(&self) -> bool;

    /// Suppression-law verdict for a final state under one symmetry
    /// partitioning; `None` exactly when [`Self::has_suppression_law`]
    /// is false. Callers must have verified that the initial state is
    /// invariant under the symmetry the labeling came from.
    fn law_verdict(
        &self,
        labeling: &PartitionLabeling,
        final_state: &ModeOccupation,
    ) -> Option<Verdict>;
}

pub struct BosonStatistics;
pub static BOSONS: BosonStatistics = BosonStatistics;

impl Statistics for BosonStatistics {
    fn name(&self) -> &'static str {
        "boson"
    }

    fn kind(&self) -> StatKind {
        StatKind::Boson
    }

    fn validate_occupation(&self, _occ: &ModeOccupation) -> Result<()> {
        Ok(())
    }

    fn enumerate_finals(
        &self,
        modes: usize,
        particles: u32,
    ) -> Result<Box<dyn Iterator<Item = ModeOccupation> + Send>> {
        Ok(Box::new(enumerate_boson_finals(modes, particles)))
    }

    fn count_finals(&self, modes: usize, particles: u32) -> Result<u128> {
        count_boson_finals(modes, particles)
    }

    fn transition_probability(
        &self,
        sub: &Submatrix,
        initial: &ModeOccupation,
        final_state: &ModeOccupation,
    ) -> Result<f64> {
        let amplitude = permanent(sub.matrix())?;
        Ok(amplitude.norm_sqr()
            / (occupation_prefactor(initial) * occupation_prefactor(final_state)))
    }

    fn has_suppression_law(&self) -> bool {
        true
    }

    fn law_verdict(
        &self,
        labeling: &PartitionLabeling,
        final_state: &ModeOccupation,
    ) -> Option<Verdict> {
        // Odd particle count on the minus subset forces total destructive
        // interference.
        Some(if labeling.minus_count(final_state) % 2 == 1 {
            Verdict::Suppressed
        } else {
            Verdict::Allowed
        })
    }
}

pub struct FermionStatistics;
pub static FERMIONS: FermionStatistics = FermionStatistics;

impl Statistics for FermionStatistics {
    fn name(&self) -> &'static str {
        "fermion"
    }

    fn kind(&self) -> StatKind {
        StatKind::Fermion
    }

    fn validate_occupation(&self, occ: &ModeOccupation) -> Result<()> {
        occ.require_fermionic()
    }

    fn enumerate_finals(
        &self,
        modes: usize,
        particles: u32,
    ) -> Result<Box<dyn Iterator<Item = ModeOccupation> + Send>> {
        Ok(Box::new(enumerate_fermion_finals(modes, particles)?))
    }

    fn count_finals(&self, modes: usize, particles: u32) -> Result<u128> {
        count_fermion_finals(modes, particles)
    }

    fn transition_probability(
        &self,
        sub: &Submatrix,
        _initial: &ModeOccupation,
        _final_state: &ModeOccupation,
    ) -> Result<f64> {
        Ok(determinant(sub.matrix()).norm_sqr())
    }

    fn has_suppression_law(&self) -> bool {
        true
    }

    fn law_verdict(
        &self,
        labeling: &PartitionLabeling,
        final_state: &ModeOccupation,
    ) -> Option<Verdict> {
        // Anything other than an exactly balanced split across the two
        // subsets is suppressed.
        let minus = labeling.minus_count(final_state);
        Some(if 2 * minus != final_state.particles() {
            Verdict::Suppressed
        } else {
            Verdict::Allowed
        })
    }
}

pub struct DistinguishableStatistics;
pub static DISTINGUISHABLE: DistinguishableStatistics = DistinguishableStatistics;

impl Statistics for DistinguishableStatistics {
    fn name(&self) -> &'static str {
        "distinguishable"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["dist"]
    }

    fn kind(&self) -> StatKind {
        StatKind::Distinguishable
    }

    fn validate_occupation(&self, _occ: &ModeOccupation) -> Result<()> {
        Ok(())
    }

    fn enumerate_finals(
        &self,
        modes: usize,
        particles: u32,
    ) -> Result<Box<dyn Iterator<Item = ModeOccupation> + Send>> {
        Ok(Box::new(enumerate_boson_finals(modes, particles)))
    }

    fn count_finals(&self, modes: usize, particles: u32) -> Result<u128> {
        count_boson_finals(modes, particles)
    }

    fn transition_probability(
        &self,
        sub: &Submatrix,
        _initial: &ModeOccupation,
        final_state: &ModeOccupation,
    ) -> Result<f64> {
        // Incoherent transport: permanent of the elementwise squared
        // moduli, normalized by the final-state multiplicities.
        let squared = sub.elementwise_norm_sqr();
        let value = permanent(&squared)?;
        debug_assert!(value.im.abs() < 1e-12);
        Ok(value.re / occupation_prefactor(final_state))
    }

    fn has_suppression_law(&self) -> bool {
        false
    }

    fn law_verdict(
        &self,
        _labeling: &PartitionLabeling,
        _final_state: &ModeOccupation,
    ) -> Option<Verdict> {
        None
    }
}

/// Name-keyed registry of statistics strategies.
pub struct StatisticsRegistry {
    entries: BTreeMap<&'static str, &'static dyn Statistics>,
}

impl StatisticsRegistry {
    pub fn empty() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    /// Registry pre-loaded with the boson, fermion and distinguishable
    /// strategies.
    pub fn builtin() -> Self {
        let mut registry = Self::empty();
        registry.register(&BOSONS);
        registry.register(&FERMIONS);
        registry.register(&DISTINGUISHABLE);
        registry
    }

    pub fn register(&mut self, statistics: &'static dyn Statistics) {
        self.entries.insert(statistics.name(), statistics);
        for alias in statistics.aliases() {
            self.entries.insert(alias, statistics);
        }
    }

    pub fn get(&self, name: &str) -> Option<&'static dyn Statistics> {
        self.entries.get(name).copied()
    }

    /// Canonical names only, aliases excluded.
    pub fn names(&self) -> Vec<&'static str> {
        let mut names: Vec<_> = self.entries.values().map(|s| s.name()).collect();
        names.sort_unstable();
        names.dedup();
        names
    }
}

impl Default for StatisticsRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_parsing() {
        assert_eq!("boson".parse::<StatKind>().unwrap(), StatKind::Boson);
        assert_eq!("fermion".parse::<StatKind>().unwrap(), StatKind::Fermion);
        assert_eq!(
            "dist".parse::<StatKind>().unwrap(),
            StatKind::Distinguishable
        );
        assert_eq!(
            "distinguishable".parse::<StatKind>().unwrap(),
            StatKind::Distinguishable
        );
        assert!("anyon".parse::<StatKind>().is_err());
    }

    #[test]
    fn registry_resolves_names_and_aliases() {
        let registry = StatisticsRegistry::builtin();
        assert_eq!(registry.get("boson").unwrap().kind(), StatKind::Boson);
        assert_eq!(registry.get("fermion").unwrap().kind(), StatKind::Fermion);
        assert_eq!(
            registry.get("dist").unwrap().kind(),
            StatKind::Distinguishable
        );
        assert_eq!(
            registry.get("distinguishable").unwrap().kind(),
            StatKind::Distinguishable
        );
        assert!(registry.get("anyon").is_none());
        assert_eq!(
            registry.names(),
            vec!["boson", "distinguishable", "fermion"]
        );
    }

    #[test]
    fn strategies_expose_their_state_spaces() {
        let boson = StatKind::Boson.strategy();
        assert_eq!(boson.count_finals(8, 8).unwrap(), 6435);
        assert_eq!(boson.enumerate_finals(2, 2).unwrap().count(), 3);

        let fermion = StatKind::Fermion.strategy();
        assert_eq!(fermion.count_finals(4, 2).unwrap(), 6);
        assert!(fermion.count_finals(2, 3).is_err());
        assert!(fermion
            .validate_occupation(&ModeOccupation::new(vec![2, 0]))
            .is_err());

        let dist = StatKind::Distinguishable.strategy();
        assert_eq!(dist.count_finals(8, 8).unwrap(), 6435);
    }

    #[test]
    fn serde_of_kind_is_lowercase() {
        assert_eq!(
            serde_json::to_string(&StatKind::Boson).unwrap(),
            "\"boson\""
        );
        let kind: StatKind = serde_json::from_str("\"fermion\"").unwrap();
        assert_eq!(kind, StatKind::Fermion);
    }
}
