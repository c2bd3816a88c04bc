//! Fock states as mode occupation lists, the equivalent per-particle mode
//! assignment lists, and exhaustive enumeration of final-state spaces.
//!
//! Mode numbering is 1-based in every public interface; occupation vectors
//! are indexed 0-based internally but never expose that choice.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Particle counts per mode: entry `j` is the number of particles in mode
/// `j + 1`. The particle number is the sum of all entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModeOccupation(Vec<u32>);

impl ModeOccupation {
    pub fn new(counts: Vec<u32>) -> Self {
        Self(counts)
    }

    pub fn vacuum(modes: usize) -> Self {
        Self(vec![0; modes])
    }

    /// Uniform single occupation of every mode.
    pub fn uniform(modes: usize) -> Self {
        Self(vec![1; modes])
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    /// Total particle number.
    pub fn particles(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    /// Particle count in a 1-based mode.
    pub fn count(&self, mode: usize) -> u32 {
        self.0[mode - 1]
    }

    /// True when no mode holds more than one particle.
    pub fn is_fermionic(&self) -> bool {
        self.0.iter().all(|&c| c <= 1)
    }

    pub fn require_fermionic(&self) -> Result<()> {
        for (idx, &c) in self.0.iter().enumerate() {
            if c > 1 {
                return Err(Error::PauliViolation {
                    mode: idx + 1,
                    count: c,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ModeOccupation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl fmt::Display for ModeOccupation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.0 {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for ModeOccupation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let counts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidInput(format!("bad occupation entry {:?}", tok)))
            })
            .collect::<Result<Vec<_>>>()?;
        if counts.is_empty() {
            return Err(Error::InvalidInput("empty occupation list".into()));
        }
        Ok(Self(counts))
    }
}

/// Sorted list of the 1-based mode number occupied by each particle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModeAssignment(Vec<u32>);

impl ModeAssignment {
    pub fn modes(&self) -> &[u32] {
        &self.0
    }

    pub fn particles(&self) -> u32 {
        self.0.len() as u32
    }
}

/// Canonical sorted mode assignment list of an occupation.
pub fn to_assignment(occ: &ModeOccupation) -> ModeAssignment {
    let mut modes = Vec::with_capacity(occ.particles() as usize);
    for (idx, &c) in occ.counts().iter().enumerate() {
        for _ in 0..c {
            modes.push((idx + 1) as u32);
        }
    }
    ModeAssignment(modes)
}

/// Inverse of [`to_assignment`]: tally a per-particle mode list (in any
/// order) into an occupation over `modes` modes.
pub fn from_assignment(assignment: &ModeAssignment, modes: usize) -> Result<ModeOccupation> {
    let mut counts = vec![0u32; modes];
    for &mode in assignment.modes() {
        let mode = mode as usize;
        if mode < 1 || mode > modes {
            return Err(Error::ModeOutOfRange { mode, modes });
        }
        counts[mode - 1] += 1;
    }
    Ok(ModeOccupation(counts))
}

/// Exact binomial coefficient, or `Error::CountOverflow` past u128 range.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        // Multiply before dividing; the running product stays integral.
        acc = acc
            .checked_mul((n - k + i) as u128)
            .ok_or(Error::CountOverflow)?;
        acc /= i as u128;
    }
    Ok(acc)
}

/// Natural log of the binomial coefficient; used for feasibility checks
/// where the exact count may not fit in 128 bits.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    let mut acc = 0.0;
    for i in 1..=k {
        acc += ((n - k + i) as f64).ln() - (i as f64).ln();
    }
    acc
}

/// Number of bosonic final states of `particles` particles in `modes` modes.
pub fn count_boson_finals(modes: usize, particles: u32) -> Result<u128> {
    binomial(particles as u64 + modes as u64 - 1, particles as u64)
}

/// Number of fermionic final states; fails when `particles > modes`.
pub fn count_fermion_finals(modes: usize, particles: u32) -> Result<u128> {
    if particles as usize > modes {
        return Err(Error::TooManyFermions { particles, modes });
    }
    binomial(modes as u64, particles as u64)
}

/// Lazy enumeration of every multiset of `particles` particles over `modes`
/// modes, exactly once, in lexicographically descending occupation order:
/// `(N,0,...,0)` first, `(0,...,0,N)` last.
pub fn enumerate_boson_finals(modes: usize, particles: u32) -> BosonFinalStates {
    assert!(modes >= 1, "mode count must be at least 1");
    let mut first = vec![0u32; modes];
    first[0] = particles;
    BosonFinalStates { next: Some(first) }
}

pub struct BosonFinalStates {
    next: Option<Vec<u32>>,
}

impl Iterator for BosonFinalStates {
    type Item = ModeOccupation;

    fn next(&mut self) -> Option<Self::Item> {
        let current = self.next.take()?;
        self.next = boson_successor(&current);
        Some(ModeOccupation(current))
    }
}

fn boson_successor(counts: &[u32]) -> Option<Vec<u32>> {
    let n = counts.len();
    // Rightmost movable particle, excluding the final mode.
    let pivot = counts[..n - 1].iter().rposition(|&c| c > 0)?;
    let tail: u32 = counts[pivot + 1..].iter().sum();
    let mut next = counts.to_vec();
    next[pivot] -= 1;
    for c in &mut next[pivot + 1..] {
        *c = 0;
    }
    next[pivot + 1] = tail + 1;
    Some(next)
}

/// Lazy enumeration of every 0/1 occupation with exactly `particles` ones,
/// in the same lexicographically descending order as the bosonic stream.
pub fn enumerate_fermion_finals(modes: usize, particles: u32) -> Result<FermionFinalStates> {
    if particles as usize > modes {
        return Err(Error::TooManyFermions { particles, modes });
    }
    Ok(FermionFinalStates {
        modes,
        positions: Some((0..particles as usize).collect()),
    })
}

pub struct FermionFinalStates {
    modes: usize,
    /// 0-based occupied-mode indices, strictly increasing.
    positions: Option<Vec<usize>>,
}

impl Iterator for FermionFinalStates {
    type Item = ModeOccupation;

    fn next(&mut self) -> Option<Self::Item> {
        let positions = self.positions.take()?;
        let mut counts = vec![0u32; self.modes];
        for &p in &positions {
            counts[p] = 1;
        }
        self.positions = combination_successor(&positions, self.modes);
        Some(ModeOccupation(counts))
    }
}

fn combination_successor(positions: &[usize], modes: usize) -> Option<Vec<usize>> {
    let k = positions.len();
    if k == 0 {
        return None;
    }
    let mut next = positions.to_vec();
    // Rightmost index that can still move right.
    let mut i = k;
    loop {
        if i == 0 {
            return None;
        }
        i -= 1;
        if next[i] < modes - k + i {
            break;
        }
    }
    next[i] += 1;
    for j in i + 1..k {
        next[j] = next[j - 1] + 1;
    }
    Some(next)
}
