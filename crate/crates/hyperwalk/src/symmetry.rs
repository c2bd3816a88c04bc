//! Rademacher and Walsh sign functions, the self-inverse reflection
//! operators of the hypercube, invariance groups of occupation states, and
//! the independent-symmetry count.
//!
//! A segmentation value `p` (a power of two between 2 and `2^d`) splits the
//! mode axis into `p` equal segments of alternating sign; the corresponding
//! reflection swaps adjacent segments pairwise. Composites of reflections
//! along distinct axes are encoded as a [`SymmetrySet`]. On a generalized
//! graph whose `2^d` vertices each carry an `m`-mode subgraph, the same
//! formulas apply verbatim with the total mode count `n = 2^d * m` as the
//! modulus: reflections then transpose whole `m`-mode blocks and the sign
//! functions are constant across each block.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::ModeOccupation;

/// Sign of mode `mode` under the step function with `segmentation` segments
/// over `modes` modes: `(-1)^floor(segmentation * (mode - 1) / modes)`.
pub fn rademacher(mode: usize, segmentation: usize, modes: usize) -> Result<i32> {
    validate_segmentation(segmentation, modes)?;
    if mode < 1 || mode > modes {
        return Err(Error::ModeOutOfRange { mode, modes });
    }
    let quotient = (segmentation as u64 * (mode as u64 - 1)) / modes as u64;
    Ok(if quotient.is_multiple_of(2) { 1 } else { -1 })
}

fn validate_segmentation(segmentation: usize, modes: usize) -> Result<()> {
    let bad =
        segmentation < 2 || !segmentation.is_power_of_two() || !modes.is_multiple_of(segmentation);
    if bad {
        return Err(Error::InvalidSegmentation {
            segmentation,
            modes,
        });
    }
    Ok(())
}

/// A non-empty set of segmentation values, i.e. one composite reflection.
///
/// Canonically a bitmask over hypercube axes: bit `l - 1` set means the
/// segmentation `2^l` participates. Ordering is lexicographic on the
/// ascending segmentation list, so `{2} < {2,4} < {2,8} < {4} < {8}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymmetrySet {
    mask: u32,
}

impl SymmetrySet {
    /// Build from explicit segmentation values such as `[2, 8]`.
    pub fn from_segmentations(segmentations: &[usize]) -> Result<Self> {
        if segmentations.is_empty() {
            return Err(Error::EmptySymmetrySet);
        }
        let mut mask = 0u32;
        for &p in segmentations {
            if p < 2 || !p.is_power_of_two() || p.trailing_zeros() > 32 {
                return Err(Error::InvalidSegmentation {
                    segmentation: p,
                    modes: 0,
                });
            }
            let bit = 1u32 << (p.trailing_zeros() - 1);
            if mask & bit != 0 {
                return Err(Error::DuplicateSegmentation(p));
            }
            mask |= bit;
        }
        Ok(Self { mask })
    }

    /// Build from the canonical axis bitmask (bit `l - 1` <-> segmentation `2^l`).
    pub fn from_mask(mask: u32) -> Result<Self> {
        if mask == 0 {
            return Err(Error::EmptySymmetrySet);
        }
        Ok(Self { mask })
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    /// Participating segmentation values in ascending order.
    pub fn segmentations(&self) -> Vec<usize> {
        (0..32)
            .filter(|l| self.mask & (1 << l) != 0)
            .map(|l| 1usize << (l + 1))
            .collect()
    }

    /// Number of participating reflections.
    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: the mask is non-zero
    }

    pub fn contains(&self, segmentation: usize) -> bool {
        segmentation >= 2
            && segmentation.is_power_of_two()
            && self.mask & (1 << (segmentation.trailing_zeros() - 1)) != 0
    }

    /// Largest participating segmentation.
    pub fn max_segmentation(&self) -> usize {
        1usize << (32 - self.mask.leading_zeros())
    }

    /// Composition of two reflections is the reflection over the symmetric
    /// difference of their axes; `None` when they cancel to the identity.
    pub fn symmetric_difference(&self, other: &Self) -> Option<Self> {
        let mask = self.mask ^ other.mask;
        (mask != 0).then_some(Self { mask })
    }

    /// Check that every segmentation is admissible for the given hypercube
    /// dimension and total mode count.
    pub fn validate(&self, hc_dimension: usize, modes: usize) -> Result<()> {
        for p in self.segmentations() {
            validate_segmentation(p, modes)?;
            if p > (1usize << hc_dimension) {
                return Err(Error::InvalidSegmentation {
                    segmentation: p,
                    modes,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for SymmetrySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in self.segmentations() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for SymmetrySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({})", self)
    }
}

impl Ord for SymmetrySet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.segmentations().cmp(&other.segmentations())
    }
}

impl PartialOrd for SymmetrySet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for SymmetrySet {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.segmentations().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SymmetrySet {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let values = Vec::<usize>::deserialize(deserializer)?;
        SymmetrySet::from_segmentations(&values).map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for SymmetrySet {
    /// Parses the CLI syntax `"2,8"`.
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad segmentation {:?}", tok)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_segmentations(&values)
    }
}

/// Product of Rademacher signs over every segmentation in the set.
pub fn walsh(mode: usize, set: &SymmetrySet, modes: usize) -> Result<i32> {
    let mut sign = 1;
    for p in set.segmentations() {
        sign *= rademacher(mode, p, modes)?;
    }
    Ok(sign)
}

/// The two complementary half-size mode subsets induced by a composite
/// reflection. `minus_modes` collects the 1-based modes with Walsh sign -1,
/// `plus_modes` those with sign +1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionLabeling {
    labels: Vec<i32>,
    minus_modes: Vec<usize>,
    plus_modes: Vec<usize>,
}

impl PartitionLabeling {
    pub fn labels(&self) -> &[i32] {
        &self.labels
    }

    /// Walsh sign of a 1-based mode.
    pub fn label(&self, mode: usize) -> i32 {
        self.labels[mode - 1]
    }

    pub fn minus_modes(&self) -> &[usize] {
        &self.minus_modes
    }

    pub fn plus_modes(&self) -> &[usize] {
        &self.plus_modes
    }

    /// Particles of `occ` sitting in the -1 subset.
    pub fn minus_count(&self, occ: &ModeOccupation) -> u32 {
        self.minus_modes.iter().map(|&j| occ.count(j)).sum()
    }
}

/// Compute the Walsh labeling and its two balanced subsets.
pub fn partition(set: &SymmetrySet, modes: usize) -> Result<PartitionLabeling> {
    let mut labels = Vec::with_capacity(modes);
    let mut minus_modes = Vec::new();
    let mut plus_modes = Vec::new();
    for mode in 1..=modes {
        let sign = walsh(mode, set, modes)?;
        labels.push(sign);
        if sign < 0 {
            minus_modes.push(mode);
        } else {
            plus_modes.push(mode);
        }
    }
    debug_assert_eq!(minus_modes.len(), plus_modes.len());
    Ok(PartitionLabeling {
        labels,
        minus_modes,
        plus_modes,
    })
}

/// Image of a 1-based mode under the composite reflection: each
/// participating segmentation shifts the mode by `+/- modes/p` into the
/// adjacent segment. Self-inverse.
pub fn reflect_mode(set: &SymmetrySet, mode: usize, modes: usize) -> Result<usize> {
    let mut target = mode as i64;
    for p in set.segmentations() {
        let sign = rademacher(mode, p, modes)?;
        target += sign as i64 * (modes / p) as i64;
    }
    debug_assert!(target >= 1 && target <= modes as i64);
    Ok(target as usize)
}

fn permute(set: &SymmetrySet, occ: &ModeOccupation, modes: usize) -> Result<ModeOccupation> {
    let mut out = vec![0u32; modes];
    for mode in 1..=modes {
        out[mode - 1] = occ.count(reflect_mode(set, mode, modes)?);
    }
    Ok(ModeOccupation::new(out))
}

/// Apply a composite reflection to an occupation on the bare hypercube
/// (`n = 2^d` modes). For subgraph-decorated graphs see
/// [`generalized_apply`].
pub fn apply_symmetry(set: &SymmetrySet, occ: &ModeOccupation) -> Result<ModeOccupation> {
    let modes = occ.modes();
    if !modes.is_power_of_two() {
        return Err(Error::ModeCountMismatch {
            expected: modes.next_power_of_two(),
            actual: modes,
        });
    }
    set.validate(modes.trailing_zeros() as usize, modes)?;
    permute(set, occ, modes)
}

/// Apply a composite reflection on a generalized hypercube whose `2^d`
/// vertices each carry an `m`-mode subgraph: whole `m`-mode blocks are
/// transposed. Reduces to [`apply_symmetry`] when `m = 1`.
pub fn generalized_apply(
    set: &SymmetrySet,
    occ: &ModeOccupation,
    hc_dimension: usize,
    subgraph_modes: usize,
) -> Result<ModeOccupation> {
    let modes = occ.modes();
    let expected = (1usize << hc_dimension) * subgraph_modes;
    if modes != expected {
        return Err(Error::ModeCountMismatch {
            expected,
            actual: modes,
        });
    }
    set.validate(hc_dimension, modes)?;
    permute(set, occ, modes)
}

fn is_invariant_inner(set: &SymmetrySet, occ: &ModeOccupation, modes: usize) -> Result<bool> {
    for mode in 1..=modes {
        if occ.count(mode) != occ.count(reflect_mode(set, mode, modes)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when the occupation is unchanged by the composite reflection.
pub fn is_invariant(set: &SymmetrySet, occ: &ModeOccupation) -> Result<bool> {
    Ok(apply_symmetry(set, occ)? == *occ)
}

/// All composite reflections (out of the `2^d - 1` candidates) that leave
/// the occupation invariant, in ascending [`SymmetrySet`] mask order.
/// The subgraph size is inferred as `n / 2^d`.
pub fn invariance_group(occ: &ModeOccupation, hc_dimension: usize) -> Result<Vec<SymmetrySet>> {
    let modes = occ.modes();
    let vertices = 1usize << hc_dimension;
    if !modes.is_multiple_of(vertices) || modes == 0 {
        return Err(Error::ModeCountMismatch {
            expected: vertices,
            actual: modes,
        });
    }
    let mut group = Vec::new();
    for mask in 1..vertices as u32 {
        let set = SymmetrySet::from_mask(mask)?;
        if is_invariant_inner(&set, occ, modes)? {
            group.push(set);
        }
    }
    Ok(group)
}

/// GF(2) rank of a collection of reflections viewed as axis bitmasks.
pub fn group_rank(sets: &[SymmetrySet]) -> u32 {
    let mut basis: Vec<u32> = Vec::new();
    for set in sets {
        let mut v = set.mask();
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len() as u32
}

/// Number of independent symmetries of the occupation: the GF(2) rank of
/// its invariance group. Zero when the state has no invariances, in which
/// case the suppression laws are inapplicable.
pub fn independent_symmetries(occ: &ModeOccupation, hc_dimension: usize) -> Result<u32> {
    let group = invariance_group(occ, hc_dimension)?;
    let rank = group_rank(&group);
    // Invariant states tile orbits of 2^rank blocks, so the particle
    // number must split evenly among them.
    assert!(
        rank == 0 || occ.particles().is_multiple_of(1u32 << rank),
        "invariance rank {} incompatible with particle number {}",
        rank,
        occ.particles()
    );
    Ok(rank)
}
