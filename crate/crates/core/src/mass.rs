//! Mass functions, probability measures on algebras, and mass estimation
//! from observed pattern counts.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::universe::{NeighbourhoodFamily, SubsetMask};

/// Accepted deviation of a mass (or probability) total from 1.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// A mass function on a family. Values are stored densely, aligned with the
/// family's canonical member order; members without an assignment carry 0.
/// Mass on the empty set is allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    family: Arc<NeighbourhoodFamily>,
    values: Vec<f64>,
}

impl MassFunction {
    pub fn family(&self) -> &Arc<NeighbourhoodFamily> {
        &self.family
    }

    /// Masses aligned with `family().members()`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Mass of `s`; 0 for subsets outside the family.
    pub fn get(&self, s: SubsetMask) -> f64 {
        self.family.index_of(s).map_or(0.0, |i| self.values[i])
    }

    /// `(member, mass)` pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (SubsetMask, f64)> + '_ {
        self.family
            .members()
            .iter()
            .copied()
            .zip(self.values.iter().copied())
    }

    /// Members with strictly positive mass.
    pub fn focal_elements(&self) -> impl Iterator<Item = (SubsetMask, f64)> + '_ {
        self.iter().filter(|&(_, v)| v > 0.0)
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Builds a mass function from values aligned with the member order.
    pub fn from_dense(family: Arc<NeighbourhoodFamily>, values: Vec<f64>) -> Result<Self> {
        assert_eq!(family.len(), values.len(), "one value per member");
        for (&s, &v) in family.members().iter().zip(&values) {
            check_mass(s, v)?;
        }
        let dev = values.iter().sum::<f64>() - 1.0;
        if dev.abs() > SUM_TOLERANCE {
            return Err(Error::SumNotOne(dev));
        }
        Ok(MassFunction { family, values })
    }
}

fn check_mass(s: SubsetMask, v: f64) -> Result<()> {
    if v < 0.0 || v.is_nan() {
        return Err(Error::NegativeMass {
            subset: s,
            value: v,
        });
    }
    Ok(())
}

/// Validates sparse `(subset, mass)` assignments against a family.
pub fn build_mass(
    family: Arc<NeighbourhoodFamily>,
    assignments: &[(SubsetMask, f64)],
) -> Result<MassFunction> {
    let mut values = vec![0.0; family.len()];
    let mut assigned = vec![false; family.len()];
    for &(s, v) in assignments {
        let i = family.index_of(s).ok_or(Error::NotInFamily(s))?;
        check_mass(s, v)?;
        if std::mem::replace(&mut assigned[i], true) {
            return Err(Error::DuplicateAssignment(s));
        }
        values[i] = v;
    }
    MassFunction::from_dense(family, values)
}

/// An additive probability on a Boolean algebra, determined by its atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMeasure {
    algebra: Arc<NeighbourhoodFamily>,
    atom_probs: Vec<f64>,
}

impl ProbabilityMeasure {
    /// `atom_probs` is aligned with `algebra.atoms()`.
    pub fn new(algebra: Arc<NeighbourhoodFamily>, atom_probs: Vec<f64>) -> Result<Self> {
        let atoms = algebra.atoms().ok_or(Error::NoAtoms)?;
        assert_eq!(atoms.len(), atom_probs.len(), "one probability per atom");
        for (&a, &p) in atoms.iter().zip(&atom_probs) {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::NegativeMass {
                    subset: a,
                    value: p,
                });
            }
        }
        let dev = atom_probs.iter().sum::<f64>() - 1.0;
        if dev.abs() > SUM_TOLERANCE {
            return Err(Error::ProbabilitySumNotOne(dev));
        }
        Ok(ProbabilityMeasure {
            algebra,
            atom_probs,
        })
    }

    pub fn algebra(&self) -> &Arc<NeighbourhoodFamily> {
        &self.algebra
    }

    pub fn atoms(&self) -> &[SubsetMask] {
        self.algebra.atoms().expect("validated at construction")
    }

    pub fn atom_probs(&self) -> &[f64] {
        &self.atom_probs
    }

    /// p(y): total probability of the atoms contained in `y`.
    pub fn measure(&self, y: SubsetMask) -> f64 {
        self.atoms()
            .iter()
            .zip(&self.atom_probs)
            .filter(|(a, _)| a.is_subset_of(y))
            .map(|(_, &p)| p)
            .sum()
    }
}

/// The principle-of-indifference probability: each atom gets its share of
/// the universe, `|A| / n`.
pub fn sampling_probability(algebra: Arc<NeighbourhoodFamily>) -> Result<ProbabilityMeasure> {
    let n = algebra.universe().len() as f64;
    let probs = algebra
        .atoms()
        .ok_or(Error::NoAtoms)?
        .iter()
        .map(|a| a.len() as f64 / n)
        .collect();
    ProbabilityMeasure::new(algebra, probs)
}

/// The Bayesian mass of a probability: atoms keep their probability, every
/// other member gets 0.
pub fn bayesian_mass(p: &ProbabilityMeasure) -> MassFunction {
    let algebra = p.algebra().clone();
    let mut values = vec![0.0; algebra.len()];
    for (&a, &pa) in p.atoms().iter().zip(p.atom_probs()) {
        let i = algebra.index_of(a).expect("atoms are members");
        values[i] = pa;
    }
    MassFunction {
        family: algebra,
        values,
    }
}

/// How often each member of a family was observed as a response pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationCounts {
    family: Arc<NeighbourhoodFamily>,
    counts: Vec<u64>,
    total: u64,
}

impl ObservationCounts {
    /// `counts` is aligned with the family's member order.
    pub fn new(family: Arc<NeighbourhoodFamily>, counts: Vec<u64>) -> Self {
        assert_eq!(family.len(), counts.len(), "one count per member");
        let total = counts.iter().sum();
        ObservationCounts {
            family,
            counts,
            total,
        }
    }

    /// Sparse construction; rejects patterns outside the family.
    pub fn from_pairs(
        family: Arc<NeighbourhoodFamily>,
        pairs: &[(SubsetMask, u64)],
    ) -> Result<Self> {
        let mut counts = vec![0; family.len()];
        for &(s, c) in pairs {
            let i = family.index_of(s).ok_or(Error::NotInFamily(s))?;
            counts[i] += c;
        }
        Ok(Self::new(family, counts))
    }

    pub fn family(&self) -> &Arc<NeighbourhoodFamily> {
        &self.family
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn get(&self, s: SubsetMask) -> u64 {
        self.family.index_of(s).map_or(0, |i| self.counts[i])
    }
}

/// Relative frequencies `obs(X) / N`: the multinomial maximum-likelihood
/// estimate of the pattern masses.
pub fn estimate_mass(obs: &ObservationCounts) -> Result<MassFunction> {
    if obs.total == 0 {
        return Err(Error::ZeroObservations);
    }
    let n = obs.total as f64;
    let values = obs.counts.iter().map(|&c| c as f64 / n).collect();
    Ok(MassFunction {
        family: obs.family.clone(),
        values,
    })
}

/// The size-weighted frequencies `obs(X) * |X| / n`, with `n` the universe
/// size. These do NOT sum to 1 in general and are not a mass function; they
/// are exposed only for comparison with [`estimate_mass`].
pub fn literal_weighted_frequencies(obs: &ObservationCounts) -> Vec<f64> {
    let n = obs.family.universe().len() as f64;
    obs.family
        .members()
        .iter()
        .zip(&obs.counts)
        .map(|(x, &c)| c as f64 * x.len() as f64 / n)
        .collect()
}
