//! Rough-set approximations with respect to the atoms of an algebra.

use crate::error::{Error, Result};
use crate::universe::{NeighbourhoodFamily, SubsetMask};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproximationResult {
    /// Union of the atoms inside the event.
    pub lower: SubsetMask,
    /// Union of the atoms meeting the event.
    pub upper: SubsetMask,
    pub mu_lower: f64,
    pub mu_upper: f64,
}

fn atoms(algebra: &NeighbourhoodFamily) -> Result<&[SubsetMask]> {
    algebra.atoms().ok_or(Error::NoAtoms)
}

fn lower_of(atoms: &[SubsetMask], e: SubsetMask) -> SubsetMask {
    atoms
        .iter()
        .filter(|a| a.is_subset_of(e))
        .fold(SubsetMask::EMPTY, |acc, &a| acc.union(a))
}

pub fn approximate(algebra: &NeighbourhoodFamily, e: SubsetMask) -> Result<ApproximationResult> {
    let atoms = atoms(algebra)?;
    let u = algebra.universe();
    u.check(e)?;
    let n = u.len() as f64;
    let lower = lower_of(atoms, e);
    let upper = atoms
        .iter()
        .filter(|a| !a.is_disjoint(e))
        .fold(SubsetMask::EMPTY, |acc, &a| acc.union(a));
    Ok(ApproximationResult {
        lower,
        upper,
        mu_lower: lower.len() as f64 / n,
        mu_upper: upper.len() as f64 / n,
    })
}

/// Approximation quality: the fraction of the universe classified correctly
/// as inside or outside `e` by the granulation.
pub fn gamma(algebra: &NeighbourhoodFamily, e: SubsetMask) -> Result<f64> {
    let atoms = atoms(algebra)?;
    let u = algebra.universe();
    u.check(e)?;
    let inside = lower_of(atoms, e).len();
    let outside = lower_of(atoms, u.complement(e)).len();
    Ok((inside + outside) as f64 / u.len() as f64)
}
