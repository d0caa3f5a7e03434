#![allow(dead_code)]

pub mod oracle;

use std::sync::Arc;

use filterfn::{build_mass, validate_family, MassFunction, SubsetMask, Universe};
use rand::Rng;

use oracle::{NaiveModel, Set};

pub fn to_mask(s: &Set) -> SubsetMask {
    SubsetMask::from_indices(s.iter().copied())
}

pub fn to_set(m: SubsetMask) -> Set {
    m.iter().collect()
}

/// Every nonempty family of subsets of an `n`-element universe.
pub fn all_families(n: usize) -> impl Iterator<Item = Vec<Set>> {
    let subsets = oracle::all_subsets(n);
    let count = subsets.len();
    (1u64..1 << count).map(move |sel| {
        (0..count)
            .filter(|i| sel >> i & 1 == 1)
            .map(|i| subsets[i].clone())
            .collect()
    })
}

pub fn random_family<R: Rng>(n: usize, rng: &mut R) -> Vec<Set> {
    loop {
        let fam: Vec<Set> = oracle::all_subsets(n)
            .into_iter()
            .filter(|_| rng.random_bool(0.4))
            .collect();
        if !fam.is_empty() {
            return fam;
        }
    }
}

/// Random masses over a family; roughly a third of the members get none.
pub fn random_masses<R: Rng>(members: &[Set], rng: &mut R) -> Vec<(Set, f64)> {
    let mut raw: Vec<f64> = members
        .iter()
        .map(|_| {
            if rng.random_bool(0.3) {
                0.0
            } else {
                rng.random::<f64>()
            }
        })
        .collect();
    if raw.iter().all(|&v| v == 0.0) {
        let i = rng.random_range(0..raw.len());
        raw[i] = 1.0;
    }
    let total: f64 = raw.iter().sum();
    members
        .iter()
        .cloned()
        .zip(raw.into_iter().map(|v| v / total))
        .collect()
}

/// A random partition of `0..n` into nonempty blocks.
pub fn random_partition<R: Rng>(n: usize, rng: &mut R) -> Vec<Set> {
    let blocks = rng.random_range(1..=n);
    let assign: Vec<usize> = (0..n).map(|_| rng.random_range(0..blocks)).collect();
    (0..blocks)
        .map(|b| (0..n).filter(|&i| assign[i] == b).collect::<Set>())
        .filter(|s| !s.is_empty())
        .collect()
}

pub struct Instance {
    pub naive: NaiveModel,
    pub mass: MassFunction,
}

pub fn instance(n: usize, pairs: Vec<(Set, f64)>) -> Instance {
    let u = Universe::numbered(n).unwrap();
    let masks: Vec<SubsetMask> = pairs.iter().map(|(s, _)| to_mask(s)).collect();
    let family = Arc::new(validate_family(&u, &masks).unwrap());
    let assignments: Vec<(SubsetMask, f64)> = pairs.iter().map(|(s, v)| (to_mask(s), *v)).collect();
    let mass = build_mass(family, &assignments).unwrap();
    Instance {
        naive: NaiveModel::new(n, pairs),
        mass,
    }
}
