//! Naive reference implementations over `BTreeSet<usize>` sets.
//!
//! Nothing here touches the bitmask code paths: sets, their canonical order,
//! atoms and every filter are recomputed with plain collections and double
//! loops. Sums run over members in canonical order and add only the
//! selected terms, so results are bitwise comparable with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub type Set = BTreeSet<usize>;

/// A family with one mass per member, sorted canonically.
#[derive(Debug, Clone)]
pub struct NaiveModel {
    pub n: usize,
    pub members: Vec<Set>,
    pub masses: Vec<f64>,
}

pub fn all_subsets(n: usize) -> Vec<Set> {
    let mut out: Vec<Set> = (0u64..1 << n)
        .map(|bits| (0..n).filter(|i| bits >> i & 1 == 1).collect())
        .collect();
    sort_canonical(&mut out);
    out
}

/// By size, then lexicographically (BTreeSet's own order).
pub fn sort_canonical(sets: &mut [Set]) {
    sets.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
}

fn inter(a: &Set, b: &Set) -> usize {
    a.intersection(b).count()
}

impl NaiveModel {
    pub fn new(n: usize, pairs: Vec<(Set, f64)>) -> Self {
        let mut pairs = pairs;
        pairs.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        let (members, masses) = pairs.into_iter().unzip();
        NaiveModel { n, members, masses }
    }

    fn sum_where(&self, pred: impl Fn(&Set) -> bool) -> f64 {
        let mut acc = 0.0;
        for (y, &m) in self.members.iter().zip(&self.masses) {
            if pred(y) {
                acc += m;
            }
        }
        acc
    }

    pub fn bel(&self, e: &Set) -> f64 {
        self.sum_where(|y| y.is_subset(e))
    }

    pub fn pl(&self, e: &Set) -> f64 {
        self.sum_where(|y| inter(e, y) > 0)
    }

    pub fn bel_plus(&self, e: &Set) -> f64 {
        self.sum_where(|y| !y.is_empty() && y.is_subset(e))
    }

    pub fn bel_min(&self, e: &Set) -> f64 {
        if self.members.contains(e) {
            self.bel(e)
        } else {
            0.0
        }
    }

    pub fn pl_min(&self, e: &Set) -> f64 {
        self.sum_where(|y| e.is_subset(y))
    }

    pub fn upper_k(&self, k: usize, e: &Set) -> f64 {
        self.sum_where(|y| inter(e, y) >= k)
    }

    /// `pl[k]`: demands `min(k, |e|)` shared elements, at least one.
    pub fn pl_k(&self, k: usize, e: &Set) -> f64 {
        let need = k.min(e.len()).max(1);
        self.sum_where(|y| inter(e, y) >= need)
    }

    pub fn lower_k(&self, k: usize, e: &Set) -> f64 {
        self.sum_where(|y| y.is_subset(e) && y.len() >= k)
    }

    /// `s = num / den`
    pub fn upper_s(&self, num: usize, den: usize, e: &Set) -> f64 {
        self.sum_where(|y| e == y || inter(e, y) * den > num * e.len())
    }

    pub fn lower_s(&self, num: usize, den: usize, e: &Set) -> f64 {
        self.sum_where(|y| e == y || (y.is_subset(e) && y != e && y.len() * den > num * e.len()))
    }

    pub fn cp(&self, e: &Set) -> f64 {
        let mut acc = 0.0;
        for (y, &m) in self.members.iter().zip(&self.masses) {
            if !y.is_empty() {
                let w = inter(e, y) as f64 / y.len() as f64;
                if w != 0.0 {
                    acc += m * w;
                }
            }
        }
        acc
    }

    /// Atoms if the family is closed under union and complement.
    pub fn atoms(&self) -> Option<Vec<Set>> {
        atoms_of(self.n, &self.members)
    }

    pub fn pp(&self, e: &Set) -> Option<f64> {
        let atoms = self.atoms()?;
        let mut acc = 0.0;
        for (y, &m) in self.members.iter().zip(&self.masses) {
            if y.is_empty() {
                continue;
            }
            let noa = atoms.iter().filter(|a| a.is_subset(y)).count();
            let w = inter(e, y) as f64 / noa as f64;
            if w != 0.0 {
                acc += m * w;
            }
        }
        Some(acc)
    }
}

pub fn atoms_of(n: usize, members: &[Set]) -> Option<Vec<Set>> {
    let full: Set = (0..n).collect();
    let has = |s: &Set| members.contains(s);
    if !has(&Set::new()) || !has(&full) {
        return None;
    }
    for a in members {
        let comp: Set = full.difference(a).copied().collect();
        if !has(&comp) {
            return None;
        }
        for b in members {
            let u: Set = a.union(b).copied().collect();
            if !has(&u) {
                return None;
            }
        }
    }
    let mut atoms: Vec<Set> = members
        .iter()
        .filter(|a| !a.is_empty())
        .filter(|a| {
            !members
                .iter()
                .any(|b| !b.is_empty() && b != *a && b.is_subset(a))
        })
        .cloned()
        .collect();
    sort_canonical(&mut atoms);
    Some(atoms)
}

/// Contextual probability of the principle-of-indifference probability on an
/// algebra, or of any atom probabilities (given in canonical atom order).
pub fn cp_prob(n: usize, members: &[Set], atom_probs: &[f64], e: &Set) -> f64 {
    let atoms = atoms_of(n, members).expect("algebra");
    let p = |y: &Set| -> f64 {
        let mut acc = 0.0;
        for (a, &pa) in atoms.iter().zip(atom_probs) {
            if a.is_subset(y) {
                acc += pa;
            }
        }
        acc
    };
    let mut k = 0.0;
    for y in members {
        k += p(y) * y.len() as f64;
    }
    let mut acc = 0.0;
    for y in members {
        let w = inter(e, y) as f64 / k;
        if w != 0.0 {
            acc += p(y) * w;
        }
    }
    acc
}
