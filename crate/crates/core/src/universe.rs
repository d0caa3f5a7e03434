//! Finite universes, subsets as bitmasks and families of neighbourhoods.
//!
//! Every subset of a universe with at most 64 elements fits in one `u64`;
//! bit `i` is set iff element `i` belongs to the subset. Families keep their
//! members in canonical order: by cardinality, then lexicographically on the
//! sorted element indices.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Widest universe a [`SubsetMask`] can address.
pub const MAX_ELEMENTS: usize = 64;

/// Largest number of atoms for which the full algebra is materialized.
pub const MAX_ATOMS: usize = 24;

/// A subset of the universe, one bit per element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubsetMask(u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        SubsetMask(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The first `n` elements.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << n) - 1)
        }
    }

    #[inline]
    pub const fn singleton(i: usize) -> Self {
        SubsetMask(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        SubsetMask(indices.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1u64 << i) != 0
    }

    #[inline]
    pub const fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_disjoint(self, other: SubsetMask) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub const fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub const fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub const fn difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    /// Element indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Canonical order: cardinality first, then lexicographic on the sorted
/// element indices.
pub fn canonical_cmp(a: SubsetMask, b: SubsetMask) -> Ordering {
    match a.len().cmp(&b.len()) {
        Ordering::Equal => {
            let diff = a.bits() ^ b.bits();
            if diff == 0 {
                Ordering::Equal
            } else if a.bits() & diff & diff.wrapping_neg() != 0 {
                // the smallest element on which they differ belongs to `a`
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        other => other,
    }
}

/// A finite, nonempty, labelled universe. Cloning is cheap.
#[derive(Clone, PartialEq, Eq)]
pub struct Universe {
    labels: Arc<[String]>,
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Universe").field(&self.labels).finish()
    }
}

impl Universe {
    pub fn new<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        if labels.len() > MAX_ELEMENTS {
            return Err(Error::TooLarge(labels.len()));
        }
        let mut seen = HashSet::new();
        for l in labels {
            if !seen.insert(l.as_ref()) {
                return Err(Error::DuplicateLabel(l.as_ref().to_string()));
            }
        }
        Ok(Universe {
            labels: labels.iter().map(|l| l.as_ref().to_string()).collect(),
        })
    }

    /// Universe labelled `1..=n`.
    pub fn numbered(n: usize) -> Result<Self> {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        Self::new(&labels)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.len())
    }

    #[inline]
    pub fn complement(&self, s: SubsetMask) -> SubsetMask {
        self.full().difference(s)
    }

    pub fn check(&self, s: SubsetMask) -> Result<SubsetMask> {
        if s.is_subset_of(self.full()) {
            Ok(s)
        } else {
            Err(Error::OutOfUniverse(s))
        }
    }

    /// Subset from element labels.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<SubsetMask> {
        let mut mask = SubsetMask::EMPTY;
        for l in labels {
            let i = self
                .index_of(l.as_ref())
                .ok_or_else(|| Error::Config(format!("unknown label `{}`", l.as_ref())))?;
            mask = mask.union(SubsetMask::singleton(i));
        }
        Ok(mask)
    }

    /// Renders a subset as `{a,b,c}` using element labels.
    pub fn render(&self, s: SubsetMask) -> String {
        let names: Vec<&str> = s.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// All subsets of an `n`-element universe in canonical order, generated
/// lazily one cardinality layer at a time.
#[derive(Debug, Clone)]
pub struct CanonicalSubsets {
    n: usize,
    k: usize,
    combo: Vec<usize>,
    done: bool,
}

impl CanonicalSubsets {
    pub fn new(n: usize, include_empty: bool) -> Self {
        assert!(n <= MAX_ELEMENTS);
        let k = if include_empty { 0 } else { 1 };
        CanonicalSubsets {
            n,
            k,
            combo: (0..k).collect(),
            done: k > n,
        }
    }

    fn advance(&mut self) {
        let (n, k) = (self.n, self.k);
        // rightmost position that can still move
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.combo[i] < n - k + i {
                self.combo[i] += 1;
                for j in i + 1..k {
                    self.combo[j] = self.combo[j - 1] + 1;
                }
                return;
            }
        }
        self.k += 1;
        if self.k > n {
            self.done = true;
        } else {
            self.combo = (0..self.k).collect();
        }
    }
}

impl Iterator for CanonicalSubsets {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        if self.done {
            return None;
        }
        let out = SubsetMask::from_indices(self.combo.iter().copied());
        self.advance();
        Some(out)
    }
}

/// Every subset of `u` in canonical order; the empty set comes first iff
/// `include_empty`.
pub fn enumerate_subsets(u: &Universe, include_empty: bool) -> Vec<SubsetMask> {
    CanonicalSubsets::new(u.len(), include_empty).collect()
}

/// A family of neighbourhoods. When the members form a Boolean subalgebra
/// of the powerset, its atoms are recorded as well.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighbourhoodFamily {
    universe: Universe,
    members: Vec<SubsetMask>,
    atoms: Option<Vec<SubsetMask>>,
}

impl NeighbourhoodFamily {
    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    /// Members in canonical order.
    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn atoms(&self) -> Option<&[SubsetMask]> {
        self.atoms.as_deref()
    }

    pub fn is_algebra(&self) -> bool {
        self.atoms.is_some()
    }

    /// True when the family is the full powerset of the universe.
    pub fn is_powerset(&self) -> bool {
        let n = self.universe.len();
        n < 64 && self.members.len() == 1usize << n
    }

    pub fn index_of(&self, s: SubsetMask) -> Option<usize> {
        self.members
            .binary_search_by(|probe| canonical_cmp(*probe, s))
            .ok()
    }

    #[inline]
    pub fn contains(&self, s: SubsetMask) -> bool {
        self.index_of(s).is_some()
    }

    /// Number of atoms contained in member `y`.
    pub fn noa(&self, y: SubsetMask) -> Result<usize> {
        let atoms = self.atoms.as_ref().ok_or(Error::NoAtoms)?;
        if !self.contains(y) {
            return Err(Error::NotAMember(y));
        }
        Ok(atoms.iter().filter(|a| a.is_subset_of(y)).count())
    }

    /// Full powerset of `u` as a family.
    pub fn powerset(u: &Universe) -> Self {
        let atoms = (0..u.len()).map(SubsetMask::singleton).collect();
        NeighbourhoodFamily {
            universe: u.clone(),
            members: enumerate_subsets(u, true),
            atoms: Some(atoms),
        }
    }
}

/// Builds the Boolean algebra generated by a partition of the universe: all
/// unions of blocks, with the blocks as atoms.
pub fn build_algebra_from_partition(
    u: &Universe,
    partition: &[SubsetMask],
) -> Result<NeighbourhoodFamily> {
    let mut covered = SubsetMask::EMPTY;
    for &block in partition {
        u.check(block)?;
        if block.is_empty() {
            return Err(Error::NotAPartition("empty block".into()));
        }
        if !block.is_disjoint(covered) {
            return Err(Error::NotAPartition(format!(
                "block {} overlaps an earlier block",
                u.render(block)
            )));
        }
        covered = covered.union(block);
    }
    if covered != u.full() {
        return Err(Error::NotAPartition(format!(
            "elements {} are not covered",
            u.render(u.complement(covered))
        )));
    }
    if partition.len() > MAX_ATOMS {
        return Err(Error::AlgebraTooLarge(partition.len()));
    }

    let k = partition.len();
    let mut members: Vec<SubsetMask> = (0u64..1 << k)
        .map(|sel| {
            SubsetMask::from_bits(sel)
                .iter()
                .fold(SubsetMask::EMPTY, |acc, b| acc.union(partition[b]))
        })
        .collect();
    members.sort_by(|a, b| canonical_cmp(*a, *b));
    let mut atoms = partition.to_vec();
    atoms.sort_by(|a, b| canonical_cmp(*a, *b));
    Ok(NeighbourhoodFamily {
        universe: u.clone(),
        members,
        atoms: Some(atoms),
    })
}

/// Validates an arbitrary family. Atoms are populated iff the members are
/// closed under union and complement and contain the empty set.
pub fn validate_family(u: &Universe, members: &[SubsetMask]) -> Result<NeighbourhoodFamily> {
    if members.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut sorted = Vec::with_capacity(members.len());
    for &m in members {
        sorted.push(u.check(m)?);
    }
    sorted.sort_by(|a, b| canonical_cmp(*a, *b));
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateMember(w[0]));
    }

    let mut family = NeighbourhoodFamily {
        universe: u.clone(),
        members: sorted,
        atoms: None,
    };
    if is_closed(&family) {
        let nonempty: Vec<SubsetMask> = family
            .members
            .iter()
            .copied()
            .filter(|m| !m.is_empty())
            .collect();
        let atoms = nonempty
            .iter()
            .copied()
            .filter(|&a| !nonempty.iter().any(|&b| b != a && b.is_subset_of(a)))
            .collect();
        family.atoms = Some(atoms);
    }
    Ok(family)
}

fn is_closed(f: &NeighbourhoodFamily) -> bool {
    let u = f.universe();
    if !f.contains(SubsetMask::EMPTY) || !f.contains(u.full()) {
        return false;
    }
    let ms = f.members();
    ms.iter().all(|&a| f.contains(u.complement(a)))
        && ms
            .iter()
            .enumerate()
            .all(|(i, &a)| ms[i + 1..].iter().all(|&b| f.contains(a.union(b))))
}
