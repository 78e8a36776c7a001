//! Multisets over `[m]` stored as dense multiplicity vectors, and plain k-sets.

use std::fmt;

use crate::error::{Error, Result};

/// A multiset over the ground set `[m]`.
///
/// `counts[i]` is the multiplicity of element `i + 1`. The derived ordering is
/// lexicographic on the multiplicity vector, which is the canonical member order
/// used by [`crate::Family`] and the enumeration routines.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset {
    counts: Vec<u32>,
}

impl Multiset {
    pub fn from_counts(counts: Vec<u32>) -> Self {
        Multiset { counts }
    }

    pub fn empty(m: usize) -> Self {
        Multiset { counts: vec![0; m] }
    }

    /// `c` copies of every element of `[m]`.
    pub fn uniform(m: usize, c: u32) -> Self {
        Multiset { counts: vec![c; m] }
    }

    /// The set `[m]` viewed as a multiset.
    pub fn all_ones(m: usize) -> Self {
        Self::uniform(m, 1)
    }

    /// Builds a multiset from a list of 1-based elements; repeats add multiplicity.
    pub fn from_elements(m: usize, elements: &[usize]) -> Result<Self> {
        let mut counts = vec![0u32; m];
        for &e in elements {
            if e == 0 || e > m {
                return Err(Error::OutOfRange { element: e, ground: m });
            }
            counts[e - 1] += 1;
        }
        Ok(Multiset { counts })
    }

    pub fn ground_size(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn multiplicity(&self, element: usize) -> Result<u32> {
        if element == 0 || element > self.counts.len() {
            return Err(Error::OutOfRange {
                element,
                ground: self.counts.len(),
            });
        }
        Ok(self.counts[element - 1])
    }

    pub fn cardinality(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    fn same_ground(&self, other: &Multiset) -> Result<()> {
        if self.ground_size() != other.ground_size() {
            return Err(Error::contract(format!(
                "ground sizes differ: {} vs {}",
                self.ground_size(),
                other.ground_size()
            )));
        }
        Ok(())
    }

    /// Element-wise minimum of multiplicities.
    pub fn intersect(&self, other: &Multiset) -> Result<Multiset> {
        self.same_ground(other)?;
        Ok(self.meet(other))
    }

    pub(crate) fn meet(&self, other: &Multiset) -> Multiset {
        debug_assert_eq!(self.ground_size(), other.ground_size());
        Multiset {
            counts: self.counts.iter().zip(&other.counts).map(|(&a, &b)| a.min(b)).collect(),
        }
    }

    /// `|A ∩ B|` counted with multiplicity. Ground sizes must agree.
    pub fn intersection_size(&self, other: &Multiset) -> usize {
        debug_assert_eq!(self.ground_size(), other.ground_size());
        self.counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| a.min(b) as usize)
            .sum()
    }

    /// `|A ∩ B ∩ T|` counted with multiplicity.
    pub fn intersection_size_within(&self, other: &Multiset, within: &Multiset) -> usize {
        self.counts
            .iter()
            .zip(&other.counts)
            .zip(&within.counts)
            .map(|((&a, &b), &c)| a.min(b).min(c) as usize)
            .sum()
    }

    /// Number of elements in both supports.
    pub fn support_overlap(&self, other: &Multiset) -> usize {
        self.counts
            .iter()
            .zip(&other.counts)
            .filter(|(&a, &b)| a > 0 && b > 0)
            .count()
    }

    pub fn support(&self) -> KSet {
        KSet {
            n: self.ground_size(),
            members: self.support_elements(),
        }
    }

    pub fn support_elements(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn support_size(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    pub fn contains_element(&self, element: usize) -> bool {
        element >= 1 && element <= self.counts.len() && self.counts[element - 1] > 0
    }

    /// True when `other` is a sub-multiset of `self`.
    pub fn contains(&self, other: &Multiset) -> bool {
        self.ground_size() == other.ground_size() && self.counts.iter().zip(&other.counts).all(|(&a, &b)| a >= b)
    }

    /// Non-decreasing list of elements, repeated by multiplicity.
    pub fn elements(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cardinality());
        for (i, &c) in self.counts.iter().enumerate() {
            out.extend(std::iter::repeat(i + 1).take(c as usize));
        }
        out
    }

    /// True when every multiplicity is 0 or 1.
    pub fn is_set(&self) -> bool {
        self.counts.iter().all(|&c| c <= 1)
    }

    /// Relabels element `i` as `perm[i - 1]` (both 1-based).
    pub(crate) fn relabel(&self, perm: &[usize]) -> Multiset {
        let mut counts = vec![0u32; self.counts.len()];
        for (i, &c) in self.counts.iter().enumerate() {
            counts[perm[i] - 1] = c;
        }
        Multiset { counts }
    }
}

impl fmt::Debug for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, e) in self.elements().iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// A set of distinct elements of `[n]`, kept strictly ascending.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct KSet {
    n: usize,
    members: Vec<usize>,
}

impl KSet {
    pub fn new(n: usize, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        for w in members.windows(2) {
            if w[0] == w[1] {
                return Err(Error::contract(format!("element {} repeated in a set", w[0])));
            }
        }
        if let Some(&bad) = members.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::OutOfRange {
                element: bad,
                ground: n,
            });
        }
        Ok(KSet { n, members })
    }

    pub(crate) fn from_sorted_unchecked(n: usize, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        KSet { n, members }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, element: usize) -> bool {
        self.members.binary_search(&element).is_ok()
    }

    pub fn intersection_size(&self, other: &KSet) -> usize {
        self.members.iter().filter(|e| other.contains(**e)).count()
    }

    /// Indicator multiset over `[n]`.
    pub fn to_multiset(&self) -> Multiset {
        let mut counts = vec![0u32; self.n];
        for &e in &self.members {
            counts[e - 1] = 1;
        }
        Multiset::from_counts(counts)
    }

    /// Inverse of [`KSet::to_multiset`]; fails if some multiplicity exceeds one.
    pub fn from_multiset(ms: &Multiset) -> Result<Self> {
        if !ms.is_set() {
            return Err(Error::contract(format!("{ms} has repeated elements")));
        }
        Ok(KSet {
            n: ms.ground_size(),
            members: ms.support_elements(),
        })
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, e) in self.members.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(m: usize, e: &[usize]) -> Multiset {
        Multiset::from_elements(m, e).unwrap()
    }

    #[test]
    fn multiplicity_examples() {
        let a = ms(3, &[1, 1, 3]);
        assert_eq!(a.multiplicity(1).unwrap(), 2);
        assert_eq!(a.multiplicity(2).unwrap(), 0);
        assert_eq!(ms(4, &[1, 2, 2, 2]).multiplicity(2).unwrap(), 3);
        assert!(matches!(
            a.multiplicity(4),
            Err(Error::OutOfRange { element: 4, ground: 3 })
        ));
        assert!(a.multiplicity(0).is_err());
    }

    #[test]
    fn cardinality_examples() {
        assert_eq!(Multiset::empty(3).cardinality(), 0);
        assert_eq!(ms(3, &[1, 1, 3]).cardinality(), 3);
        assert_eq!(ms(5, &[2, 2, 2, 2]).cardinality(), 4);
    }

    #[test]
    fn intersect_examples() {
        let a = ms(3, &[1, 1, 2]);
        let b = ms(3, &[1, 2, 2]);
        assert_eq!(a.intersect(&b).unwrap(), ms(3, &[1, 2]));
        assert_eq!(a.intersect(&a).unwrap(), a);
        let c = ms(4, &[1, 1, 1, 1]);
        let d = ms(4, &[2, 2, 2, 2]);
        assert!(c.intersect(&d).unwrap().is_empty());
        assert!(matches!(a.intersect(&c), Err(Error::Contract(_))));
    }

    #[test]
    fn support_examples() {
        assert_eq!(ms(3, &[1, 1, 3]).support().members(), &[1, 3]);
        assert!(Multiset::empty(3).support().is_empty());
        assert_eq!(ms(5, &[2, 2, 2, 2]).support().members(), &[2]);
        let a = ms(4, &[1, 1, 3]);
        assert_eq!(a.intersect(&Multiset::all_ones(4)).unwrap(), a.support().to_multiset());
    }

    #[test]
    fn from_elements_rejects_out_of_range() {
        assert!(Multiset::from_elements(3, &[0]).is_err());
        assert!(Multiset::from_elements(3, &[4]).is_err());
    }

    #[test]
    fn kset_validation() {
        assert!(KSet::new(4, vec![1, 1]).is_err());
        assert!(KSet::new(4, vec![5]).is_err());
        let s = KSet::new(5, vec![3, 1]).unwrap();
        assert_eq!(s.members(), &[1, 3]);
        assert_eq!(KSet::from_multiset(&s.to_multiset()).unwrap(), s);
        assert!(KSet::from_multiset(&ms(3, &[1, 1])).is_err());
    }

    #[test]
    fn display_lists_elements() {
        assert_eq!(ms(4, &[3, 1, 1]).to_string(), "{1,1,3}");
        assert_eq!(Multiset::empty(2).to_string(), "{}");
    }
}
