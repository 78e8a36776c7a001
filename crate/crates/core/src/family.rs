//! Families of k-multisets (or k-sets) and the pairwise predicates on them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiset::Multiset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Set,
    Multiset,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Set => "set",
            Kind::Multiset => "multiset",
        })
    }
}

/// A duplicate-free family of k-members over a ground set of size `ground`.
///
/// Set families store their members as 0/1 multiplicity vectors, so every
/// predicate below applies to both kinds unchanged. Members are kept sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    ground: usize,
    k: usize,
    kind: Kind,
    members: Vec<Multiset>,
}

impl Family {
    pub fn new(ground: usize, k: usize, kind: Kind, mut members: Vec<Multiset>) -> Result<Self> {
        for a in &members {
            if a.ground_size() != ground {
                return Err(Error::contract(format!(
                    "member {a} has ground size {} but the family uses {ground}",
                    a.ground_size()
                )));
            }
            if a.cardinality() != k {
                return Err(Error::contract(format!(
                    "member {a} has cardinality {} but the family uses k={k}",
                    a.cardinality()
                )));
            }
            if kind == Kind::Set && !a.is_set() {
                return Err(Error::contract(format!("member {a} is not a set")));
            }
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::contract(format!("duplicate member {}", w[0])));
        }
        Ok(Family {
            ground,
            k,
            kind,
            members,
        })
    }

    pub(crate) fn from_sorted_unchecked(ground: usize, k: usize, kind: Kind, members: Vec<Multiset>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Family {
            ground,
            k,
            kind,
            members,
        }
    }

    pub fn empty(ground: usize, k: usize, kind: Kind) -> Self {
        Family {
            ground,
            k,
            kind,
            members: Vec::new(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn members(&self) -> &[Multiset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: &Multiset) -> bool {
        self.members.binary_search(a).is_ok()
    }

    pub fn into_members(self) -> Vec<Multiset> {
        self.members
    }

    fn all_pairs(&self, pred: impl Fn(&Multiset, &Multiset) -> bool) -> bool {
        self.members
            .iter()
            .enumerate()
            .all(|(i, a)| self.members[i + 1..].iter().all(|b| pred(a, b)))
    }

    /// Every pair of distinct members shares at least `t` elements, with multiplicity.
    pub fn is_t_intersecting(&self, t: usize) -> bool {
        self.all_pairs(|a, b| a.intersection_size(b) >= t)
    }

    pub fn is_intersecting(&self) -> bool {
        self.is_t_intersecting(1)
    }

    /// Every pair of distinct members has supports sharing at least `t` elements.
    pub fn is_support_t_intersecting(&self, t: usize) -> bool {
        self.all_pairs(|a, b| a.support_overlap(b) >= t)
    }

    /// Element-wise minimum over all members.
    pub fn common_intersection(&self) -> Result<Multiset> {
        let (first, rest) = self
            .members
            .split_first()
            .ok_or_else(|| Error::contract("common intersection of an empty family"))?;
        Ok(rest.iter().fold(first.clone(), |acc, a| acc.meet(a)))
    }

    /// No `s + 1` members are pairwise disjoint.
    pub fn has_property_p_s1(&self, s: usize) -> bool {
        fn extend(members: &[Multiset], chain: &mut Vec<usize>, from: usize, want: usize) -> bool {
            if chain.len() == want {
                return true;
            }
            for idx in from..members.len() {
                if chain.iter().all(|&c| members[c].intersection_size(&members[idx]) == 0) {
                    chain.push(idx);
                    if extend(members, chain, idx + 1, want) {
                        return true;
                    }
                    chain.pop();
                }
            }
            false
        }
        !extend(&self.members, &mut Vec::new(), 0, s + 1)
    }

    /// Adds a member, keeping order; returns false if it was already present.
    pub fn insert(&mut self, a: Multiset) -> Result<bool> {
        if a.ground_size() != self.ground || a.cardinality() != self.k {
            return Err(Error::contract(format!("{a} does not fit the family's (m, k)")));
        }
        match self.members.binary_search(&a) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.members.insert(pos, a);
                Ok(true)
            }
        }
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Family(m={}, k={}, kind={}, {:?})",
            self.ground, self.k, self.kind, self.members
        )
    }
}
