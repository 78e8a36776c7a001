use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::bitset::Bitset;
use crate::enumerate::{multiset_universe, set_universe};
use crate::error::{Error, Result};
use crate::family::{Family, Kind};
use crate::multiset::Multiset;

pub const DEFAULT_VERTEX_CAP: usize = 5000;

/// Which pairs of k-(multi)sets are joined by an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphKind {
    /// k-subsets of `[n]`, adjacent when disjoint.
    Kneser,
    /// k-subsets of `[n]`, adjacent when they share fewer than `t` elements.
    KneserT,
    /// k-multisets of `[m]`, adjacent when disjoint.
    Multiset,
    /// k-multisets of `[m]`, adjacent when `|A ∩ B| < t` with multiplicity.
    MultisetT,
    /// k-multisets of `[m]`, adjacent when the supports share fewer than `t` elements.
    MultisetSupportT,
}

impl GraphKind {
    pub const ALL: [GraphKind; 5] = [
        GraphKind::Kneser,
        GraphKind::KneserT,
        GraphKind::Multiset,
        GraphKind::MultisetT,
        GraphKind::MultisetSupportT,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Kneser => "kneser",
            GraphKind::KneserT => "kneser-t",
            GraphKind::Multiset => "multiset",
            GraphKind::MultisetT => "multiset-t",
            GraphKind::MultisetSupportT => "multiset-support-t",
        }
    }

    pub fn family_kind(self) -> Kind {
        match self {
            GraphKind::Kneser | GraphKind::KneserT => Kind::Set,
            _ => Kind::Multiset,
        }
    }

    fn uses_t(self) -> bool {
        matches!(
            self,
            GraphKind::KneserT | GraphKind::MultisetT | GraphKind::MultisetSupportT
        )
    }

    /// Effective intersection threshold: `t` for the t-kinds, 1 otherwise.
    pub fn threshold(self, t: usize) -> usize {
        if self.uses_t() {
            t
        } else {
            1
        }
    }

    /// True when the pair is *compatible*, i.e. not adjacent.
    pub fn compatible(self, a: &Multiset, b: &Multiset, t: usize) -> bool {
        match self {
            GraphKind::Kneser | GraphKind::Multiset => a.intersection_size(b) >= 1,
            GraphKind::KneserT | GraphKind::MultisetT => a.intersection_size(b) >= t,
            GraphKind::MultisetSupportT => a.support_overlap(b) >= t,
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GraphKind::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::contract(format!("unknown graph kind '{s}'")))
    }
}

/// A disjointness-type graph whose vertices are the enumerated universe.
#[derive(Clone, Debug)]
pub struct DisjointnessGraph {
    kind: GraphKind,
    ground: usize,
    k: usize,
    t: usize,
    universe: Vec<Multiset>,
    adjacency: Vec<Bitset>,
}

impl DisjointnessGraph {
    pub fn build(kind: GraphKind, ground: usize, k: usize, t: usize) -> Result<Self> {
        Self::build_with_cap(kind, ground, k, t, DEFAULT_VERTEX_CAP)
    }

    pub fn build_with_cap(kind: GraphKind, ground: usize, k: usize, t: usize, cap: usize) -> Result<Self> {
        if ground == 0 || k == 0 {
            return Err(Error::contract(format!(
                "need ground >= 1 and k >= 1 (got {ground}, {k})"
            )));
        }
        if kind.uses_t() && (t == 0 || t > k) {
            return Err(Error::contract(format!("need 1 <= t <= k (t={t}, k={k})")));
        }
        let size: u128 = match kind.family_kind() {
            Kind::Set => crate::count::binomial(ground as u64, k as u64)?,
            Kind::Multiset => crate::count::multichoose(ground as u64, k as u64)?,
        };
        if size > cap as u128 {
            return Err(Error::ScaleExceeded(format!(
                "{kind} graph on ground {ground}, k={k} has {size} vertices; cap is {cap}"
            )));
        }
        let universe = match kind.family_kind() {
            Kind::Set => set_universe(ground, k),
            Kind::Multiset => multiset_universe(ground, k),
        };
        let t = kind.threshold(t);
        let v = universe.len();
        let mut adjacency = vec![Bitset::new(v); v];
        for a in 0..v {
            for b in a + 1..v {
                if !kind.compatible(&universe[a], &universe[b], t) {
                    adjacency[a].insert(b);
                    adjacency[b].insert(a);
                }
            }
        }
        Ok(DisjointnessGraph {
            kind,
            ground,
            k,
            t,
            universe,
            adjacency,
        })
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn vertex_count(&self) -> usize {
        self.universe.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Bitset::count).sum::<usize>() / 2
    }

    pub fn vertex(&self, v: usize) -> &Multiset {
        &self.universe[v]
    }

    pub fn universe(&self) -> &[Multiset] {
        &self.universe
    }

    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.adjacency[v]
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(b)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count()
    }

    /// Family made of the given vertices.
    pub fn family_of(&self, vertices: &[usize]) -> Result<Family> {
        Family::new(
            self.ground,
            self.k,
            self.kind.family_kind(),
            vertices.iter().map(|&v| self.universe[v].clone()).collect(),
        )
    }

    /// Checks pairwise compatibility straight from the predicate, without the adjacency.
    pub fn is_independent_raw(&self, family: &Family) -> bool {
        let members = family.members();
        members
            .iter()
            .enumerate()
            .all(|(i, a)| members[i + 1..].iter().all(|b| self.kind.compatible(a, b, self.t)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn petersen() {
        let g = DisjointnessGraph::build(GraphKind::Kneser, 5, 2, 1).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn multiset_graph_sizes() {
        let g = DisjointnessGraph::build(GraphKind::Multiset, 4, 3, 1).unwrap();
        assert_eq!(g.vertex_count(), 20);
        for v in 0..20 {
            assert!(!g.is_adjacent(v, v));
        }
    }

    #[test]
    fn disjointness_equals_support_t1() {
        for (m, k) in [(3, 2), (4, 3), (5, 3), (3, 4)] {
            let a = DisjointnessGraph::build(GraphKind::Multiset, m, k, 1).unwrap();
            let b = DisjointnessGraph::build(GraphKind::MultisetSupportT, m, k, 1).unwrap();
            for v in 0..a.vertex_count() {
                assert_eq!(a.neighbors(v), b.neighbors(v));
            }
        }
    }

    #[test]
    fn cap_and_contract_errors() {
        assert!(matches!(
            DisjointnessGraph::build_with_cap(GraphKind::Multiset, 10, 5, 1, 100),
            Err(Error::ScaleExceeded(_))
        ));
        assert!(DisjointnessGraph::build(GraphKind::KneserT, 6, 3, 4).is_err());
        assert!(DisjointnessGraph::build(GraphKind::Multiset, 0, 3, 1).is_err());
        assert_eq!(
            "multiset-support-t".parse::<GraphKind>().unwrap(),
            GraphKind::MultisetSupportT
        );
        assert!("nope".parse::<GraphKind>().is_err());
    }
}
