//! Deterministic enumeration of k-multisets and k-subsets, with ranking.
//!
//! Multisets come out in ascending lexicographic order of their multiplicity
//! vectors (so `{m,…,m}` is first and `{1,…,1}` last). Subsets come out in the
//! usual lexicographic order of their sorted element lists.

use crate::count::{binomial_usize, multichoose_usize};
use crate::error::{Error, Result};
use crate::multiset::{KSet, Multiset};

/// Iterator over all `k`-multisets of `[m]`.
pub struct Multisets {
    next: Option<Vec<u32>>,
}

impl Iterator for Multisets {
    type Item = Multiset;

    fn next(&mut self) -> Option<Multiset> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(Multiset::from_counts(current))
    }
}

fn successor(counts: &[u32]) -> Option<Vec<u32>> {
    let m = counts.len();
    if m < 2 {
        return None;
    }
    // The last index i < m - 1 with a nonzero tail can be incremented; the
    // remaining tail mass collapses into the final coordinate.
    let mut tail = counts[m - 1];
    for i in (0..m - 1).rev() {
        if tail > 0 {
            let mut next = counts.to_vec();
            next[i] += 1;
            for c in next.iter_mut().skip(i + 1) {
                *c = 0;
            }
            next[m - 1] = tail - 1;
            return Some(next);
        }
        tail += counts[i];
    }
    None
}

pub fn multisets(m: usize, k: usize) -> Multisets {
    if m == 0 {
        return Multisets {
            next: (k == 0).then(Vec::new),
        };
    }
    let mut first = vec![0u32; m];
    first[m - 1] = k as u32;
    Multisets { next: Some(first) }
}

pub fn enumerate_k_multisets(m: usize, k: usize) -> Vec<Multiset> {
    multisets(m, k).collect()
}

/// Iterator over all `k`-subsets of `[n]`.
pub struct Subsets {
    n: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for Subsets {
    type Item = KSet;

    fn next(&mut self) -> Option<KSet> {
        let current = self.next.take()?;
        let k = current.len();
        let mut succ = current.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if succ[i] < self.n - (k - 1 - i) {
                succ[i] += 1;
                for j in i + 1..k {
                    succ[j] = succ[j - 1] + 1;
                }
                self.next = Some(succ);
                break;
            }
        }
        Some(KSet::from_sorted_unchecked(self.n, current))
    }
}

pub fn subsets(n: usize, k: usize) -> Subsets {
    Subsets {
        n,
        next: (k <= n).then(|| (1..=k).collect()),
    }
}

pub fn enumerate_k_subsets(n: usize, k: usize) -> Vec<KSet> {
    subsets(n, k).collect()
}

/// Rank of a multiset in the enumeration order of `multisets(m, k)`.
pub fn rank_multiset(a: &Multiset) -> Result<usize> {
    let m = a.ground_size();
    let mut remaining = a.cardinality();
    let mut rank = 0usize;
    for (i, &c) in a.counts().iter().enumerate() {
        let slots = m - i - 1;
        if slots == 0 {
            break;
        }
        for v in 0..c as usize {
            rank += multichoose_usize(slots, remaining - v)?;
        }
        remaining -= c as usize;
    }
    Ok(rank)
}

/// Inverse of [`rank_multiset`].
pub fn unrank_multiset(m: usize, k: usize, rank: usize) -> Result<Multiset> {
    let size = multichoose_usize(m, k)?;
    if rank >= size {
        return Err(Error::RankOutOfRange { rank, size });
    }
    let mut counts = vec![0u32; m];
    let mut remaining = k;
    let mut rank = rank;
    for i in 0..m {
        let slots = m - i - 1;
        if slots == 0 {
            counts[i] = remaining as u32;
            break;
        }
        let mut v = 0usize;
        loop {
            let block = multichoose_usize(slots, remaining - v)?;
            if rank < block {
                break;
            }
            rank -= block;
            v += 1;
        }
        counts[i] = v as u32;
        remaining -= v;
    }
    Ok(Multiset::from_counts(counts))
}

/// Rank of a k-subset in the enumeration order of `subsets(n, k)`.
pub fn rank_kset(s: &KSet) -> Result<usize> {
    rank_combination(s.ground_size(), s.members())
}

/// Lexicographic rank of a strictly increasing 1-based combination of `[n]`.
pub(crate) fn rank_combination(n: usize, members: &[usize]) -> Result<usize> {
    let k = members.len();
    let mut rank = 0usize;
    let mut start = 1usize;
    for (idx, &e) in members.iter().enumerate() {
        for skipped in start..e {
            rank += binomial_usize(n - skipped, k - idx - 1)?;
        }
        start = e + 1;
    }
    Ok(rank)
}

pub fn unrank_kset(n: usize, k: usize, rank: usize) -> Result<KSet> {
    Ok(KSet::from_sorted_unchecked(n, unrank_combination(n, k, rank)?))
}

pub(crate) fn unrank_combination(n: usize, k: usize, rank: usize) -> Result<Vec<usize>> {
    let size = if k <= n { binomial_usize(n, k)? } else { 0 };
    if rank >= size {
        return Err(Error::RankOutOfRange { rank, size });
    }
    let mut rank = rank;
    let mut out = Vec::with_capacity(k);
    let mut candidate = 1usize;
    for idx in 0..k {
        loop {
            let block = binomial_usize(n - candidate, k - idx - 1)?;
            if rank < block {
                out.push(candidate);
                candidate += 1;
                break;
            }
            rank -= block;
            candidate += 1;
        }
    }
    Ok(out)
}

/// Every k-multiset of `[m]`, in enumeration order.
pub fn multiset_universe(m: usize, k: usize) -> Vec<Multiset> {
    enumerate_k_multisets(m, k)
}

/// Every k-subset of `[n]` as an indicator multiset, in subset enumeration order.
pub fn set_universe(n: usize, k: usize) -> Vec<Multiset> {
    subsets(n, k).map(|s| s.to_multiset()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::multichoose;
    use std::collections::BTreeSet;

    #[test]
    fn multiset_counts_and_examples() {
        assert_eq!(enumerate_k_multisets(3, 2).len(), 6);
        assert_eq!(enumerate_k_multisets(5, 4).len(), 70);
        let single = enumerate_k_multisets(1, 3);
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].elements(), vec![1, 1, 1]);
        assert_eq!(enumerate_k_multisets(4, 0), vec![Multiset::empty(4)]);
    }

    #[test]
    fn multiset_count_grid() {
        for m in 1..=7usize {
            for k in 0..=6usize {
                let all = enumerate_k_multisets(m, k);
                let expect: u64 = multichoose(m as u64, k as u64).unwrap();
                assert_eq!(all.len() as u64, expect, "m={m} k={k}");
                assert!(all.windows(2).all(|w| w[0] < w[1]), "order m={m} k={k}");
                assert!(all.iter().all(|a| a.cardinality() == k));
            }
        }
    }

    #[test]
    fn multiset_enumeration_matches_brute_force() {
        // Brute force: every vector in [0,k]^m with the right sum, sorted.
        let (m, k) = (4usize, 3usize);
        let mut brute = BTreeSet::new();
        let mut v = vec![0u32; m];
        loop {
            if v.iter().sum::<u32>() as usize == k {
                brute.insert(v.clone());
            }
            let mut i = 0;
            while i < m && v[i] == k as u32 {
                v[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
            v[i] += 1;
        }
        let ours: Vec<Vec<u32>> = multisets(m, k).map(|a| a.counts().to_vec()).collect();
        assert_eq!(ours, brute.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn subset_examples() {
        assert_eq!(enumerate_k_subsets(4, 2).len(), 6);
        let full = enumerate_k_subsets(5, 5);
        assert_eq!(full.len(), 1);
        assert_eq!(full[0].members(), &[1, 2, 3, 4, 5]);
        assert_eq!(enumerate_k_subsets(8, 4).len(), 70);
        assert!(enumerate_k_subsets(3, 4).is_empty());
        assert_eq!(enumerate_k_subsets(3, 0).len(), 1);
        let order: Vec<Vec<usize>> = subsets(4, 2).map(|s| s.members().to_vec()).collect();
        assert_eq!(
            order,
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]
        );
    }

    #[test]
    fn multiset_rank_round_trip() {
        for m in 1..=5 {
            for k in 0..=4 {
                for (r, a) in multisets(m, k).enumerate() {
                    assert_eq!(rank_multiset(&a).unwrap(), r);
                    assert_eq!(unrank_multiset(m, k, r).unwrap(), a);
                }
            }
        }
        let all = enumerate_k_multisets(4, 3);
        assert_eq!(unrank_multiset(4, 3, 0).unwrap(), all[0]);
        assert_eq!(rank_multiset(all.last().unwrap()).unwrap(), all.len() - 1);
        assert!(matches!(
            unrank_multiset(4, 3, 20),
            Err(Error::RankOutOfRange { rank: 20, size: 20 })
        ));
    }

    #[test]
    fn kset_rank_round_trip() {
        for n in 0..=7 {
            for k in 0..=n {
                for (r, s) in subsets(n, k).enumerate() {
                    assert_eq!(rank_kset(&s).unwrap(), r);
                    assert_eq!(unrank_kset(n, k, r).unwrap(), s);
                }
            }
        }
        assert!(unrank_kset(5, 2, 10).is_err());
    }
}
