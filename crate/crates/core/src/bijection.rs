//! Support-preserving bijection between k-subsets of `[m + k - 1]` and k-multisets of `[m]`.
//!
//! A k-set `B` splits into its low part `S = B ∩ [m]` (size `j`) and an
//! overflow part inside the window `[m + 1, m + k - 1]` of size `k - 1`. Both
//! sides of a support class `S` have `C(k - 1, k - j)` members: overflow
//! `(k - j)`-subsets of the window on one side, k-multisets with support exactly
//! `S` on the other. Within a class the map matches lexicographic ranks, so the
//! image is computed directly and the universe never has to be materialized.

use crate::count::binomial;
use crate::enumerate::{rank_combination, rank_multiset, unrank_combination, unrank_multiset};
use crate::error::{Error, Result};
use crate::multiset::{KSet, Multiset};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BijectionContext {
    m: usize,
    k: usize,
    n: usize,
}

impl BijectionContext {
    pub fn new(m: usize, k: usize) -> Result<Self> {
        if m == 0 || k == 0 {
            return Err(Error::contract(format!("bijection needs m, k >= 1 (m={m}, k={k})")));
        }
        Ok(BijectionContext { m, k, n: m + k - 1 })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn forward(&self, b: &KSet) -> Result<Multiset> {
        if b.ground_size() != self.n || b.len() != self.k {
            return Err(Error::contract(format!(
                "forward expects a {}-subset of [{}], got {b} over [{}]",
                self.k,
                self.n,
                b.ground_size()
            )));
        }
        let low: Vec<usize> = b.members().iter().copied().filter(|&e| e <= self.m).collect();
        let window: Vec<usize> = b
            .members()
            .iter()
            .filter(|&&e| e > self.m)
            .map(|&e| e - self.m)
            .collect();
        let j = low.len();
        if j == 0 {
            return Err(Error::Internal(format!("{b} misses [{}]", self.m)));
        }
        let r = rank_combination(self.k - 1, &window)?;
        let extras = unrank_multiset(j, self.k - j, r)?;
        let mut counts = vec![0u32; self.m];
        for (&e, &x) in low.iter().zip(extras.counts()) {
            counts[e - 1] = 1 + x;
        }
        Ok(Multiset::from_counts(counts))
    }

    pub fn inverse(&self, a: &Multiset) -> Result<KSet> {
        if a.ground_size() != self.m || a.cardinality() != self.k {
            return Err(Error::contract(format!(
                "inverse expects a {}-multiset of [{}], got {a} over [{}]",
                self.k,
                self.m,
                a.ground_size()
            )));
        }
        let low = a.support_elements();
        let j = low.len();
        let extras = Multiset::from_counts(low.iter().map(|&e| a.counts()[e - 1] - 1).collect());
        let r = rank_multiset(&extras)?;
        let window = unrank_combination(self.k - 1, self.k - j, r)?;
        let mut members = low;
        members.extend(window.into_iter().map(|w| w + self.m));
        Ok(KSet::from_sorted_unchecked(self.n, members))
    }

    /// Number of k-sets `B` with `B ∩ [m] = S` for a given `S` of size `j`;
    /// equal to the number of k-multisets with support exactly `S`.
    pub fn class_size(&self, j: usize) -> Result<u64> {
        if j == 0 || j > self.k.min(self.m) {
            return Err(Error::contract(format!(
                "support size {j} outside [1, {}]",
                self.k.min(self.m)
            )));
        }
        binomial((self.k - 1) as u64, (self.k - j) as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::multichoose;
    use crate::enumerate::{enumerate_k_multisets, subsets};
    use std::collections::{BTreeMap, HashSet};

    fn set(n: usize, e: &[usize]) -> KSet {
        KSet::new(n, e.to_vec()).unwrap()
    }

    fn ms(m: usize, e: &[usize]) -> Multiset {
        Multiset::from_elements(m, e).unwrap()
    }

    #[test]
    fn forward_examples() {
        let ctx = BijectionContext::new(3, 2).unwrap();
        assert_eq!(ctx.n(), 4);
        assert_eq!(ctx.forward(&set(4, &[1, 2])).unwrap(), ms(3, &[1, 2]));
        assert_eq!(ctx.forward(&set(4, &[1, 4])).unwrap(), ms(3, &[1, 1]));
        let ctx = BijectionContext::new(5, 3).unwrap();
        assert_eq!(ctx.forward(&set(7, &[1, 3, 5])).unwrap(), ms(5, &[1, 3, 5]));
    }

    #[test]
    fn inverse_examples() {
        let ctx = BijectionContext::new(3, 2).unwrap();
        assert_eq!(ctx.inverse(&ms(3, &[2, 2])).unwrap(), set(4, &[2, 4]));
        let ctx = BijectionContext::new(6, 3).unwrap();
        assert_eq!(ctx.inverse(&ms(6, &[2, 4, 6])).unwrap(), set(8, &[2, 4, 6]));
    }

    #[test]
    fn contract_errors() {
        let ctx = BijectionContext::new(3, 2).unwrap();
        assert!(ctx.forward(&set(4, &[1])).is_err());
        assert!(ctx.forward(&set(5, &[1, 2])).is_err());
        assert!(ctx.inverse(&ms(3, &[1, 2, 3])).is_err());
        assert!(ctx.class_size(0).is_err());
        assert!(BijectionContext::new(0, 2).is_err());
    }

    #[test]
    fn class_size_examples() {
        let ctx = BijectionContext::new(6, 4).unwrap();
        assert_eq!(ctx.class_size(4).unwrap(), 1);
        assert_eq!(ctx.class_size(1).unwrap(), 1);
        assert_eq!(ctx.class_size(2).unwrap(), 3);
    }

    #[test]
    fn exhaustive_round_trip_and_support() {
        for m in 1..=6 {
            for k in 1..=6 {
                let ctx = BijectionContext::new(m, k).unwrap();
                let mut images = HashSet::new();
                let mut count = 0u64;
                for b in subsets(ctx.n(), k) {
                    let a = ctx.forward(&b).unwrap();
                    assert_eq!(a.cardinality(), k);
                    let low: Vec<usize> = b.members().iter().copied().filter(|&e| e <= m).collect();
                    assert_eq!(a.support_elements(), low, "support of f({b})");
                    assert_eq!(ctx.inverse(&a).unwrap(), b);
                    assert!(images.insert(a));
                    count += 1;
                }
                let expect: u64 = multichoose(m as u64, k as u64).unwrap();
                assert_eq!(count, expect);
                for a in enumerate_k_multisets(m, k) {
                    assert_eq!(ctx.forward(&ctx.inverse(&a).unwrap()).unwrap(), a);
                }
            }
        }
    }

    #[test]
    fn class_counts_agree_on_both_sides() {
        for m in 1..=5 {
            for k in 1..=5 {
                let ctx = BijectionContext::new(m, k).unwrap();
                let mut set_side: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
                for b in subsets(ctx.n(), k) {
                    let low: Vec<usize> = b.members().iter().copied().filter(|&e| e <= m).collect();
                    *set_side.entry(low).or_default() += 1;
                }
                let mut ms_side: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
                for a in enumerate_k_multisets(m, k) {
                    *ms_side.entry(a.support_elements()).or_default() += 1;
                }
                assert_eq!(set_side, ms_side);
                for (s, c) in &set_side {
                    assert_eq!(ctx.class_size(s.len()).unwrap(), *c);
                }
            }
        }
    }

    #[test]
    fn homomorphism_properties() {
        for m in 1..=5 {
            for k in 1..=5 {
                let ctx = BijectionContext::new(m, k).unwrap();
                let sets: Vec<KSet> = subsets(ctx.n(), k).collect();
                let images: Vec<Multiset> = sets.iter().map(|b| ctx.forward(b).unwrap()).collect();
                for i in 0..sets.len() {
                    for j in i + 1..sets.len() {
                        let overlap = sets[i].intersection_size(&sets[j]);
                        if overlap == 0 {
                            assert_eq!(images[i].intersection_size(&images[j]), 0);
                        }
                        for t in 1..=k {
                            if overlap < t {
                                assert!(images[i].support_overlap(&images[j]) < t);
                            }
                        }
                    }
                }
            }
        }
    }
}
