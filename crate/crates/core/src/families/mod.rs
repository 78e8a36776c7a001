//! Constructors for the named extremal families.
//!
//! Every constructor filters the enumerated universe with the defining
//! predicate, so its output is correct by construction and its size can be
//! checked against the closed forms in [`sizes`].

mod iso;
pub mod sizes;

use std::fmt;

pub use iso::{apply_permutation, canonical_form, is_isomorphic, CANONICAL_MAX_GROUND};

use crate::enumerate::{multisets, subsets};
use crate::error::{Error, Result};
use crate::family::{Family, Kind};
use crate::multiset::{KSet, Multiset};

fn filter_multisets(m: usize, k: usize, keep: impl Fn(&Multiset) -> bool) -> Family {
    let mut members: Vec<Multiset> = multisets(m, k).filter(|a| keep(a)).collect();
    members.sort_unstable();
    Family::from_sorted_unchecked(m, k, Kind::Multiset, members)
}

fn filter_sets(n: usize, k: usize, keep: impl Fn(&Multiset) -> bool) -> Family {
    let mut members: Vec<Multiset> = subsets(n, k).map(|s| s.to_multiset()).filter(|a| keep(a)).collect();
    members.sort_unstable();
    Family::from_sorted_unchecked(n, k, Kind::Set, members)
}

/// Number of elements of `[lo, hi]` in the support of `a`.
fn support_hits(a: &Multiset, lo: usize, hi: usize) -> usize {
    a.counts()[lo - 1..hi].iter().filter(|&&c| c > 0).count()
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Contract(msg()))
    }
}

/// All k-multisets of `[m]` containing `x`.
pub fn star(m: usize, k: usize, x: usize) -> Result<Family> {
    if x == 0 || x > m {
        return Err(Error::OutOfRange { element: x, ground: m });
    }
    Ok(filter_multisets(m, k, |a| a.contains_element(x)))
}

/// All k-multisets of `[m]` containing the multiset `core`.
pub fn fixed_multiset(m: usize, k: usize, core: &Multiset) -> Result<Family> {
    require(core.ground_size() == m, || format!("core {core} is not over [{m}]"))?;
    require(core.cardinality() <= k, || format!("core {core} is larger than k={k}"))?;
    Ok(filter_multisets(m, k, |a| a.contains(core)))
}

fn check_frankl(ground: usize, k: usize, t: usize, r: usize) -> Result<()> {
    require(t >= 1, || "t must be positive".into())?;
    require(t + 2 * r <= ground, || {
        format!(
            "family undefined: t + 2r = {} exceeds the ground size {ground}",
            t + 2 * r
        )
    })?;
    require(t + r <= k, || format!("t + r = {} exceeds k = {k}", t + r))
}

/// k-subsets of `[n]` meeting `[t + 2r]` in at least `t + r` elements.
pub fn frankl_set(n: usize, k: usize, t: usize, r: usize) -> Result<Family> {
    check_frankl(n, k, t, r)?;
    require(k <= n, || format!("k = {k} exceeds n = {n}"))?;
    Ok(filter_sets(n, k, |a| support_hits(a, 1, t + 2 * r) >= t + r))
}

/// k-multisets of `[m]` whose support meets `[t + 2r]` in at least `t + r` elements.
pub fn frankl_multiset(m: usize, k: usize, t: usize, r: usize) -> Result<Family> {
    check_frankl(m, k, t, r)?;
    Ok(filter_multisets(m, k, |a| support_hits(a, 1, t + 2 * r) >= t + r))
}

/// Members containing 1 and meeting `[2, k + 1]`, plus the set `[2, k + 1]` itself.
pub fn hm_multiset(m: usize, k: usize) -> Result<Family> {
    require(k >= 2 && m >= k + 1, || {
        format!("needs k >= 2 and m >= k + 1 (m={m}, k={k})")
    })?;
    Ok(filter_multisets(m, k, |a| {
        (a.contains_element(1) && support_hits(a, 2, k + 1) > 0) || is_interval(a, 2, k + 1)
    }))
}

pub fn hm_set(n: usize, k: usize) -> Result<Family> {
    require(k >= 2 && n >= k + 1, || {
        format!("needs k >= 2 and n >= k + 1 (n={n}, k={k})")
    })?;
    Ok(filter_sets(n, k, |a| {
        (a.contains_element(1) && support_hits(a, 2, k + 1) > 0) || is_interval(a, 2, k + 1)
    }))
}

/// True when `a` is exactly the set `[lo, hi]`.
fn is_interval(a: &Multiset, lo: usize, hi: usize) -> bool {
    a.counts()
        .iter()
        .enumerate()
        .all(|(i, &c)| if (lo..=hi).contains(&(i + 1)) { c == 1 } else { c == 0 })
}

/// True when `a` is the set `[k + 1] \ {i}` for some `i` in `[t]`.
fn is_punctured_block(a: &Multiset, k: usize, t: usize) -> bool {
    (1..=t).any(|i| {
        a.counts().iter().enumerate().all(|(idx, &c)| {
            let e = idx + 1;
            if e <= k + 1 && e != i {
                c == 1
            } else {
                c == 0
            }
        })
    })
}

fn hm_t_member(a: &Multiset, k: usize, t: usize) -> bool {
    let holds_prefix = (1..=t).all(|e| a.contains_element(e));
    (holds_prefix && support_hits(a, t + 1, k + 1) > 0) || is_punctured_block(a, k, t)
}

/// Members containing `[t]` and meeting `[t + 1, k + 1]`, plus the sets `[k + 1] \ {i}`, `i ∈ [t]`.
pub fn hm_t_multiset(m: usize, k: usize, t: usize) -> Result<Family> {
    require(1 < t && t < k, || format!("needs 1 < t < k (k={k}, t={t})"))?;
    require(m >= k + 1, || format!("needs m >= k + 1 (m={m}, k={k})"))?;
    Ok(filter_multisets(m, k, |a| hm_t_member(a, k, t)))
}

pub fn hm_t_set(n: usize, k: usize, t: usize) -> Result<Family> {
    require(1 < t && t < k, || format!("needs 1 < t < k (k={k}, t={t})"))?;
    require(n >= k + 1, || format!("needs n >= k + 1 (n={n}, k={k})"))?;
    Ok(filter_sets(n, k, |a| hm_t_member(a, k, t)))
}

/// All k-multisets of `[m]` whose support meets `anchor`.
pub fn hit_s(m: usize, k: usize, anchor: &KSet) -> Result<Family> {
    require(anchor.ground_size() <= m, || {
        format!("anchor {anchor} is not inside [{m}]")
    })?;
    if let Some(&bad) = anchor.members().iter().find(|&&e| e > m) {
        return Err(Error::OutOfRange {
            element: bad,
            ground: m,
        });
    }
    Ok(filter_multisets(m, k, |a| {
        anchor.members().iter().any(|&e| a.contains_element(e))
    }))
}

/// All k-subsets of `[n]` meeting `anchor`.
pub fn hit_set(n: usize, k: usize, anchor: &KSet) -> Result<Family> {
    require(k <= n, || format!("k = {k} exceeds n = {n}"))?;
    if let Some(&bad) = anchor.members().iter().find(|&&e| e > n) {
        return Err(Error::OutOfRange {
            element: bad,
            ground: n,
        });
    }
    Ok(filter_sets(n, k, |a| {
        anchor.members().iter().any(|&e| a.contains_element(e))
    }))
}

/// Greedily grows an intersecting family until nothing more can be added,
/// scanning the universe in enumeration order.
pub fn extend_to_maximal(family: &Family) -> Result<Family> {
    require(family.is_intersecting(), || "input family is not intersecting".into())?;
    let (m, k) = (family.ground_size(), family.k());
    if family.kind() == Kind::Multiset {
        require(m >= k + 1, || format!("needs m >= k + 1 (m={m}, k={k})"))?;
    }
    let universe: Vec<Multiset> = match family.kind() {
        Kind::Multiset => multisets(m, k).collect(),
        Kind::Set => subsets(m, k).map(|s| s.to_multiset()).collect(),
    };
    let mut members: Vec<Multiset> = family.members().to_vec();
    for candidate in universe {
        if family.contains(&candidate) {
            continue;
        }
        if members.iter().all(|a| a.intersection_size(&candidate) > 0) {
            members.push(candidate);
        }
    }
    Family::new(m, k, family.kind(), members)
}

/// A named family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Star { m: usize, k: usize, x: usize },
    FixedMultiset { m: usize, k: usize, core: Multiset },
    FranklSet { n: usize, k: usize, t: usize, r: usize },
    FranklMultiset { m: usize, k: usize, t: usize, r: usize },
    HmSet { n: usize, k: usize },
    HmMultiset { m: usize, k: usize },
    HmTSet { n: usize, k: usize, t: usize },
    HmTMultiset { m: usize, k: usize, t: usize },
    HitS { m: usize, k: usize, anchor: KSet },
    HajnalRothschild { n: usize, k: usize, t: usize, s: usize },
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Star { .. } => "star",
            FamilySpec::FixedMultiset { .. } => "fixed_multiset",
            FamilySpec::FranklSet { .. } => "frankl_set",
            FamilySpec::FranklMultiset { .. } => "frankl_multiset",
            FamilySpec::HmSet { .. } => "hm_set",
            FamilySpec::HmMultiset { .. } => "hm_multiset",
            FamilySpec::HmTSet { .. } => "hm_t_set",
            FamilySpec::HmTMultiset { .. } => "hm_t_multiset",
            FamilySpec::HitS { .. } => "hit_s",
            FamilySpec::HajnalRothschild { .. } => "hajnal_rothschild",
        }
    }

    pub fn build(&self) -> Result<Family> {
        match self {
            FamilySpec::Star { m, k, x } => star(*m, *k, *x),
            FamilySpec::FixedMultiset { m, k, core } => fixed_multiset(*m, *k, core),
            FamilySpec::FranklSet { n, k, t, r } => frankl_set(*n, *k, *t, *r),
            FamilySpec::FranklMultiset { m, k, t, r } => frankl_multiset(*m, *k, *t, *r),
            FamilySpec::HmSet { n, k } => hm_set(*n, *k),
            FamilySpec::HmMultiset { m, k } => hm_multiset(*m, *k),
            FamilySpec::HmTSet { n, k, t } => hm_t_set(*n, *k, *t),
            FamilySpec::HmTMultiset { m, k, t } => hm_t_multiset(*m, *k, *t),
            FamilySpec::HitS { m, k, anchor } => hit_s(*m, *k, anchor),
            FamilySpec::HajnalRothschild { n, k, t, s } => {
                // Only the t = 1 family (k-sets meeting [s]) is built; for t > 1
                // just the size formula is provided.
                if *t != 1 {
                    return Err(Error::contract(
                        "hajnal_rothschild families are only constructed for t = 1",
                    ));
                }
                require(*s <= *n, || format!("s = {s} exceeds n = {n}"))?;
                hit_set(*n, *k, &KSet::new(*n, (1..=*s).collect())?)
            }
        }
    }

    /// Closed-form size, when one exists.
    pub fn closed_form_size(&self) -> Result<Option<u64>> {
        Ok(Some(match self {
            FamilySpec::Star { m, k, .. } => sizes::star_size(*m, *k)?,
            FamilySpec::FixedMultiset { m, k, core } => sizes::fixed_multiset_size(*m, *k, core.cardinality())?,
            FamilySpec::FranklSet { n, k, t, r } => sizes::frankl_set_size(*n, *k, *t, *r)?,
            FamilySpec::FranklMultiset { m, k, t, r } => sizes::frankl_multiset_size(*m, *k, *t, *r)?,
            FamilySpec::HmSet { n, k } => sizes::hm_set_size(*n, *k)?,
            FamilySpec::HmMultiset { m, k } => sizes::hm_multiset_size(*m, *k)?,
            FamilySpec::HmTSet { .. } | FamilySpec::HmTMultiset { .. } => return Ok(None),
            FamilySpec::HitS { m, k, anchor } => sizes::hit_s_size(*m, *k, anchor.len())?,
            FamilySpec::HajnalRothschild { n, k, t, s } => sizes::hajnal_rothschild_size(*n, *k, *t, *s)?,
        }))
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Star { m, k, x } => write!(f, "star(m={m}, k={k}, x={x})"),
            FamilySpec::FixedMultiset { m, k, core } => write!(f, "fixed_multiset(m={m}, k={k}, T={core})"),
            FamilySpec::FranklSet { n, k, t, r } => write!(f, "frankl_set(n={n}, k={k}, t={t}, r={r})"),
            FamilySpec::FranklMultiset { m, k, t, r } => write!(f, "frankl_multiset(m={m}, k={k}, t={t}, r={r})"),
            FamilySpec::HmSet { n, k } => write!(f, "hm_set(n={n}, k={k})"),
            FamilySpec::HmMultiset { m, k } => write!(f, "hm_multiset(m={m}, k={k})"),
            FamilySpec::HmTSet { n, k, t } => write!(f, "hm_t_set(n={n}, k={k}, t={t})"),
            FamilySpec::HmTMultiset { m, k, t } => write!(f, "hm_t_multiset(m={m}, k={k}, t={t})"),
            FamilySpec::HitS { m, k, anchor } => write!(f, "hit_s(m={m}, k={k}, S={anchor})"),
            FamilySpec::HajnalRothschild { n, k, t, s } => write!(f, "hajnal_rothschild(n={n}, k={k}, t={t}, s={s})"),
        }
    }
}
