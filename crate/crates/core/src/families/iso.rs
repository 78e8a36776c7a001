use itertools::Itertools;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::multiset::Multiset;

/// Largest ground set canonicalized by exhaustive relabeling.
pub const CANONICAL_MAX_GROUND: usize = 9;

fn check_permutation(perm: &[usize], m: usize) -> Result<()> {
    if perm.len() != m {
        return Err(Error::contract(format!(
            "permutation has {} entries, expected {m}",
            perm.len()
        )));
    }
    let mut seen = vec![false; m];
    for &p in perm {
        if p == 0 || p > m || seen[p - 1] {
            return Err(Error::contract(format!("{perm:?} is not a permutation of [{m}]")));
        }
        seen[p - 1] = true;
    }
    Ok(())
}

/// Relabels every member, sending element `i` to `perm[i - 1]`.
pub fn apply_permutation(family: &Family, perm: &[usize]) -> Result<Family> {
    check_permutation(perm, family.ground_size())?;
    Family::new(
        family.ground_size(),
        family.k(),
        family.kind(),
        family.members().iter().map(|a| a.relabel(perm)).collect(),
    )
}

/// Lexicographically smallest sorted member list over all relabelings of the ground set.
pub fn canonical_form(family: &Family) -> Result<Family> {
    let m = family.ground_size();
    if m > CANONICAL_MAX_GROUND {
        return Err(Error::ScaleExceeded(format!(
            "canonical form needs m <= {CANONICAL_MAX_GROUND}, got {m}"
        )));
    }
    let mut best: Option<Vec<Multiset>> = None;
    let mut scratch: Vec<Multiset> = Vec::with_capacity(family.len());
    for perm in (1..=m).permutations(m) {
        scratch.clear();
        scratch.extend(family.members().iter().map(|a| a.relabel(&perm)));
        scratch.sort_unstable();
        if best.as_ref().map_or(true, |b| scratch < *b) {
            best = Some(scratch.clone());
        }
    }
    let members = best.unwrap_or_default();
    Ok(Family::from_sorted_unchecked(m, family.k(), family.kind(), members))
}

pub fn is_isomorphic(a: &Family, b: &Family) -> Result<bool> {
    if a.ground_size() != b.ground_size() || a.k() != b.k() || a.kind() != b.kind() || a.len() != b.len() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}
