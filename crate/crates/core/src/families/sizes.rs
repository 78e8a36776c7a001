//! Closed-form sizes of the named families.

use crate::count::{binomial, checked_add, checked_mul, checked_sub, multichoose, ExactInt};
use crate::error::{Error, Result};

fn u(x: usize) -> u64 {
    x as u64
}

/// All k-multisets of `[m]` containing a fixed element.
pub fn star_size<T: ExactInt>(m: usize, k: usize) -> Result<T> {
    if k == 0 {
        return Ok(T::zero());
    }
    multichoose(u(m), u(k - 1))
}

/// All k-multisets of `[m]` containing a fixed multiset of cardinality `core`.
pub fn fixed_multiset_size<T: ExactInt>(m: usize, k: usize, core: usize) -> Result<T> {
    if core > k {
        return Ok(T::zero());
    }
    multichoose(u(m), u(k - core))
}

/// k-subsets of `[n]` meeting `[t + 2r]` in at least `t + r` elements.
pub fn frankl_set_size<T: ExactInt>(n: usize, k: usize, t: usize, r: usize) -> Result<T> {
    let window = t + 2 * r;
    if window > n {
        return Err(Error::contract(format!("t + 2r = {window} exceeds n = {n}")));
    }
    let mut total = T::zero();
    for j in (t + r)..=window.min(k) {
        let term = checked_mul(
            binomial::<T>(u(window), u(j))?,
            binomial::<T>(u(n - window), u(k - j))?,
            "frankl set size",
        )?;
        total = checked_add(total, term, "frankl set size")?;
    }
    Ok(total)
}

/// k-multisets of `[m]` whose support meets `[t + 2r]` in at least `t + r` elements.
///
/// A support meeting the window in exactly `J` (|J| = j) leaves `k - j` free
/// copies spread over `J` and the `m - t - 2r` elements outside the window.
pub fn frankl_multiset_size<T: ExactInt>(m: usize, k: usize, t: usize, r: usize) -> Result<T> {
    let window = t + 2 * r;
    if window > m {
        return Err(Error::contract(format!("t + 2r = {window} exceeds m = {m}")));
    }
    let mut total = T::zero();
    for j in (t + r)..=window.min(k) {
        let term = checked_mul(
            binomial::<T>(u(window), u(j))?,
            multichoose::<T>(u(j + m - window), u(k - j))?,
            "frankl multiset size",
        )?;
        total = checked_add(total, term, "frankl multiset size")?;
    }
    Ok(total)
}

/// `C(m+k-2, k-1) - C(m-2, k-1) + 1`.
pub fn hm_multiset_size<T: ExactInt>(m: usize, k: usize) -> Result<T> {
    if k < 2 || m < 2 {
        return Err(Error::contract(format!("needs k >= 2 and m >= 2 (m={m}, k={k})")));
    }
    let a = binomial::<T>(u(m + k - 2), u(k - 1))?;
    let b = binomial::<T>(u(m - 2), u(k - 1))?;
    checked_add(checked_sub(a, b, "hm multiset size")?, T::one(), "hm multiset size")
}

/// `C(n-1, k-1) - C(n-k-1, k-1) + 1`.
pub fn hm_set_size<T: ExactInt>(n: usize, k: usize) -> Result<T> {
    if k < 2 || n < k + 1 {
        return Err(Error::contract(format!("needs k >= 2 and n >= k + 1 (n={n}, k={k})")));
    }
    let a = binomial::<T>(u(n - 1), u(k - 1))?;
    let b = binomial::<T>(u(n - k - 1), u(k - 1))?;
    checked_add(checked_sub(a, b, "hm set size")?, T::one(), "hm set size")
}

/// k-multisets of `[m]` meeting a fixed `s`-set.
pub fn hit_s_size<T: ExactInt>(m: usize, k: usize, s: usize) -> Result<T> {
    if s > m {
        return Err(Error::contract(format!("s = {s} exceeds m = {m}")));
    }
    checked_sub(
        multichoose::<T>(u(m), u(k))?,
        multichoose::<T>(u(m - s), u(k))?,
        "hit_s size",
    )
}

/// k-subsets of `[n]` meeting a fixed `s`-set.
pub fn hit_set_size<T: ExactInt>(n: usize, k: usize, s: usize) -> Result<T> {
    if s > n {
        return Err(Error::contract(format!("s = {s} exceeds n = {n}")));
    }
    checked_sub(
        binomial::<T>(u(n), u(k))?,
        binomial::<T>(u(n - s), u(k))?,
        "hit set size",
    )
}

/// Inclusion–exclusion count of k-subsets of `[n]` containing at least one of
/// `s` fixed pairwise disjoint `t`-subsets.
pub fn hajnal_rothschild_size<T: ExactInt>(n: usize, k: usize, t: usize, s: usize) -> Result<T> {
    if s * t > n || t > k || t == 0 || s == 0 {
        return Err(Error::contract(format!(
            "needs 1 <= t <= k and s*t <= n (n={n}, k={k}, t={t}, s={s})"
        )));
    }
    let mut plus = T::zero();
    let mut minus = T::zero();
    for j in 1..=s {
        if j * t > k {
            break;
        }
        let term = checked_mul(
            binomial::<T>(u(s), u(j))?,
            binomial::<T>(u(n - j * t), u(k - j * t))?,
            "hajnal-rothschild size",
        )?;
        if j % 2 == 1 {
            plus = checked_add(plus, term, "hajnal-rothschild size")?;
        } else {
            minus = checked_add(minus, term, "hajnal-rothschild size")?;
        }
    }
    checked_sub(plus, minus, "hajnal-rothschild size")
}
