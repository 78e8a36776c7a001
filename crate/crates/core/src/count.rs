//! Exact counting: binomial coefficients and multiset coefficients.
//!
//! Every routine is generic over the integer type so callers pick the width:
//! `u64` for desk-scale work, `u128` for larger tables, and [`num_bigint::BigUint`]
//! when the value has no a-priori bound. Overflow is always reported, never wrapped.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, ToPrimitive};

use crate::error::{Error, Result};

/// Integer types usable for exact counting.
pub trait ExactInt:
    Integer + Clone + CheckedAdd + CheckedSub + CheckedMul + FromPrimitive + ToPrimitive + Debug + Display
{
}

impl<T> ExactInt for T where
    T: Integer + Clone + CheckedAdd + CheckedSub + CheckedMul + FromPrimitive + ToPrimitive + Debug + Display
{
}

fn lift<T: ExactInt>(x: u64, what: impl FnOnce() -> String) -> Result<T> {
    T::from_u64(x).ok_or_else(|| Error::Overflow(what()))
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial<T: ExactInt>(n: u64, k: u64) -> Result<T> {
    if k > n {
        return Ok(T::zero());
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        let num: T = lift(n - i, || format!("binomial({n}, {k})"))?;
        let den: T = lift(i + 1, || format!("binomial({n}, {k})"))?;
        // acc * num is divisible by den; cancel the common part first so the
        // product only overflows when the true intermediate value does.
        let g = acc.gcd(&den);
        let reduced = acc.div_floor(&g);
        let den = den.div_floor(&g);
        let factor = num.div_floor(&den);
        acc = reduced
            .checked_mul(&factor)
            .ok_or_else(|| Error::Overflow(format!("binomial({n}, {k})")))?;
    }
    Ok(acc)
}

/// Number of `k`-multisets over an `m`-element ground set, `C(m + k - 1, k)`.
pub fn multichoose<T: ExactInt>(m: u64, k: u64) -> Result<T> {
    if m == 0 {
        return Ok(if k == 0 { T::one() } else { T::zero() });
    }
    let top = m
        .checked_add(k)
        .ok_or_else(|| Error::Overflow(format!("multichoose({m}, {k})")))?
        - 1;
    binomial(top, k)
}

/// `binomial` narrowed to `usize`, for rank arithmetic.
pub(crate) fn binomial_usize(n: usize, k: usize) -> Result<usize> {
    let v: u64 = binomial(n as u64, k as u64)?;
    usize::try_from(v).map_err(|_| Error::Overflow(format!("binomial({n}, {k}) as usize")))
}

pub(crate) fn multichoose_usize(m: usize, k: usize) -> Result<usize> {
    let v: u64 = multichoose(m as u64, k as u64)?;
    usize::try_from(v).map_err(|_| Error::Overflow(format!("multichoose({m}, {k}) as usize")))
}

pub(crate) fn checked_sub<T: ExactInt>(a: T, b: T, what: &str) -> Result<T> {
    a.checked_sub(&b)
        .ok_or_else(|| Error::Overflow(format!("{what} (negative difference)")))
}

pub(crate) fn checked_add<T: ExactInt>(a: T, b: T, what: &str) -> Result<T> {
    a.checked_add(&b).ok_or_else(|| Error::Overflow(what.to_string()))
}

pub(crate) fn checked_mul<T: ExactInt>(a: T, b: T, what: &str) -> Result<T> {
    a.checked_mul(&b).ok_or_else(|| Error::Overflow(what.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn pascal(n: usize) -> Vec<Vec<u128>> {
        let mut rows = vec![vec![1u128]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![1u128; i + 1];
            for j in 1..i {
                row[j] = prev[j - 1] + prev[j];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn small_values() {
        assert_eq!(binomial::<u64>(7, 2).unwrap(), 21);
        assert_eq!(binomial::<u64>(5, 6).unwrap(), 0);
        assert_eq!(binomial::<u64>(0, 0).unwrap(), 1);
        assert_eq!(multichoose::<u64>(5, 4).unwrap(), 70);
        assert_eq!(multichoose::<u64>(9, 0).unwrap(), 1);
        assert_eq!(multichoose::<u64>(0, 0).unwrap(), 1);
        assert_eq!(multichoose::<u64>(0, 3).unwrap(), 0);
    }

    #[test]
    fn matches_pascal_triangle() {
        let rows = pascal(120);
        for n in 0..=120usize {
            for k in 0..=n {
                assert_eq!(binomial::<u128>(n as u64, k as u64).unwrap(), rows[n][k], "C({n},{k})");
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        // C(100, 50) ~ 1.0e29 does not fit in u64.
        assert!(matches!(binomial::<u64>(100, 50), Err(Error::Overflow(_))));
        assert!(binomial::<u128>(100, 50).is_ok());
        assert!(matches!(multichoose::<u64>(50, 50), Err(Error::Overflow(_))));
        let big: BigUint = multichoose(50, 50).unwrap();
        let reference: BigUint = binomial(99, 50).unwrap();
        assert_eq!(big, reference);
    }

    #[test]
    fn largest_u64_row_is_exact() {
        // C(67, 33) fits in u64 but the naive product does not.
        let wide: u128 = binomial(67, 33).unwrap();
        let narrow: u64 = binomial(67, 33).unwrap();
        assert_eq!(wide, narrow as u128);
    }
}
