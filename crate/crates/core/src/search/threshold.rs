use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::sizes::frankl_set_size;
use crate::Rational;

/// Which Frankl family is extremal for t-intersecting k-subsets of `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AkRegime {
    /// `n` lies strictly between the thresholds around `r`.
    Interior(usize),
    /// `n` sits exactly on the threshold shared by `r` and `r + 1`; both are extremal.
    Boundary(usize, usize),
}

impl AkRegime {
    /// The smaller extremal `r`.
    pub fn r(self) -> usize {
        match self {
            AkRegime::Interior(r) | AkRegime::Boundary(r, _) => r,
        }
    }

    pub fn is_boundary(self) -> bool {
        matches!(self, AkRegime::Boundary(..))
    }

    pub fn candidates(self) -> Vec<usize> {
        match self {
            AkRegime::Interior(r) => vec![r],
            AkRegime::Boundary(a, b) => vec![a, b],
        }
    }
}

fn lower(k: i64, t: i64, r: i64) -> Rational {
    Rational::from_integer(k - t + 1) * (Rational::from_integer(2) + Rational::new(t - 1, r + 1))
}

fn upper(k: i64, t: i64, r: i64) -> Option<Rational> {
    (r > 0).then(|| Rational::from_integer(k - t + 1) * (Rational::from_integer(2) + Rational::new(t - 1, r)))
}

/// Locates `n = m + k - 1` among the thresholds
/// `(k-t+1)(2 + (t-1)/(r+1)) < n < (k-t+1)(2 + (t-1)/r)`, with `(t-1)/0 = ∞`.
///
/// Requires `1 <= t <= k` and `n > 2k - t`.
pub fn ak_threshold_r(m: usize, k: usize, t: usize) -> Result<AkRegime> {
    if t == 0 || t > k {
        return Err(Error::contract(format!("needs 1 <= t <= k (t={t}, k={k})")));
    }
    let n = m + k - 1;
    if n + t <= 2 * k {
        return Err(Error::contract(format!(
            "needs m + k - 1 > 2k - t (m={m}, k={k}, t={t})"
        )));
    }
    let (ki, ti) = (k as i64, t as i64);
    let nq = Rational::from_integer(n as i64);
    let top = k - t;
    for r in 0..=top {
        let lo = lower(ki, ti, r as i64);
        let above_lo = nq > lo;
        let below_hi = upper(ki, ti, r as i64).map_or(true, |hi| nq < hi);
        if above_lo && below_hi {
            return Ok(AkRegime::Interior(r));
        }
        if nq == lo {
            return Ok(if r < top {
                AkRegime::Boundary(r, r + 1)
            } else {
                AkRegime::Interior(r)
            });
        }
    }
    Err(Error::Internal(format!(
        "no threshold interval contains n = {n} (k={k}, t={t})"
    )))
}

/// Largest t-intersecting family of k-subsets of `[m + k - 1]`.
///
/// When `n <= 2k - t` any two k-subsets already share `t` elements, so the
/// bound is the whole universe.
pub fn ak_bound(m: usize, k: usize, t: usize) -> Result<u64> {
    if t == 0 || t > k {
        return Err(Error::contract(format!("needs 1 <= t <= k (t={t}, k={k})")));
    }
    let n = m + k - 1;
    if n + t <= 2 * k {
        return crate::count::binomial(n as u64, k as u64);
    }
    let regime = ak_threshold_r(m, k, t)?;
    frankl_set_size(m + k - 1, k, t, regime.r())
}
