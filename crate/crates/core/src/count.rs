//! Closed-form count of rotational sets and its inclusion-exclusion pieces.
//!
//! For degree `d`, rotation denominator `q` and `k` orbits,
//!
//! ```text
//! |B| = sum_{i=k-1}^{l} C(d+q-2, d-2-i) * gamma(q, k, i),
//! gamma(q, k, i) = sum_{j=0}^{k-1} (-1)^j C(k-1, j) C(q(k-1-j), i),
//! l = min(q(k-1), d-2).
//! ```
//!
//! `gamma` counts the `i`-subsets of intra-group gap labels meeting every
//! non-zero class mod `k`; the first factor counts how the remaining free
//! preimages of 0 can be distributed. The numerator `p` plays no role.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::circle::Degree;
use crate::error::{Error, Result};

/// Parameters of a count. `p` is deliberately absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CountQuery {
    pub d: u32,
    pub q: u32,
    pub k: u32,
}

impl CountQuery {
    pub fn new(d: Degree, q: u32, k: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidRotation(format!("denominator q = {q}")));
        }
        if k == 0 {
            return Err(Error::InvalidPlacement("k must be at least 1".into()));
        }
        Ok(CountQuery { d: d.get(), q, k })
    }

    pub fn count(&self) -> BigUint {
        count_sets(self.d, self.q, self.k)
    }
}

/// `C(n, r)`, zero when `r < 0` or `r > n`.
pub fn binomial(n: u64, r: i64) -> BigUint {
    if r < 0 || r as u64 > n {
        return BigUint::zero();
    }
    let r = (r as u64).min(n - r as u64);
    let mut acc = BigUint::one();
    for i in 0..r {
        // acc = C(n, i) here, and C(n, i) * (n - i) is divisible by i + 1
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Upper end `l = min(q(k-1), d-2)` of the intra-group preimage count.
pub fn l_bound(d: u32, q: u32, k: u32) -> u32 {
    let spread = q as u64 * (k as u64).saturating_sub(1);
    spread.min(d as u64 - 2) as u32
}

/// Inclusion-exclusion count of admissible intra-group selections of size `i`.
pub fn count_gamma(q: u32, k: u32, i: u32) -> BigUint {
    if k == 0 {
        return BigUint::zero();
    }
    let mut total = BigInt::zero();
    for j in 0..k {
        let term = BigInt::from(binomial((k - 1) as u64, j as i64))
            * BigInt::from(binomial(q as u64 * (k - 1 - j) as u64, i as i64));
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
        .to_biguint()
        .expect("an inclusion-exclusion count is non-negative")
}

/// Number of rotational sets of `k` orbits with any fixed rotation number of
/// denominator `q` under the degree-`d` map.
pub fn count_sets(d: u32, q: u32, k: u32) -> BigUint {
    if d < 2 || k == 0 || k > d - 1 {
        return BigUint::zero();
    }
    let l = l_bound(d, q, k);
    let free = (d + q - 2) as u64;
    (k - 1..=l)
        .map(|i| binomial(free, d as i64 - 2 - i as i64) * count_gamma(q, k, i))
        .sum()
}
