//! Closed-form counts of minimum-weight codewords.

use crate::domain::{NestedProduct, UDecomposition};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_integer::binomial as int_binomial;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeMap, Serializer};
use std::collections::BTreeMap;

/// Gaussian binomial [m, t]_q; zero when t < 0 or t > m.
pub fn q_binomial(m: i64, t: i64, q: u64) -> BigUint {
    if t < 0 || t > m {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..t {
        num *= q.pow((m - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

/// C(n, k) as a big integer; zero when k < 0 or k > n.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    int_binomial(BigUint::from(n as u64), BigUint::from(k as u64))
}

/// Counts for one degree u.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinWtReport {
    pub u: i64,
    /// `None` for u ∈ {−1, 0}.
    pub decomposition: Option<UDecomposition>,
    /// |N^{(k)}| for each block representative k (1-based).
    pub per_k: BTreeMap<usize, BigUint>,
    pub total: BigUint,
}

impl Serialize for MinWtReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let dec = self.decomposition;
        let per_k: BTreeMap<String, String> = self
            .per_k
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        let mut map = serializer.serialize_map(Some(6))?;
        map.serialize_entry("u", &self.u)?;
        map.serialize_entry("j", &dec.map(|d| d.j))?;
        map.serialize_entry("ell", &dec.map(|d| d.ell))?;
        map.serialize_entry("k0", &dec.map(|d| d.k0))?;
        map.serialize_entry("per_k", &per_k)?;
        map.serialize_entry("total", &self.total.to_string())?;
        map.end()
    }
}

fn prod_d(prod: &NestedProduct, range: impl Iterator<Item = usize>) -> BigUint {
    range.map(|i| BigUint::from(prod.d(i))).product()
}

/// |N^{(k)}| for ℓ < d_{j+1} − 1 and an admissible k (1-based).
///
/// The cases d_k = d_{j+1} − ℓ and d_k > d_{j+1} − ℓ share one expression:
/// the binomial C(d_k, d_{j+1} − ℓ) equals 1 in the first.
pub fn count_minwt_k(prod: &NestedProduct, dec: &UDecomposition, k: usize) -> Result<BigUint> {
    let gap = dec.gap(prod);
    if dec.is_full(prod) || k < dec.k0 || k > dec.j + 1 || (prod.d(k) as u64) < gap {
        return Err(Error::KOutOfRange { k });
    }
    let q = prod.q();
    let j = dec.j;
    let r = dec.r;
    let s = prod.s();
    let mu = prod.mu();
    let dk = prod.d(k) as u64;
    let dj1 = prod.d(j + 1) as u64;
    let tk = prod.block_of(k)?;
    let others = prod_d(prod, (1..=j + 1).filter(|&i| i != k));
    let choose = binomial(dk as i64, gap as i64);
    let base = BigUint::from(q - 1) * others * choose;
    Ok(if tk == r {
        base * q_binomial(mu[r - 1] as i64, j as i64 - s[r - 1] as i64, dj1)
            * q_binomial(s[r] as i64 - j as i64, 1, dk)
    } else {
        base * prod_d(prod, s[tk] + 1..=j + 1)
            * q_binomial(mu[r - 1] as i64, (j + 1 - s[r - 1]) as i64, dj1)
            * q_binomial(mu[tk - 1] as i64, 1, dk)
    })
}

/// |N_q(u, A)| for −1 ≤ u ≤ K, with the per-block breakdown.
pub fn count_minwt(prod: &NestedProduct, u: i64) -> Result<MinWtReport> {
    let q = prod.q();
    let k_total = prod.k_total() as i64;
    if u < -1 || u > k_total {
        return Err(Error::DegreeOutOfRange {
            u,
            min: -1,
            max: k_total,
        });
    }
    if u <= 0 {
        let total = if u == 0 {
            BigUint::from(q - 1)
        } else {
            BigUint::zero()
        };
        return Ok(MinWtReport {
            u,
            decomposition: None,
            per_k: BTreeMap::new(),
            total,
        });
    }
    let dec = prod.decompose_u(u)?;
    let mut per_k = BTreeMap::new();
    if dec.is_full(prod) {
        // h_k^Ω does not depend on k here, so there is a single orbit.
        let r = dec.r;
        let total = BigUint::from(q - 1)
            * prod_d(prod, 1..=dec.j + 1)
            * q_binomial(
                prod.mu()[r - 1] as i64,
                (dec.j + 1 - prod.s()[r - 1]) as i64,
                prod.d(dec.j + 1) as u64,
            );
        per_k.insert(dec.j + 1, total);
    } else {
        for k in crate::groups::representative_ks(prod, &dec, false) {
            per_k.insert(k, count_minwt_k(prod, &dec, k)?);
        }
    }
    let total = per_k.values().sum();
    Ok(MinWtReport {
        u,
        decomposition: Some(dec),
        per_k,
        total,
    })
}

/// Minimum-weight codewords of RS_q(k, n): (q − 1)·C(n, n − k + 1).
pub fn rs_count(q: u64, n: u64, k_dim: u64) -> Result<BigUint> {
    if k_dim < 1 || k_dim > n || n > q {
        return Err(Error::BadParameters(format!(
            "Reed-Solomon needs 1 <= k <= n <= q, got q={q} n={n} k={k_dim}"
        )));
    }
    Ok(BigUint::from(q - 1) * binomial(n as i64, (n - k_dim + 1) as i64))
}

/// Minimum-weight codewords of RM_q(u, m), writing u = t(q − 1) + s with 0 ≤ s < q − 1.
pub fn rm_count(q: u64, u: i64, m: i64) -> Result<BigUint> {
    let top = m * (q as i64 - 1);
    if u < 0 || u > top || m < 1 {
        return Err(Error::DegreeOutOfRange { u, min: 0, max: top });
    }
    let t = u / (q as i64 - 1);
    let s = u % (q as i64 - 1);
    let base = BigUint::from(q - 1) * BigUint::from(q).pow(t as u32) * q_binomial(m, t, q);
    Ok(if s == 0 {
        base
    } else {
        base * q_binomial(m - t, 1, q) * binomial(q as i64, s)
    })
}
