//! The code AC_q(u, A): basis, parameters, dual scaling and exhaustive scans.

use crate::domain::NestedProduct;
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Gf};
use crate::poly::{self, ReducedPoly};
use num_bigint::BigInt;
use num_integer::binomial;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Default limit on the number of codewords an exhaustive scan may visit.
pub const DEFAULT_SCAN_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeSummary {
    pub u: i64,
    pub n: u64,
    pub dim: u64,
    pub mindist: u64,
}

fn check_u(prod: &NestedProduct, u: i64, min: i64) -> Result<()> {
    let max = prod.k_total() as i64;
    if u < min || u > max {
        return Err(Error::DegreeOutOfRange { u, min, max });
    }
    Ok(())
}

/// Exponent vectors e with e_i < d_i and Σ e_i ≤ u, in lexicographic order.
pub fn monomial_basis(prod: &NestedProduct, u: i64) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if u < 0 {
        return out;
    }
    let d = prod.sizes();
    let mut e = vec![0u32; d.len()];
    fn rec(d: &[u32], i: usize, budget: u64, e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == d.len() {
            out.push(e.clone());
            return;
        }
        for x in 0..d[i].min((budget + 1).min(u32::MAX as u64) as u32) {
            e[i] = x;
            rec(d, i + 1, budget - x as u64, e, out);
        }
        e[i] = 0;
    }
    rec(d, 0, u as u64, &mut e, &mut out);
    out
}

/// dim AC_q(u, A) = Σ_{S ⊆ [m]} (−1)^{|S|} C(m + u − D_S, u − D_S), D_S = Σ_{i∈S} d_i,
/// with binomials vanishing when the lower argument is negative.
pub fn dimension(prod: &NestedProduct, u: i64) -> Result<u64> {
    check_u(prod, u, 0)?;
    let m = prod.m();
    if m > 24 {
        return Err(Error::BadParameters("too many coordinates for inclusion-exclusion".into()));
    }
    let d = prod.sizes();
    let mut acc = BigInt::from(0);
    for mask in 0u32..(1 << m) {
        let ds: i64 = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| d[i] as i64).sum();
        let low = u - ds;
        if low < 0 {
            continue;
        }
        let term = binomial(BigInt::from(m as i64 + low), BigInt::from(low));
        if mask.count_ones() % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(u64::try_from(acc).expect("dimension is a nonnegative count"))
}

/// δ_q(u, A) = (d_{j+1} − ℓ)·d_{j+2}⋯d_m, and n for u = 0.
pub fn min_distance(prod: &NestedProduct, u: i64) -> Result<u64> {
    check_u(prod, u, 0)?;
    if u == 0 {
        return Ok(prod.n());
    }
    let dec = prod.decompose_u(u)?;
    Ok(dec.gap(prod) * prod.sizes()[dec.j + 1..].iter().map(|&d| d as u64).product::<u64>())
}

pub fn summary(prod: &NestedProduct, u: i64) -> Result<CodeSummary> {
    Ok(CodeSummary {
        u,
        n: prod.n(),
        dim: dimension(prod, u)?,
        mindist: min_distance(prod, u)?,
    })
}

/// w_j = (∏_i g_i'(P_j))^{−1} with g_i(X) = X^{d_i} − X, so g_i' = d_i X^{d_i − 1} − 1.
///
/// The dual of AC_q(u, A) is w·AC_q(K − u − 1, A).
pub fn dual_scaling(prod: &NestedProduct) -> Vec<Gf> {
    let ctx = prod.field();
    let pts = prod.points().expect("domain small enough to list");
    pts.iter()
        .map(|p| {
            let prod_deriv = p.iter().zip(prod.sizes()).fold(Gf::ONE, |acc, (&x, &d)| {
                let deriv = ctx.sub(
                    ctx.mul(ctx.from_int(d as i64), ctx.pow(x, d as u64 - 1)),
                    Gf::ONE,
                );
                ctx.mul(acc, deriv)
            });
            ctx.inv(prod_deriv).expect("g_i' has no roots on A")
        })
        .collect()
}

/// Rows Ev(X^e) for e in [`monomial_basis`].
pub fn generator_matrix(prod: &NestedProduct, u: i64) -> Vec<Vec<Gf>> {
    monomial_basis(prod, u)
        .into_iter()
        .map(|e| {
            let exps: Vec<u64> = e.iter().map(|&x| x as u64).collect();
            let f = ReducedPoly::monomial(prod, &exps, Gf::ONE);
            poly::evaluate(prod, &f).values().to_vec()
        })
        .collect()
}

/// Generator matrix of RS_q(k, n): x^e for e < k at the first n field elements.
pub fn rs_generator_matrix(ctx: &FieldCtx, n: u64, k: u64) -> Result<Vec<Vec<Gf>>> {
    if k < 1 || k > n || n > ctx.order() as u64 {
        return Err(Error::BadParameters(format!(
            "Reed-Solomon needs 1 <= k <= n <= q, got n={n} k={k}"
        )));
    }
    let pts: Vec<Gf> = ctx.elements().take(n as usize).collect();
    Ok((0..k)
        .map(|e| pts.iter().map(|&x| ctx.pow(x, e)).collect())
        .collect())
}

/// Minimum nonzero weight and its multiplicity from a weight histogram.
pub fn min_weight_of(hist: &BTreeMap<usize, u64>) -> Option<(usize, u64)> {
    hist.iter()
        .find(|(&w, &c)| w > 0 && c > 0)
        .map(|(&w, &c)| (w, c))
}

/// Exact minimum distance and number of minimum-weight codewords, by scanning.
pub fn exhaustive_min_weight(prod: &NestedProduct, u: i64, cap: u64) -> Result<(usize, u64)> {
    let hist = weight_distribution(prod, u, cap)?;
    Ok(min_weight_of(&hist).expect("a code of dimension >= 1 has nonzero words"))
}

/// Full weight histogram of AC_q(u, A), weight 0 included.
pub fn weight_distribution(prod: &NestedProduct, u: i64, cap: u64) -> Result<BTreeMap<usize, u64>> {
    check_u(prod, u, 0)?;
    scan_weights(prod.field(), &generator_matrix(prod, u), cap)
}

// ---------------------------------------------------------------------------
// scan kernel

trait Ops: Sync {
    fn add(&self, a: u32, b: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    /// −s/b (b nonzero): the coefficient c that makes s + c·b vanish.
    fn root(&self, s: u32, b: u32) -> u32;
}

impl Ops for FieldCtx {
    fn add(&self, a: u32, b: u32) -> u32 {
        FieldCtx::add(self, Gf::from_raw(a), Gf::from_raw(b)).raw()
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        FieldCtx::mul(self, Gf::from_raw(a), Gf::from_raw(b)).raw()
    }
    fn root(&self, s: u32, b: u32) -> u32 {
        let x = self.div(Gf::from_raw(s), Gf::from_raw(b)).unwrap();
        self.neg(x).raw()
    }
}

/// Full tables for fields with at most 256 elements. Indexing by `u8` keeps
/// every lookup in bounds without checks.
struct Tables {
    add: Box<[[u8; 256]; 256]>,
    mul: Box<[[u8; 256]; 256]>,
    root: Box<[[u8; 256]; 256]>,
}

impl Tables {
    fn new(ctx: &FieldCtx) -> Tables {
        let q = ctx.order();
        let mut t = Tables {
            add: Box::new([[0; 256]; 256]),
            mul: Box::new([[0; 256]; 256]),
            root: Box::new([[0; 256]; 256]),
        };
        for a in 0..q {
            for b in 0..q {
                let (i, j) = (a as usize, b as usize);
                t.add[i][j] = Ops::add(ctx, a, b) as u8;
                t.mul[i][j] = Ops::mul(ctx, a, b) as u8;
                if b != 0 {
                    t.root[i][j] = ctx.root(a, b) as u8;
                }
            }
        }
        t
    }
}

impl Ops for Tables {
    #[inline(always)]
    fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as u8 as usize][b as u8 as usize] as u32
    }
    #[inline(always)]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as u8 as usize][b as u8 as usize] as u32
    }
    #[inline(always)]
    fn root(&self, s: u32, b: u32) -> u32 {
        self.root[s as u8 as usize][b as u8 as usize] as u32
    }
}

/// Weight histogram of the row space of `rows` over the field.
///
/// Visits one representative per projective point (leading coefficient 1)
/// and weights it by q − 1. The last row is handled in closed form: for a
/// partial sum s, position i of s + c·b vanishes for every c when
/// s_i = b_i = 0, and only for c = −s_i/b_i when b_i ≠ 0, so all q words of a
/// leaf cost O(n + q).
pub fn scan_weights(ctx: &FieldCtx, rows: &[Vec<Gf>], cap: u64) -> Result<BTreeMap<usize, u64>> {
    let q = ctx.order() as u64;
    let dim = rows.len() as u32;
    let total = (q as u128).checked_pow(dim).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(Error::TooLarge {
            what: "exhaustive codeword scan",
            needed: total,
            cap: cap as u128,
        });
    }
    let raw: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.raw()).collect())
        .collect();
    let hist = if q <= 256 {
        scan_with(&Tables::new(ctx), q as usize, &raw)
    } else {
        scan_with(ctx, q as usize, &raw)
    };
    Ok(hist
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .collect())
}

fn scan_with<O: Ops>(ops: &O, q: usize, rows: &[Vec<u32>]) -> Vec<u64> {
    let n = rows.first().map_or(0, Vec::len);
    let dim = rows.len();
    let mut hist = vec![0u64; n + 1];
    hist[0] = 1;
    if dim == 0 {
        return hist;
    }
    // multiples[r][c] = c·row_r
    let multiples: Vec<Vec<Vec<u32>>> = rows
        .iter()
        .map(|row| {
            (0..q as u32)
                .map(|c| row.iter().map(|&x| ops.mul(c, x)).collect())
                .collect()
        })
        .collect();
    let last = LastRow::new(&rows[dim - 1]);
    let weight = |v: &[u32]| v.iter().filter(|&&x| x != 0).count();
    // tasks: (leading row, coefficient of the next row if any)
    let mut tasks: Vec<(usize, Option<u32>)> = Vec::new();
    for lead in 0..dim {
        if lead + 2 < dim {
            tasks.extend((0..q as u32).map(|c| (lead, Some(c))));
        } else {
            tasks.push((lead, None));
        }
    }
    let scale = q as u64 - 1;
    let partial = tasks
        .par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut h, &(lead, next)| {
                let mut s = rows[lead].clone();
                if lead == dim - 1 {
                    h[weight(&s)] += scale;
                    return h;
                }
                let mut level = lead + 1;
                if let Some(c) = next {
                    add_into(ops, &mut s, &multiples[level][c as usize]);
                    level += 1;
                }
                let mut bufs = vec![vec![0u32; n]; dim];
                descend(ops, q, &multiples, &last, level, &s, &mut bufs, &mut h, scale);
                h
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    for (x, y) in hist.iter_mut().zip(partial) {
        *x += y;
    }
    hist
}

#[inline]
fn add_into<O: Ops>(ops: &O, s: &mut [u32], v: &[u32]) {
    for (a, &b) in s.iter_mut().zip(v) {
        *a = ops.add(*a, b);
    }
}

/// Rows `level..dim-1` are free; row `dim-1` is resolved in closed form.
/// `bufs[0]` holds the partial sum for this level, the rest go deeper.
#[allow(clippy::too_many_arguments)]
fn descend<O: Ops>(
    ops: &O,
    q: usize,
    multiples: &[Vec<Vec<u32>>],
    last: &LastRow,
    level: usize,
    s: &[u32],
    bufs: &mut [Vec<u32>],
    hist: &mut [u64],
    scale: u64,
) {
    let dim = multiples.len();
    if level == dim - 1 {
        leaf(ops, q, s, last, hist, scale);
        return;
    }
    let (buf, rest) = bufs.split_first_mut().expect("one buffer per level");
    for mult in &multiples[level] {
        for ((o, &a), &b) in buf.iter_mut().zip(s).zip(mult) {
            *o = ops.add(a, b);
        }
        descend(ops, q, multiples, last, level + 1, buf, rest, hist, scale);
    }
}

/// The last generator row, split by whether its entries vanish.
struct LastRow {
    zero: Vec<usize>,
    nonzero: Vec<(usize, u32)>,
}

impl LastRow {
    fn new(b: &[u32]) -> LastRow {
        LastRow {
            zero: (0..b.len()).filter(|&i| b[i] == 0).collect(),
            nonzero: (0..b.len()).filter(|&i| b[i] != 0).map(|i| (i, b[i])).collect(),
        }
    }
}

#[inline]
fn leaf<O: Ops>(ops: &O, q: usize, s: &[u32], last: &LastRow, hist: &mut [u64], scale: u64) {
    let n = s.len();
    let always_zero = last.zero.iter().filter(|&&i| s[i] == 0).count();
    let mut small = [0u32; 256];
    let mut big;
    let counts: &mut [u32] = if q <= 256 {
        &mut small[..q]
    } else {
        big = vec![0u32; q];
        &mut big
    };
    for &(i, bi) in &last.nonzero {
        counts[ops.root(s[i], bi) as usize] += 1;
    }
    for &z in counts.iter() {
        hist[n - always_zero - z as usize] += scale;
    }
}
