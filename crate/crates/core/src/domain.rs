//! The evaluation domain A = F_1^{μ_1} × ⋯ × F_λ^{μ_λ} of nested subfields.
//!
//! Coordinates are 1-based wherever they appear in the public API (`block_of`,
//! [`UDecomposition`]) to match the usual indexing of the counting formulas;
//! slices such as [`NestedProduct::sizes`] are ordinary 0-based vectors.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Gf};
use std::fmt;
use std::sync::Arc;

/// Largest domain for which [`NestedProduct::points`] is materialised.
pub const MAX_POINTS: u64 = 1 << 24;

#[derive(Debug, Clone)]
pub struct NestedProduct {
    field: Arc<FieldCtx>,
    d: Vec<u32>,
    block_sizes: Vec<u32>,
    mu: Vec<usize>,
    /// s_0 = 0, s_t = μ_1 + ⋯ + μ_t.
    s: Vec<usize>,
    n: u64,
    k_total: u64,
    /// Mixed-radix strides, last coordinate fastest.
    strides: Vec<u64>,
}

/// The unique writing u = Σ_{i≤j}(d_i − 1) + ℓ with 0 < ℓ ≤ d_{j+1} − 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UDecomposition {
    pub u: u64,
    pub j: usize,
    pub ell: u64,
    /// Block index t_{j+1} (1-based).
    pub r: usize,
    /// Least coordinate k (1-based) with d_k ≥ d_{j+1} − ℓ.
    pub k0: usize,
}

impl UDecomposition {
    /// Whether ℓ = d_{j+1} − 1, the branch where every h_k^Ω coincides.
    pub fn is_full(&self, prod: &NestedProduct) -> bool {
        self.ell == prod.d(self.j + 1) as u64 - 1
    }

    /// The k0 column as printed in the published tables: j + 1 when
    /// ℓ = d_{j+1} − 1 (the branch stated for k = j + 1), otherwise k0.
    pub fn table_k0(&self, prod: &NestedProduct) -> usize {
        if self.is_full(prod) {
            self.j + 1
        } else {
            self.k0
        }
    }

    /// d_{j+1} − ℓ.
    pub fn gap(&self, prod: &NestedProduct) -> u64 {
        prod.d(self.j + 1) as u64 - self.ell
    }
}

impl NestedProduct {
    /// Builds A from `(subfield size, multiplicity)` blocks in increasing size order.
    pub fn new(field: Arc<FieldCtx>, blocks: &[(u64, usize)]) -> Result<NestedProduct> {
        if blocks.is_empty() || blocks.iter().any(|&(_, mu)| mu == 0) {
            return Err(Error::EmptyBlock);
        }
        for &(size, _) in blocks {
            if !field.is_subfield_size(size) {
                return Err(Error::NotASubfieldSize(size));
            }
        }
        for w in blocks.windows(2) {
            let (a, b) = (w[0].0, w[1].0);
            // subfield sizes are powers of p, so nesting means a < b and log a | log b
            let nested = a < b && {
                let p = field.characteristic() as u64;
                let (ra, rb) = (log_p(a, p), log_p(b, p));
                rb % ra == 0
            };
            if !nested {
                return Err(Error::NotNested { size: a, next: b });
            }
        }
        let mut d = Vec::new();
        let mut s = vec![0usize];
        for &(size, mu) in blocks {
            d.extend(std::iter::repeat_n(size as u32, mu));
            s.push(s.last().unwrap() + mu);
        }
        let n = d
            .iter()
            .try_fold(1u64, |acc, &x| acc.checked_mul(x as u64))
            .ok_or_else(|| Error::BadParameters("domain size overflows u64".into()))?;
        let k_total = d.iter().map(|&x| x as u64 - 1).sum();
        let mut strides = vec![1u64; d.len()];
        for i in (0..d.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * d[i + 1] as u64;
        }
        Ok(NestedProduct {
            field,
            block_sizes: blocks.iter().map(|b| b.0 as u32).collect(),
            mu: blocks.iter().map(|b| b.1).collect(),
            d,
            s,
            n,
            k_total,
            strides,
        })
    }

    /// Builds A from the per-coordinate sizes, e.g. `[2, 2, 4]`.
    pub fn from_sizes(field: Arc<FieldCtx>, sizes: &[u64]) -> Result<NestedProduct> {
        let mut blocks: Vec<(u64, usize)> = Vec::new();
        for &size in sizes {
            match blocks.last_mut() {
                Some((last, mu)) if *last == size => *mu += 1,
                Some((last, _)) if *last > size => {
                    return Err(Error::NotNested {
                        size: *last,
                        next: size,
                    })
                }
                _ => blocks.push((size, 1)),
            }
        }
        Self::new(field, &blocks)
    }

    /// Parses a comma-separated size list such as `"2,2,4"`.
    pub fn from_spec(field: Arc<FieldCtx>, spec: &str) -> Result<NestedProduct> {
        let sizes = spec
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad coordinate size {t:?} in {spec:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_sizes(field, &sizes)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    /// q, the size of the ambient field.
    pub fn q(&self) -> u64 {
        self.field.order() as u64
    }

    /// Number of coordinates m.
    pub fn m(&self) -> usize {
        self.d.len()
    }

    /// (d_1, …, d_m).
    pub fn sizes(&self) -> &[u32] {
        &self.d
    }

    /// d_i for a 1-based coordinate.
    pub fn d(&self, i: usize) -> u32 {
        self.d[i - 1]
    }

    pub fn lambda(&self) -> usize {
        self.mu.len()
    }

    /// (μ_1, …, μ_λ).
    pub fn mu(&self) -> &[usize] {
        &self.mu
    }

    /// (s_0, s_1, …, s_λ).
    pub fn s(&self) -> &[usize] {
        &self.s
    }

    /// Distinct subfield sizes, one per block.
    pub fn block_sizes(&self) -> &[u32] {
        &self.block_sizes
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// K = Σ (d_i − 1), the largest useful degree.
    pub fn k_total(&self) -> u64 {
        self.k_total
    }

    /// Block t_k of a 1-based coordinate k.
    pub fn block_of(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.m() {
            return Err(Error::IndexOutOfRange {
                index: k,
                max: self.m(),
            });
        }
        Ok(self.s.iter().position(|&st| st >= k).unwrap())
    }

    pub fn decompose_u(&self, u: i64) -> Result<UDecomposition> {
        if u < 1 || u as u64 > self.k_total {
            return Err(Error::DegreeOutOfRange {
                u,
                min: 1,
                max: self.k_total as i64,
            });
        }
        let mut rest = u as u64;
        let mut j = 0;
        while rest > self.d[j] as u64 - 1 {
            rest -= self.d[j] as u64 - 1;
            j += 1;
        }
        let ell = rest;
        let gap = self.d[j] as u64 - ell;
        let k0 = self.d.iter().position(|&x| x as u64 >= gap).unwrap() + 1;
        Ok(UDecomposition {
            u: u as u64,
            j,
            ell,
            r: self.block_of(j + 1)?,
            k0,
        })
    }

    /// Mixed-radix index of a point (last coordinate fastest).
    ///
    /// Returns `None` if some coordinate is outside its subfield.
    #[inline]
    pub fn index_of(&self, point: &[Gf]) -> Option<u64> {
        let mut idx = 0u64;
        for (i, &x) in point.iter().enumerate() {
            let pos = self.field.subfield_position(self.d[i], x)?;
            idx += pos as u64 * self.strides[i];
        }
        Some(idx)
    }

    /// The point with the given index.
    pub fn point(&self, mut index: u64) -> Vec<Gf> {
        let mut out = vec![Gf::ZERO; self.m()];
        for i in (0..self.m()).rev() {
            let d = self.d[i] as u64;
            let pos = index % d;
            index /= d;
            out[i] = if pos == 0 {
                Gf::ZERO
            } else {
                let step = (self.q() - 1) / (d - 1);
                self.field.gen_pow(((pos - 1) * step) as i64)
            };
        }
        out
    }

    /// All n points, last coordinate varying fastest, each coordinate in subfield order.
    pub fn points(&self) -> Result<Vec<Vec<Gf>>> {
        if self.n > MAX_POINTS {
            return Err(Error::TooLarge {
                what: "point enumeration",
                needed: self.n as u128,
                cap: MAX_POINTS as u128,
            });
        }
        let coords: Vec<Vec<Gf>> = self
            .d
            .iter()
            .map(|&d| self.field.subfield_elements(d as u64))
            .collect::<Result<_>>()?;
        let mut out = Vec::with_capacity(self.n as usize);
        let mut pos = vec![0usize; self.m()];
        for _ in 0..self.n {
            out.push(pos.iter().enumerate().map(|(i, &p)| coords[i][p]).collect());
            for i in (0..self.m()).rev() {
                pos[i] += 1;
                if pos[i] < coords[i].len() {
                    break;
                }
                pos[i] = 0;
            }
        }
        Ok(out)
    }

    /// Whether every coordinate of `point` lies in its subfield.
    pub fn contains(&self, point: &[Gf]) -> bool {
        point.len() == self.m()
            && point
                .iter()
                .zip(&self.d)
                .all(|(&x, &d)| self.field.in_subfield(d, x))
    }
}

fn log_p(mut x: u64, p: u64) -> u64 {
    let mut r = 0;
    while x > 1 {
        x /= p;
        r += 1;
    }
    r
}

impl fmt::Display for NestedProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.d.iter().map(|d| format!("F_{d}")).collect();
        write!(f, "{} over {}", parts.join("×"), self.field)
    }
}
