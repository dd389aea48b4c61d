//! The block-triangular matrix group G, Aff(A), G_A = F_q^* × Aff(A), and
//! orbit enumeration of minimum-weight codewords.
//!
//! Coordinates here are 0-based except where a [`UDecomposition`] or a
//! coordinate `k` from the counting formulas is involved.

use crate::domain::{NestedProduct, UDecomposition};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Gf};
use crate::poly::{self, Codeword, ReducedPoly};
use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::One;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashSet, VecDeque};

/// Default limit on group-element applications during enumeration.
pub const DEFAULT_ORBIT_CAP: u64 = 100_000_000;

/// An m×m matrix over F_q, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockMatrix {
    m: usize,
    entries: Vec<Gf>,
}

impl BlockMatrix {
    pub fn identity(m: usize) -> BlockMatrix {
        let mut entries = vec![Gf::ZERO; m * m];
        for i in 0..m {
            entries[i * m + i] = Gf::ONE;
        }
        BlockMatrix { m, entries }
    }

    /// Checks the rows against G and wraps them.
    pub fn from_rows(prod: &NestedProduct, rows: &[Vec<Gf>]) -> Result<BlockMatrix> {
        if !is_in_g(prod, rows) {
            return Err(Error::InvalidTransform(
                "matrix is not block lower triangular over the subfield chain, or singular".into(),
            ));
        }
        Ok(Self::from_rows_unchecked(rows))
    }

    fn from_rows_unchecked(rows: &[Vec<Gf>]) -> BlockMatrix {
        BlockMatrix {
            m: rows.len(),
            entries: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Gf {
        self.entries[i * self.m + j]
    }

    fn set(&mut self, i: usize, j: usize, a: Gf) {
        self.entries[i * self.m + j] = a;
    }

    pub fn rows(&self) -> Vec<Vec<Gf>> {
        self.entries.chunks(self.m).map(<[Gf]>::to_vec).collect()
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &BlockMatrix) -> BlockMatrix {
        let m = self.m;
        let mut out = vec![Gf::ZERO; m * m];
        for i in 0..m {
            for j in 0..m {
                out[i * m + j] = ctx.sum((0..m).map(|z| ctx.mul(self.get(i, z), other.get(z, j))));
            }
        }
        BlockMatrix { m, entries: out }
    }

    pub fn apply(&self, ctx: &FieldCtx, x: &[Gf]) -> Vec<Gf> {
        (0..self.m)
            .map(|i| ctx.sum((0..self.m).map(|z| ctx.mul(self.get(i, z), x[z]))))
            .collect()
    }
}

/// Rank of a list of vectors over F_q.
fn rank(ctx: &FieldCtx, rows: &[Vec<Gf>]) -> usize {
    let mut a: Vec<Vec<Gf>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = ctx.inv(a[r][c]).unwrap();
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = ctx.mul(row[c], inv);
                for (x, &y) in row[c..cols].iter_mut().zip(&pivot[c..cols]) {
                    *x = ctx.sub(*x, ctx.mul(f, y));
                }
            }
        }
        r += 1;
    }
    r
}

/// Whether `rows` is an element of G: row i has entries in F_{d_i}, vanishes
/// beyond column s_{t_i}, and the matrix is invertible.
pub fn is_in_g(prod: &NestedProduct, rows: &[Vec<Gf>]) -> bool {
    let ctx = prod.field();
    let m = prod.m();
    if rows.len() != m || rows.iter().any(|r| r.len() != m) {
        return false;
    }
    for (i, row) in rows.iter().enumerate() {
        let limit = row_limit(prod, i);
        let d = prod.sizes()[i];
        for (z, &a) in row.iter().enumerate() {
            if (z >= limit && !a.is_zero()) || !ctx.in_subfield(d, a) {
                return false;
            }
        }
    }
    rank(ctx, rows) == m
}

/// Number of leading columns row i may use: s_{t_i}.
fn row_limit(prod: &NestedProduct, i: usize) -> usize {
    prod.s()[prod.block_of(i + 1).expect("row index in range")]
}

/// X ↦ M·X + b with M ∈ G and b ∈ A.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineTransform {
    matrix: BlockMatrix,
    shift: Vec<Gf>,
}

impl AffineTransform {
    pub fn new(prod: &NestedProduct, matrix: BlockMatrix, shift: Vec<Gf>) -> Result<AffineTransform> {
        if matrix.dim() != prod.m() || !is_in_g(prod, &matrix.rows()) {
            return Err(Error::InvalidTransform("matrix not in G".into()));
        }
        if !prod.contains(&shift) {
            return Err(Error::InvalidTransform("shift is not a point of A".into()));
        }
        Ok(AffineTransform { matrix, shift })
    }

    pub fn identity(m: usize) -> AffineTransform {
        AffineTransform {
            matrix: BlockMatrix::identity(m),
            shift: vec![Gf::ZERO; m],
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &BlockMatrix {
        &self.matrix
    }

    pub fn shift(&self) -> &[Gf] {
        &self.shift
    }

    pub fn apply(&self, ctx: &FieldCtx, x: &[Gf]) -> Vec<Gf> {
        self.matrix
            .apply(ctx, x)
            .into_iter()
            .zip(&self.shift)
            .map(|(a, &b)| ctx.add(a, b))
            .collect()
    }

    /// self ∘ other: X ↦ M_1(M_2 X + b_2) + b_1.
    pub fn compose(&self, ctx: &FieldCtx, other: &AffineTransform) -> AffineTransform {
        AffineTransform {
            matrix: self.matrix.mul(ctx, &other.matrix),
            shift: self.apply(ctx, &other.shift),
        }
    }

    /// π with σ(P_i) = P_{π[i]}; `None` if some image leaves A.
    pub fn point_permutation(&self, prod: &NestedProduct) -> Option<Vec<u32>> {
        let ctx = prod.field();
        (0..prod.n())
            .map(|i| {
                prod.index_of(&self.apply(ctx, &prod.point(i)))
                    .map(|j| j as u32)
            })
            .collect()
    }

    /// Whether the map restricted to A is a bijection of A.
    pub fn is_bijection(&self, prod: &NestedProduct) -> bool {
        match self.point_permutation(prod) {
            None => false,
            Some(perm) => {
                let mut seen = vec![false; perm.len()];
                perm.iter().all(|&j| !std::mem::replace(&mut seen[j as usize], true))
            }
        }
    }
}

/// (γ, σ) ∈ F_q^* × Aff(A).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElem {
    pub scalar: Gf,
    pub transform: AffineTransform,
}

impl GroupElem {
    pub fn identity(m: usize) -> GroupElem {
        GroupElem {
            scalar: Gf::ONE,
            transform: AffineTransform::identity(m),
        }
    }

    /// (γγ', σ∘σ'). The action is a right action:
    /// `act(h, act(g, f)) == act(g.mul(h), f)`.
    pub fn mul(&self, ctx: &FieldCtx, other: &GroupElem) -> GroupElem {
        GroupElem {
            scalar: ctx.mul(self.scalar, other.scalar),
            transform: self.transform.compose(ctx, &other.transform),
        }
    }
}

/// γ·f(M·X + b), reduced.
pub fn act(prod: &NestedProduct, g: &GroupElem, f: &ReducedPoly) -> Result<ReducedPoly> {
    if g.scalar.is_zero() {
        return Err(Error::InvalidTransform("scalar must be nonzero".into()));
    }
    Ok(poly::compose_affine(prod, f, &g.transform)?.scale(prod.field(), g.scalar))
}

/// γ·(c ∘ σ) on codewords, using σ's point permutation.
pub fn act_codeword(ctx: &FieldCtx, scalar: Gf, perm: &[u32], c: &Codeword) -> Codeword {
    Codeword::new(
        perm.iter()
            .map(|&j| ctx.mul(scalar, c.values()[j as usize]))
            .collect(),
    )
}

/// |GL(μ, F_d)| · d^{(columns to the left)·μ} per block, times |A|.
pub fn aff_group_order(prod: &NestedProduct) -> BigUint {
    let mut out = BigUint::one();
    for (t, (&d, &mu)) in prod.block_sizes().iter().zip(prod.mu()).enumerate() {
        let d = BigUint::from(d);
        let s_prev = prod.s()[t];
        out *= d.pow((mu * (s_prev + 1)) as u32);
        let dm = d.pow(mu as u32);
        for i in 0..mu {
            out *= &dm - d.pow(i as u32);
        }
    }
    out
}

/// |G_A| = (q − 1)·|Aff(A)|.
pub fn g_a_order(prod: &NestedProduct) -> BigUint {
    aff_group_order(prod) * BigUint::from(prod.q() - 1)
}

/// |G| = |Aff(A)| / n.
pub fn matrix_group_order(prod: &NestedProduct) -> BigUint {
    aff_group_order(prod) / BigUint::from(prod.n())
}

fn to_u128(x: &BigUint) -> u128 {
    x.try_into().unwrap_or(u128::MAX)
}

/// Every element of G exactly once.
///
/// Rows are chosen one at a time from their allowed entries and rejected as
/// soon as they become linearly dependent on the rows above.
pub fn enumerate_g(prod: &NestedProduct, cap: u64) -> Result<Vec<BlockMatrix>> {
    let order = matrix_group_order(prod);
    if order > BigUint::from(cap) {
        return Err(Error::TooLarge {
            what: "matrix group enumeration",
            needed: to_u128(&order),
            cap: cap as u128,
        });
    }
    let ctx = prod.field();
    let m = prod.m();
    let candidates: Vec<Vec<Vec<Gf>>> = (0..m)
        .map(|i| {
            let limit = row_limit(prod, i);
            let elems = ctx.subfield_elements(prod.sizes()[i] as u64).unwrap();
            let mut rows = vec![Vec::new()];
            for _ in 0..limit {
                rows = rows
                    .into_iter()
                    .flat_map(|r: Vec<Gf>| {
                        elems.iter().map(move |&a| {
                            let mut r = r.clone();
                            r.push(a);
                            r
                        })
                    })
                    .collect();
            }
            for r in &mut rows {
                r.resize(m, Gf::ZERO);
            }
            rows
        })
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<Gf>> = Vec::with_capacity(m);
    fn rec(
        ctx: &FieldCtx,
        candidates: &[Vec<Vec<Gf>>],
        stack: &mut Vec<Vec<Gf>>,
        out: &mut Vec<BlockMatrix>,
    ) {
        let i = stack.len();
        if i == candidates.len() {
            out.push(BlockMatrix::from_rows_unchecked(stack));
            return;
        }
        for row in &candidates[i] {
            stack.push(row.clone());
            if rank(ctx, stack) == i + 1 {
                rec(ctx, candidates, stack, out);
            }
            stack.pop();
        }
    }
    rec(ctx, &candidates, &mut stack, &mut out);
    Ok(out)
}

/// Every element of Aff(A), as (M, b) pairs.
pub fn enumerate_aff(prod: &NestedProduct, cap: u64) -> Result<Vec<AffineTransform>> {
    let order = aff_group_order(prod);
    if order > BigUint::from(cap) {
        return Err(Error::TooLarge {
            what: "affine group enumeration",
            needed: to_u128(&order),
            cap: cap as u128,
        });
    }
    let mats = enumerate_g(prod, cap)?;
    let pts = prod.points()?;
    Ok(mats
        .iter()
        .flat_map(|mat| {
            pts.iter().map(move |b| AffineTransform {
                matrix: mat.clone(),
                shift: b.clone(),
            })
        })
        .collect())
}

/// Δ_Ω = {(a, b) : a ≠ 0, aΩ + b = Ω} inside AGL(1, F_d), by brute force.
pub fn stab_delta_omega(ctx: &FieldCtx, d: u64, omega: &[Gf]) -> Result<Vec<(Gf, Gf)>> {
    let elems = ctx.subfield_elements(d)?;
    if omega.iter().any(|&w| !ctx.in_subfield(d as u32, w)) {
        return Err(Error::OmegaNotInSubfield(d));
    }
    let set: HashSet<Gf> = omega.iter().copied().collect();
    let mut out = Vec::new();
    for &a in &elems[1..] {
        for &b in &elems {
            if omega.iter().all(|&w| set.contains(&ctx.add(ctx.mul(a, w), b))) {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

/// One representative per AGL(1, F_d)-orbit on s-subsets of F_d, with orbit sizes.
///
/// Subsets are bitmasks over subfield positions; the representative of an
/// orbit is its smallest mask. Representatives are returned in mask order.
pub fn orbit_reps_omega(ctx: &FieldCtx, d: u64, s: usize) -> Result<Vec<(Vec<Gf>, usize)>> {
    let elems = ctx.subfield_elements(d)?;
    let dn = d as usize;
    if s > dn {
        return Err(Error::SizeOutOfRange { s, max: dn });
    }
    if dn > 32 {
        return Err(Error::TooLarge {
            what: "subset orbit enumeration",
            needed: dn as u128,
            cap: 32,
        });
    }
    // position maps for each (a, b)
    let elems = &elems;
    let maps: Vec<Vec<usize>> = elems[1..]
        .iter()
        .flat_map(|&a| {
            elems.iter().map(move |&b| {
                elems
                    .iter()
                    .map(|&x| ctx.subfield_position(d as u32, ctx.add(ctx.mul(a, x), b)).unwrap())
                    .collect()
            })
        })
        .collect();
    let image = |mask: u32, map: &[usize]| -> u32 {
        (0..dn).filter(|&i| mask >> i & 1 == 1).fold(0, |acc, i| acc | 1 << map[i])
    };
    let mut seen: HashSet<u32> = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1u64 << dn) as u32 {
        if mask.count_ones() as usize != s || seen.contains(&mask) {
            continue;
        }
        let orbit: HashSet<u32> = maps.iter().map(|mp| image(mask, mp)).collect();
        let omega: Vec<Gf> = (0..dn).filter(|&i| mask >> i & 1 == 1).map(|i| elems[i]).collect();
        out.push((omega, orbit.len()));
        seen.extend(orbit);
    }
    Ok(out)
}

/// How orbits are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrbitMode {
    /// Breadth-first closure under a generating set of Aff(A).
    #[default]
    Generators,
    /// Apply every element of Aff(A) to every seed.
    FullGroup,
}

#[derive(Debug, Clone, Copy)]
pub struct EnumOptions {
    /// Maximum number of group-element applications.
    pub cap: u64,
    pub mode: OrbitMode,
    /// Enumerate N^{(k)} for every admissible k, not one per block.
    pub all_k: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            cap: DEFAULT_ORBIT_CAP,
            mode: OrbitMode::Generators,
            all_k: false,
        }
    }
}

/// Codewords as raw element indices, scaled so the first nonzero entry is 1.
pub type ProjectiveWord = Box<[u32]>;

/// Result of an orbit enumeration.
#[derive(Debug, Clone)]
pub struct MinWeightSet {
    pub weight: usize,
    /// Projective classes of N^{(k)} for each enumerated coordinate k (1-based).
    pub per_k: BTreeMap<usize, HashSet<ProjectiveWord>>,
    /// q − 1, the number of codewords in each projective class.
    pub scalars: u64,
}

impl MinWeightSet {
    /// The union over k, as projective classes.
    pub fn union(&self) -> HashSet<ProjectiveWord> {
        self.per_k.values().flatten().cloned().collect()
    }

    /// Number of codewords in N^{(k)}.
    pub fn count_k(&self, k: usize) -> Option<u64> {
        self.per_k.get(&k).map(|s| s.len() as u64 * self.scalars)
    }

    /// Number of codewords in the union.
    pub fn total(&self) -> u64 {
        self.union().len() as u64 * self.scalars
    }

    /// Every codeword, scalar multiples included, in sorted order.
    pub fn codewords(&self, ctx: &FieldCtx) -> Vec<Codeword> {
        let mut out: Vec<Codeword> = self
            .union()
            .into_iter()
            .flat_map(|w| {
                let base = Codeword::new(w.iter().map(|&x| Gf::from_raw(x)).collect());
                ctx.nonzero_elements()
                    .map(|g| base.scale(ctx, g))
                    .collect::<Vec<_>>()
            })
            .collect();
        out.sort();
        out
    }
}

fn normalize(ctx: &FieldCtx, c: &[Gf]) -> ProjectiveWord {
    let lead = c.iter().find(|x| !x.is_zero()).copied().unwrap_or(Gf::ONE);
    let inv = ctx.inv(lead).unwrap();
    c.iter().map(|&x| ctx.mul(x, inv).raw()).collect()
}

fn permute(word: &[u32], perm: &[u32]) -> Vec<Gf> {
    perm.iter().map(|&j| Gf::from_raw(word[j as usize])).collect()
}

/// Point permutations of a generating set of Aff(A): per-coordinate scalings
/// by a subfield generator, transvections I + a·E_{iζ} and translations a·e_i,
/// with a running over a prime-field basis of the row's subfield.
pub fn generator_permutations(prod: &NestedProduct) -> Vec<Vec<u32>> {
    let ctx = prod.field();
    let m = prod.m();
    let mut gens = Vec::new();
    for i in 0..m {
        let d = prod.sizes()[i];
        let alpha = ctx.subfield_generator(d as u64).unwrap();
        let r = (d as f64).log(ctx.characteristic() as f64).round() as u32;
        let basis: Vec<Gf> = (0..r).map(|e| ctx.pow(alpha, e as u64)).collect();
        if d > 2 {
            let mut t = AffineTransform::identity(m);
            t.matrix.set(i, i, alpha);
            gens.push(t);
        }
        for z in 0..row_limit(prod, i) {
            if z == i {
                continue;
            }
            for &a in &basis {
                let mut t = AffineTransform::identity(m);
                t.matrix.set(i, z, a);
                gens.push(t);
            }
        }
        for &a in &basis {
            let mut t = AffineTransform::identity(m);
            t.shift[i] = a;
            gens.push(t);
        }
    }
    gens.iter()
        .map(|t| t.point_permutation(prod).expect("generators preserve A"))
        .collect()
}

/// Orbits under Aff(A) of projective codewords, with an application budget.
pub struct OrbitEngine<'a> {
    prod: &'a NestedProduct,
    mode: OrbitMode,
    perms: Vec<Vec<u32>>,
    cap: u64,
    used: u64,
}

impl<'a> OrbitEngine<'a> {
    pub fn new(prod: &'a NestedProduct, mode: OrbitMode, cap: u64) -> Result<OrbitEngine<'a>> {
        let perms = match mode {
            OrbitMode::Generators => generator_permutations(prod),
            OrbitMode::FullGroup => {
                let order = aff_group_order(prod);
                if order > BigUint::from(cap) {
                    return Err(Error::TooLarge {
                        what: "group-element applications",
                        needed: to_u128(&order),
                        cap: cap as u128,
                    });
                }
                enumerate_aff(prod, cap)?
                    .par_iter()
                    .map(|t| t.point_permutation(prod).expect("Aff(A) preserves A"))
                    .collect()
            }
        };
        Ok(OrbitEngine {
            prod,
            mode,
            perms,
            cap,
            used: 0,
        })
    }

    fn charge(&mut self, k: u64) -> Result<()> {
        self.used += k;
        if self.used > self.cap {
            return Err(Error::TooLarge {
                what: "group-element applications",
                needed: self.used as u128,
                cap: self.cap as u128,
            });
        }
        Ok(())
    }

    /// Adds the orbit of `seed` to `set` (no-op if already present).
    pub fn extend_orbit(&mut self, seed: &Codeword, set: &mut HashSet<ProjectiveWord>) -> Result<()> {
        let ctx = self.prod.field();
        let start = normalize(ctx, seed.values());
        if set.contains(&start) {
            return Ok(());
        }
        match self.mode {
            OrbitMode::Generators => {
                set.insert(start.clone());
                let mut queue = VecDeque::from([start]);
                while let Some(w) = queue.pop_front() {
                    self.charge(self.perms.len() as u64)?;
                    for p in &self.perms {
                        let next = normalize(ctx, &permute(&w, p));
                        if !set.contains(&next) {
                            set.insert(next.clone());
                            queue.push_back(next);
                        }
                    }
                }
            }
            OrbitMode::FullGroup => {
                self.charge(self.perms.len() as u64)?;
                let found: HashSet<ProjectiveWord> = self
                    .perms
                    .par_iter()
                    .fold(HashSet::new, |mut acc, p| {
                        acc.insert(normalize(ctx, &permute(&start, p)));
                        acc
                    })
                    .reduce(HashSet::new, |mut a, b| {
                        a.extend(b);
                        a
                    });
                set.extend(found);
            }
        }
        Ok(())
    }

    /// Number of group-element applications so far.
    pub fn applications(&self) -> u64 {
        self.used
    }
}

/// The coordinates k (1-based) whose sets N^{(k)} make up N_q(u, A): j+1 and
/// the last coordinate s_t of each block t_{k0} ≤ t < r. When `all_k`, every
/// admissible k from k0 to j+1.
pub fn representative_ks(prod: &NestedProduct, dec: &UDecomposition, all_k: bool) -> Vec<usize> {
    if all_k {
        return (dec.k0..=dec.j + 1).collect();
    }
    if dec.is_full(prod) {
        return vec![dec.j + 1];
    }
    let t0 = prod.block_of(dec.k0).unwrap();
    let mut ks: Vec<usize> = (t0..dec.r).map(|t| prod.s()[t]).collect();
    ks.push(dec.j + 1);
    ks
}

/// N^{(k)} as projective classes: the union of the orbits of c_{h_k^Ω} over
/// AGL(1)-representatives Ω.
pub fn enumerate_minwt_k(
    engine: &mut OrbitEngine<'_>,
    dec: &UDecomposition,
    k: usize,
) -> Result<HashSet<ProjectiveWord>> {
    let prod = engine.prod;
    let dk = prod.d(k) as u64;
    let gap = dec.gap(prod);
    if k < dec.k0 || k > dec.j + 1 || dk < gap {
        return Err(Error::KOutOfRange { k });
    }
    let mut set = HashSet::new();
    for (omega, _) in orbit_reps_omega(prod.field(), dk, (dk - gap) as usize)? {
        let h = poly::build_h(prod, dec, k, &omega)?;
        engine.extend_orbit(&poly::evaluate(prod, &h), &mut set)?;
    }
    Ok(set)
}

/// The minimum-weight codewords of AC_q(u, A), 0 ≤ u ≤ K, built as G_A-orbits.
pub fn enumerate_min_weight(prod: &NestedProduct, u: i64, opts: &EnumOptions) -> Result<MinWeightSet> {
    let scalars = prod.q() - 1;
    if u == 0 {
        let ones: ProjectiveWord = vec![Gf::ONE.raw(); prod.n() as usize].into();
        return Ok(MinWeightSet {
            weight: prod.n() as usize,
            per_k: BTreeMap::from([(0, HashSet::from([ones]))]),
            scalars,
        });
    }
    let dec = prod.decompose_u(u)?;
    let mut engine = OrbitEngine::new(prod, opts.mode, opts.cap)?;
    let mut per_k = BTreeMap::new();
    for k in representative_ks(prod, &dec, opts.all_k) {
        per_k.insert(k, enumerate_minwt_k(&mut engine, &dec, k)?);
    }
    let gap = dec.gap(prod);
    let weight = gap * prod.sizes()[dec.j + 1..].iter().map(|&d| d as u64).product::<u64>();
    Ok(MinWeightSet {
        weight: weight as usize,
        per_k,
        scalars,
    })
}

/// Orbit and stabilizer of a codeword under G_A, by applying every element.
///
/// Returns (|orbit|, |stabilizer|).
pub fn orbit_stabilizer(prod: &NestedProduct, c: &Codeword, cap: u64) -> Result<(u64, u64)> {
    let ctx = prod.field();
    let total = g_a_order(prod);
    if total > BigUint::from(cap) {
        return Err(Error::TooLarge {
            what: "orbit-stabilizer scan",
            needed: to_u128(&total),
            cap: cap as u128,
        });
    }
    let perms: Vec<Vec<u32>> = enumerate_aff(prod, cap)?
        .par_iter()
        .map(|t| t.point_permutation(prod).expect("Aff(A) preserves A"))
        .collect();
    let scalars: Vec<Gf> = ctx.nonzero_elements().collect();
    let (orbit, stab) = perms
        .par_iter()
        .fold(
            || (HashSet::new(), 0u64),
            |(mut orbit, mut stab), p| {
                for &g in &scalars {
                    let img = act_codeword(ctx, g, p, c);
                    if &img == c {
                        stab += 1;
                    }
                    orbit.insert(img);
                }
                (orbit, stab)
            },
        )
        .reduce(
            || (HashSet::new(), 0u64),
            |(mut a, s1), (b, s2)| {
                a.extend(b);
                (a, s1 + s2)
            },
        );
    Ok((orbit.len() as u64, stab))
}

/// Σ over orbit representatives of 1/|Δ_Ω|, as an exact fraction (num, den).
pub fn reciprocal_stabilizer_sum(ctx: &FieldCtx, d: u64, s: usize) -> Result<num_rational::BigRational> {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let mut acc = BigRational::from_integer(BigInt::from(0));
    for (omega, _) in orbit_reps_omega(ctx, d, s)? {
        let st = stab_delta_omega(ctx, d, &omega)?.len();
        acc += BigRational::new(BigInt::from(1), BigInt::from(st));
    }
    Ok(acc)
}

/// C(d, s) / (d(d − 1)), the closed form of [`reciprocal_stabilizer_sum`].
pub fn reciprocal_stabilizer_closed_form(d: u64, s: usize) -> num_rational::BigRational {
    use num_bigint::BigInt;
    let num = binomial(BigInt::from(d), BigInt::from(s));
    num_rational::BigRational::new(num, BigInt::from(d * (d - 1)))
}
