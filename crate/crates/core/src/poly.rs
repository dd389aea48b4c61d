//! Reduced polynomials modulo I(A) = ⟨X_i^{d_i} − X_i⟩ and the evaluation map.
//!
//! Polynomials do not carry their domain; every operation takes the
//! [`NestedProduct`] explicitly. A [`ReducedPoly`] is only meaningful together
//! with the product it was reduced against.

use crate::domain::{NestedProduct, UDecomposition};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Gf};
use crate::groups::AffineTransform;
use std::collections::BTreeMap;
use std::fmt;

/// Total degree; the zero polynomial has degree [`Degree::NegInfinity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u64),
}

impl Degree {
    /// Whether a polynomial of this degree lies in S_{≤u}.
    pub fn at_most(self, u: i64) -> bool {
        match self {
            Degree::NegInfinity => true,
            Degree::Finite(d) => u >= 0 && d <= u as u64,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Exponent vector → nonzero coefficient, every exponent below its d_i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ReducedPoly {
    terms: BTreeMap<Vec<u32>, Gf>,
}

/// A vector of values in the domain's point order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    values: Vec<Gf>,
}

impl Codeword {
    pub fn new(values: Vec<Gf>) -> Codeword {
        Codeword { values }
    }

    pub fn zero(n: usize) -> Codeword {
        Codeword {
            values: vec![Gf::ZERO; n],
        }
    }

    pub fn values(&self) -> &[Gf] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.values.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn support(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Codeword) -> Codeword {
        Codeword::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| ctx.add(a, b))
                .collect(),
        )
    }

    pub fn scale(&self, ctx: &FieldCtx, c: Gf) -> Codeword {
        Codeword::new(self.values.iter().map(|&a| ctx.mul(c, a)).collect())
    }

    /// Comma-separated element symbols.
    pub fn to_symbols(&self, ctx: &FieldCtx) -> String {
        let parts: Vec<String> = self.values.iter().map(|&a| ctx.symbol(a)).collect();
        parts.join(",")
    }
}

/// Reduces a single exponent modulo X^d = X.
#[inline]
fn reduce_exp(e: u64, d: u32) -> u32 {
    if e == 0 {
        0
    } else {
        ((e - 1) % (d as u64 - 1)) as u32 + 1
    }
}

impl ReducedPoly {
    pub fn zero() -> ReducedPoly {
        ReducedPoly::default()
    }

    pub fn constant(prod: &NestedProduct, c: Gf) -> ReducedPoly {
        Self::monomial(prod, &vec![0; prod.m()], c)
    }

    pub fn one(prod: &NestedProduct) -> ReducedPoly {
        Self::constant(prod, Gf::ONE)
    }

    /// c·X^e, reduced.
    pub fn monomial(prod: &NestedProduct, exps: &[u64], c: Gf) -> ReducedPoly {
        reduce(prod, &[(exps.to_vec(), c)])
    }

    /// The variable X_i (0-based index).
    pub fn var(prod: &NestedProduct, i: usize) -> ReducedPoly {
        let mut e = vec![0u64; prod.m()];
        e[i] = 1;
        Self::monomial(prod, &e, Gf::ONE)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Gf)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Gf {
        self.terms.get(exps).copied().unwrap_or(Gf::ZERO)
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u64).sum())
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    fn add_term(&mut self, ctx: &FieldCtx, exps: Vec<u32>, c: Gf) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = ctx.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, ctx: &FieldCtx, other: &ReducedPoly) -> ReducedPoly {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(ctx, e.clone(), c);
        }
        out
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &ReducedPoly) -> ReducedPoly {
        self.add(ctx, &other.scale(ctx, ctx.neg_one()))
    }

    pub fn scale(&self, ctx: &FieldCtx, c: Gf) -> ReducedPoly {
        if c.is_zero() {
            return ReducedPoly::zero();
        }
        ReducedPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, &a)| (e.clone(), ctx.mul(a, c)))
                .collect(),
        }
    }

    /// Product, reduced against `prod`.
    pub fn mul(&self, prod: &NestedProduct, other: &ReducedPoly) -> ReducedPoly {
        let ctx = prod.field();
        let d = prod.sizes();
        let mut out = ReducedPoly::zero();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<u32> = ea
                    .iter()
                    .zip(eb)
                    .zip(d)
                    .map(|((&a, &b), &di)| if a + b >= di { a + b - (di - 1) } else { a + b })
                    .collect();
                out.add_term(ctx, e, ctx.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow(&self, prod: &NestedProduct, mut e: u64) -> ReducedPoly {
        let mut acc = ReducedPoly::one(prod);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(prod, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(prod, &base);
            }
        }
        acc
    }

    /// f(point).
    pub fn eval_at(&self, ctx: &FieldCtx, point: &[Gf]) -> Gf {
        ctx.sum(self.terms.iter().map(|(e, &c)| {
            e.iter()
                .zip(point)
                .fold(c, |acc, (&k, &x)| ctx.mul(acc, ctx.pow(x, k as u64)))
        }))
    }

    /// Renders in the `c*X1^e1*X2^e2 + ...` text format.
    pub fn display(&self, ctx: &FieldCtx) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let mut parts = vec![ctx.symbol(c)];
                for (i, &k) in e.iter().enumerate() {
                    match k {
                        0 => {}
                        1 => parts.push(format!("X{}", i + 1)),
                        _ => parts.push(format!("X{}^{k}", i + 1)),
                    }
                }
                if parts.len() > 1 && parts[0] == "1" {
                    parts.remove(0);
                }
                parts.join("*")
            })
            .collect();
        terms.join(" + ")
    }

    /// Parses the [`ReducedPoly::display`] format; exponents may exceed d_i
    /// and repeated factors multiply, the result is reduced.
    pub fn parse(prod: &NestedProduct, text: &str) -> Result<ReducedPoly> {
        let ctx = prod.field();
        let mut raw = Vec::new();
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in {text:?}")));
            }
            let mut coeff = Gf::ONE;
            let mut exps = vec![0u64; prod.m()];
            for factor in term.split('*') {
                let factor = factor.trim();
                if let Some(rest) = factor.strip_prefix('X') {
                    let (idx, e) = match rest.split_once('^') {
                        Some((i, e)) => (i, e),
                        None => (rest, "1"),
                    };
                    let bad = || Error::Parse(format!("bad factor {factor:?}"));
                    let idx: usize = idx.trim().parse().map_err(|_| bad())?;
                    let e: u64 = e.trim().parse().map_err(|_| bad())?;
                    if idx == 0 || idx > prod.m() {
                        return Err(Error::IndexOutOfRange {
                            index: idx,
                            max: prod.m(),
                        });
                    }
                    exps[idx - 1] += e;
                } else {
                    coeff = ctx.mul(coeff, ctx.parse_symbol(factor)?);
                }
            }
            raw.push((exps, coeff));
        }
        Ok(reduce(prod, &raw))
    }
}

/// Canonical representative of Σ c·X^e, replacing X_i^{d_i} by X_i.
pub fn reduce(prod: &NestedProduct, raw: &[(Vec<u64>, Gf)]) -> ReducedPoly {
    let ctx = prod.field();
    let mut out = ReducedPoly::zero();
    for (exps, c) in raw {
        assert_eq!(exps.len(), prod.m(), "exponent vector length must equal m");
        let e: Vec<u32> = exps
            .iter()
            .zip(prod.sizes())
            .map(|(&e, &d)| reduce_exp(e, d))
            .collect();
        out.add_term(ctx, e, *c);
    }
    out
}

/// Per-coordinate power tables: `tables[i][pos][e]` = a^e for the `pos`-th
/// element a of F_{d_i} (with 0^0 = 1).
fn power_tables(prod: &NestedProduct) -> Vec<Vec<Vec<Gf>>> {
    let ctx = prod.field();
    prod.sizes()
        .iter()
        .map(|&d| {
            ctx.subfield_elements(d as u64)
                .expect("coordinate sizes are subfield sizes")
                .into_iter()
                .map(|a| (0..d as u64).map(|e| ctx.pow(a, e)).collect())
                .collect()
        })
        .collect()
}

/// Ev(f) = (f(P_1), …, f(P_n)).
pub fn evaluate(prod: &NestedProduct, f: &ReducedPoly) -> Codeword {
    let ctx = prod.field();
    let tables = power_tables(prod);
    let n = prod.n() as usize;
    let m = prod.m();
    let mut values = vec![Gf::ZERO; n];
    let mut pos = vec![0usize; m];
    for v in values.iter_mut() {
        *v = ctx.sum(f.terms.iter().map(|(e, &c)| {
            e.iter()
                .enumerate()
                .fold(c, |acc, (i, &k)| ctx.mul(acc, tables[i][pos[i]][k as usize]))
        }));
        for i in (0..m).rev() {
            pos[i] += 1;
            if pos[i] < prod.sizes()[i] as usize {
                break;
            }
            pos[i] = 0;
        }
    }
    Codeword::new(values)
}

/// The unique reduced polynomial whose evaluation is `c` (inverse of Ev).
///
/// Works one axis at a time: along a coordinate with subfield F_d the values
/// v_a determine coefficients c_0 = v_0 and c_e = −Σ_a v_a a^{d−1−e} (e ≥ 1).
pub fn interpolate(prod: &NestedProduct, c: &Codeword) -> Result<ReducedPoly> {
    let ctx = prod.field();
    let n = prod.n() as usize;
    if c.len() != n {
        return Err(Error::BadParameters(format!(
            "codeword length {} does not match n = {n}",
            c.len()
        )));
    }
    let tables = power_tables(prod);
    let d = prod.sizes();
    let mut data = c.values.clone();
    let mut stride = 1usize;
    for i in (0..prod.m()).rev() {
        let di = d[i] as usize;
        let block = stride * di;
        let mut fiber = vec![Gf::ZERO; di];
        for base in (0..n).step_by(block) {
            for off in 0..stride {
                for (a, slot) in fiber.iter_mut().enumerate() {
                    *slot = data[base + off + a * stride];
                }
                data[base + off] = fiber[0];
                for e in 1..di {
                    let s = ctx.sum(
                        fiber
                            .iter()
                            .enumerate()
                            .map(|(a, &v)| ctx.mul(v, tables[i][a][di - 1 - e])),
                    );
                    data[base + off + e * stride] = ctx.neg(s);
                }
            }
        }
        stride = block;
    }
    let mut out = ReducedPoly::zero();
    for (idx, &coef) in data.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        let mut rest = idx;
        let mut e = vec![0u32; prod.m()];
        for i in (0..prod.m()).rev() {
            e[i] = (rest % d[i] as usize) as u32;
            rest /= d[i] as usize;
        }
        out.terms.insert(e, coef);
    }
    Ok(out)
}

/// Reduced representative of f(M·X + b).
///
/// Substitutes the linear form L_i = Σ_ζ M_{iζ} X_ζ + b_i for each X_i, with
/// powers of L_i built by repeated reduced multiplication.
pub fn compose_affine(
    prod: &NestedProduct,
    f: &ReducedPoly,
    t: &AffineTransform,
) -> Result<ReducedPoly> {
    let m = prod.m();
    if t.dim() != m {
        return Err(Error::InvalidTransform(format!(
            "transform acts on {} coordinates, domain has {m}",
            t.dim()
        )));
    }
    let ctx = prod.field();
    let forms: Vec<ReducedPoly> = (0..m)
        .map(|i| {
            let mut l = ReducedPoly::constant(prod, t.shift()[i]);
            for z in 0..m {
                let a = t.matrix().get(i, z);
                if !a.is_zero() {
                    l = l.add(ctx, &ReducedPoly::var(prod, z).scale(ctx, a));
                }
            }
            l
        })
        .collect();
    // powers[i][e] = L_i^e for e < d_i
    let powers: Vec<Vec<ReducedPoly>> = forms
        .iter()
        .zip(prod.sizes())
        .map(|(l, &d)| {
            let mut v = vec![ReducedPoly::one(prod)];
            for e in 1..d as usize {
                let next = v[e - 1].mul(prod, l);
                v.push(next);
            }
            v
        })
        .collect();
    let mut out = ReducedPoly::zero();
    for (e, &c) in &f.terms {
        let mut term = ReducedPoly::constant(prod, c);
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                term = term.mul(prod, &powers[i][k as usize]);
            }
        }
        out = out.add(ctx, &term);
    }
    Ok(out)
}

/// h_k^Ω = ∏_{i ≤ j+1, i ≠ k} (1 − X_i^{d_i−1}) · ∏_{ω ∈ Ω} (X_k − ω).
///
/// `k` is 1-based. Its evaluation is a minimum-weight codeword of AC_q(u, A).
pub fn build_h(
    prod: &NestedProduct,
    dec: &UDecomposition,
    k: usize,
    omega: &[Gf],
) -> Result<ReducedPoly> {
    let ctx = prod.field();
    let gap = dec.gap(prod);
    if k == 0 || k > dec.j + 1 || (prod.d(k) as u64) < gap {
        return Err(Error::KOutOfRange { k });
    }
    let dk = prod.d(k);
    let expected = (dk as u64 - gap) as usize;
    if omega.len() != expected {
        return Err(Error::BadOmegaSize {
            expected,
            got: omega.len(),
        });
    }
    let mut sorted = omega.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != omega.len() {
        return Err(Error::BadParameters("omega has repeated elements".into()));
    }
    if omega.iter().find(|&&w| !ctx.in_subfield(dk, w)).is_some() {
        return Err(Error::OmegaNotInSubfield(dk as u64));
    }
    let one = ReducedPoly::one(prod);
    let mut h = one.clone();
    for i in 1..=dec.j + 1 {
        if i == k {
            continue;
        }
        let mut e = vec![0u64; prod.m()];
        e[i - 1] = prod.d(i) as u64 - 1;
        let factor = one.sub(ctx, &ReducedPoly::monomial(prod, &e, Gf::ONE));
        h = h.mul(prod, &factor);
    }
    let xk = ReducedPoly::var(prod, k - 1);
    for &w in omega {
        let factor = xk.sub(ctx, &ReducedPoly::constant(prod, w));
        h = h.mul(prod, &factor);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn prod(p: u32, r: u32, spec: &str) -> NestedProduct {
        NestedProduct::from_spec(Arc::new(FieldCtx::new(p, r).unwrap()), spec).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let a = prod(2, 1, "2,2");
        let x1sq = ReducedPoly::monomial(&a, &[2, 0], Gf::ONE);
        assert_eq!(x1sq, ReducedPoly::var(&a, 0));

        let b = prod(2, 2, "2,2,4");
        let x3 = ReducedPoly::monomial(&b, &[0, 0, 5], Gf::ONE);
        assert_eq!(x3, ReducedPoly::monomial(&b, &[0, 0, 2], Gf::ONE));
        let raw_vals: Vec<Gf> = b
            .points()
            .unwrap()
            .iter()
            .map(|p| b.field().pow(p[2], 5))
            .collect();
        assert_eq!(evaluate(&b, &x3).values(), &raw_vals[..]);

        assert_eq!(ReducedPoly::one(&b).degree(), Degree::Finite(0));
        assert_eq!(ReducedPoly::zero().degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn evaluation_examples() {
        let a = prod(2, 1, "2,2");
        let ctx = a.field();
        let one = ReducedPoly::one(&a);
        assert_eq!(evaluate(&a, &one).weight(), 4);
        let f = one.sub(ctx, &ReducedPoly::var(&a, 0));
        let c = evaluate(&a, &f);
        assert_eq!(c.values(), &[Gf::ONE, Gf::ONE, Gf::ZERO, Gf::ZERO]);
        assert_eq!(c.weight(), 2);
        assert_eq!(c.support(), vec![0, 1]);
        assert_eq!(evaluate(&a, &ReducedPoly::zero()).weight(), 0);

        let b = prod(2, 2, "2,2,4");
        assert_eq!(evaluate(&b, &ReducedPoly::one(&b)).weight(), 16);
    }

    #[test]
    fn interpolation_inverts_evaluation() {
        for (p, r, spec) in [(2, 2, "2,2,4"), (3, 2, "3,9"), (5, 1, "5"), (2, 3, "2,8")] {
            let a = prod(p, r, spec);
            let ctx = a.field();
            let g = ctx.primitive();
            let f = reduce(
                &a,
                &[
                    (vec![1; a.m()], g),
                    (vec![0; a.m()], Gf::ONE),
                    ((0..a.m() as u64).collect(), ctx.gen_pow(3)),
                ],
            );
            let c = evaluate(&a, &f);
            assert_eq!(interpolate(&a, &c).unwrap(), f, "{spec}");
        }
    }

    #[test]
    fn display_and_parse_round_trip() {
        let a = prod(3, 2, "3,9");
        let ctx = a.field();
        let f = ReducedPoly::parse(&a, "g^3*X1^2*X2 + 1 + X2^10").unwrap();
        assert_eq!(f.coeff(&[0, 2]), Gf::ONE); // X2^10 = X2^2
        let text = f.display(ctx);
        assert_eq!(ReducedPoly::parse(&a, &text).unwrap(), f);
        assert_eq!(ReducedPoly::zero().display(ctx), "0");
        assert!(ReducedPoly::parse(&a, "X3").is_err());
        assert!(ReducedPoly::parse(&a, "1 + + X1").is_err());
    }

    #[test]
    fn h_examples() {
        let a = prod(2, 2, "2,2,4");
        let dec = a.decompose_u(3).unwrap();
        let h = build_h(&a, &dec, 3, &[Gf::ZERO]).unwrap();
        assert_eq!(h.degree(), Degree::Finite(3));
        assert_eq!(evaluate(&a, &h).weight(), 3);

        let b = prod(3, 2, "3,9");
        let dec = b.decompose_u(8).unwrap();
        let h = build_h(&b, &dec, 1, &[]).unwrap();
        let ctx = b.field();
        let expected = ReducedPoly::one(&b).sub(ctx, &ReducedPoly::monomial(&b, &[0, 8], Gf::ONE));
        assert_eq!(h, expected);
        assert_eq!(evaluate(&b, &h).weight(), 3);

        assert_eq!(
            build_h(&b, &dec, 1, &[Gf::ONE]).unwrap_err(),
            Error::BadOmegaSize {
                expected: 0,
                got: 1
            }
        );
        let dec = b.decompose_u(9).unwrap();
        let g = ctx.primitive();
        assert_eq!(
            build_h(&b, &dec, 1, &[g]).unwrap_err(),
            Error::OmegaNotInSubfield(3)
        );
        assert_eq!(build_h(&b, &dec, 3, &[]).unwrap_err(), Error::KOutOfRange { k: 3 });
    }

    #[test]
    fn full_branch_h_is_independent_of_k() {
        let a = prod(2, 2, "2,2,4");
        let ctx = a.field();
        let dec = a.decompose_u(5).unwrap();
        assert!(dec.is_full(&a));
        let mut expected = ReducedPoly::one(&a);
        for i in 0..3 {
            let mut e = vec![0u64; 3];
            e[i] = a.sizes()[i] as u64 - 1;
            let f = ReducedPoly::one(&a).sub(ctx, &ReducedPoly::monomial(&a, &e, Gf::ONE));
            expected = expected.mul(&a, &f);
        }
        for k in 1..=3 {
            let omega: Vec<Gf> = ctx.subfield_elements(a.d(k) as u64).unwrap()[1..].to_vec();
            assert_eq!(build_h(&a, &dec, k, &omega).unwrap(), expected);
        }
    }
}
