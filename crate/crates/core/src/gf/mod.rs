//! Finite field GF(p^R) in discrete-log form, with its lattice of subfields.
//!
//! Elements are stored as a single `u32`: `0` is the zero element and `k + 1`
//! stands for `g^k`, where `g` is the primitive element of the context. This
//! raw value doubles as the canonical "field order" index used to encode
//! codewords. Addition goes through a Zech logarithm table, so every
//! operation is a handful of table lookups.
//!
//! The subfield of size `d = p^r` (`r | R`) is `{0} ∪ <g_d>` with the
//! canonical generator `g_d = g^((q-1)/(d-1))`.

mod prime_poly;
mod table;

pub use table::PolyTable;

use crate::error::{Error, Result};
use std::fmt;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// A field element, meaningful only together with its [`FieldCtx`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf(u32);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    /// Index in the canonical field order (0, g^0, g^1, ...).
    #[inline]
    pub fn raw(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn from_raw(raw: u32) -> Gf {
        Gf(raw)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Discrete logarithm with respect to the primitive element.
    #[inline]
    pub fn log(self) -> Option<u32> {
        self.0.checked_sub(1)
    }
}

/// Arithmetic context for GF(p^R).
#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    /// Packed polynomial-basis coordinates of the primitive element.
    primitive_packed: u32,
    /// `exp[k]` = packed coordinates of g^k, k < q - 1.
    exp: Vec<u32>,
    /// Inverse of `exp`; `log[0]` is unused.
    log: Vec<u32>,
    /// `zech[k]` = raw value of 1 + g^k.
    zech: Vec<u32>,
    subfield_degrees: Vec<u32>,
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u32;
    while (i as u64) * (i as u64) <= n as u64 {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

fn to_digits(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    out
}

fn from_digits(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl FieldCtx {
    /// GF(p^R) with the least primitive monic polynomial of degree R as modulus.
    ///
    /// Candidates `x^R + c_{R-1} x^{R-1} + ... + c_0` are tried in increasing
    /// order of the base-p integer `c_0 + c_1 p + ...`, which makes the
    /// element order reproducible across runs.
    pub fn new(p: u32, degree: u32) -> Result<FieldCtx> {
        let order = Self::check_size(p, degree)?;
        let r = degree as usize;
        for v in 1..order {
            let mut coeffs = to_digits(v, p, r);
            if coeffs[0] == 0 {
                continue;
            }
            coeffs.push(1);
            if !prime_poly::is_irreducible(&coeffs, p) {
                continue;
            }
            let x = prime_poly::rem(&[0, 1], &coeffs, p);
            let x_packed = from_digits(&pad(&x, r), p);
            if let Some(ctx) = Self::build(p, degree, coeffs, x_packed) {
                return Ok(ctx);
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    /// GF(p^R) defined by a user-supplied modulus, coefficients low to high.
    pub fn with_modulus(p: u32, degree: u32, coeffs: &[u32]) -> Result<FieldCtx> {
        let order = Self::check_size(p, degree)?;
        let mut modulus: Vec<u32> = coeffs.to_vec();
        prime_poly::trim(&mut modulus);
        if modulus.len() != degree as usize + 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadParameters(format!(
                "modulus {coeffs:?} is not a degree-{degree} polynomial over GF({p})"
            )));
        }
        // make monic
        let lead = modulus[degree as usize];
        if lead != 1 {
            let inv = prime_poly::inv_mod(lead, p);
            for c in &mut modulus {
                *c = (*c as u64 * inv as u64 % p as u64) as u32;
            }
        }
        if !prime_poly::is_irreducible(&modulus, p) {
            return Err(Error::NotIrreducible(coeffs.to_vec()));
        }
        for candidate in 1..order {
            if let Some(ctx) = Self::build(p, degree, modulus.clone(), candidate) {
                return Ok(ctx);
            }
        }
        Err(Error::NotIrreducible(coeffs.to_vec()))
    }

    /// Parses a field spec such as `"2^2"` or `"7"`.
    pub fn from_spec(spec: &str, table: Option<&PolyTable>) -> Result<FieldCtx> {
        let (p, degree) = parse_field_spec(spec)?;
        match table.and_then(|t| t.get(p, degree)) {
            Some(coeffs) => FieldCtx::with_modulus(p, degree, coeffs),
            None => FieldCtx::new(p, degree),
        }
    }

    fn check_size(p: u32, degree: u32) -> Result<u32> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if degree == 0 {
            return Err(Error::BadParameters("extension degree must be positive".into()));
        }
        match (p as u64).checked_pow(degree) {
            Some(q) if q <= MAX_FIELD_ORDER => Ok(q as u32),
            _ => Err(Error::FieldTooLarge { p, degree }),
        }
    }

    /// Builds the tables if `generator` has multiplicative order q - 1.
    fn build(p: u32, degree: u32, modulus: Vec<u32>, generator: u32) -> Option<FieldCtx> {
        let r = degree as usize;
        let order = p.pow(degree);
        let units = (order - 1) as usize;
        let gen_digits = to_digits(generator, p, r);
        let mut exp = Vec::with_capacity(units);
        let mut log = vec![u32::MAX; order as usize];
        let mut cur = 1u32;
        for k in 0..units {
            if log[cur as usize] != u32::MAX {
                return None;
            }
            log[cur as usize] = k as u32;
            exp.push(cur);
            cur = if r > 1 && generator == p {
                mul_by_x(cur, &modulus, p, r)
            } else {
                let prod = prime_poly::mulmod(&to_digits(cur, p, r), &gen_digits, &modulus, p);
                from_digits(&pad(&prod, r), p)
            };
        }
        if cur != 1 {
            return None;
        }
        let zech = (0..units)
            .map(|k| {
                let mut digits = to_digits(exp[k], p, r);
                digits[0] = (digits[0] + 1) % p;
                let v = from_digits(&digits, p);
                if v == 0 {
                    0
                } else {
                    log[v as usize] + 1
                }
            })
            .collect();
        let subfield_degrees = (1..=degree).filter(|d| degree.is_multiple_of(*d)).collect();
        Some(FieldCtx {
            p,
            degree,
            order,
            modulus,
            primitive_packed: generator,
            exp,
            log,
            zech,
            subfield_degrees,
        })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of elements q = p^R.
    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Defining polynomial, coefficients low to high (monic).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Divisors r of R, ascending; the subfields have sizes p^r.
    pub fn subfield_degrees(&self) -> &[u32] {
        &self.subfield_degrees
    }

    /// Subfield sizes p^r, ascending.
    pub fn subfield_sizes(&self) -> Vec<u32> {
        self.subfield_degrees.iter().map(|&r| self.p.pow(r)).collect()
    }

    pub fn is_subfield_size(&self, d: u64) -> bool {
        self.subfield_sizes().iter().any(|&s| s as u64 == d)
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.order).map(Gf)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Gf> {
        (1..self.order).map(Gf)
    }

    #[inline]
    fn units(&self) -> u32 {
        self.order - 1
    }

    /// g^e for any integer e.
    #[inline]
    pub fn gen_pow(&self, e: i64) -> Gf {
        Gf(e.rem_euclid(self.units() as i64) as u32 + 1)
    }

    pub fn primitive(&self) -> Gf {
        self.gen_pow(1)
    }

    /// Element of the prime subfield represented by the integer n.
    pub fn from_int(&self, n: i64) -> Gf {
        let v = n.rem_euclid(self.p as i64) as u32;
        self.from_packed(v)
    }

    /// Element with the given packed polynomial-basis coordinates.
    pub fn from_packed(&self, packed: u32) -> Gf {
        if packed == 0 {
            Gf::ZERO
        } else {
            Gf(self.log[packed as usize] + 1)
        }
    }

    pub fn packed(&self, a: Gf) -> u32 {
        match a.log() {
            None => 0,
            Some(k) => self.exp[k as usize],
        }
    }

    /// Polynomial-basis coordinates of `a`, low to high.
    pub fn coordinates(&self, a: Gf) -> Vec<u32> {
        to_digits(self.packed(a), self.p, self.degree as usize)
    }

    #[inline]
    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        match (a.log(), b.log()) {
            (None, _) => b,
            (_, None) => a,
            (Some(i), Some(j)) => {
                let units = self.units();
                let k = if j >= i { j - i } else { j + units - i };
                let z = self.zech[k as usize];
                if z == 0 {
                    Gf::ZERO
                } else {
                    let e = i + (z - 1);
                    Gf(if e >= units { e - units } else { e } + 1)
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Gf) -> Gf {
        if self.p == 2 {
            return a;
        }
        match a.log() {
            None => a,
            Some(i) => {
                let units = self.units();
                let e = i + units / 2;
                Gf(if e >= units { e - units } else { e } + 1)
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: Gf, b: Gf) -> Gf {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        match (a.log(), b.log()) {
            (Some(i), Some(j)) => {
                let units = self.units();
                let e = i + j;
                Gf(if e >= units { e - units } else { e } + 1)
            }
            _ => Gf::ZERO,
        }
    }

    pub fn inv(&self, a: Gf) -> Option<Gf> {
        a.log().map(|i| self.gen_pow(-(i as i64)))
    }

    /// a / b; `None` when b = 0.
    pub fn div(&self, a: Gf, b: Gf) -> Option<Gf> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// a^e with the convention 0^0 = 1.
    pub fn pow(&self, a: Gf, e: u64) -> Gf {
        match a.log() {
            None if e == 0 => Gf::ONE,
            None => Gf::ZERO,
            Some(i) => {
                let units = self.units() as u64;
                Gf(((i as u64 * (e % units)) % units) as u32 + 1)
            }
        }
    }

    pub fn neg_one(&self) -> Gf {
        self.neg(Gf::ONE)
    }

    pub fn sum<I: IntoIterator<Item = Gf>>(&self, items: I) -> Gf {
        items.into_iter().fold(Gf::ZERO, |acc, x| self.add(acc, x))
    }

    fn check_subfield(&self, d: u64) -> Result<u32> {
        if self.is_subfield_size(d) {
            Ok(d as u32)
        } else {
            Err(Error::NotASubfieldSize(d))
        }
    }

    /// Exponent step (q-1)/(d-1) between consecutive powers of g_d.
    fn subfield_step(&self, d: u32) -> u32 {
        self.units() / (d - 1)
    }

    /// Canonical generator g_d = g^((q-1)/(d-1)) of the subfield of size d.
    pub fn subfield_generator(&self, d: u64) -> Result<Gf> {
        let d = self.check_subfield(d)?;
        Ok(self.gen_pow(self.subfield_step(d) as i64))
    }

    /// Whether `a` lies in the subfield of size `d` (which must be a subfield size).
    #[inline]
    pub fn in_subfield(&self, d: u32, a: Gf) -> bool {
        match a.log() {
            None => true,
            Some(k) => k % self.subfield_step(d) == 0,
        }
    }

    /// Position of `a` in [`FieldCtx::subfield_elements`] order, if it lies in the subfield.
    #[inline]
    pub fn subfield_position(&self, d: u32, a: Gf) -> Option<usize> {
        match a.log() {
            None => Some(0),
            Some(k) => {
                let step = self.subfield_step(d);
                (k % step == 0).then(|| (k / step) as usize + 1)
            }
        }
    }

    /// The subfield of size `d`: 0 first, then g_d^0, g_d^1, ..., g_d^(d-2).
    pub fn subfield_elements(&self, d: u64) -> Result<Vec<Gf>> {
        let d = self.check_subfield(d)?;
        let step = self.subfield_step(d);
        Ok(std::iter::once(Gf::ZERO)
            .chain((0..d - 1).map(|i| Gf(i * step + 1)))
            .collect())
    }

    /// Σ_{a in F_d} a^s for 0 <= s <= d-1 (with 0^0 = 1).
    pub fn power_sum(&self, d: u64, s: i64) -> Result<Gf> {
        let d = self.check_subfield(d)?;
        if s < 0 || s > d as i64 - 1 {
            return Err(Error::ExponentOutOfRange {
                exponent: s,
                max: d as i64 - 1,
            });
        }
        Ok(if s == d as i64 - 1 {
            self.neg_one()
        } else {
            Gf::ZERO
        })
    }

    /// Printable symbol: `0`, `1` or `g^k`.
    pub fn symbol(&self, a: Gf) -> String {
        match a.log() {
            None => "0".to_string(),
            Some(0) => "1".to_string(),
            Some(k) => format!("g^{k}"),
        }
    }

    /// Inverse of [`FieldCtx::symbol`]; also accepts `g` and `g^0`.
    pub fn parse_symbol(&self, s: &str) -> Result<Gf> {
        let s = s.trim();
        match s {
            "0" => Ok(Gf::ZERO),
            "1" => Ok(Gf::ONE),
            "g" => Ok(self.primitive()),
            _ => {
                let k = s
                    .strip_prefix("g^")
                    .and_then(|e| e.trim().parse::<i64>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad field element symbol {s:?}")))?;
                Ok(self.gen_pow(k))
            }
        }
    }

    /// Evaluates a polynomial with prime-field coefficients (low to high) at `x`.
    fn eval_prime_poly(&self, coeffs: &[u32], x: Gf) -> Gf {
        coeffs.iter().rev().fold(Gf::ZERO, |acc, &c| {
            self.add(self.mul(acc, x), self.from_int(c as i64))
        })
    }

    /// Canonical embedding of a smaller field of the same characteristic.
    ///
    /// Returns the image of every element of `small`, indexed by raw value.
    /// The image of the small field's polynomial variable is the first root
    /// of its modulus in field order.
    pub fn embedding_from(&self, small: &FieldCtx) -> Result<Vec<Gf>> {
        if small.p != self.p || !self.degree.is_multiple_of(small.degree) {
            return Err(Error::BadParameters(format!(
                "GF({}^{}) does not embed into GF({}^{})",
                small.p, small.degree, self.p, self.degree
            )));
        }
        let beta = self
            .subfield_elements(small.order as u64)?
            .into_iter()
            .find(|&x| self.eval_prime_poly(&small.modulus, x).is_zero())
            .expect("a subfield of the right size contains a root of the modulus");
        // image of the small primitive element, from its coordinates in the small basis
        let coords = to_digits(small.primitive_packed, small.p, small.degree as usize);
        let image_gen = coords.iter().enumerate().fold(Gf::ZERO, |acc, (i, &c)| {
            self.add(acc, self.mul(self.from_int(c as i64), self.pow(beta, i as u64)))
        });
        Ok(small
            .elements()
            .map(|a| match a.log() {
                None => Gf::ZERO,
                Some(k) => self.pow(image_gen, k as u64),
            })
            .collect())
    }
}

fn pad(digits: &[u32], len: usize) -> Vec<u32> {
    let mut out = digits.to_vec();
    out.resize(len, 0);
    out
}

/// x·a modulo the monic modulus, all in packed form.
fn mul_by_x(a: u32, modulus: &[u32], p: u32, r: usize) -> u32 {
    let mut digits = to_digits(a, p, r);
    let top = digits[r - 1];
    for i in (1..r).rev() {
        digits[i] = digits[i - 1];
    }
    digits[0] = 0;
    if top != 0 {
        for i in 0..r {
            let sub = (top as u64 * modulus[i] as u64 % p as u64) as u32;
            digits[i] = (digits[i] + p - sub) % p;
        }
    }
    from_digits(&digits, p)
}

/// Parses `"p^R"` or `"p"` into (p, R).
pub fn parse_field_spec(spec: &str) -> Result<(u32, u32)> {
    let spec = spec.trim();
    let (p, r) = match spec.split_once('^') {
        Some((p, r)) => (p.trim(), r.trim()),
        None => (spec, "1"),
    };
    let bad = || Error::Parse(format!("bad field spec {spec:?}, expected p^R"));
    let p = p.parse::<u32>().map_err(|_| bad())?;
    let r = r.parse::<u32>().map_err(|_| bad())?;
    Ok((p, r))
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.degree)
    }
}
