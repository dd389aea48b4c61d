//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact.

use nested_ac::codes::{self, DEFAULT_SCAN_CAP};
use nested_ac::counting::{self, count_minwt, count_minwt_k};
use nested_ac::domain::NestedProduct;
use nested_ac::gf::{FieldCtx, Gf};
use nested_ac::groups::{
    self, act, act_codeword, AffineTransform, BlockMatrix, EnumOptions, GroupElem, OrbitEngine,
    OrbitMode,
};
use nested_ac::poly::{self, reduce, Degree, ReducedPoly};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashSet};
use std::sync::{Arc, OnceLock};
use std::time::Instant;

type Check = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Check);

const SEED: u64 = 0x5eed_2024;
const PROPERTY_CASES: usize = 10_000;
const AFF_BRUTE_FORCE_LIMIT: u64 = 1_000_000;
/// Large enough for RM_4(u, 2) at u = 6 (4^16 codewords).
const SPECIALIZATION_SCAN_CAP: u64 = 1 << 34;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn field(p: u32, r: u32) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::new(p, r).unwrap())
}

fn prod(p: u32, r: u32, spec: &str) -> NestedProduct {
    NestedProduct::from_spec(field(p, r), spec).unwrap()
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// All nested products with q ≤ 9, m ≤ 3 and n ≤ 64.
fn family() -> Vec<NestedProduct> {
    let mut out = Vec::new();
    for (p, r) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
        let f = field(p, r);
        let sizes: Vec<u64> = f.subfield_sizes().into_iter().map(u64::from).collect();
        let mut seqs: Vec<Vec<u64>> = sizes.iter().map(|&d| vec![d]).collect();
        let mut all = seqs.clone();
        for _ in 1..3 {
            seqs = seqs
                .iter()
                .flat_map(|s| {
                    sizes
                        .iter()
                        .filter(|&&d| d >= *s.last().unwrap())
                        .map(move |&d| [s.clone(), vec![d]].concat())
                })
                .collect();
            all.extend(seqs.clone());
        }
        for s in all {
            if s.iter().product::<u64>() > 64 {
                continue;
            }
            if let Ok(a) = NestedProduct::from_sizes(f.clone(), &s) {
                out.push(a);
            }
        }
    }
    out
}

fn label(a: &NestedProduct) -> String {
    let d: Vec<String> = a.sizes().iter().map(u32::to_string).collect();
    format!("GF({}) [{}]", a.q(), d.join(","))
}

/// Per family member and u: (formula total, enumerated total, scan result).
struct FamilyRow {
    prod: usize,
    u: i64,
    formula: BigUint,
    enumerated: u64,
    enum_weight: usize,
    scan: Option<(usize, u64)>,
}

fn family_data() -> &'static (Vec<NestedProduct>, Vec<FamilyRow>) {
    static DATA: OnceLock<(Vec<NestedProduct>, Vec<FamilyRow>)> = OnceLock::new();
    DATA.get_or_init(|| {
        let fam = family();
        let mut rows = Vec::new();
        for (i, a) in fam.iter().enumerate() {
            for u in 0..=a.k_total() as i64 {
                let formula = count_minwt(a, u).unwrap().total;
                let set = groups::enumerate_min_weight(a, u, &EnumOptions::default()).unwrap();
                let scan = match codes::exhaustive_min_weight(a, u, DEFAULT_SCAN_CAP) {
                    Ok(x) => Some(x),
                    Err(nested_ac::Error::TooLarge { .. }) => None,
                    Err(e) => panic!("scan failed on {}: {e}", label(a)),
                };
                rows.push(FamilyRow {
                    prod: i,
                    u,
                    formula,
                    enumerated: set.total(),
                    enum_weight: set.weight,
                    scan,
                });
            }
        }
        (fam, rows)
    })
}

struct Golden {
    spec: (u32, u32, &'static str),
    jl: &'static [(usize, u64)],
    k0: &'static [usize],
    dims: &'static [u64],
    deltas: &'static [u64],
    totals: &'static [u64],
    per_k: &'static [(i64, &'static [(usize, u64)])],
}

fn check_golden(g: &Golden) -> Check {
    let (p, r, spec) = g.spec;
    let a = prod(p, r, spec);
    let mut scanned = 0;
    for (i, u) in (1..=a.k_total() as i64).enumerate() {
        let dec = a.decompose_u(u).map_err(|e| e.to_string())?;
        ensure!((dec.j, dec.ell) == g.jl[i], "u={u}: (j,l)=({},{})", dec.j, dec.ell);
        ensure!(dec.table_k0(&a) == g.k0[i], "u={u}: k0={}", dec.table_k0(&a));
        let dim = codes::dimension(&a, u).unwrap();
        ensure!(dim == g.dims[i], "u={u}: |C|={}^{dim}", a.q());
        let delta = codes::min_distance(&a, u).unwrap();
        ensure!(delta == g.deltas[i], "u={u}: delta={delta}");
        let rep = count_minwt(&a, u).unwrap();
        ensure!(rep.total == big(g.totals[i]), "u={u}: formula total {}", rep.total);
        let set = groups::enumerate_min_weight(&a, u, &EnumOptions::default()).unwrap();
        ensure!(set.total() == g.totals[i], "u={u}: enumerated {}", set.total());
        ensure!(set.weight as u64 == delta, "u={u}: enumerated weight {}", set.weight);
        for (k, v) in &rep.per_k {
            ensure!(set.count_k(*k).map(big).as_ref() == Some(v), "u={u}: N^({k}) mismatch");
        }
        if let Ok((w, c)) = codes::exhaustive_min_weight(&a, u, DEFAULT_SCAN_CAP) {
            ensure!(w as u64 == delta && c == g.totals[i], "u={u}: scan gave ({w},{c})");
            scanned += 1;
        }
    }
    for &(u, ks) in g.per_k {
        let dec = a.decompose_u(u).unwrap();
        let all = groups::enumerate_min_weight(
            &a,
            u,
            &EnumOptions {
                all_k: true,
                ..EnumOptions::default()
            },
        )
        .unwrap();
        for &(k, want) in ks {
            let got = count_minwt_k(&a, &dec, k).unwrap();
            ensure!(got == big(want), "u={u} k={k}: formula {got} != {want}");
            ensure!(all.count_k(k) == Some(want), "u={u} k={k}: enumerated {:?}", all.count_k(k));
        }
    }
    let args = [
        "nested-ac".to_string(),
        "--field".into(),
        format!("{p}^{r}"),
        "--prod".into(),
        spec.into(),
        "--u-range".into(),
        format!("1..{}", a.k_total()),
        "verify".into(),
    ];
    let (out, err) = nested_ac::cli::run(args);
    ensure!(out.code == 0, "verify exited {} {err:?}\n{}", out.code, out.stdout);
    Ok(format!(
        "totals {:?}, per-k splits matched, {scanned} rows also scanned, CLI verify exit 0",
        g.totals
    ))
}

fn c1_table_one() -> Check {
    check_golden(&Golden {
        spec: (2, 2, "2,2,4"),
        jl: &[(0, 1), (1, 1), (2, 1), (2, 2), (2, 3)],
        k0: &[1, 2, 3, 1, 3],
        dims: &[4, 8, 12, 15, 16],
        deltas: &[8, 4, 3, 2, 1],
        totals: &[18, 12, 48, 360, 48],
        per_k: &[(4, &[(1, 288), (2, 288), (3, 72)])],
    })
}

fn c2_table_two() -> Check {
    check_golden(&Golden {
        spec: (3, 2, "3,9"),
        jl: &[(0, 1), (0, 2), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (1, 8)],
        k0: &[1, 1, 2, 2, 2, 2, 2, 1, 1, 2],
        dims: &[3, 6, 9, 12, 15, 18, 21, 24, 26, 27],
        deltas: &[18, 9, 8, 7, 6, 5, 4, 3, 2, 1],
        totals: &[24, 24, 216, 864, 2016, 3024, 3024, 2664, 2808, 216],
        per_k: &[(8, &[(1, 648), (2, 2016)]), (9, &[(1, 1944), (2, 864)])],
    })
}

fn c3_formula_vs_oracles() -> Check {
    let (fam, rows) = family_data();
    let mut scanned = 0;
    let mut checked = 0;
    for row in rows.iter().filter(|r| r.u >= 1) {
        let a = &fam[row.prod];
        let u = row.u;
        ensure!(
            row.formula == big(row.enumerated),
            "{} u={u}: formula {} vs orbits {}",
            label(a),
            row.formula,
            row.enumerated
        );
        if let Some((_, c)) = row.scan {
            ensure!(row.formula == big(c), "{} u={u}: formula {} vs scan {c}", label(a), row.formula);
            scanned += 1;
        }
        checked += 1;
    }
    Ok(format!(
        "{} products, {checked} (prod,u) pairs: formula = orbit enumeration; {scanned} also = exhaustive scan",
        fam.len()
    ))
}

fn c4_parameters() -> Check {
    let (fam, rows) = family_data();
    let mut scanned = 0;
    for row in rows {
        let a = &fam[row.prod];
        let u = row.u;
        let dim = codes::dimension(a, u).unwrap();
        ensure!(
            dim == codes::monomial_basis(a, u).len() as u64,
            "{} u={u}: dimension {dim} vs basis",
            label(a)
        );
        let delta = codes::min_distance(a, u).unwrap();
        ensure!(row.enum_weight as u64 == delta, "{} u={u}: orbit weight", label(a));
        if let Some((w, _)) = row.scan {
            ensure!(w as u64 == delta, "{} u={u}: delta {delta} vs scan {w}", label(a));
            scanned += 1;
        }
    }
    Ok(format!(
        "{} (prod,u) pairs: dimension = |basis|; min distance = scan on {scanned}",
        rows.len()
    ))
}

fn c5_affine_group() -> Check {
    let mut checked = 0;
    let mut maps = 0u64;
    let mut seen = HashSet::new();
    for a in family() {
        let order = groups::aff_group_order(&a);
        if order > big(AFF_BRUTE_FORCE_LIMIT) {
            continue;
        }
        // Aff(A) depends only on the sizes, not on the ambient field
        if !seen.insert(a.sizes().to_vec()) {
            continue;
        }
        let all = groups::enumerate_aff(&a, AFF_BRUTE_FORCE_LIMIT).unwrap();
        ensure!(big(all.len() as u64) == order, "{}: {} maps vs {order}", label(&a), all.len());
        let distinct: HashSet<&AffineTransform> = all.iter().collect();
        ensure!(distinct.len() == all.len(), "{}: duplicate maps", label(&a));
        for t in &all {
            ensure!(t.is_bijection(&a), "{}: non-bijective map", label(&a));
        }
        maps += all.len() as u64;
        checked += 1;
    }
    Ok(format!(
        "{checked} distinct domains with |Aff| <= 10^6: closed form = enumeration, {maps} maps all bijective"
    ))
}

fn c6_stabilizer_identity() -> Check {
    let mut cases = 0;
    for (d, p, r) in [(2, 2, 1), (3, 3, 1), (4, 2, 2), (8, 2, 3), (9, 3, 2)] {
        let f = FieldCtx::new(p, r).unwrap();
        for s in 0..=d as usize {
            let lhs = groups::reciprocal_stabilizer_sum(&f, d, s).unwrap();
            let rhs = groups::reciprocal_stabilizer_closed_form(d, s);
            ensure!(lhs == rhs, "d={d} s={s}: {lhs} != {rhs}");
            let reps = groups::orbit_reps_omega(&f, d, s).unwrap();
            let total: usize = reps.iter().map(|r| r.1).sum();
            ensure!(
                big(total as u64) == counting::binomial(d as i64, s as i64),
                "d={d} s={s}: orbit sizes sum to {total}"
            );
            for (omega, size) in &reps {
                let st = groups::stab_delta_omega(&f, d, omega).unwrap().len();
                ensure!(size * st == (d * (d - 1)) as usize, "d={d} s={s}: orbit-stabilizer");
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (d,s) cases: sum 1/|Delta| = C(d,s)/(d(d-1)) exactly"))
}

fn c7_specializations() -> Check {
    let mut rs_cases = 0;
    let mut rs_prod_cases = 0;
    for (p, r) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
        let f = field(p, r);
        let q = f.order() as u64;
        for n in 1..=q {
            for k in 1..=n {
                let rows = codes::rs_generator_matrix(&f, n, k).unwrap();
                let hist = codes::scan_weights(&f, &rows, SPECIALIZATION_SCAN_CAP).unwrap();
                let (w, c) = codes::min_weight_of(&hist).unwrap();
                let want = counting::rs_count(q, n, k).unwrap();
                ensure!(w as u64 == n - k + 1, "RS q={q} n={n} k={k}: distance {w}");
                ensure!(big(c) == want, "RS q={q} n={n} k={k}: scan {c} vs {want}");
                rs_cases += 1;
                if f.is_subfield_size(n) && n > 1 {
                    let a = NestedProduct::from_sizes(f.clone(), &[n]).unwrap();
                    let got = count_minwt(&a, k as i64 - 1).unwrap().total;
                    ensure!(got == want, "RS q={q} n={n} k={k}: count_minwt {got} vs {want}");
                    rs_prod_cases += 1;
                }
            }
        }
    }
    let mut rm_cases = 0;
    for (p, r, m) in [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2)] {
        let f = field(p, r);
        let q = f.order() as u64;
        let a = NestedProduct::new(f, &[(q, m)]).unwrap();
        for u in 0..=(m as i64) * (q as i64 - 1) {
            let want = counting::rm_count(q, u, m as i64).unwrap();
            let (w, c) = codes::exhaustive_min_weight(&a, u, SPECIALIZATION_SCAN_CAP).unwrap();
            ensure!(big(c) == want, "RM q={q} m={m} u={u}: scan {c} vs {want}");
            ensure!(w as u64 == codes::min_distance(&a, u).unwrap(), "RM q={q} m={m} u={u}: distance");
            let got = count_minwt(&a, u).unwrap().total;
            ensure!(got == want, "RM q={q} m={m} u={u}: count_minwt {got} vs {want}");
            rm_cases += 1;
        }
    }
    Ok(format!(
        "RS: {rs_cases} (q,n,k) scans = (q-1)C(n,n-k+1), {rs_prod_cases} also = count_minwt; \
         RM: {rm_cases} (q,m,u) scans = formula = count_minwt"
    ))
}

fn c8_orbit_stabilizer() -> Check {
    let a = prod(2, 2, "2,2,4");
    let ga = groups::g_a_order(&a);
    let ga_u64: u64 = (&ga).try_into().unwrap();
    let mut cases = 0;
    for u in 1..=a.k_total() as i64 {
        let dec = a.decompose_u(u).unwrap();
        for k in dec.k0..=dec.j + 1 {
            let dk = a.d(k) as u64;
            if dk < dec.gap(&a) {
                continue;
            }
            for (omega, _) in groups::orbit_reps_omega(a.field(), dk, (dk - dec.gap(&a)) as usize).unwrap() {
                let h = poly::build_h(&a, &dec, k, &omega).unwrap();
                let c = poly::evaluate(&a, &h);
                let (orbit, stab) = groups::orbit_stabilizer(&a, &c, 1 << 24).unwrap();
                ensure!(orbit * stab == ga_u64, "u={u} k={k}: {orbit} * {stab} != {ga}");
                let mut engine = OrbitEngine::new(&a, OrbitMode::Generators, 1 << 24).unwrap();
                let mut set = HashSet::new();
                engine.extend_orbit(&c, &mut set).unwrap();
                ensure!(
                    set.len() as u64 * (a.q() - 1) == orbit,
                    "u={u} k={k}: generator orbit {} vs {orbit}",
                    set.len()
                );
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} seeds c_h on Table-1 domain: |orbit|*|stab| = |G_A| = {ga}"))
}

fn c9_disjointness() -> Check {
    let a = prod(2, 2, "2,2,4");
    let mut detail = Vec::new();
    for mode in [OrbitMode::Generators, OrbitMode::FullGroup] {
        let set = groups::enumerate_min_weight(
            &a,
            4,
            &EnumOptions {
                all_k: true,
                mode,
                ..EnumOptions::default()
            },
        )
        .unwrap();
        let n1 = &set.per_k[&1];
        let n2 = &set.per_k[&2];
        let n3 = &set.per_k[&3];
        ensure!(n1 == n2, "{mode:?}: N^(1) != N^(2)");
        ensure!(n1.is_disjoint(n3), "{mode:?}: N^(1) meets N^(3)");
        ensure!(set.total() == 360, "{mode:?}: union has {}", set.total());
        detail.push(format!(
            "{mode:?}: |N1|=|N2|={} equal, |N3|={} disjoint",
            set.count_k(1).unwrap(),
            set.count_k(3).unwrap()
        ));
    }
    Ok(detail.join("; "))
}

// ---------------------------------------------------------------------------
// property suites

fn prime_powers_up_to(limit: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for p in 2..=limit {
        if (2..p).take_while(|i| i * i <= p).any(|i| p % i == 0) {
            continue;
        }
        let mut q = p as u64;
        let mut r = 1;
        while q <= limit as u64 {
            out.push((p, r));
            q *= p as u64;
            r += 1;
        }
    }
    out
}

/// Checks the table arithmetic against F_p[x]/(f) computed independently on
/// polynomial-basis coordinates, for every pair of elements. Agreement makes
/// the structure isomorphic to the quotient ring, and nonzero products of
/// nonzero elements make that ring a field.
fn field_axioms_exhaustive(f: &FieldCtx) -> Result<u64, String> {
    let p = f.characteristic();
    let r = f.degree() as usize;
    let q = f.order();
    let modulus = f.modulus().to_vec();
    let coords: Vec<Vec<u32>> = f.elements().map(|a| f.coordinates(a)).collect();
    let distinct: HashSet<&Vec<u32>> = coords.iter().collect();
    if distinct.len() != q as usize {
        return Err(format!("GF({q}): coordinates not a bijection"));
    }
    if coords[Gf::ONE.raw() as usize][0] != 1 || coords[Gf::ONE.raw() as usize][1..].iter().any(|&c| c != 0) {
        return Err(format!("GF({q}): one has wrong coordinates"));
    }
    let polymul = |a: &[u32], b: &[u32]| -> Vec<u32> {
        let mut prod = vec![0u64; 2 * r];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        for top in (r..2 * r).rev() {
            let c = prod[top];
            if c != 0 {
                for (i, &m) in modulus.iter().enumerate().take(r) {
                    let idx = top - r + i;
                    prod[idx] = (prod[idx] + (p as u64 - c) * m as u64) % p as u64;
                }
                prod[top] = 0;
            }
        }
        prod[..r].iter().map(|&x| x as u32).collect()
    };
    let mut cases = 0u64;
    for a in f.elements() {
        let ca = &coords[a.raw() as usize];
        if f.pow(a, q as u64) != a {
            return Err(format!("GF({q}): a^q != a"));
        }
        if !a.is_zero() && f.mul(a, f.inv(a).unwrap()) != Gf::ONE {
            return Err(format!("GF({q}): bad inverse"));
        }
        for b in f.elements() {
            let cb = &coords[b.raw() as usize];
            let sum: Vec<u32> = ca.iter().zip(cb).map(|(&x, &y)| (x + y) % p).collect();
            if coords[f.add(a, b).raw() as usize] != sum {
                return Err(format!("GF({q}): addition disagrees with coordinates"));
            }
            let prod = f.mul(a, b);
            if coords[prod.raw() as usize] != polymul(ca, cb) {
                return Err(format!("GF({q}): multiplication disagrees with F_p[x]/(f)"));
            }
            if !a.is_zero() && !b.is_zero() && prod.is_zero() {
                return Err(format!("GF({q}): zero divisor"));
            }
            if f.add(a, b) != f.add(b, a) || prod != f.mul(b, a) {
                return Err(format!("GF({q}): not commutative"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn field_axioms_triples(f: &FieldCtx) -> Result<u64, String> {
    let q = f.order();
    let mut cases = 0;
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                if f.add(f.add(a, b), c) != f.add(a, f.add(b, c))
                    || f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))
                    || f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))
                {
                    return Err(format!("GF({q}): associativity/distributivity"));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn small_prods() -> Vec<NestedProduct> {
    vec![
        prod(2, 2, "2,2,4"),
        prod(3, 2, "3,9"),
        prod(2, 2, "2,4"),
        prod(3, 1, "3,3"),
        prod(2, 1, "2,2,2"),
        prod(2, 3, "2,8"),
        prod(5, 1, "5"),
    ]
}

fn random_elem(rng: &mut ChaCha8Rng, f: &FieldCtx, d: u32) -> Gf {
    let elems = f.subfield_elements(d as u64).unwrap();
    elems[rng.gen_range(0..elems.len())]
}

fn random_raw(rng: &mut ChaCha8Rng, a: &NestedProduct, max_exp: u64, terms: usize) -> Vec<(Vec<u64>, Gf)> {
    let f = a.field();
    (0..terms)
        .map(|_| {
            let e = (0..a.m()).map(|_| rng.gen_range(0..=max_exp)).collect();
            (e, random_elem(rng, f, f.order()))
        })
        .collect()
}

fn random_reduced(rng: &mut ChaCha8Rng, a: &NestedProduct) -> ReducedPoly {
    let terms = rng.gen_range(0..=6);
    let raw: Vec<(Vec<u64>, Gf)> = (0..terms)
        .map(|_| {
            let e = a.sizes().iter().map(|&d| rng.gen_range(0..d as u64)).collect();
            (e, random_elem(rng, a.field(), a.field().order()))
        })
        .collect();
    reduce(a, &raw)
}

fn random_group_elem(rng: &mut ChaCha8Rng, a: &NestedProduct) -> GroupElem {
    let f = a.field();
    let m = a.m();
    let rows = loop {
        let rows: Vec<Vec<Gf>> = (0..m)
            .map(|i| {
                let limit = a.s()[a.block_of(i + 1).unwrap()];
                (0..m)
                    .map(|z| if z < limit { random_elem(rng, f, a.sizes()[i]) } else { Gf::ZERO })
                    .collect()
            })
            .collect();
        if groups::is_in_g(a, &rows) {
            break rows;
        }
    };
    let shift: Vec<Gf> = a.sizes().iter().map(|&d| random_elem(rng, f, d)).collect();
    let matrix = BlockMatrix::from_rows(a, &rows).unwrap();
    let scalar = loop {
        let g = random_elem(rng, f, f.order());
        if !g.is_zero() {
            break g;
        }
    };
    GroupElem {
        scalar,
        transform: AffineTransform::new(a, matrix, shift).unwrap(),
    }
}

fn c10_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();

    // field axioms: every field of order <= 2^10, all pairs; all triples for q <= 32
    let fields = prime_powers_up_to(1 << 10);
    for &(p, r) in &fields {
        let f = FieldCtx::new(p, r).map_err(|e| e.to_string())?;
        *counts.entry("field pairs").or_default() += field_axioms_exhaustive(&f)?;
        if f.order() <= 32 {
            *counts.entry("field triples").or_default() += field_axioms_triples(&f)?;
        }
    }

    let prods = small_prods();
    let points: Vec<Vec<Vec<Gf>>> = prods.iter().map(|a| a.points().unwrap()).collect();

    // reduction idempotence and evaluation preservation
    for case in 0..PROPERTY_CASES {
        let i = case % prods.len();
        let a = &prods[i];
        let f = a.field();
        let raw = random_raw(&mut rng, a, 3 * a.sizes().iter().copied().max().unwrap() as u64, 5);
        let red = reduce(a, &raw);
        let again: Vec<(Vec<u64>, Gf)> = red
            .terms()
            .map(|(e, c)| (e.iter().map(|&x| x as u64).collect(), c))
            .collect();
        ensure!(reduce(a, &again) == red, "reduce not idempotent on {}", label(a));
        let c = poly::evaluate(a, &red);
        for (pt, &v) in points[i].iter().zip(c.values()) {
            let direct = f.sum(raw.iter().map(|(e, coef)| {
                e.iter().zip(pt).fold(*coef, |acc, (&k, &x)| f.mul(acc, f.pow(x, k)))
            }));
            ensure!(direct == v, "reduction changed values on {}", label(a));
        }
        *counts.entry("reduction").or_default() += 1;
    }

    // Ev linearity and injectivity (via the interpolation inverse)
    for case in 0..PROPERTY_CASES {
        let a = &prods[case % prods.len()];
        let f = a.field();
        let p1 = random_reduced(&mut rng, a);
        let p2 = random_reduced(&mut rng, a);
        let alpha = random_elem(&mut rng, f, f.order());
        let lhs = poly::evaluate(a, &p1.scale(f, alpha).add(f, &p2));
        let rhs = poly::evaluate(a, &p1).scale(f, alpha).add(f, &poly::evaluate(a, &p2));
        ensure!(lhs == rhs, "Ev not linear on {}", label(a));
        ensure!(poly::interpolate(a, &lhs).unwrap() == p1.scale(f, alpha).add(f, &p2), "Ev not injective");
        *counts.entry("Ev linearity/injectivity").or_default() += 1;
    }
    for (p, r, spec) in [(2, 1, "2,2"), (2, 1, "2,2,2"), (3, 1, "3"), (3, 1, "3,3"), (2, 2, "2,2"), (2, 2, "4")] {
        let a = prod(p, r, spec);
        let q = a.q();
        let n = a.n() as u32;
        let mut seen = HashSet::new();
        for idx in 0..q.pow(n) {
            let mut x = idx;
            let raw: Vec<(Vec<u64>, Gf)> = codes::monomial_basis(&a, a.k_total() as i64)
                .into_iter()
                .map(|e| {
                    let c = Gf::from_raw((x % q) as u32);
                    x /= q;
                    (e.into_iter().map(u64::from).collect(), c)
                })
                .collect();
            seen.insert(poly::evaluate(&a, &reduce(&a, &raw)));
        }
        ensure!(seen.len() as u64 == q.pow(n), "Ev not injective on {}", label(&a));
        *counts.entry("Ev injectivity (exhaustive)").or_default() += q.pow(n);
    }

    // dual orthogonality: every basis pair, all u, every family member
    for a in family() {
        let f = a.field();
        let w = codes::dual_scaling(&a);
        let k = a.k_total() as i64;
        for u in -1..=k {
            let g = codes::generator_matrix(&a, u);
            let h = codes::generator_matrix(&a, k - u - 1);
            for x in &g {
                for y in &h {
                    let ip = f.sum((0..x.len()).map(|i| f.mul(w[i], f.mul(x[i], y[i]))));
                    ensure!(ip.is_zero(), "{} u={u}: dual not orthogonal", label(&a));
                    *counts.entry("dual orthogonality").or_default() += 1;
                }
            }
            ensure!(
                g.len() + h.len() == a.n() as usize,
                "{} u={u}: dimensions do not add to n",
                label(&a)
            );
        }
    }

    // action axioms and weight invariance
    for case in 0..PROPERTY_CASES {
        let a = &prods[case % prods.len()];
        let f = a.field();
        let p1 = random_reduced(&mut rng, a);
        let g1 = random_group_elem(&mut rng, a);
        let g2 = random_group_elem(&mut rng, a);
        ensure!(act(a, &GroupElem::identity(a.m()), &p1).unwrap() == p1, "identity acts nontrivially");
        let once = act(a, &g1, &p1).unwrap();
        let twice = act(a, &g2, &once).unwrap();
        ensure!(twice == act(a, &g1.mul(f, &g2), &p1).unwrap(), "compatibility fails on {}", label(a));
        ensure!(once.degree() == p1.degree(), "degree not preserved on {}", label(a));
        let c = poly::evaluate(a, &p1);
        let c1 = poly::evaluate(a, &once);
        let perm = g1.transform.point_permutation(a).unwrap();
        ensure!(act_codeword(f, g1.scalar, &perm, &c) == c1, "symbolic and pointwise action differ");
        ensure!(c1.weight() == c.weight(), "weight not invariant on {}", label(a));
        ensure!(
            poly::interpolate(a, &c1).unwrap().degree() <= p1.degree().max(Degree::NegInfinity),
            "degree grew"
        );
        *counts.entry("action axioms/weight invariance").or_default() += 1;
    }

    let min = counts.values().min().copied().unwrap_or(0);
    ensure!(min >= PROPERTY_CASES as u64, "a suite ran only {min} cases");
    let summary: Vec<String> = counts.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    Ok(format!(
        "{} fields; seed {SEED:#x}; zero failures ({})",
        fields.len(),
        summary.join(", ")
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "Table 1 golden (F2xF2xF4 over GF(4))", c1_table_one),
        (2, "Table 2 golden (F3xF9 over GF(9))", c2_table_two),
        (3, "formula vs orbit enumeration vs scan on the q<=9, m<=3, n<=64 family", c3_formula_vs_oracles),
        (4, "dimension and minimum distance on the family", c4_parameters),
        (5, "|Aff(A)| closed form vs brute force, bijectivity", c5_affine_group),
        (6, "reciprocal stabilizer identity for d in {2,3,4,8,9}", c6_stabilizer_identity),
        (7, "Reed-Solomon and Reed-Muller specializations", c7_specializations),
        (8, "orbit-stabilizer on Table-1 seeds", c8_orbit_stabilizer),
        (9, "N^(1) = N^(2) and N^(1) disjoint from N^(3) at Table 1, u=4", c9_disjointness),
        (10, "property suites (>= 10^4 seeded cases each)", c10_properties),
    ];
    let mut failed = 0;
    for (id, title, check) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {id}: {title} -- {detail} [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id}: {title} -- {why} [{secs:.1}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
