//! Command-line front end.

use crate::codes::{self, DEFAULT_SCAN_CAP};
use crate::counting::{self, MinWtReport};
use crate::domain::NestedProduct;
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, PolyTable};
use crate::groups::{self, EnumOptions, OrbitMode, DEFAULT_ORBIT_CAP};
use crate::poly::{self, Degree, ReducedPoly};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_CAP_EXCEEDED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Affine Cartesian codes over nested subfields.
#[derive(Debug, Parser)]
#[command(name = "nested-ac", version, about)]
pub struct Cli {
    /// Ambient field as p^R, e.g. 2^2.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Coordinate subfield sizes, e.g. 2,2,4.
    #[arg(long, global = true)]
    pub prod: Option<String>,
    /// A single degree u.
    #[arg(long, global = true, allow_hyphen_values = true, conflicts_with = "u_range")]
    pub u: Option<i64>,
    /// An inclusive degree range A..B.
    #[arg(long = "u-range", global = true)]
    pub u_range: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Maximum number of codewords an exhaustive scan may visit.
    #[arg(long = "scan-cap", global = true, default_value_t = DEFAULT_SCAN_CAP)]
    pub scan_cap: u64,
    /// Maximum number of group-element applications during enumeration.
    #[arg(long = "orbit-cap", global = true, default_value_t = DEFAULT_ORBIT_CAP)]
    pub orbit_cap: u64,
    /// File of defining polynomials: lines "p R c0 c1 ... cR".
    #[arg(long = "poly-table", global = true)]
    pub poly_table: Option<PathBuf>,
    /// Seed for the randomized checks of `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Length, dimension and minimum distance for each u.
    Params,
    /// Closed-form minimum-weight counts for each u.
    Count,
    /// List the minimum-weight codewords of one code.
    Enumerate {
        /// Build N^(k) for every admissible k instead of one per block.
        #[arg(long)]
        all_k: bool,
        /// Apply every group element instead of closing under generators.
        #[arg(long)]
        full_group: bool,
    },
    /// Weight distribution by exhaustive scan.
    Dist,
    /// Cross-check formulas, orbit enumeration and exhaustive scans.
    Verify {
        /// Codewords sampled per u for the degree check.
        #[arg(long, default_value_t = 16)]
        samples: usize,
    },
    /// Evaluate a polynomial such as "g*X1*X2^2 + 1" on A.
    Eval { poly: String },
}

/// Parsed and validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub prod: NestedProduct,
    pub us: Vec<i64>,
    pub format: Format,
    pub scan_cap: u64,
    pub orbit_cap: u64,
    pub seed: u64,
}

fn parse_range(text: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parse(format!("bad u range {text:?}, expected A..B"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

impl RunConfig {
    /// `default_low` is the first u used when neither --u nor --u-range is given.
    pub fn from_cli(cli: &Cli, default_low: i64) -> Result<RunConfig> {
        let field_spec = cli
            .field
            .as_deref()
            .ok_or_else(|| Error::BadParameters("--field is required".into()))?;
        let prod_spec = cli
            .prod
            .as_deref()
            .ok_or_else(|| Error::BadParameters("--prod is required".into()))?;
        let table = cli.poly_table.as_deref().map(PolyTable::load).transpose()?;
        let field = Arc::new(FieldCtx::from_spec(field_spec, table.as_ref())?);
        let prod = NestedProduct::from_spec(field, prod_spec)?;
        let k = prod.k_total() as i64;
        let (lo, hi) = match (cli.u, &cli.u_range) {
            (Some(u), _) => (u, u),
            (None, Some(r)) => parse_range(r)?,
            (None, None) => (default_low, k),
        };
        for u in [lo, hi] {
            if u < 0 || u > k {
                return Err(Error::DegreeOutOfRange { u, min: 0, max: k });
            }
        }
        if cli.scan_cap == 0 || cli.orbit_cap == 0 {
            return Err(Error::BadParameters("caps must be positive".into()));
        }
        Ok(RunConfig {
            prod,
            us: (lo..=hi).collect(),
            format: cli.format,
            scan_cap: cli.scan_cap,
            orbit_cap: cli.orbit_cap,
            seed: cli.seed,
        })
    }

    fn single_u(&self) -> Result<i64> {
        match self.us.as_slice() {
            [u] => Ok(*u),
            _ => Err(Error::BadParameters("this command needs a single --u".into())),
        }
    }
}

/// Output of a command: text on stdout plus an exit code.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::TooLarge { .. } => EXIT_CAP_EXCEEDED,
        _ => EXIT_BAD_INPUT,
    }
}

/// Runs the CLI on `args` (program name first). Errors go to the returned
/// text with a nonzero code; nothing is printed here.
pub fn run<I, T>(args: I) -> (Outcome, Option<String>)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
            return (
                Outcome {
                    stdout: if code == EXIT_OK { e.to_string() } else { String::new() },
                    code,
                },
                (code != EXIT_OK).then(|| e.to_string()),
            );
        }
    };
    match dispatch(&cli) {
        Ok(out) => (out, None),
        Err(e) => (
            Outcome {
                stdout: String::new(),
                code: exit_code_for(&e),
            },
            Some(format!("error: {e}")),
        ),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let ok = |stdout| Outcome { stdout, code: EXIT_OK };
    match &cli.command {
        Command::Params => cmd_params(&RunConfig::from_cli(cli, 0)?).map(ok),
        Command::Count => cmd_count(&RunConfig::from_cli(cli, 0)?).map(ok),
        Command::Enumerate { all_k, full_group } => {
            let mode = if *full_group {
                OrbitMode::FullGroup
            } else {
                OrbitMode::Generators
            };
            cmd_enumerate(&RunConfig::from_cli(cli, 0)?, *all_k, mode).map(ok)
        }
        Command::Dist => cmd_dist(&RunConfig::from_cli(cli, 0)?).map(ok),
        Command::Verify { samples } => cmd_verify(&RunConfig::from_cli(cli, 1)?, *samples),
        Command::Eval { poly } => cmd_eval(&RunConfig::from_cli(cli, 0)?, poly).map(ok),
    }
}

fn decomposition_cells(prod: &NestedProduct, u: i64) -> (String, String) {
    match u {
        0 => ("-".into(), "-".into()),
        _ => {
            let d = prod.decompose_u(u).expect("u checked against K");
            (format!("({},{})", d.j, d.ell), d.table_k0(prod).to_string())
        }
    }
}

/// Renders rows as aligned text, CSV or JSON (an array of objects).
fn render(format: Format, headers: &[&str], rows: &[Vec<String>], json_rows: Vec<Value>) -> String {
    match format {
        Format::Json => {
            let v = if json_rows.len() == 1 {
                json_rows.into_iter().next().unwrap()
            } else {
                Value::Array(json_rows)
            };
            serde_json::to_string_pretty(&v).unwrap() + "\n"
        }
        Format::Csv => {
            let mut out = headers.join(",") + "\n";
            for r in rows {
                out += &(r.join(",") + "\n");
            }
            out
        }
        Format::Text => {
            let widths: Vec<usize> = (0..headers.len())
                .map(|i| rows.iter().map(|r| r[i].chars().count()).chain([headers[i].chars().count()]).max().unwrap())
                .collect();
            let line = |cells: Vec<&str>| {
                let mut s = String::new();
                for (i, c) in cells.iter().enumerate() {
                    let pad = widths[i] - c.chars().count();
                    let _ = write!(s, "{}{}  ", " ".repeat(pad), c);
                }
                s.trim_end().to_string() + "\n"
            };
            let mut out = line(headers.to_vec());
            for r in rows {
                out += &line(r.iter().map(String::as_str).collect());
            }
            out
        }
    }
}

pub fn cmd_params(cfg: &RunConfig) -> Result<String> {
    let prod = &cfg.prod;
    let q = prod.q();
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for &u in &cfg.us {
        let s = codes::summary(prod, u)?;
        let (jl, k0) = decomposition_cells(prod, u);
        rows.push(vec![
            u.to_string(),
            jl,
            k0,
            s.n.to_string(),
            s.dim.to_string(),
            format!("{q}^{}", s.dim),
            s.mindist.to_string(),
        ]);
        json_rows.push(json!({"u": u, "n": s.n, "dim": s.dim, "mindist": s.mindist,
            "size": BigUint::from(q).pow(s.dim as u32).to_string()}));
    }
    Ok(render(
        cfg.format,
        &["u", "(j,l)", "k0", "n", "dim", "|C|", "delta"],
        &rows,
        json_rows,
    ))
}

pub fn cmd_count(cfg: &RunConfig) -> Result<String> {
    let prod = &cfg.prod;
    let q = prod.q();
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for &u in &cfg.us {
        let rep: MinWtReport = counting::count_minwt(prod, u)?;
        let s = codes::summary(prod, u)?;
        let (jl, k0) = decomposition_cells(prod, u);
        let ks: Vec<String> = rep.per_k.keys().map(usize::to_string).collect();
        let nk: Vec<String> = rep.per_k.values().map(BigUint::to_string).collect();
        rows.push(vec![
            u.to_string(),
            jl,
            k0,
            if ks.is_empty() { "-".into() } else { ks.join(" ") },
            format!("{q}^{}", s.dim),
            s.mindist.to_string(),
            if nk.is_empty() { "-".into() } else { nk.join(" ") },
            rep.total.to_string(),
        ]);
        json_rows.push(serde_json::to_value(&rep).expect("report serializes"));
    }
    Ok(render(
        cfg.format,
        &["u", "(j,l)", "k0", "k", "|C|", "delta", "|N(k)|", "|N|"],
        &rows,
        json_rows,
    ))
}

pub fn cmd_enumerate(cfg: &RunConfig, all_k: bool, mode: OrbitMode) -> Result<String> {
    let prod = &cfg.prod;
    let ctx = prod.field();
    let u = cfg.single_u()?;
    let opts = EnumOptions {
        cap: cfg.orbit_cap,
        mode,
        all_k,
    };
    let set = groups::enumerate_min_weight(prod, u, &opts)?;
    let words = set.codewords(ctx);
    Ok(match cfg.format {
        Format::Json => {
            let per_k: BTreeMap<String, u64> = set
                .per_k
                .keys()
                .map(|&k| (k.to_string(), set.count_k(k).unwrap()))
                .collect();
            let cws: Vec<Vec<String>> = words
                .iter()
                .map(|c| c.values().iter().map(|&a| ctx.symbol(a)).collect())
                .collect();
            serde_json::to_string_pretty(&json!({"u": u, "weight": set.weight,
                "count": words.len(), "per_k": per_k, "codewords": cws}))
            .unwrap()
                + "\n"
        }
        Format::Csv | Format::Text => {
            let mut out = String::new();
            for c in &words {
                out += &c.to_symbols(ctx);
                out.push('\n');
            }
            let _ = writeln!(out, "count={} weight={}", words.len(), set.weight);
            out
        }
    })
}

pub fn cmd_dist(cfg: &RunConfig) -> Result<String> {
    let u = cfg.single_u()?;
    let hist = codes::weight_distribution(&cfg.prod, u, cfg.scan_cap)?;
    let rows: Vec<Vec<String>> = hist.iter().map(|(w, c)| vec![w.to_string(), c.to_string()]).collect();
    Ok(match cfg.format {
        Format::Json => {
            let map: BTreeMap<String, u64> = hist.iter().map(|(w, &c)| (w.to_string(), c)).collect();
            serde_json::to_string(&map).unwrap() + "\n"
        }
        f => render(f, &["weight", "count"], &rows, Vec::new()),
    })
}

pub fn cmd_eval(cfg: &RunConfig, text: &str) -> Result<String> {
    let prod = &cfg.prod;
    let f = ReducedPoly::parse(prod, text)?;
    let c = poly::evaluate(prod, &f);
    let ctx = prod.field();
    Ok(match cfg.format {
        Format::Json => {
            let vals: Vec<String> = c.values().iter().map(|&a| ctx.symbol(a)).collect();
            serde_json::to_string_pretty(&json!({"poly": f.display(ctx),
                "degree": f.degree().to_string(), "weight": c.weight(), "codeword": vals}))
            .unwrap()
                + "\n"
        }
        _ => format!(
            "poly={}\ndegree={}\ncodeword={}\nweight={}\n",
            f.display(ctx),
            f.degree(),
            c.to_symbols(ctx),
            c.weight()
        ),
    })
}

fn cell<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

/// For each u: formula vs orbit enumeration vs exhaustive scan (when within
/// the scan cap), parameters vs scan, plus seeded degree checks on sampled
/// enumerated codewords. Exit code 1 on any disagreement.
pub fn cmd_verify(cfg: &RunConfig, samples: usize) -> Result<Outcome> {
    let prod = &cfg.prod;
    let ctx = prod.field();
    let q = prod.q();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let opts = EnumOptions {
        cap: cfg.orbit_cap,
        ..EnumOptions::default()
    };
    let single_block_full = prod.lambda() == 1 && prod.block_sizes()[0] as u64 == q;
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    let mut all_ok = true;
    for &u in &cfg.us {
        let rep = counting::count_minwt(prod, u)?;
        let summary = codes::summary(prod, u)?;
        let set = groups::enumerate_min_weight(prod, u, &opts)?;
        let enumerated = set.total();
        let mut ok = BigUint::from(enumerated) == rep.total && set.weight as u64 == summary.mindist;
        for (k, v) in &rep.per_k {
            ok &= set.count_k(*k).map(BigUint::from).as_ref() == Some(v);
        }
        ok &= codes::monomial_basis(prod, u).len() as u64 == summary.dim;

        let scan = match codes::exhaustive_min_weight(prod, u, cfg.scan_cap) {
            Ok(x) => Some(x),
            Err(Error::TooLarge { .. }) => None,
            Err(e) => return Err(e),
        };
        if let Some((w, c)) = scan {
            ok &= w as u64 == summary.mindist && BigUint::from(c) == rep.total;
        }
        let special = if single_block_full {
            let rm = counting::rm_count(q, u, prod.m() as i64)?;
            ok &= rm == rep.total;
            if prod.m() == 1 {
                ok &= counting::rs_count(q, q, u as u64 + 1)? == rep.total;
            }
            Some(rm)
        } else {
            None
        };

        let words = set.codewords(ctx);
        for c in words.choose_multiple(&mut rng, samples.min(words.len())) {
            let f = poly::interpolate(prod, c)?;
            ok &= f.degree() <= Degree::Finite(u as u64) && c.weight() as u64 == summary.mindist;
        }

        all_ok &= ok;
        let (jl, k0) = decomposition_cells(prod, u);
        let verdict = if ok { "ok" } else { "FAIL" };
        rows.push(vec![
            u.to_string(),
            jl,
            k0,
            summary.mindist.to_string(),
            rep.total.to_string(),
            enumerated.to_string(),
            cell(&scan.map(|s| s.1)),
            cell(&special),
            verdict.to_string(),
        ]);
        json_rows.push(json!({"u": u, "mindist": summary.mindist,
            "formula": rep.total.to_string(), "enumerated": enumerated.to_string(),
            "scan": scan.map(|s| s.1.to_string()), "rs_rm": special.map(|s| s.to_string()),
            "ok": ok}));
    }
    let headers = ["u", "(j,l)", "k0", "delta", "formula", "orbits", "scan", "rs/rm", "verdict"];
    let json_rows = if cfg.format == Format::Json {
        vec![json!({"ok": all_ok, "rows": json_rows})]
    } else {
        json_rows
    };
    let mut stdout = render(cfg.format, &headers, &rows, json_rows);
    if cfg.format == Format::Text {
        stdout += if all_ok { "all checks agree\n" } else { "verification FAILED\n" };
    }
    Ok(Outcome {
        stdout,
        code: if all_ok { EXIT_OK } else { EXIT_VERIFY_FAILED },
    })
}
