//! `cartier` — exact relative Picard groups, relative K0, truncated big
//! Witt vectors and Cech exactness checks over a catalog of small ring
//! extensions, plus user-supplied definitions in a text format.
//!
//! Exit codes: 0 all checks pass, 1 a verification failed, 2 input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cartier::catalog::Catalog;
use cartier::cech::{build_ext_complex, build_nu_complex, make_cover, verify_exactness, CechFunctor, Cover};
use cartier::input::parse_element;
use cartier::negk::{is_anodal, neg_k_table};
use cartier::relk0::{det_map, excision_check, random_triples, reduce, subintegral_report, K0Triple};
use cartier::relpic::{npic_group, pic_group, witt_action, Extension, NilUnitClass, NuValue};
use cartier::ring::Ring;
use cartier::verify::{run_verify, SessionConfig, ALL_SUITES};
use cartier::witt::WittVector;

#[derive(Parser)]
#[command(name = "cartier", version, about = "exact relative Picard / K0 / Witt vector toolkit")]
struct Cli {
    /// Witt truncation level N
    #[arg(long = "N", global = true, default_value_t = 8)]
    witt_level: usize,

    /// Nil truncation degree D
    #[arg(long = "D", global = true, default_value_t = 6)]
    nil_trunc: usize,

    /// Enumeration bound for brute-force scans
    #[arg(long, global = true, default_value_t = 1_000_000)]
    bound: u64,

    /// Seed for randomized sweeps
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Extra ring/extension/cover definitions in the text input format
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctorArg {
    Nu,
    Pic,
    Npic,
}

#[derive(Subcommand)]
enum Cmd {
    /// Witt vector arithmetic: add, mul, frobenius, verschiebung, ghost, factor
    Witt {
        /// Ring name from the catalog or input document
        #[arg(long, default_value = "q")]
        ring: String,
        /// Coefficients a_1, a_2, ... of 1 + a_1 t + ... (expressions)
        #[arg(long)]
        u: String,
        /// Second operand for binary operations
        #[arg(long)]
        v: Option<String>,
        /// One of: add, mul, neg, frobenius:<n>, verschiebung:<n>, ghost, factor
        #[arg(long, default_value = "mul")]
        op: String,
    },
    /// Relative Picard group of a named extension
    Pic {
        #[arg(long)]
        example: String,
    },
    /// Nil Picard group of a named extension at truncation D
    Npic {
        #[arg(long)]
        example: String,
    },
    /// Witt action of w (over the source) on a nil-unit class (over the target)
    Act {
        #[arg(long)]
        example: String,
        /// Coefficients of the Witt vector over the source ring
        #[arg(long)]
        w: String,
        /// Nilpotent coefficients c_1, ..., c_D of the class
        #[arg(long)]
        x: String,
    },
    /// Relative K0: reduce a matrix triple and compare against det
    K0 {
        #[arg(long)]
        example: String,
        /// Matrix entries as rows separated by ';', entries by ','
        #[arg(long)]
        matrix: Option<String>,
        /// Without --matrix: check this many random triples
        #[arg(long, default_value_t = 10)]
        random: usize,
    },
    /// Excision along a named shared-ideal configuration
    Excision {
        #[arg(long)]
        example: String,
    },
    /// Subintegrality test and the K0 = Pic comparison
    Subintegral {
        #[arg(long)]
        example: String,
    },
    /// Cech complex of a functor over a cover of basic opens
    Cech {
        /// Extension name (pic/npic functors)
        #[arg(long)]
        example: Option<String>,
        /// Ring name (nu functor)
        #[arg(long)]
        ring: Option<String>,
        /// Catalog cover name, or a comma-separated element list
        #[arg(long)]
        cover: String,
        #[arg(long, value_enum, default_value_t = FunctorArg::Nu)]
        functor: FunctorArg,
        /// Truncation degree (defaults to D)
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Negative K-groups of an extension of a local artinian base
    Negk {
        #[arg(long)]
        example: String,
    },
    /// Run verification suites and report PASS/FAIL per statement
    Verify {
        /// Suite name or "all"
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_catalog(cli: &Cli) -> cartier::Result<Catalog> {
    let mut catalog = Catalog::builtin(cli.bound)?;
    if let Some(path) = &cli.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| cartier::Error::Other(format!("cannot read {}: {e}", path.display())))?;
        catalog.extend_with(&text, cli.bound)?;
    }
    Ok(catalog)
}

fn lookup_ext<'a>(catalog: &'a Catalog, name: &str) -> cartier::Result<&'a Extension> {
    catalog
        .extension(name)
        .ok_or_else(|| cartier::Error::Other(format!("unknown extension `{name}`")))
}

fn lookup_ring<'a>(catalog: &'a Catalog, name: &str) -> cartier::Result<&'a Ring> {
    catalog
        .ring(name)
        .ok_or_else(|| cartier::Error::Other(format!("unknown ring `{name}`")))
}

fn parse_witt(coeffs: &str, ring: &Ring, level: usize) -> cartier::Result<WittVector> {
    let mut c: Vec<_> = coeffs
        .split(',')
        .map(|e| parse_element(e, ring, 0))
        .collect::<cartier::Result<_>>()?;
    if c.len() > level {
        return Err(cartier::Error::Other(format!(
            "more than N = {level} coefficients"
        )));
    }
    while c.len() < level {
        c.push(ring.zero());
    }
    WittVector::new(ring, level, c)
}

fn run(cli: Cli) -> cartier::Result<bool> {
    let catalog = load_catalog(&cli)?;
    let config = SessionConfig {
        witt_level: cli.witt_level,
        nil_trunc: cli.nil_trunc,
        bound: cli.bound,
        seed: cli.seed,
    };
    config.validate()?;

    match &cli.cmd {
        Cmd::Witt { ring, u, v, op } => {
            let r = lookup_ring(&catalog, ring)?;
            let n = config.witt_level;
            let uw = parse_witt(u, r, n)?;
            let need_v = || -> cartier::Result<WittVector> {
                parse_witt(
                    v.as_deref()
                        .ok_or_else(|| cartier::Error::Other("--v is required for this op".into()))?,
                    r,
                    n,
                )
            };
            match op.as_str() {
                "add" => println!("{}", uw.add(&need_v()?)?.render()),
                "mul" => println!("{}", uw.mul(&need_v()?)?.render()),
                "neg" => println!("{}", uw.neg().render()),
                "ghost" => {
                    let g = uw.ghost()?;
                    let parts: Vec<String> = g.iter().map(|x| x.render()).collect();
                    println!("({})", parts.join(", "));
                }
                "factor" => {
                    for (m, a) in uw.basic_factorization() {
                        println!("(1 - ({}) t^{m})", a.render());
                    }
                }
                other => {
                    if let Some(ns) = other.strip_prefix("frobenius:") {
                        let k: usize = ns
                            .parse()
                            .map_err(|_| cartier::Error::Other("bad frobenius index".into()))?;
                        println!("{}", uw.frobenius(k).render());
                    } else if let Some(ns) = other.strip_prefix("verschiebung:") {
                        let k: usize = ns
                            .parse()
                            .map_err(|_| cartier::Error::Other("bad verschiebung index".into()))?;
                        println!("{}", uw.verschiebung(k).render());
                    } else {
                        return Err(cartier::Error::Other(format!("unknown op `{other}`")));
                    }
                }
            }
            Ok(true)
        }
        Cmd::Pic { example } => {
            let ext = lookup_ext(&catalog, example)?;
            let g = pic_group(ext, config.bound)?;
            println!("Pic({example}) = {g}");
            println!("classes are invertible submodules A.b of B, b a unit of {}", ext.b().name());
            Ok(true)
        }
        Cmd::Npic { example } => {
            let ext = lookup_ext(&catalog, example)?;
            match npic_group(ext, config.nil_trunc, config.bound)? {
                NuValue::Group(g) => println!("NPic_{}({example}) = {g}", config.nil_trunc),
                NuValue::Dimension(d) => println!(
                    "NPic_{}({example}) = Q-vector space of dimension {d}",
                    config.nil_trunc
                ),
            }
            Ok(true)
        }
        Cmd::Act { example, w, x } => {
            let ext = lookup_ext(&catalog, example)?;
            let d = config.nil_trunc;
            let ww = parse_witt(w, ext.a(), d)?;
            let xs: Vec<_> = x
                .split(',')
                .map(|e| parse_element(e, ext.b(), 0))
                .collect::<cartier::Result<_>>()?;
            let mut rep = xs;
            while rep.len() < d {
                rep.push(ext.b().zero());
            }
            let class = NilUnitClass::new(ext, d, rep)?;
            let result = witt_action(&ww, &class, ext)?;
            println!("({}) * ({}) = {}", ww.render(), class.render(), result.render());
            Ok(true)
        }
        Cmd::K0 { example, matrix, random } => {
            let ext = lookup_ext(&catalog, example)?;
            let mut all_ok = true;
            let triples: Vec<K0Triple> = match matrix {
                Some(spec) => {
                    let rows: Vec<Vec<_>> = spec
                        .split(';')
                        .map(|row| {
                            row.split(',')
                                .map(|e| parse_element(e, ext.b(), 0))
                                .collect::<cartier::Result<Vec<_>>>()
                        })
                        .collect::<cartier::Result<_>>()?;
                    let n = rows.len();
                    if rows.iter().any(|r| r.len() != n) {
                        return Err(cartier::Error::Other("matrix must be square".into()));
                    }
                    let m = cartier::matrix::RingMat::from_fn(ext.b(), n, n, |i, j| rows[i][j].clone());
                    vec![K0Triple::new(ext, m)?]
                }
                None => random_triples(ext, *random, 3, config.seed, config.bound)?,
            };
            for t in &triples {
                let d = det_map(t, ext)?;
                let r = reduce(t, ext, config.bound)?;
                let ctx = cartier::relpic::PicContext::new(ext, config.bound)?;
                let same = ctx.same(&d, &r);
                all_ok &= same;
                println!(
                    "det class = {}, reduced class = {}, agree: {same}",
                    d.unit.render(),
                    r.unit.render()
                );
            }
            Ok(all_ok)
        }
        Cmd::Excision { example } => {
            let cfg = catalog
                .excision_configs
                .iter()
                .find(|c| c.name == *example)
                .ok_or_else(|| cartier::Error::Other(format!("unknown excision config `{example}`")))?;
            let ext = lookup_ext(&catalog, &cfg.extension)?;
            let rep = excision_check(ext, &cfg.ideal_gens, config.bound)?;
            println!(
                "shared ideal: {}, K0(f) = {}, K0(fbar) = {}, isomorphic: {}",
                rep.shared_ideal, rep.k0_f, rep.k0_fbar, rep.iso
            );
            Ok(rep.pass)
        }
        Cmd::Subintegral { example } => {
            let ext = lookup_ext(&catalog, example)?;
            let rep = subintegral_report(ext, config.bound, 25, config.seed)?;
            println!("subintegral: {} ({})", rep.subintegral, rep.reason);
            if rep.subintegral {
                println!(
                    "det: K0(f) -> Pic(f) verified: {}, unit sequence exact: {}, K0(f) = {}",
                    rep.det_iso_verified, rep.sequence_exact, rep.k0
                );
                Ok(rep.pass)
            } else {
                Ok(true)
            }
        }
        Cmd::Cech {
            example,
            ring,
            cover,
            functor,
            degree,
        } => {
            let d = degree.unwrap_or(config.nil_trunc);
            let resolve_cover = |r: &Ring| -> cartier::Result<Cover> {
                if let Some(c) = catalog.cover(cover) {
                    return Ok(c.clone());
                }
                let elems: Vec<_> = cover
                    .split(',')
                    .map(|e| parse_element(e, r, 0))
                    .collect::<cartier::Result<_>>()?;
                make_cover(r, elems, config.bound)
            };
            let report = match functor {
                FunctorArg::Nu => {
                    let r = match (ring, example) {
                        (Some(rn), _) => lookup_ring(&catalog, rn)?.clone(),
                        (None, Some(en)) => lookup_ext(&catalog, en)?.a().clone(),
                        (None, None) => {
                            return Err(cartier::Error::Other(
                                "the nu functor needs --ring or --example".into(),
                            ))
                        }
                    };
                    let c = resolve_cover(&r)?;
                    let cx = build_nu_complex(&r, &c, d, config.bound)?;
                    verify_exactness(&cx)?
                }
                FunctorArg::Pic | FunctorArg::Npic => {
                    let en = example.as_deref().ok_or_else(|| {
                        cartier::Error::Other("pic/npic functors need --example".into())
                    })?;
                    let ext = lookup_ext(&catalog, en)?;
                    let c = resolve_cover(ext.a())?;
                    let f = match functor {
                        FunctorArg::Pic => CechFunctor::Pic,
                        _ => CechFunctor::Npic,
                    };
                    let cx = build_ext_complex(ext, &c, f, d, config.bound)?;
                    verify_exactness(&cx)?
                }
            };
            for (label, h) in report.labels.iter().zip(&report.homology) {
                println!("H[{label}] = {h}");
            }
            println!("exact: {}", report.pass);
            Ok(report.pass)
        }
        Cmd::Negk { example } => {
            let ext = lookup_ext(&catalog, example)?;
            let table = neg_k_table(ext, 3, config.bound)?;
            for (n, g) in table.rows.iter().rev() {
                println!("K{n}(f) = {g}");
            }
            let anodal = is_anodal(ext, config.bound)?;
            match anodal.witness {
                Some(b) => println!("anodal: no (witness {})", b.render()),
                None => println!("anodal: yes"),
            }
            Ok(true)
        }
        Cmd::Verify { suite } => {
            let suites: Vec<&str> = if suite == "all" {
                ALL_SUITES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let report = run_verify(&suites, &catalog, &config)?;
            match cli.format {
                Format::Text => print!("{}", report.render_text()),
                Format::Json => println!("{}", report.render_json()),
            }
            Ok(report.pass)
        }
    }
}
