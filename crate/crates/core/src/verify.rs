//! Statement-by-statement verification suites and the report they produce.
//!
//! Each check pins one verifiable law — a ring identity, an exactness
//! claim, a module axiom — at explicit parameters, and reports PASS/FAIL
//! with a short detail string. The functions take their sweep sizes as
//! arguments so the acceptance tests can run them at pinned parameters;
//! [`run_verify`] wires them to a [`SessionConfig`] and the built-in
//! catalog. Sweeps fan out through the `par` helpers.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::abelian::AbGroup;
use crate::catalog::Catalog;
use crate::cech::{
    build_ext_complex, build_nu_complex, nu_localization_colimit_agrees, verify_exactness,
    CechFunctor,
};
use crate::matrix::RingMat;
use crate::negk::{is_anodal, neg_k_table};
use crate::par;
use crate::relk0::{
    det_map, excision_check, lambda_op, random_gl, reduce, subintegral_report, K0Triple,
};
use crate::relpic::{
    act_basic, continuity_bound, continuity_generators, nil_log, nil_rational_power, npic_group,
    pic_group, verify_pic_sequence, witt_action, Extension, NilUnitClass, NpicContext, NuValue,
    PicContext,
};
use crate::ring::{Ring, RingElement};
use crate::scalar::{BaseRing, Coeff};
use crate::witt::{EndClass, WittVector};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SessionConfig {
    pub witt_level: usize,
    pub nil_trunc: usize,
    pub bound: u64,
    pub seed: u64,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            witt_level: 8,
            nil_trunc: 6,
            bound: 1_000_000,
            seed: 0,
        }
    }
}

impl SessionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.witt_level == 0 || self.nil_trunc == 0 {
            return Err(Error::construction("truncation levels must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: String,
    pub statement: String,
    pub pass: bool,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<(String, AbGroup)>,
}

impl CheckResult {
    fn new(suite: &str, statement: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            suite: suite.into(),
            statement: statement.into(),
            pass,
            detail: detail.into(),
            groups: Vec::new(),
        }
    }

    fn with_groups(mut self, groups: Vec<(String, AbGroup)>) -> Self {
        self.groups = groups;
        self
    }
}

#[derive(Serialize, Deserialize)]
pub struct Report {
    pub config: SessionConfig,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl Report {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} [{}] {}", c.suite, c.statement));
            if !c.detail.is_empty() {
                out.push_str(&format!(" -- {}", c.detail));
            }
            out.push('\n');
            for (name, g) in &c.groups {
                out.push_str(&format!("       {name} = {g}\n"));
            }
        }
        let total = self.checks.len();
        let passed = self.checks.iter().filter(|c| c.pass).count();
        out.push_str(&format!(
            "{}: {passed}/{total} checks passed\n",
            if self.pass { "OK" } else { "FAILED" }
        ));
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

// ---------------------------------------------------------------------------
// Witt suites
// ---------------------------------------------------------------------------

pub fn random_witt(ring: &Ring, level: usize, rng: &mut impl Rng) -> WittVector {
    let coeffs = (0..level)
        .map(|_| match ring.base() {
            BaseRing::Rat => ring.from_i64(rng.random_range(-9..=9)),
            BaseRing::Mod(_) => crate::relk0::random_element(ring, rng),
        })
        .collect();
    WittVector::new(ring, level, coeffs).expect("random coefficients are valid")
}

/// Ghost components turn Witt multiplication into the componentwise product.
pub fn witt_ghost_products(count: usize, level: usize, seed: u64) -> CheckResult {
    let q = Ring::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(WittVector, WittVector)> = (0..count)
        .map(|_| (random_witt(&q, level, &mut rng), random_witt(&q, level, &mut rng)))
        .collect();
    let ok = par::all(&pairs, |(u, v)| {
        let p = u.mul(v).expect("same level");
        let gu = u.ghost().unwrap();
        let gv = v.ghost().unwrap();
        let gp = p.ghost().unwrap();
        (0..level).all(|j| gp[j] == &gu[j] * &gv[j])
    });
    CheckResult::new(
        "witt",
        "ghost components are a ring homomorphism under Witt multiplication",
        ok,
        format!("{count} random pairs over Q at level {level}"),
    )
}

/// `F_n V_n = n`, additivity of `V_n`, multiplicativity of `F_n`; the
/// composites are computed through canonical lifts at level `n * N`.
pub fn witt_fv_identities(count: usize, level: usize, max_n: usize, seed: u64) -> CheckResult {
    let q = Ring::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(WittVector, WittVector)> = (0..count)
        .map(|_| (random_witt(&q, level, &mut rng), random_witt(&q, level, &mut rng)))
        .collect();
    let ok = par::all(&pairs, |(u, v)| {
        for n in 1..=max_n {
            // F_n V_n = multiplication by n
            let lhs = u.extend(level * n).verschiebung(n).frobenius(n).truncate(level);
            let mut rhs = WittVector::zero(u.ring(), level);
            for _ in 0..n {
                rhs = rhs.add(u).unwrap();
            }
            if lhs != rhs {
                return false;
            }
            // V_n is additive
            let lhs = u.add(v).unwrap().verschiebung(n);
            let rhs = u.verschiebung(n).add(&v.verschiebung(n)).unwrap();
            if lhs != rhs {
                return false;
            }
            // F_n is multiplicative (through level n * N)
            let lhs = u
                .extend(level * n)
                .mul(&v.extend(level * n))
                .unwrap()
                .frobenius(n)
                .truncate(level);
            let rhs = u.frobenius(n).mul(&v.frobenius(n)).unwrap();
            if lhs != rhs {
                return false;
            }
        }
        true
    });
    CheckResult::new(
        "witt",
        format!("Frobenius/Verschiebung identities for n <= {max_n}"),
        ok,
        format!("{count} random pairs over Q at level {level}"),
    )
}

/// `(V_n a) * b = V_n(a * F_n b)`, exactly, at a fixed truncation.
pub fn projection_formula(ring: &Ring, count: usize, level: usize, max_n: usize, seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(WittVector, WittVector)> = (0..count)
        .map(|_| {
            (
                random_witt(ring, level, &mut rng),
                random_witt(ring, level, &mut rng),
            )
        })
        .collect();
    let ok = par::all(&pairs, |(a, b)| {
        for n in 1..=max_n {
            let lhs = a.verschiebung(n).mul(b).unwrap();
            let rhs = a.mul(&b.frobenius(n)).unwrap().verschiebung(n);
            if lhs != rhs {
                return false;
            }
        }
        true
    });
    CheckResult::new(
        "witt",
        format!("projection formula over {}", ring.name()),
        ok,
        format!("{count} random pairs, n <= {max_n}, level {level}"),
    )
}

/// The characteristic series of endomorphisms sends direct sums to Witt
/// sums and tensor products to Witt products.
pub fn almkvist_embedding(
    ring: &Ring,
    count: usize,
    max_size: usize,
    level: usize,
    seed: u64,
) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_matrix = |rng: &mut ChaCha8Rng| {
        let n = rng.random_range(1..=max_size);
        RingMat::from_fn(ring, n, n, |_, _| match ring.base() {
            BaseRing::Rat => ring.from_i64(rng.random_range(-3..=3)),
            BaseRing::Mod(_) => crate::relk0::random_element(ring, rng),
        })
    };
    let pairs: Vec<(EndClass, EndClass)> = (0..count)
        .map(|_| {
            (
                EndClass::new(random_matrix(&mut rng)).unwrap(),
                EndClass::new(random_matrix(&mut rng)).unwrap(),
            )
        })
        .collect();
    let ok = par::all(&pairs, |(a, b)| {
        let sum = a.direct_sum(b).char_series(level);
        if sum != a.char_series(level).add(&b.char_series(level)).unwrap() {
            return false;
        }
        let prod = a.tensor(b).char_series(level);
        prod == a.char_series(level).mul(&b.char_series(level)).unwrap()
    });
    CheckResult::new(
        "witt",
        format!("characteristic series over {}: sums and tensors", ring.name()),
        ok,
        format!("{count} random matrix pairs of size <= {max_size}, level {level}"),
    )
}

// ---------------------------------------------------------------------------
// Picard suites
// ---------------------------------------------------------------------------

pub fn pic_sequence_suite(catalog: &Catalog, bound: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut verified = 0usize;
    for (name, ext) in catalog.finite_extensions() {
        match verify_pic_sequence(ext, bound) {
            Ok(rep) => {
                verified += 1;
                out.push(
                    CheckResult::new(
                        "pic-sequence",
                        format!("unit/Picard sequence is exact for {name}"),
                        rep.pass,
                        rep.checks
                            .iter()
                            .map(|(s, ok, d)| format!("{s}: {} ({d})", if *ok { "ok" } else { "FAIL" }))
                            .collect::<Vec<_>>()
                            .join("; "),
                    )
                    .with_groups(vec![("Pic(f)".into(), rep.pic)]),
                );
            }
            Err(e) => out.push(CheckResult::new(
                "pic-sequence",
                format!("unit/Picard sequence for {name}"),
                false,
                e.to_string(),
            )),
        }
    }
    out.push(CheckResult::new(
        "pic-sequence",
        "catalog provides at least six verifiable extensions",
        verified >= 6,
        format!("{verified} extensions verified"),
    ));
    out
}

// ---------------------------------------------------------------------------
// The Witt-module structure on NPic
// ---------------------------------------------------------------------------

/// Seeded sample of nil-unit classes: single generators plus products.
fn sample_classes(ctx: &NpicContext, count: usize, seed: u64) -> Vec<NilUnitClass> {
    let gens = ctx.generators();
    if gens.is_empty() {
        return vec![ctx.one()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let a = &gens[rng.random_range(0..gens.len())];
        if rng.random_bool(0.5) {
            out.push(a.clone());
        } else {
            let b = &gens[rng.random_range(0..gens.len())];
            out.push(a.mul(b));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Module axioms for the action of basics `(1 - a t^m)` on `NPic_D(f)`:
/// identity and zero action, associativity through Witt products,
/// distributivity over Witt sums, endomorphism property and naturality.
pub fn npic_module_axioms(
    ext: &Extension,
    d: usize,
    max_m: usize,
    sample: usize,
    seed: u64,
    bound: u64,
) -> Result<CheckResult> {
    let ctx = NpicContext::new(ext, d, bound)?;
    let gens_a = continuity_generators(ext.a(), bound)?;
    let xs = sample_classes(&ctx, sample, seed);

    // identity and zero action
    let one_w = WittVector::one(ext.a(), d);
    let zero_w = WittVector::zero(ext.a(), d);
    for x in &xs {
        if !ctx.same(&witt_action(&one_w, x, ext)?, x) {
            return Ok(CheckResult::new(
                "npic-module",
                format!("module axioms for {} at D = {d}", ext.name()),
                false,
                "identity action failed",
            ));
        }
        if !ctx.is_trivial(&witt_action(&zero_w, x, ext)?) {
            return Ok(CheckResult::new(
                "npic-module",
                format!("module axioms for {} at D = {d}", ext.name()),
                false,
                "zero action failed",
            ));
        }
    }

    // all pairs of basic Witt vectors
    let mut items = Vec::new();
    for m1 in 1..=max_m {
        for m2 in 1..=max_m {
            for a1 in 0..gens_a.len() {
                for a2 in 0..gens_a.len() {
                    items.push((m1, m2, a1, a2));
                }
            }
        }
    }
    let failure = par::find_failure(&items, |&(m1, m2, a1, a2)| {
        let w1 = WittVector::basic(ext.a(), d, m1, &gens_a[a1]);
        let w2 = WittVector::basic(ext.a(), d, m2, &gens_a[a2]);
        let prod = w1.mul(&w2).unwrap();
        let sum = w1.add(&w2).unwrap();
        for x in &xs {
            let w2x = witt_action(&w2, x, ext).unwrap();
            // associativity through the ring structure
            let lhs = witt_action(&prod, x, ext).unwrap();
            let rhs = witt_action(&w1, &w2x, ext).unwrap();
            if !ctx.same(&lhs, &rhs) {
                return false;
            }
            // distributivity over Witt addition
            let lhs = witt_action(&sum, x, ext).unwrap();
            let rhs = witt_action(&w1, x, ext).unwrap().mul(&w2x);
            if !ctx.same(&lhs, &rhs) {
                return false;
            }
        }
        // endomorphism property and naturality for the first pair component
        let w = WittVector::basic(ext.a(), d, m1, &gens_a[a1]);
        for pair in xs.windows(2) {
            let lhs = witt_action(&w, &pair[0].mul(&pair[1]), ext).unwrap();
            let rhs = witt_action(&w, &pair[0], ext)
                .unwrap()
                .mul(&witt_action(&w, &pair[1], ext).unwrap());
            if !ctx.same(&lhs, &rhs) {
                return false;
            }
        }
        true
    });
    let pass = failure.is_none();
    let detail = match failure {
        None => format!(
            "{} basic pairs (m <= {max_m}, {} coefficients) on {} classes",
            items.len(),
            gens_a.len(),
            xs.len()
        ),
        Some((m1, m2, a1, a2)) => format!(
            "failed at m = ({m1}, {m2}), a = ({}, {})",
            gens_a[a1].render(),
            gens_a[a2].render()
        ),
    };
    Ok(CheckResult::new(
        "npic-module",
        format!("module axioms for {} at D = {d}", ext.name()),
        pass,
        detail,
    ))
}

/// Naturality: the action on a representative times an image element lands
/// in the same class, so the action descends to the quotient.
pub fn npic_naturality(ext: &Extension, d: usize, seed: u64, bound: u64) -> Result<CheckResult> {
    let ctx = NpicContext::new(ext, d, bound)?;
    let gens_a = continuity_generators(ext.a(), bound)?;
    let xs = sample_classes(&ctx, 6, seed);
    let nil_a = ext
        .nil_a()
        .elements
        .as_ref()
        .ok_or_else(|| Error::out_of_scope("finite base needed"))?
        .clone();
    let mut pass = true;
    'outer: for x in &xs {
        for n in nil_a.iter().filter(|n| !n.is_zero()) {
            for i in 1..=d {
                let mut tup = vec![ext.b().zero(); d];
                tup[i - 1] = ext.f().apply(n);
                let tau = NilUnitClass::new(ext, d, tup)?;
                for m in 1..=3usize {
                    for a in gens_a.iter().take(4) {
                        let lhs = act_basic(m, a, &x.mul(&tau), ext)?;
                        let rhs = act_basic(m, a, x, ext)?;
                        if !ctx.same(&lhs, &rhs) {
                            pass = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    Ok(CheckResult::new(
        "npic-module",
        format!("action descends to the quotient for {} at D = {d}", ext.name()),
        pass,
        "",
    ))
}

/// Exhaustive continuity: every class is killed from some finite degree on,
/// stably under doubling the search ceiling.
pub fn continuity_suite(ext: &Extension, d: usize, bound: u64) -> Result<CheckResult> {
    let ctx = NpicContext::new(ext, d, bound)?;
    let reps = ctx.class_representatives(bound)?;
    let ceiling = d + 2;
    let results = par::map_collect(&reps, |x| {
        let first = continuity_bound(x, &ctx, ceiling, bound).unwrap();
        let doubled = continuity_bound(x, &ctx, 2 * ceiling, bound).unwrap();
        match (first.bound, doubled.bound) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    });
    let pass = results.iter().all(|b| *b);
    Ok(CheckResult::new(
        "npic-module",
        format!("continuity bounds for {} at D = {d}", ext.name()),
        pass,
        format!("{} classes, ceiling {ceiling} doubled to {}", reps.len(), 2 * ceiling),
    ))
}

/// Over prime-power characteristic every class has p-power order
/// (exhaustive).
pub fn npic_pgroup(ext: &Extension, d: usize, bound: u64) -> Result<CheckResult> {
    let ch = ext.characteristic();
    let p = smallest_prime_factor(ch);
    let mut q = ch;
    while q % p == 0 {
        q /= p;
    }
    if q != 1 {
        return Err(Error::out_of_scope("characteristic is not a prime power"));
    }
    let ctx = NpicContext::new(ext, d, bound)?;
    let reps = ctx.class_representatives(bound)?;
    let oks = par::map_collect(&reps, |x| {
        let mut ord = ctx.class_order(x);
        while ord % p == 0 {
            ord /= p;
        }
        ord == 1
    });
    let pass = oks.iter().all(|b| *b);
    Ok(CheckResult::new(
        "npic-module",
        format!("all classes of {} at D = {d} have {p}-power order", ext.name()),
        pass,
        format!("{} classes checked exhaustively", reps.len()),
    ))
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n < 2 {
        return n.max(1);
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 1;
    }
    n
}

/// Characteristic zero: the log-coordinate dimension is `D dim Nil` and the
/// action of `(1 - a t)` is A-linear in log coordinates.
pub fn npic_rational(ext: &Extension, d: usize, seed: u64, bound: u64) -> Result<CheckResult> {
    if ext.characteristic() != 0 {
        return Err(Error::out_of_scope("needs characteristic zero"));
    }
    let expected = d * (ext.nil_b().dim() - ext.nil_a().dim());
    let dim_ok = npic_group(ext, d, bound)? == NuValue::Dimension(expected);

    let bring = ext.b().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nil_gens = ext.nil_b().generators.clone();
    let mut linear_ok = true;
    for _ in 0..10 {
        // random classes from nil generators with small rational scalars
        let mk = |rng: &mut ChaCha8Rng| {
            let mut rep = vec![bring.zero(); d];
            for slot in rep.iter_mut() {
                if rng.random_bool(0.6) {
                    let g = &nil_gens[rng.random_range(0..nil_gens.len())];
                    let c = Coeff::Rat(BigRational::new(
                        rng.random_range(-3..=3i64).into(),
                        rng.random_range(1..=3i64).into(),
                    ));
                    *slot = g.scalar_mul(&c);
                }
            }
            NilUnitClass::new(ext, d, rep).unwrap()
        };
        let x = mk(&mut rng);
        let y = mk(&mut rng);
        let a = ext.a().from_i64(rng.random_range(-4..=4));
        // additivity in log coordinates
        let lhs = nil_log(&act_basic(1, &a, &x.mul(&y), ext)?, &bring)?;
        let ax = act_basic(1, &a, &x, ext)?;
        let ay = act_basic(1, &a, &y, ext)?;
        let rhs = nil_log(&ax.mul(&ay), &bring)?;
        if lhs != rhs {
            linear_ok = false;
            break;
        }
        // compatibility with rational scaling: (x^c) acted = (x acted)^c
        let c = BigRational::new(rng.random_range(-3..=3i64).into(), 2.into());
        let lhs = act_basic(1, &a, &nil_rational_power(&x, &c, ext)?, ext)?;
        let rhs = nil_rational_power(&ax, &c, ext)?;
        if nil_log(&lhs, &bring)? != nil_log(&rhs, &bring)? {
            linear_ok = false;
            break;
        }
    }
    let pass = dim_ok && linear_ok;
    Ok(CheckResult::new(
        "npic-module",
        format!(
            "characteristic-zero structure of {} at D = {d}",
            ext.name()
        ),
        pass,
        format!(
            "log dimension {} {}, (1 - a t) acts linearly: {}",
            expected,
            if dim_ok { "matches" } else { "MISMATCH" },
            linear_ok
        ),
    ))
}

// ---------------------------------------------------------------------------
// Cech suites
// ---------------------------------------------------------------------------

pub fn cech_nu_check(ring: &Ring, cover_name: &str, cover: &crate::cech::Cover, d: usize, bound: u64) -> CheckResult {
    match build_nu_complex(ring, cover, d, bound).and_then(|cx| verify_exactness(&cx)) {
        Ok(rep) => {
            let groups = rep
                .labels
                .iter()
                .zip(&rep.homology)
                .map(|(l, h)| (format!("H({l})"), h.clone()))
                .collect();
            CheckResult::new(
                "cech",
                format!("NU complex over {cover_name} is exact at D = {d}"),
                rep.pass,
                "",
            )
            .with_groups(groups)
        }
        Err(e) => CheckResult::new(
            "cech",
            format!("NU complex over {cover_name} at D = {d}"),
            false,
            e.to_string(),
        ),
    }
}

pub fn cech_ext_check(
    ext: &Extension,
    cover_name: &str,
    cover: &crate::cech::Cover,
    functor: CechFunctor,
    d: usize,
    bound: u64,
) -> CheckResult {
    match build_ext_complex(ext, cover, functor, d, bound).and_then(|cx| verify_exactness(&cx)) {
        Ok(rep) => CheckResult::new(
            "cech",
            format!(
                "{functor} complex for {} over {cover_name} is exact at D = {d}",
                ext.name()
            ),
            rep.pass,
            format!(
                "homology: {}",
                rep.homology
                    .iter()
                    .map(|h| h.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        ),
        Err(e) => CheckResult::new(
            "cech",
            format!("{functor} complex for {} over {cover_name}", ext.name()),
            false,
            e.to_string(),
        ),
    }
}

/// Negative control: corrupting a differential must produce homology.
pub fn cech_negative_control(ring: &Ring, cover: &crate::cech::Cover, d: usize, bound: u64) -> CheckResult {
    match build_nu_complex(ring, cover, d, bound) {
        Ok(mut cx) => {
            let rows = cx.complex.maps[0].rows;
            let cols = cx.complex.maps[0].cols;
            cx.complex.maps[0] = crate::abelian::IntMatrix::zero(rows, cols);
            match verify_exactness(&cx) {
                Ok(rep) => CheckResult::new(
                    "cech",
                    "corrupted differential is detected",
                    !rep.pass,
                    format!(
                        "homology after zeroing the augmentation: {}",
                        rep.homology
                            .iter()
                            .map(|h| h.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                ),
                Err(e) => CheckResult::new("cech", "corrupted differential is detected", false, e.to_string()),
            }
        }
        Err(e) => CheckResult::new("cech", "corrupted differential is detected", false, e.to_string()),
    }
}

pub fn cech_colimit_check(ring: &Ring, d: usize, bound: u64) -> CheckResult {
    let elems = match ring.elements(bound) {
        Ok(e) => e,
        Err(e) => return CheckResult::new("cech", "localization colimit", false, e.to_string()),
    };
    let mut pass = true;
    let mut checked = 0;
    for s in &elems {
        if s.is_zero() {
            continue;
        }
        checked += 1;
        match nu_localization_colimit_agrees(ring, s, d, bound) {
            Ok(true) => {}
            Ok(false) => {
                pass = false;
                break;
            }
            Err(e) => {
                return CheckResult::new(
                    "cech",
                    format!("localization colimit over {}", ring.name()),
                    false,
                    e.to_string(),
                )
            }
        }
    }
    CheckResult::new(
        "cech",
        format!("NU of a localization is the stabilized colimit over {}", ring.name()),
        pass,
        format!("{checked} localizations at D = {d}"),
    )
}

// ---------------------------------------------------------------------------
// K0 suites
// ---------------------------------------------------------------------------

pub fn k0_det_compatibility(ext: &Extension, count: usize, max_n: usize, seed: u64, bound: u64) -> Result<CheckResult> {
    let ctx = PicContext::new(ext, bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<K0Triple> = (0..count)
        .map(|_| {
            let n = rng.random_range(1..=max_n);
            K0Triple::new(ext, random_gl(ext.b(), n, &mut rng, bound).unwrap()).unwrap()
        })
        .collect();
    let ok = par::all(&triples, |t| {
        let a = det_map(t, ext).unwrap();
        let b = reduce(t, ext, bound).unwrap();
        ctx.same(&a, &b)
    });
    Ok(CheckResult::new(
        "k0",
        format!("reduction equals the determinant class over {}", ext.name()),
        ok,
        format!("{count} random triples of size <= {max_n}"),
    ))
}

pub fn k0_whitney(ext: &Extension, count: usize, seed: u64, bound: u64) -> Result<CheckResult> {
    let ctx = PicContext::new(ext, bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pass = true;
    'outer: for _ in 0..count {
        let x = K0Triple::new(ext, random_gl(ext.b(), 2, &mut rng, bound)?)?;
        let y = K0Triple::new(ext, random_gl(ext.b(), rng.random_range(1..=2), &mut rng, bound)?)?;
        let s = x.block_sum(&y);
        for k in 1..=s.size {
            let lhs = reduce(&lambda_op(k, &s, ext), ext, bound)?;
            let mut rhs_unit = ext.b().one();
            for i in 0..=k {
                let j = k - i;
                let term = match (i, j) {
                    (0, j) if j <= y.size => Some(lambda_op(j.max(1), &y, ext)).filter(|_| j >= 1),
                    (i, 0) if i <= x.size => Some(lambda_op(i, &x, ext)),
                    (i, j) if i <= x.size && j <= y.size => {
                        Some(lambda_op(i, &x, ext).tensor(&lambda_op(j, &y, ext)))
                    }
                    _ => None,
                };
                if let Some(t) = term {
                    rhs_unit = &rhs_unit * &reduce(&t, ext, bound)?.unit;
                }
            }
            if !ctx.same(&lhs, &crate::relpic::PicClass { unit: rhs_unit }) {
                pass = false;
                break 'outer;
            }
        }
    }
    Ok(CheckResult::new(
        "k0",
        format!("Whitney sum law for lambda operations over {}", ext.name()),
        pass,
        format!("{count} random pairs"),
    ))
}

pub fn k0_lambda_rank(ext: &Extension, seed: u64, bound: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pass = true;
    for n in 1..=3usize {
        let t = K0Triple::new(ext, random_gl(ext.b(), n, &mut rng, bound)?)?;
        // lambda^1 = id
        if lambda_op(1, &t, ext).matrix != t.matrix {
            pass = false;
        }
        // above the rank: zero
        if lambda_op(n + 1, &t, ext).size != 0 {
            pass = false;
        }
        // top lambda is the determinant (a unit)
        let top = lambda_op(n, &t, ext);
        if top.size != 1 || !top.matrix.get(0, 0).is_unit() {
            pass = false;
        }
    }
    Ok(CheckResult::new(
        "k0",
        format!("lambda^1 = id, lambda^i = 0 above the rank over {}", ext.name()),
        pass,
        "",
    ))
}

// ---------------------------------------------------------------------------
// Remaining suites
// ---------------------------------------------------------------------------

pub fn excision_suite(catalog: &Catalog, bound: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for cfg in &catalog.excision_configs {
        let ext = catalog
            .extension(&cfg.extension)
            .expect("catalog configs reference catalog extensions");
        match excision_check(ext, &cfg.ideal_gens, bound) {
            Ok(rep) => out.push(
                CheckResult::new(
                    "excision",
                    format!("excision along {}", cfg.name),
                    rep.pass,
                    rep.detail.clone(),
                )
                .with_groups(vec![
                    ("K0(f)".into(), rep.k0_f),
                    ("K0(fbar)".into(), rep.k0_fbar),
                ]),
            ),
            Err(e) => out.push(CheckResult::new(
                "excision",
                format!("excision along {}", cfg.name),
                false,
                e.to_string(),
            )),
        }
    }
    out
}

pub fn subintegral_suite(catalog: &Catalog, bound: u64, seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (name, expected) in [
        ("dual-f2", true),
        ("dual-f3", true),
        ("quad-f2", false),
        ("split-f2", false),
    ] {
        let Some(ext) = catalog.extension(name) else {
            out.push(CheckResult::new("subintegral", name, false, "missing from catalog"));
            continue;
        };
        match subintegral_report(ext, bound, 25, seed) {
            Ok(rep) => {
                let pass = if expected {
                    rep.subintegral && rep.pass
                } else {
                    !rep.subintegral
                };
                out.push(
                    CheckResult::new(
                        "subintegral",
                        if expected {
                            format!("{name} is subintegral and K0(f) = Pic(f)")
                        } else {
                            format!("{name} is correctly declined")
                        },
                        pass,
                        rep.reason.clone(),
                    )
                    .with_groups(vec![("K0(f)".into(), rep.k0)]),
                );
            }
            Err(e) => out.push(CheckResult::new("subintegral", name, false, e.to_string())),
        }
    }
    out
}

pub fn negk_suite(catalog: &Catalog, bound: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (name, expected_rank) in [
        ("dual-f2", 0usize),
        ("split-f2", 1),
        ("triple-f2", 2),
        ("mixed-f3", 1),
    ] {
        let Some(ext) = catalog.extension(name) else {
            out.push(CheckResult::new("negk", name, false, "missing from catalog"));
            continue;
        };
        match neg_k_table(ext, 3, bound) {
            Ok(t) => {
                let k1 = t.get(-1).unwrap().clone();
                let below_trivial = t.get(-2).unwrap().is_trivial() && t.get(-3).unwrap().is_trivial();
                let k0_matches = t.get(0) == pic_group(ext, bound).ok().as_ref();
                let pass = k1 == AbGroup::free(expected_rank) && below_trivial && k0_matches;
                out.push(
                    CheckResult::new(
                        "negk",
                        format!("negative K-table of {name} (components: {})", t.components),
                        pass,
                        format!("expected K(-1) of rank {expected_rank}"),
                    )
                    .with_groups(vec![
                        ("K0(f)".into(), t.get(0).unwrap().clone()),
                        ("K-1(f)".into(), k1),
                    ]),
                );
            }
            Err(e) => out.push(CheckResult::new("negk", name, false, e.to_string())),
        }
    }
    // the anodal counterexample
    if let Some(ext) = catalog.extension("split-f2") {
        match is_anodal(ext, bound) {
            Ok(rep) => {
                let witness_ok = match &rep.witness {
                    Some(b) => {
                        let image: Vec<RingElement> = ext
                            .a()
                            .elements(bound)
                            .unwrap()
                            .into_iter()
                            .map(|x| ext.f().apply(&x))
                            .collect();
                        let b2 = b * b;
                        let b3 = &b2 * b;
                        image.contains(&(&b2 - b))
                            && image.contains(&(&b3 - &b2))
                            && !image.contains(b)
                    }
                    None => false,
                };
                out.push(CheckResult::new(
                    "negk",
                    "split-f2 is not anodal, with verified witness",
                    !rep.anodal && witness_ok,
                    rep.witness
                        .map(|b| format!("witness {}", b.render()))
                        .unwrap_or_default(),
                ));
            }
            Err(e) => out.push(CheckResult::new("negk", "anodal scan", false, e.to_string())),
        }
    }
    if let Some(ext) = catalog.extension("dual-f2") {
        match is_anodal(ext, bound) {
            Ok(rep) => out.push(CheckResult::new(
                "negk",
                "dual-f2 anodal scan terminates",
                rep.anodal,
                "",
            )),
            Err(e) => out.push(CheckResult::new("negk", "anodal scan", false, e.to_string())),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// The runner
// ---------------------------------------------------------------------------

pub const ALL_SUITES: &[&str] = &[
    "witt",
    "pic-sequence",
    "npic-module",
    "cech",
    "k0",
    "excision",
    "subintegral",
    "negk",
];

/// Extensions with a nontrivial nil-part, the interesting ones for the
/// module suites.
fn nil_extensions<'a>(catalog: &'a Catalog) -> Vec<(&'a str, &'a Extension)> {
    catalog
        .finite_extensions()
        .filter(|(_, e)| e.nil_b().dim() > e.nil_a().dim())
        .collect()
}

pub fn run_verify(suites: &[&str], catalog: &Catalog, config: &SessionConfig) -> Result<Report> {
    config.validate()?;
    let mut checks = Vec::new();
    let n = config.witt_level;
    let d = config.nil_trunc.min(4);
    let bound = config.bound;
    let seed = config.seed;

    for suite in suites {
        match *suite {
            "witt" => {
                checks.push(witt_ghost_products(50, n, seed));
                checks.push(witt_fv_identities(20, n, 4, seed + 1));
                for ring_name in ["q", "z4", "f5"] {
                    let ring = catalog
                        .ring(ring_name)
                        .ok_or_else(|| Error::Other(format!("missing ring {ring_name}")))?;
                    checks.push(projection_formula(ring, 25, n, 4, seed + 2));
                }
                for ring_name in ["z6", "q"] {
                    let ring = catalog.ring(ring_name).expect("catalog ring");
                    checks.push(almkvist_embedding(ring, 20, 3, n, seed + 3));
                }
            }
            "pic-sequence" => checks.extend(pic_sequence_suite(catalog, bound)),
            "npic-module" => {
                for (_, ext) in nil_extensions(catalog) {
                    checks.push(npic_module_axioms(ext, d, 4, 6, seed, bound)?);
                    checks.push(npic_naturality(ext, d, seed, bound)?);
                    checks.push(continuity_suite(ext, d.min(3), bound)?);
                    let ch = ext.characteristic();
                    if ch > 1 && {
                        let p = smallest_prime_factor(ch);
                        let mut q = ch;
                        while q % p == 0 {
                            q /= p;
                        }
                        q == 1
                    } {
                        checks.push(npic_pgroup(ext, d.min(3), bound)?);
                    }
                }
                if let Some(ext) = catalog.extension("dual-q") {
                    checks.push(npic_rational(ext, d, seed, bound)?);
                }
            }
            "cech" => {
                let entries = [("z12", "z12-49"), ("z6", "z6-23"), ("z12", "z12-349"), ("z6", "z6-34")];
                for (ring_name, cover_name) in entries {
                    let ring = catalog.ring(ring_name).expect("catalog ring");
                    let cover = catalog.cover(cover_name).expect("catalog cover");
                    for dd in [2usize, 3] {
                        checks.push(cech_nu_check(ring, cover_name, cover, dd, bound));
                    }
                }
                for (ext_name, cover_name) in [("dual-z12", "z12-49"), ("dual-z6", "z6-23"), ("dual-z6", "z6-34")] {
                    let ext = catalog.extension(ext_name).expect("catalog extension");
                    let cover = catalog.cover(cover_name).expect("catalog cover");
                    for dd in [2usize, 3] {
                        checks.push(cech_ext_check(ext, cover_name, cover, CechFunctor::Npic, dd, bound));
                    }
                }
                let z12 = catalog.ring("z12").expect("catalog ring");
                let cover = catalog.cover("z12-49").expect("catalog cover");
                checks.push(cech_negative_control(z12, cover, 2, bound));
                for rn in ["z12", "z6"] {
                    checks.push(cech_colimit_check(catalog.ring(rn).unwrap(), 3, bound));
                }
            }
            "k0" => {
                for name in ["conductor-f2", "mixed-f3", "dual-z4"] {
                    let ext = catalog.extension(name).expect("catalog extension");
                    checks.push(k0_det_compatibility(ext, 40, 3, seed, bound)?);
                    checks.push(k0_whitney(ext, 8, seed + 1, bound)?);
                    checks.push(k0_lambda_rank(ext, seed + 2, bound)?);
                }
            }
            "excision" => checks.extend(excision_suite(catalog, bound)),
            "subintegral" => checks.extend(subintegral_suite(catalog, bound, seed)),
            "negk" => checks.extend(negk_suite(catalog, bound)),
            other => {
                return Err(Error::Other(format!(
                    "unknown suite `{other}` (available: {})",
                    ALL_SUITES.join(", ")
                )))
            }
        }
    }

    let pass = checks.iter().all(|c| c.pass);
    Ok(Report {
        config: config.clone(),
        checks,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_checks_pass_quickly() {
        assert!(witt_ghost_products(5, 6, 1).pass);
        assert!(witt_fv_identities(3, 6, 3, 2).pass);
        let z4 = Ring::integers_mod(4).unwrap();
        assert!(projection_formula(&z4, 5, 6, 3, 3).pass);
        let z6 = Ring::integers_mod(6).unwrap();
        assert!(almkvist_embedding(&z6, 5, 3, 6, 4).pass);
    }

    #[test]
    fn module_axiom_check_on_catalog_entry() {
        let catalog = Catalog::builtin(1_000_000).unwrap();
        let ext = catalog.extension("dual-f3").unwrap();
        let r = npic_module_axioms(ext, 3, 3, 4, 5, 1_000_000).unwrap();
        assert!(r.pass, "{}", r.detail);
        let r = continuity_suite(ext, 3, 1_000_000).unwrap();
        assert!(r.pass, "{}", r.detail);
        let r = npic_pgroup(ext, 3, 1_000_000).unwrap();
        assert!(r.pass, "{}", r.detail);
    }

    #[test]
    fn rational_check() {
        let catalog = Catalog::builtin(1_000_000).unwrap();
        let ext = catalog.extension("dual-q").unwrap();
        let r = npic_rational(ext, 4, 7, 1_000_000).unwrap();
        assert!(r.pass, "{}", r.detail);
    }

    #[test]
    fn report_roundtrips_through_json() {
        let catalog = Catalog::builtin(1_000_000).unwrap();
        let config = SessionConfig {
            witt_level: 4,
            nil_trunc: 2,
            bound: 1_000_000,
            seed: 9,
        };
        let report = run_verify(&["negk"], &catalog, &config).unwrap();
        assert!(report.pass);
        let json = report.render_json();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back.checks.len(), report.checks.len());
        for (a, b) in report.checks.iter().zip(&back.checks) {
            assert_eq!(a.pass, b.pass);
            assert_eq!(a.groups.len(), b.groups.len());
            for ((na, ga), (nb, gb)) in a.groups.iter().zip(&b.groups) {
                assert_eq!(na, nb);
                assert_eq!(ga.invariants, gb.invariants);
            }
        }
    }

    #[test]
    fn unknown_suite_is_an_error() {
        let catalog = Catalog::builtin(1_000_000).unwrap();
        assert!(run_verify(&["nope"], &catalog, &SessionConfig::default()).is_err());
    }
}
