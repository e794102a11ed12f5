//! Relative Picard groups of ring extensions and their nil-parts.
//!
//! For an injective map `f: A -> B` between rings in scope (finite products
//! of local artinian rings), the relative Picard group is the unit-class
//! group `Pic(f) = B^x / f(A^x)`. Its nil-part at truncation `D` is
//!
//! ```text
//! NPic_D(f) = (1 + t Nil(B)[t]) / (1 + t f(Nil(A))[t])   mod t^{D+1},
//! ```
//!
//! the computational carrier of the nil Picard group. The module structure
//! over the Witt ring `W(A)` acts on a basic `(1 - a t^m)` through the
//! rank-`m` extension `S = A[s]/(s^m - a)`: substitute `t -> s t`, then
//! take the norm (determinant of multiplication on the free module) back
//! down. Because every matrix entry involved has positive t-adic valuation,
//! the determinant is computed exactly as `1 + sum of principal minors` of
//! degree at most `D`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::abelian::AbGroup;
use crate::poly;
use crate::ring::{nilradical, primitive_idempotents, NilData, Ring, RingElement, RingMap};
use crate::scalar::{BaseRing, Coeff};
use crate::witt::WittVector;
use crate::{Error, Result};

use std::sync::Arc;

struct ExtensionData {
    name: String,
    f: RingMap,
    nil_a: NilData,
    nil_b: NilData,
}

/// An injective ring map `f: A -> B` with cached nilradical data.
#[derive(Clone)]
pub struct Extension(Arc<ExtensionData>);

impl Extension {
    pub fn new(name: impl Into<String>, f: RingMap, bound: u64) -> Result<Extension> {
        if let Some(k) = f.kernel_element() {
            return Err(Error::construction(format!(
                "extension map is not faithful: {} maps to zero",
                k.render()
            )));
        }
        let nil_a = nilradical(f.source(), bound)?;
        let nil_b = nilradical(f.target(), bound)?;
        Ok(Extension(Arc::new(ExtensionData {
            name: name.into(),
            f,
            nil_a,
            nil_b,
        })))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn a(&self) -> &Ring {
        self.0.f.source()
    }

    pub fn b(&self) -> &Ring {
        self.0.f.target()
    }

    pub fn f(&self) -> &RingMap {
        &self.0.f
    }

    pub fn nil_a(&self) -> &NilData {
        &self.0.nil_a
    }

    pub fn nil_b(&self) -> &NilData {
        &self.0.nil_b
    }

    pub fn characteristic(&self) -> u64 {
        self.a().characteristic()
    }
}

impl std::fmt::Debug for Extension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Extension({}: {} -> {})", self.name(), self.a().name(), self.b().name())
    }
}

// ---------------------------------------------------------------------------
// Unit classes
// ---------------------------------------------------------------------------

/// A class in `Pic(f) = B^x / f(A^x)`, kept as a unit representative. The
/// printed interpretation is the invertible submodule `A . b` of `B`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PicClass {
    pub unit: RingElement,
}

/// Context for deciding equality of unit classes: the image `f(A^x)`.
pub struct PicContext {
    pub ext: Extension,
    image: HashSet<RingElement>,
}

impl PicContext {
    pub fn new(ext: &Extension, bound: u64) -> Result<PicContext> {
        let mut image = HashSet::new();
        for u in ext.a().elements(bound)? {
            if u.is_unit() {
                image.insert(ext.f().apply(&u));
            }
        }
        Ok(PicContext {
            ext: ext.clone(),
            image,
        })
    }

    pub fn class(&self, unit: RingElement) -> Result<PicClass> {
        if !unit.is_unit() {
            return Err(Error::construction("representative must be a unit"));
        }
        Ok(PicClass { unit })
    }

    pub fn is_trivial(&self, c: &PicClass) -> bool {
        self.image.contains(&c.unit)
    }

    pub fn same(&self, x: &PicClass, y: &PicClass) -> bool {
        let q = &x.unit * &y.unit.try_invert().expect("class representatives are units");
        self.image.contains(&q)
    }

    pub fn image_size(&self) -> usize {
        self.image.len()
    }
}

/// `Pic(f)` by enumeration: the invariant factors of `B^x / f(A^x)`.
pub fn pic_group(ext: &Extension, bound: u64) -> Result<AbGroup> {
    let units_b = ext.b().unit_group(bound)?;
    let sub: Vec<RingElement> = ext
        .a()
        .elements(bound)?
        .into_iter()
        .filter(|x| x.is_unit())
        .map(|u| ext.f().apply(&u))
        .collect();
    units_b.quotient(&sub)
}

/// Element-level verification of the unit/Picard exact sequence
/// `U(A) -> U(B) -> Pic(f) -> Pic(A) -> Pic(B)` for semilocal rings, where
/// the outer terms vanish.
pub struct PicSequenceReport {
    pub pass: bool,
    pub pic: AbGroup,
    pub checks: Vec<(String, bool, String)>,
}

pub fn verify_pic_sequence(ext: &Extension, bound: u64) -> Result<PicSequenceReport> {
    let mut checks = Vec::new();

    // scope hypothesis: A and B are products of local rings, so Pic(A) and
    // Pic(B) vanish and the sequence reduces to its first three terms
    for (tag, ring) in [("A", ext.a()), ("B", ext.b())] {
        let idems = crate::ring::idempotents(ring, bound)?;
        let prims = primitive_idempotents(ring, bound)?;
        let mut local = true;
        for e in &prims {
            let below = idems.iter().filter(|f| !f.is_zero() && &(*f * e) == *f).count();
            if below != 1 {
                local = false;
            }
        }
        checks.push((
            format!("{tag} is a finite product of local rings (Pic = 0)"),
            local,
            format!("{} component(s)", prims.len()),
        ));
    }

    let ctx = PicContext::new(ext, bound)?;
    let units_b: Vec<RingElement> = ext
        .b()
        .elements(bound)?
        .into_iter()
        .filter(|x| x.is_unit())
        .collect();

    // exactness at U(B): the kernel of the boundary is exactly f(A^x)
    let kernel: HashSet<RingElement> = units_b
        .iter()
        .filter(|u| ctx.image.contains(*u))
        .cloned()
        .collect();
    let exact_at_ub = kernel == ctx.image;
    checks.push((
        "kernel of boundary equals image of U(A)".into(),
        exact_at_ub,
        format!("|f(A^x)| = {}", ctx.image.len()),
    ));

    // surjectivity of the boundary: the coset count matches the group order
    let pic = pic_group(ext, bound)?;
    let mut cosets: HashSet<RingElement> = HashSet::new();
    for u in &units_b {
        let canon = ctx
            .image
            .iter()
            .map(|t| t * u)
            .min()
            .expect("image contains 1");
        cosets.insert(canon);
    }
    let surjective = Some(cosets.len() as u128) == pic.order();
    checks.push((
        "boundary is surjective onto Pic(f)".into(),
        surjective,
        format!("{} cosets, |Pic(f)| = {:?}", cosets.len(), pic.order()),
    ));

    let pass = checks.iter().all(|(_, ok, _)| *ok);
    Ok(PicSequenceReport { pass, pic, checks })
}

// ---------------------------------------------------------------------------
// Nil-unit classes
// ---------------------------------------------------------------------------

/// A truncated nil-unit `1 + c_1 t + ... + c_D t^D` with every `c_i`
/// nilpotent in `B`, representing a class of `NPic_D(f)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NilUnitClass {
    pub trunc: usize,
    pub rep: Vec<RingElement>,
}

impl NilUnitClass {
    pub fn new(ext: &Extension, trunc: usize, rep: Vec<RingElement>) -> Result<NilUnitClass> {
        if rep.len() != trunc {
            return Err(Error::construction("expected one coefficient per degree"));
        }
        for c in &rep {
            if c.ring() != ext.b() {
                return Err(Error::mismatch("coefficient not in the target ring"));
            }
            if !ext.nil_b().contains(c) {
                return Err(Error::construction(format!(
                    "coefficient {} is not nilpotent",
                    c.render()
                )));
            }
        }
        Ok(NilUnitClass { trunc, rep })
    }

    pub fn one(ring: &Ring, trunc: usize) -> NilUnitClass {
        NilUnitClass {
            trunc,
            rep: vec![ring.zero(); trunc],
        }
    }

    pub fn is_identity_rep(&self) -> bool {
        self.rep.iter().all(|c| c.is_zero())
    }

    fn series(&self, ring: &Ring) -> poly::TPoly {
        let mut s = Vec::with_capacity(self.trunc + 1);
        s.push(ring.one());
        s.extend(self.rep.iter().cloned());
        s
    }

    fn from_series(series: poly::TPoly) -> NilUnitClass {
        debug_assert!(series[0].is_one());
        NilUnitClass {
            trunc: series.len() - 1,
            rep: series[1..].to_vec(),
        }
    }

    pub fn mul(&self, other: &NilUnitClass) -> NilUnitClass {
        assert_eq!(self.trunc, other.trunc);
        let ring = self
            .rep
            .first()
            .map(|c| c.ring().clone())
            .expect("positive truncation");
        Self::from_series(poly::mul(&self.series(&ring), &other.series(&ring)))
    }

    pub fn inv(&self) -> NilUnitClass {
        let ring = self.rep[0].ring().clone();
        Self::from_series(poly::inv(&self.series(&ring)).expect("unit constant term"))
    }

    pub fn pow(&self, mut e: u64) -> NilUnitClass {
        let ring = self.rep[0].ring().clone();
        let mut acc = NilUnitClass::one(&ring, self.trunc);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    pub fn render(&self) -> String {
        let mut s = String::from("1");
        for (i, c) in self.rep.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let deg = i + 1;
            let t = if deg == 1 { "t".into() } else { format!("t^{deg}") };
            let cs = c.render();
            if cs.contains('+') || cs.contains(' ') {
                s.push_str(&format!(" + ({cs})*{t}"));
            } else {
                s.push_str(&format!(" + {cs}*{t}"));
            }
        }
        s
    }
}

/// Value of a nil-unit group computation: explicit invariant factors over a
/// finite base, the ℚ-vector-space dimension in characteristic zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NuValue {
    Group(AbGroup),
    Dimension(usize),
}

impl std::fmt::Display for NuValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NuValue::Group(g) => write!(f, "{g}"),
            NuValue::Dimension(d) => write!(f, "Q-vector space of dimension {d}"),
        }
    }
}

/// All nil-unit coefficient tuples of a ring, i.e. the elements of
/// `NU_D(R) = 1 + t Nil(R)[t] mod t^{D+1}` as raw tuples.
/// All coefficient tuples over a sorted nilpotent list, in ascending
/// lexicographic order (the last coordinate varies fastest).
pub(crate) fn nu_tuples(nil: &[RingElement], d: usize) -> Vec<Vec<RingElement>> {
    debug_assert!(nil.windows(2).all(|w| w[0] <= w[1]));
    let mut out = Vec::new();
    let mut idx = vec![0usize; d];
    loop {
        out.push(idx.iter().map(|&i| nil[i].clone()).collect());
        let mut k = d;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < nil.len() {
                break;
            }
            idx[k] = 0;
            if k == 0 {
                return out;
            }
        }
    }
}

fn tuple_mul(ring: &Ring, a: &[RingElement], b: &[RingElement]) -> Vec<RingElement> {
    let d = a.len();
    let mut s = Vec::with_capacity(d + 1);
    s.push(ring.one());
    s.extend(a.iter().cloned());
    let mut t = Vec::with_capacity(d + 1);
    t.push(ring.one());
    t.extend(b.iter().cloned());
    poly::mul(&s, &t)[1..].to_vec()
}

/// `NU_D(R) = (R[t])^x / R^x` realized as `1 + t Nil(R)[t] mod t^{D+1}`.
pub fn nu_group(ring: &Ring, d: usize, bound: u64) -> Result<NuValue> {
    let nil = nilradical(ring, bound)?;
    match ring.base() {
        BaseRing::Rat => Ok(NuValue::Dimension(d * nil.dim())),
        BaseRing::Mod(_) => {
            let eg = nu_enumerated(ring, &nil, d, bound)?;
            Ok(NuValue::Group(eg.group))
        }
    }
}

pub(crate) fn nu_enumerated(
    ring: &Ring,
    nil: &NilData,
    d: usize,
    bound: u64,
) -> Result<crate::abelian::EnumeratedGroup<Vec<RingElement>>> {
    let elements = nil
        .elements
        .as_ref()
        .ok_or_else(|| Error::out_of_scope("enumeration needs a finite base"))?;
    let mut gens = Vec::new();
    for n in elements.iter().filter(|n| !n.is_zero()) {
        for i in 1..=d {
            let mut tup = vec![ring.zero(); d];
            tup[i - 1] = n.clone();
            gens.push(tup);
        }
    }
    crate::abelian::enumerate_abelian_group(
        &gens,
        vec![ring.zero(); d],
        |a, b| tuple_mul(ring, a, b),
        bound,
    )
}

/// `NPic_D(f)`: invariant factors of `NU_D(B) / image(NU_D(A))` over a
/// finite base, the log-coordinate dimension `D (dim Nil B - dim Nil A)`
/// in characteristic zero.
pub fn npic_group(ext: &Extension, d: usize, bound: u64) -> Result<NuValue> {
    match ext.b().base() {
        BaseRing::Rat => Ok(NuValue::Dimension(
            d * (ext.nil_b().dim() - ext.nil_a().dim()),
        )),
        BaseRing::Mod(_) => {
            let eg = nu_enumerated(ext.b(), ext.nil_b(), d, bound)?;
            let mut sub = Vec::new();
            let nil_a = ext
                .nil_a()
                .elements
                .as_ref()
                .ok_or_else(|| Error::out_of_scope("enumeration needs a finite base"))?;
            for n in nil_a.iter().filter(|n| !n.is_zero()) {
                for i in 1..=d {
                    let mut tup = vec![ext.b().zero(); d];
                    tup[i - 1] = ext.f().apply(n);
                    sub.push(tup);
                }
            }
            Ok(NuValue::Group(eg.quotient(&sub)?))
        }
    }
}

// ---------------------------------------------------------------------------
// Class context over a finite base
// ---------------------------------------------------------------------------

/// Working context for `NPic_D(f)` over a finite base: the image subgroup
/// `1 + t f(Nil A)[t]` as an explicit set, used to decide class triviality
/// without enumerating `NU_D(B)`.
pub struct NpicContext {
    pub ext: Extension,
    pub d: usize,
    image: HashSet<Vec<RingElement>>,
    nil_b_elems: Vec<RingElement>,
}

impl NpicContext {
    pub fn new(ext: &Extension, d: usize, bound: u64) -> Result<NpicContext> {
        let nil_a = ext
            .nil_a()
            .elements
            .as_ref()
            .ok_or_else(|| Error::out_of_scope("class context needs a finite base"))?;
        let nil_b = ext
            .nil_b()
            .elements
            .as_ref()
            .ok_or_else(|| Error::out_of_scope("class context needs a finite base"))?;
        let image_size = (nil_a.len() as u128).pow(d as u32);
        if image_size > bound as u128 {
            return Err(Error::bound(bound, "enumerating the image subgroup"));
        }
        let mapped: Vec<RingElement> = nil_a.iter().map(|n| ext.f().apply(n)).collect();
        let image = nu_tuples(&mapped, d).into_iter().collect();
        Ok(NpicContext {
            ext: ext.clone(),
            d,
            image,
            nil_b_elems: nil_b.clone(),
        })
    }

    pub fn one(&self) -> NilUnitClass {
        NilUnitClass::one(self.ext.b(), self.d)
    }

    pub fn nil_b_elements(&self) -> &[RingElement] {
        &self.nil_b_elems
    }

    /// The generators `1 + n t^i` of `NU_D(B)`.
    pub fn generators(&self) -> Vec<NilUnitClass> {
        let mut out = Vec::new();
        for n in self.nil_b_elems.iter().filter(|n| !n.is_zero()) {
            for i in 1..=self.d {
                let mut rep = vec![self.ext.b().zero(); self.d];
                rep[i - 1] = n.clone();
                out.push(NilUnitClass {
                    trunc: self.d,
                    rep,
                });
            }
        }
        out
    }

    pub fn nu_b_size(&self) -> u128 {
        (self.nil_b_elems.len() as u128).pow(self.d as u32)
    }

    pub fn is_trivial(&self, x: &NilUnitClass) -> bool {
        self.image.contains(&x.rep)
    }

    pub fn same(&self, x: &NilUnitClass, y: &NilUnitClass) -> bool {
        self.is_trivial(&x.mul(&y.inv()))
    }

    /// Canonical coset representative: the minimum of `x . image`.
    pub fn canonical_rep(&self, x: &NilUnitClass) -> Vec<RingElement> {
        self.image
            .iter()
            .map(|t| {
                tuple_mul(self.ext.b(), &x.rep, t)
            })
            .min()
            .expect("image contains the identity")
    }

    /// Order of the class of `x` in the quotient group.
    pub fn class_order(&self, x: &NilUnitClass) -> u64 {
        let mut k = 1u64;
        let mut p = x.clone();
        while !self.is_trivial(&p) {
            p = p.mul(x);
            k += 1;
        }
        k
    }

    /// One representative per class of `NPic_D(f)`, by exhausting `NU_D(B)`.
    /// Tuples are scanned in ascending order, so the first unseen member of
    /// a coset is its canonical (minimal) representative and each coset is
    /// expanded exactly once.
    pub fn class_representatives(&self, bound: u64) -> Result<Vec<NilUnitClass>> {
        if self.nu_b_size() > bound as u128 {
            return Err(Error::bound(bound, "exhausting nil-unit classes"));
        }
        let tuples = nu_tuples(&self.nil_b_elems, self.d);
        let ring = self.ext.b();
        let mut seen: HashSet<Vec<RingElement>> = HashSet::new();
        let mut reps = Vec::new();
        for rep in tuples {
            if seen.contains(&rep) {
                continue;
            }
            for t in &self.image {
                seen.insert(tuple_mul(ring, &rep, t));
            }
            reps.push(NilUnitClass {
                trunc: self.d,
                rep,
            });
        }
        Ok(reps)
    }
}

// ---------------------------------------------------------------------------
// The Witt-module action
// ---------------------------------------------------------------------------

/// Sparse polynomial: (degree, coefficient) terms, all degrees positive in
/// the matrix cells below.
type SPoly = Vec<(usize, RingElement)>;

fn sp_mul(a: &SPoly, b: &SPoly, cap: usize) -> SPoly {
    let mut out: SPoly = Vec::new();
    for (da, ca) in a {
        for (db, cb) in b {
            let deg = da + db;
            if deg > cap {
                continue;
            }
            let v = ca * cb;
            if v.is_zero() {
                continue;
            }
            match out.iter_mut().find(|(dd, _)| *dd == deg) {
                Some((_, c)) => *c = &*c + &v,
                None => out.push((deg, v)),
            }
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

fn sp_add_into(acc: &mut SPoly, term: SPoly, negate: bool) {
    for (deg, v) in term {
        let v = if negate { -&v } else { v };
        match acc.iter_mut().find(|(dd, _)| *dd == deg) {
            Some((_, c)) => *c = &*c + &v,
            None => acc.push((deg, v)),
        }
    }
    acc.retain(|(_, c)| !c.is_zero());
}

/// Sparse matrix with entries of positive t-adic valuation, for the norm
/// determinant, with per-row support masks for fast pruning.
struct SparseNil {
    size: usize,
    cells: Vec<(usize, usize, SPoly)>,
    row_support: Vec<u64>,
}

impl SparseNil {
    fn lookup(&self, r: usize, c: usize) -> Option<&SPoly> {
        self.cells
            .iter()
            .find(|(rr, cc, _)| *rr == r && *cc == c)
            .map(|(_, _, p)| p)
    }
}

/// Determinant of `I + U` over `B[t]/(t^{D+1})` where every entry of `U`
/// has positive t-adic valuation: `1 + sum of principal minors` of size at
/// most `D`. Subsets are enumerated as bitmasks; a subset whose induced
/// submatrix has an empty row contributes nothing and is skipped before any
/// polynomial arithmetic happens.
fn det_one_plus(u: &SparseNil, ring: &Ring, d: usize) -> poly::TPoly {
    let m = u.size;
    assert!(m <= 63, "norm ranks beyond 63 are out of scope");
    let mut det: SPoly = vec![(0, ring.one())];
    for k in 1..=m.min(d) {
        // Gosper's hack over k-bit masks below 2^m
        let mut mask: u64 = (1 << k) - 1;
        while mask < (1u64 << m) {
            let mut rows = [0usize; 8];
            let mut cnt = 0;
            let mut ok = true;
            for r in 0..m {
                if mask & (1 << r) != 0 {
                    if u.row_support[r] & mask == 0 {
                        ok = false;
                        break;
                    }
                    rows[cnt] = r;
                    cnt += 1;
                }
            }
            if ok {
                let minor = minor_det(u, &rows[..cnt], mask, ring, d);
                sp_add_into(&mut det, minor, false);
            }
            // next mask with k bits
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    let mut dense = vec![ring.zero(); d + 1];
    for (deg, c) in det {
        dense[deg] = &dense[deg] + &c;
    }
    dense
}

/// Cofactor expansion of the submatrix on `rows` x (columns in `col_mask`).
fn minor_det(u: &SparseNil, rows: &[usize], col_mask: u64, ring: &Ring, d: usize) -> SPoly {
    if rows.is_empty() {
        return vec![(0, ring.one())];
    }
    let r = rows[0];
    let rest = &rows[1..];
    let mut acc: SPoly = Vec::new();
    let mut j = 0usize;
    let mut c = 0usize;
    let mut mask = col_mask;
    while mask != 0 {
        if mask & 1 != 0 {
            if let Some(entry) = u.lookup(r, c) {
                let minor = minor_det(u, rest, col_mask & !(1u64 << c), ring, d);
                let term = sp_mul(entry, &minor, d);
                sp_add_into(&mut acc, term, j % 2 == 1);
            }
            j += 1;
        }
        mask >>= 1;
        c += 1;
    }
    acc
}

/// Action of the basic Witt vector `(1 - a t^m)`, `a` in `A`, on a nil-unit
/// class over `B`: base change to `S = A[s]/(s^m - a)`, substitution
/// `t -> s t`, and the norm of the result along the free rank-`m` module.
pub fn act_basic(m: usize, a: &RingElement, x: &NilUnitClass, ext: &Extension) -> Result<NilUnitClass> {
    if a.ring() != ext.a() {
        return Err(Error::mismatch("action coefficient must lie in the base ring"));
    }
    let d = x.trunc;
    if x.is_identity_rep() {
        return Ok(x.clone());
    }
    let ring = ext.b();
    let fa = ext.f().apply(a);
    let mut fa_pows = vec![ring.one()];
    for _ in 0..d {
        let last = fa_pows.last().unwrap().clone();
        fa_pows.push(&last * &fa);
    }
    let mut cells: Vec<(usize, usize, SPoly)> = Vec::new();
    let mut row_support = vec![0u64; m];
    for (jm1, cj) in x.rep.iter().enumerate() {
        let j = jm1 + 1;
        if cj.is_zero() {
            continue;
        }
        for k in 0..m {
            let row = (k + j) % m;
            let q = (k + j) / m;
            let val = if q == 0 { cj.clone() } else { cj * &fa_pows[q] };
            if val.is_zero() {
                continue;
            }
            match cells.iter_mut().find(|(r, c, _)| *r == row && *c == k) {
                Some((_, _, p)) => p.push((j, val)),
                None => {
                    cells.push((row, k, vec![(j, val)]));
                    row_support[row] |= 1 << k;
                }
            }
        }
    }
    let u = SparseNil {
        size: m,
        cells,
        row_support,
    };
    let det = det_one_plus(&u, ring, d);
    debug_assert!(det[0].is_one());
    NilUnitClass::new(ext, d, det[1..].to_vec())
}

/// Action of a Witt vector over `A` on a nil-unit class over `B`. The
/// factorization `w = prod (1 - a_m t^m)` is a decomposition into a Witt
/// sum, so the action is the product of the basic actions; in particular
/// the zero Witt vector (the series 1, empty factorization) sends every
/// class to the identity.
pub fn witt_action(w: &WittVector, x: &NilUnitClass, ext: &Extension) -> Result<NilUnitClass> {
    if w.ring() != ext.a() {
        return Err(Error::mismatch("Witt vector must live over the base ring"));
    }
    let mut acc = NilUnitClass::one(ext.b(), x.trunc);
    for (m, a) in w.basic_factorization() {
        acc = acc.mul(&act_basic(m, &a, x, ext)?);
    }
    Ok(acc)
}

/// Result of the continuity search for one element.
#[derive(Clone, Debug)]
pub struct ContinuityResult {
    /// Least `m` with `(1 - a t^n) * x` trivial for all generators `a` and
    /// all `n` in `[m, ceiling]`; `None` when even `n = ceiling` fails.
    pub bound: Option<usize>,
    /// `killed[n - 1]` says whether degree `n` annihilates the class.
    pub killed: Vec<bool>,
}

/// The coefficient generators used for continuity searches: every element
/// of `A` when `A` is small, otherwise 0, 1 and the basis elements.
pub fn continuity_generators(ring: &Ring, bound: u64) -> Result<Vec<RingElement>> {
    match ring.size() {
        Some(sz) if sz <= 64 => ring.elements(bound),
        _ => {
            let mut g = vec![ring.zero(), ring.one()];
            for i in 0..ring.rank() {
                g.push(ring.basis(i));
            }
            g.sort();
            g.dedup();
            Ok(g)
        }
    }
}

pub fn continuity_bound(
    x: &NilUnitClass,
    ctx: &NpicContext,
    ceiling: usize,
    bound: u64,
) -> Result<ContinuityResult> {
    let gens = continuity_generators(ctx.ext.a(), bound)?;
    let mut killed = Vec::with_capacity(ceiling);
    for n in 1..=ceiling {
        let mut ok = true;
        for a in &gens {
            let y = act_basic(n, a, x, &ctx.ext)?;
            if !ctx.is_trivial(&y) {
                ok = false;
                break;
            }
        }
        killed.push(ok);
    }
    // least m with killed[m-1 ..] all true
    let mut bound_m = None;
    for m in (1..=ceiling).rev() {
        if killed[m - 1] {
            bound_m = Some(m);
        } else {
            break;
        }
    }
    Ok(ContinuityResult {
        bound: bound_m,
        killed,
    })
}

// ---------------------------------------------------------------------------
// Characteristic-zero log coordinates
// ---------------------------------------------------------------------------

/// Truncated logarithm of a nil-unit over a ℚ-algebra: the coefficient
/// vector of `log(1 + y) = y - y^2/2 + ...`, exact because `y` is nilpotent
/// and t-adically positive.
pub fn nil_log(x: &NilUnitClass, ring: &Ring) -> Result<Vec<RingElement>> {
    if ring.base() != BaseRing::Rat {
        return Err(Error::out_of_scope("log coordinates need characteristic zero"));
    }
    let d = x.trunc;
    let mut y = vec![ring.zero(); d + 1];
    for (i, c) in x.rep.iter().enumerate() {
        y[i + 1] = c.clone();
    }
    let mut acc = vec![ring.zero(); d + 1];
    let mut pow = y.clone();
    for k in 1..=d as i64 {
        let coeff = Coeff::Rat(BigRational::new(
            BigInt::from(if k % 2 == 1 { 1 } else { -1 }),
            BigInt::from(k),
        ));
        let term = poly::map_coeffs(&pow, |c| c.scalar_mul(&coeff));
        acc = poly::add(&acc, &term);
        pow = poly::mul(&pow, &y);
    }
    Ok(acc[1..].to_vec())
}

/// Truncated exponential, inverse to [`nil_log`].
pub fn nil_exp(coeffs: &[RingElement], ring: &Ring, ext: &Extension) -> Result<NilUnitClass> {
    if ring.base() != BaseRing::Rat {
        return Err(Error::out_of_scope("log coordinates need characteristic zero"));
    }
    let d = coeffs.len();
    let mut y = vec![ring.zero(); d + 1];
    for (i, c) in coeffs.iter().enumerate() {
        y[i + 1] = c.clone();
    }
    let mut acc = poly::one(ring, d);
    let mut pow = y.clone();
    let mut fact = BigInt::from(1);
    for k in 1..=d as i64 {
        fact *= k;
        let coeff = Coeff::Rat(BigRational::new(BigInt::from(1), fact.clone()));
        let term = poly::map_coeffs(&pow, |c| c.scalar_mul(&coeff));
        acc = poly::add(&acc, &term);
        pow = poly::mul(&pow, &y);
    }
    NilUnitClass::new(ext, d, acc[1..].to_vec())
}

/// Scales a class by a rational number in log coordinates:
/// `x^c = exp(c log x)`.
pub fn nil_rational_power(
    x: &NilUnitClass,
    c: &BigRational,
    ext: &Extension,
) -> Result<NilUnitClass> {
    let ring = ext.b().clone();
    let l = nil_log(x, &ring)?;
    let scaled: Vec<RingElement> = l
        .iter()
        .map(|v| v.scalar_mul(&Coeff::Rat(c.clone())))
        .collect();
    nil_exp(&scaled, &ring, ext)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn extension(a: &Ring, b: &Ring, images: Vec<RingElement>, name: &str) -> Extension {
        let f = RingMap::new(a, b, images).unwrap();
        Extension::new(name, f, 100_000).unwrap()
    }

    fn dual_f2() -> Extension {
        let f2 = Ring::prime_field(2).unwrap();
        let d = Ring::dual_numbers("F2[eps]", &f2).unwrap();
        extension(&f2, &d, vec![d.one()], "dual-f2")
    }

    fn dual_f3() -> Extension {
        let f3 = Ring::prime_field(3).unwrap();
        let d = Ring::dual_numbers("F3[eps]", &f3).unwrap();
        extension(&f3, &d, vec![d.one()], "dual-f3")
    }

    fn f2_f4() -> Extension {
        let f2 = Ring::prime_field(2).unwrap();
        // F4 = F2[x]/(x^2 + x + 1)
        let o = Coeff::Mod(1);
        let z = Coeff::Mod(0);
        let f4 = Ring::algebra(
            "F4",
            &f2,
            vec!["1".into(), "x".into()],
            vec![
                vec![o.clone(), z.clone()],
                vec![z.clone(), o.clone()],
                vec![z.clone(), o.clone()],
                vec![o.clone(), o.clone()],
            ],
            vec![o.clone(), z.clone()],
        )
        .unwrap();
        extension(&f2, &f4, vec![f4.one()], "f2-f4")
    }

    #[test]
    fn pic_of_quadratic_field_extension() {
        let e = f2_f4();
        let g = pic_group(&e, 1000).unwrap();
        assert_eq!(g.invariants, vec![3]);
    }

    #[test]
    fn pic_of_identity_extension_is_trivial() {
        let f2 = Ring::prime_field(2).unwrap();
        let e = extension(&f2, &f2, vec![f2.one()], "id-f2");
        assert!(pic_group(&e, 1000).unwrap().is_trivial());
    }

    #[test]
    fn pic_of_dual_numbers_over_f3() {
        let e = dual_f3();
        let g = pic_group(&e, 1000).unwrap();
        assert_eq!(g.invariants, vec![3]);
    }

    #[test]
    fn pic_sequence_reports() {
        for e in [dual_f2(), dual_f3(), f2_f4()] {
            let rep = verify_pic_sequence(&e, 1000).unwrap();
            assert!(rep.pass, "{}: {:?}", e.name(), rep.checks);
        }
    }

    #[test]
    fn nu_group_values() {
        // reduced ring: trivial
        let f2 = Ring::prime_field(2).unwrap();
        let split = Ring::direct_product("F2xF2", &f2, &f2).unwrap();
        assert_eq!(
            nu_group(&split, 3, 100_000).unwrap(),
            NuValue::Group(AbGroup::trivial())
        );
        // F2[eps], D = 3: eight elements, all of order 2
        let d = Ring::dual_numbers("F2[eps]", &f2).unwrap();
        assert_eq!(
            nu_group(&d, 3, 100_000).unwrap(),
            NuValue::Group(AbGroup::from_invariants(vec![2, 2, 2]))
        );
        // Q[eps], D = 2: dimension 2
        let q = Ring::rationals();
        let dq = Ring::dual_numbers("Q[eps]", &q).unwrap();
        assert_eq!(nu_group(&dq, 2, 100).unwrap(), NuValue::Dimension(2));
    }

    #[test]
    fn npic_of_dual_numbers() {
        let e = dual_f2();
        assert_eq!(
            npic_group(&e, 3, 100_000).unwrap(),
            NuValue::Group(AbGroup::from_invariants(vec![2, 2, 2]))
        );
        // identity extension: trivial for any D
        let f2 = Ring::prime_field(2).unwrap();
        let d = Ring::dual_numbers("F2[eps]", &f2).unwrap();
        let id = extension(&d, &d, (0..2).map(|i| d.basis(i)).collect(), "id");
        assert_eq!(
            npic_group(&id, 4, 100_000).unwrap(),
            NuValue::Group(AbGroup::trivial())
        );
    }

    #[test]
    fn npic_reduced_target_is_trivial() {
        let e = f2_f4();
        assert_eq!(
            npic_group(&e, 5, 100_000).unwrap(),
            NuValue::Group(AbGroup::trivial())
        );
    }

    #[test]
    fn identity_witt_vector_acts_trivially() {
        let e = dual_f2();
        let ctx = NpicContext::new(&e, 4, 100_000).unwrap();
        let one_w = WittVector::one(e.a(), 4); // 1 - t
        for x in ctx.generators() {
            let y = witt_action(&one_w, &x, &e).unwrap();
            assert_eq!(y, x);
        }
    }

    #[test]
    fn zero_witt_vector_kills() {
        let e = dual_f2();
        let ctx = NpicContext::new(&e, 4, 100_000).unwrap();
        let zero_w = WittVector::zero(e.a(), 4); // the series 1
        for x in ctx.generators() {
            let y = witt_action(&zero_w, &x, &e).unwrap();
            assert!(ctx.is_trivial(&y));
        }
    }

    #[test]
    fn rank_one_action_is_substitution() {
        // (1 - a t) * (1 + c t^j) = 1 + c a^j t^j
        let e = dual_f3();
        let b = e.b();
        let a = e.a().from_i64(2);
        let eps = b.basis(1);
        for j in 1..=4usize {
            let mut rep = vec![b.zero(); 4];
            rep[j - 1] = eps.clone();
            let x = NilUnitClass::new(&e, 4, rep).unwrap();
            let y = act_basic(1, &a, &x, &e).unwrap();
            let mut expect = vec![b.zero(); 4];
            expect[j - 1] = &eps * &e.f().apply(&a.pow(j as u64));
            assert_eq!(y.rep, expect, "j = {j}");
        }
    }

    #[test]
    fn degenerate_action_matches_witt_multiplication() {
        // B = A: the transfer-norm action must agree with Witt multiplication
        // on 1 + t Nil(A)[t]
        let z4 = Ring::integers_mod(4).unwrap();
        let id = extension(&z4, &z4, vec![z4.one()], "id-z4");
        let d = 5;
        let two = z4.from_i64(2);
        let reps = [
            vec![two.clone(), z4.zero(), two.clone(), z4.zero(), z4.zero()],
            vec![z4.zero(), two.clone(), z4.zero(), z4.zero(), two.clone()],
        ];
        for m in 1..=3usize {
            for a in [z4.from_i64(1), z4.from_i64(2), z4.from_i64(3)] {
                let w = WittVector::basic(&z4, d, m, &a);
                for rep in &reps {
                    let x = NilUnitClass::new(&id, d, rep.clone()).unwrap();
                    let via_action = act_basic(m, &a, &x, &id).unwrap();
                    let xw = WittVector::new(&z4, d, rep.clone()).unwrap();
                    let via_mul = w.mul(&xw).unwrap();
                    assert_eq!(via_action.rep, via_mul.coeffs(), "m={m} a={}", a.render());
                }
            }
        }
    }

    #[test]
    fn action_is_endomorphism() {
        let e = dual_f2();
        let ctx = NpicContext::new(&e, 4, 100_000).unwrap();
        let gens = ctx.generators();
        let a = e.a().one();
        for m in 1..=3usize {
            for x in gens.iter().take(3) {
                for y in gens.iter().skip(2).take(3) {
                    let lhs = act_basic(m, &a, &x.mul(y), &e).unwrap();
                    let rhs = act_basic(m, &a, x, &e)
                        .unwrap()
                        .mul(&act_basic(m, &a, y, &e).unwrap());
                    assert!(ctx.same(&lhs, &rhs), "m={m}");
                }
            }
        }
    }

    #[test]
    fn module_axioms_on_basics() {
        let e = dual_f3();
        let d = 4;
        let ctx = NpicContext::new(&e, d, 100_000).unwrap();
        let x = {
            let mut rep = vec![e.b().zero(); d];
            rep[0] = e.b().basis(1);
            rep[2] = e.b().basis(1);
            NilUnitClass::new(&e, d, rep).unwrap()
        };
        for (m1, a1v) in [(1usize, 2i64), (2, 1), (3, 2)] {
            for (m2, a2v) in [(1usize, 1i64), (2, 2)] {
                let a1 = e.a().from_i64(a1v);
                let a2 = e.a().from_i64(a2v);
                let w1 = WittVector::basic(e.a(), d, m1, &a1);
                let w2 = WittVector::basic(e.a(), d, m2, &a2);
                // associativity through the product
                let lhs = witt_action(&w1.mul(&w2).unwrap(), &x, &e).unwrap();
                let rhs = witt_action(&w1, &witt_action(&w2, &x, &e).unwrap(), &e).unwrap();
                assert!(ctx.same(&lhs, &rhs), "assoc m1={m1} m2={m2}");
                // distributivity over Witt addition
                let lhs = witt_action(&w1.add(&w2).unwrap(), &x, &e).unwrap();
                let rhs = witt_action(&w1, &x, &e)
                    .unwrap()
                    .mul(&witt_action(&w2, &x, &e).unwrap());
                assert!(ctx.same(&lhs, &rhs), "distr m1={m1} m2={m2}");
            }
        }
    }

    #[test]
    fn continuity_bounds_are_finite_and_stable() {
        let e = dual_f2();
        let d = 4;
        let ctx = NpicContext::new(&e, d, 100_000).unwrap();
        // x = 1 + eps t
        let mut rep = vec![e.b().zero(); d];
        rep[0] = e.b().basis(1);
        let x = NilUnitClass::new(&e, d, rep).unwrap();
        let r1 = continuity_bound(&x, &ctx, d + 2, 100_000).unwrap();
        let m = r1.bound.expect("finite bound");
        let r2 = continuity_bound(&x, &ctx, 2 * (d + 2), 100_000).unwrap();
        assert_eq!(r2.bound, Some(m), "stable under doubling the ceiling");
        // trivial class is killed from degree 1 on
        let triv = ctx.one();
        let r = continuity_bound(&triv, &ctx, d + 2, 100_000).unwrap();
        assert_eq!(r.bound, Some(1));
    }

    #[test]
    fn char_p_classes_have_p_power_order() {
        let e = dual_f3();
        let d = 3;
        let ctx = NpicContext::new(&e, d, 100_000).unwrap();
        for x in ctx.class_representatives(100_000).unwrap() {
            let ord = ctx.class_order(&x);
            assert!(ord == 1 || ord % 3 == 0);
            let mut o = ord;
            while o % 3 == 0 {
                o /= 3;
            }
            assert_eq!(o, 1, "order {ord} is not a power of 3");
        }
    }

    #[test]
    fn log_exp_roundtrip() {
        let q = Ring::rationals();
        let dq = Ring::dual_numbers("Q[eps]", &q).unwrap();
        let e = extension(&q, &dq, vec![dq.one()], "dual-q");
        let d = 4;
        let mut rep = vec![dq.zero(); d];
        rep[0] = dq.basis(1);
        rep[1] = dq.from_i64(3).scalar_mul(&Coeff::Rat(BigRational::new(
            BigInt::from(1),
            BigInt::from(2),
        )));
        rep[1] = &rep[1] * &dq.basis(1);
        let x = NilUnitClass::new(&e, d, rep).unwrap();
        let l = nil_log(&x, &dq).unwrap();
        let back = nil_exp(&l, &dq, &e).unwrap();
        assert_eq!(back, x);
        // squaring doubles the log
        let x2 = x.mul(&x);
        let l2 = nil_log(&x2, &dq).unwrap();
        for (a, b) in l.iter().zip(&l2) {
            assert_eq!(&(a + a), b);
        }
    }

    #[test]
    fn rational_action_is_linear_in_log_coordinates() {
        let q = Ring::rationals();
        let dq = Ring::dual_numbers("Q[eps]", &q).unwrap();
        let e = extension(&q, &dq, vec![dq.one()], "dual-q");
        let d = 4;
        let mut rep = vec![dq.zero(); d];
        rep[0] = dq.basis(1);
        rep[2] = dq.basis(1);
        let x = NilUnitClass::new(&e, d, rep).unwrap();
        let a = q.from_i64(3);
        let y = act_basic(1, &a, &x, &e).unwrap();
        let lx = nil_log(&x, &dq).unwrap();
        let ly = nil_log(&y, &dq).unwrap();
        // (1 - a t) scales the degree-j log coordinate by a^j
        for j in 1..=d {
            let scaled = lx[j - 1].scalar_mul(&Coeff::Rat(BigRational::from_integer(
                BigInt::from(3i64.pow(j as u32)),
            )));
            assert_eq!(ly[j - 1], scaled);
        }
    }
}
