//! Augmented Cech complexes of unit-type functors over covers of `Spec A`
//! by basic opens, and their exactness checker.
//!
//! A cover is a list of elements generating the unit ideal (a certificate
//! is stored). Localizations at products of cover elements are exact
//! idempotent splittings, so the whole complex is a finite diagram of
//! finite abelian groups: terms are presented on the generators of the
//! enumerated groups, differentials are alternating sums of restriction
//! maps with the convention `(dx)_{i0 < .. < ip} = sum_j (-1)^j x restricted
//! from the subset omitting i_j`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::abelian::{AbComplex, AbGroup, AbTerm, EnumeratedGroup, IntMatrix};
use crate::matrix::{mod_solve, rat_solve};
use crate::relpic::{nu_enumerated, nu_tuples, Extension};
use crate::ring::{localize, nilradical, Localization, Ring, RingElement, RingMap};
use crate::scalar::{BaseRing, Coeff};
use crate::{Error, Result};

/// A cover of `Spec A` by basic opens `D(s_i)`, with coefficients
/// certifying `sum x_i s_i = 1`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub ring: Ring,
    pub elems: Vec<RingElement>,
    pub certificate: Vec<RingElement>,
}

pub fn make_cover(ring: &Ring, elems: Vec<RingElement>, _bound: u64) -> Result<Cover> {
    if elems.is_empty() {
        return Err(Error::construction("a cover needs at least one element"));
    }
    if elems.iter().any(|s| s.ring() != ring) {
        return Err(Error::mismatch("cover elements must lie in the ring"));
    }
    let r = ring.rank();
    let k = elems.len();
    let certificate: Vec<RingElement> = match ring.base() {
        BaseRing::Mod(n) => {
            let mut rows: Vec<Vec<BigInt>> = vec![Vec::with_capacity(k * r); r];
            for s in &elems {
                let m = s.mul_matrix();
                for (i, row) in rows.iter_mut().enumerate() {
                    for j in 0..r {
                        row.push(match &m.get(i, j).coords()[0] {
                            Coeff::Mod(v) => BigInt::from(*v),
                            Coeff::Rat(_) => unreachable!(),
                        });
                    }
                }
            }
            let b: Vec<BigInt> = ring
                .one()
                .coords()
                .iter()
                .map(|c| match c {
                    Coeff::Mod(v) => BigInt::from(*v),
                    Coeff::Rat(_) => unreachable!(),
                })
                .collect();
            let sol = mod_solve(n, &IntMatrix::from_rows(&rows), &b).ok_or_else(|| {
                Error::construction("cover elements do not generate the unit ideal")
            })?;
            (0..k)
                .map(|i| {
                    ring.from_coords(
                        (0..r)
                            .map(|j| ring.base().from_bigint(&sol[i * r + j]))
                            .collect(),
                    )
                })
                .collect()
        }
        BaseRing::Rat => {
            let mut rows: Vec<Vec<BigRational>> = vec![Vec::with_capacity(k * r); r];
            for s in &elems {
                let m = s.mul_matrix();
                for (i, row) in rows.iter_mut().enumerate() {
                    for j in 0..r {
                        row.push(m.get(i, j).coords()[0].as_rational().unwrap().clone());
                    }
                }
            }
            let b: Vec<BigRational> = ring
                .one()
                .coords()
                .iter()
                .map(|c| c.as_rational().unwrap().clone())
                .collect();
            let sol = rat_solve(&rows, &b).ok_or_else(|| {
                Error::construction("cover elements do not generate the unit ideal")
            })?;
            (0..k)
                .map(|i| {
                    ring.from_coords((0..r).map(|j| Coeff::Rat(sol[i * r + j].clone())).collect())
                })
                .collect()
        }
    };
    // sanity: the certificate really witnesses 1
    let mut acc = ring.zero();
    for (x, s) in certificate.iter().zip(&elems) {
        acc = &acc + &(x * s);
    }
    if !acc.is_one() {
        return Err(Error::construction("certificate verification failed"));
    }
    Ok(Cover {
        ring: ring.clone(),
        elems,
        certificate,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CechFunctor {
    Nu,
    Pic,
    Npic,
}

impl std::fmt::Display for CechFunctor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CechFunctor::Nu => write!(f, "NU"),
            CechFunctor::Pic => write!(f, "Pic(f)"),
            CechFunctor::Npic => write!(f, "NPic(f)"),
        }
    }
}

/// A built Cech complex: the underlying presentation-level complex plus
/// subset labels for reporting.
pub struct CechComplex {
    pub complex: AbComplex,
    pub functor: CechFunctor,
    /// one label per term, e.g. "(s0 s2)"
    pub labels: Vec<String>,
}

pub struct ExactnessReport {
    pub homology: Vec<AbGroup>,
    pub labels: Vec<String>,
    pub pass: bool,
}

pub fn verify_exactness(c: &CechComplex) -> Result<ExactnessReport> {
    c.complex.validate()?;
    let homology = c.complex.homology_all();
    let pass = homology.iter().all(|h| h.is_trivial());
    Ok(ExactnessReport {
        homology,
        labels: c.labels.clone(),
        pass,
    })
}

// ---------------------------------------------------------------------------
// The localized site of a cover
// ---------------------------------------------------------------------------

/// All subsets of `{0..k-1}` ordered by (size, lex); index 0 is the empty
/// set (the global term).
fn subsets_by_level(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for size in 1..=k {
        out.extend(crate::matrix::combinations(k, size));
    }
    out
}

fn subset_label(t: &[usize], cover: &Cover) -> String {
    if t.is_empty() {
        return "global".into();
    }
    let parts: Vec<String> = t
        .iter()
        .map(|&i| cover.elems[i].render())
        .collect();
    format!("D({})", parts.join("*"))
}

struct Site {
    subsets: Vec<Vec<usize>>,
    locs: Vec<Localization>,
    /// transition maps for inclusions T -> T u {extra}, keyed by
    /// (subset index, superset index)
    transitions: HashMap<(usize, usize), RingMap>,
}

fn build_site(ring: &Ring, elems: &[RingElement], bound: u64) -> Result<Site> {
    let k = elems.len();
    let subsets = subsets_by_level(k);
    let mut locs = Vec::with_capacity(subsets.len());
    for t in &subsets {
        let s = t
            .iter()
            .fold(ring.one(), |acc, &i| &acc * &elems[i]);
        locs.push(localize(ring, &s, bound)?);
    }
    let index_of: HashMap<Vec<usize>, usize> = subsets
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    let mut transitions = HashMap::new();
    for (ti, t) in subsets.iter().enumerate() {
        for extra in 0..k {
            if t.contains(&extra) {
                continue;
            }
            let mut sup = t.clone();
            sup.push(extra);
            sup.sort();
            let si = index_of[&sup];
            let images: Vec<RingElement> = locs[ti]
                .basis_lifts
                .iter()
                .map(|l| locs[si].map.apply(l))
                .collect();
            let map = RingMap::new(&locs[ti].ring, &locs[si].ring, images)?;
            transitions.insert((ti, si), map);
        }
    }
    Ok(Site {
        subsets,
        locs,
        transitions,
    })
}

/// Localized extensions over every subset of the cover, with transition
/// data on the target side.
struct ExtSite {
    site_b: Site,
    exts: Vec<Extension>,
}

fn build_ext_site(ext: &Extension, cover: &Cover, bound: u64) -> Result<ExtSite> {
    if &cover.ring != ext.a() {
        return Err(Error::mismatch("cover must live over the source ring"));
    }
    let site_a = build_site(ext.a(), &cover.elems, bound)?;
    let elems_b: Vec<RingElement> = cover.elems.iter().map(|s| ext.f().apply(s)).collect();
    let site_b = build_site(ext.b(), &elems_b, bound)?;
    let mut exts = Vec::with_capacity(site_a.subsets.len());
    for (i, loc_a) in site_a.locs.iter().enumerate() {
        let images: Vec<RingElement> = loc_a
            .basis_lifts
            .iter()
            .map(|l| site_b.locs[i].map.apply(&ext.f().apply(l)))
            .collect();
        let f_t = RingMap::new(&loc_a.ring, &site_b.locs[i].ring, images)?;
        if f_t.kernel_element().is_some() {
            return Err(Error::out_of_scope(format!(
                "localized extension over {:?} is not faithful",
                site_a.subsets[i]
            )));
        }
        let e_t = Extension::new(
            format!("{}@{:?}", ext.name(), site_a.subsets[i]),
            f_t,
            bound,
        )?;
        exts.push(e_t);
    }
    Ok(ExtSite { site_b, exts })
}

// ---------------------------------------------------------------------------
// Complex assembly
// ---------------------------------------------------------------------------

/// Per-subset group data: an enumerated group plus extra relation rows
/// from a distinguished subgroup (the image subgroup for quotient
/// functors; empty for plain NU).
struct TermData<T> {
    eg: EnumeratedGroup<T>,
    extra_relations: Vec<Vec<i64>>,
}

impl<T: Clone + Eq + std::hash::Hash + Ord> TermData<T> {
    fn term(&self) -> AbTerm {
        let g = self.eg.gens.len();
        let mut rel = self.eg.relations.clone();
        for row in &self.extra_relations {
            let mut padded = row.clone();
            padded.resize(g, 0);
            rel = rel.vstack(&IntMatrix::from_rows(&[padded]));
        }
        AbTerm::new(g, rel)
    }
}

/// Builds the presentation-level complex from per-subset term data and a
/// generator-level restriction: `restrict(ti, si, gen)` gives the image of
/// a source generator in the target group.
fn assemble<T, F>(
    subsets: &[Vec<usize>],
    terms: &[TermData<T>],
    cover: &Cover,
    functor: CechFunctor,
    restrict: F,
) -> Result<CechComplex>
where
    T: Clone + Eq + std::hash::Hash + Ord,
    F: Fn(usize, usize, &T) -> T,
{
    let k = cover.elems.len();
    let index_of: HashMap<Vec<usize>, usize> = subsets
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();

    // group subsets by level; the top level is the full subset
    let mut levels: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
    for (i, t) in subsets.iter().enumerate() {
        levels[t.len()].push(i);
    }
    // term offset of each subset inside its level
    let mut offsets: HashMap<usize, usize> = HashMap::new();
    let mut ab_terms = Vec::new();
    let mut labels = Vec::new();
    for lvl in levels.iter() {
        let mut gens = 0usize;
        let mut rel = IntMatrix::zero(0, 0);
        let mut label_parts = Vec::new();
        for &si in lvl {
            offsets.insert(si, gens);
            let t = terms[si].term();
            gens += t.gens;
            // block-diagonal relations
            let mut grown = IntMatrix::zero(rel.rows + t.relations.rows, gens);
            for i in 0..rel.rows {
                for j in 0..rel.cols {
                    grown.set(i, j, rel.get(i, j).clone());
                }
            }
            for i in 0..t.relations.rows {
                for j in 0..t.relations.cols {
                    grown.set(rel.rows + i, gens - t.gens + j, t.relations.get(i, j).clone());
                }
            }
            rel = grown;
            label_parts.push(subset_label(&subsets[si], cover));
        }
        ab_terms.push(AbTerm::new(gens, rel));
        labels.push(label_parts.join(" x "));
    }

    // differentials
    let mut maps = Vec::new();
    for lvl in 0..k {
        let src_terms = &levels[lvl];
        let dst_terms = &levels[lvl + 1];
        let rows = ab_terms[lvl + 1].gens;
        let cols = ab_terms[lvl].gens;
        let mut m = IntMatrix::zero(rows, cols);
        for &di in dst_terms {
            let sup = &subsets[di];
            for (j, &omit) in sup.iter().enumerate() {
                let mut sub: Vec<usize> = sup.clone();
                sub.remove(j);
                let si = index_of[&sub];
                debug_assert!(src_terms.contains(&si));
                let sign = if j % 2 == 0 { 1i64 } else { -1 };
                let row_off = offsets[&di];
                let col_off = offsets[&si];
                for (g, gen) in terms[si].eg.gens.iter().enumerate() {
                    let img = restrict(si, di, gen);
                    let expr = terms[di].eg.expr(&img).ok_or_else(|| {
                        Error::construction("restriction image escaped the target group")
                    })?;
                    for (r, v) in expr.iter().enumerate() {
                        let val =
                            m.get(row_off + r, col_off + g) + BigInt::from(sign) * BigInt::from(*v);
                        m.set(row_off + r, col_off + g, val);
                    }
                }
                let _ = omit;
            }
        }
        maps.push(m);
    }

    Ok(CechComplex {
        complex: AbComplex {
            terms: ab_terms,
            maps,
        },
        functor,
        labels,
    })
}

/// The augmented complex of `NU_D` over a cover of a ring.
pub fn build_nu_complex(
    ring: &Ring,
    cover: &Cover,
    d: usize,
    bound: u64,
) -> Result<CechComplex> {
    if &cover.ring != ring {
        return Err(Error::mismatch("cover must live over the ring"));
    }
    let site = build_site(ring, &cover.elems, bound)?;
    let mut terms = Vec::with_capacity(site.subsets.len());
    for loc in &site.locs {
        let nil = nilradical(&loc.ring, bound)?;
        let eg = nu_enumerated(&loc.ring, &nil, d, bound)?;
        terms.push(TermData {
            eg,
            extra_relations: Vec::new(),
        });
    }
    assemble(
        &site.subsets,
        &terms,
        cover,
        CechFunctor::Nu,
        |si, di, gen: &Vec<RingElement>| {
            let q = &site.transitions[&(si, di)];
            gen.iter().map(|c| q.apply(c)).collect()
        },
    )
}

/// The augmented complex of `Pic(f)` or `NPic_D(f)` over a cover of the
/// source of an extension.
pub fn build_ext_complex(
    ext: &Extension,
    cover: &Cover,
    functor: CechFunctor,
    d: usize,
    bound: u64,
) -> Result<CechComplex> {
    let es = build_ext_site(ext, cover, bound)?;
    match functor {
        CechFunctor::Nu => Err(Error::mismatch(
            "the NU functor takes a plain ring; use build_nu_complex",
        )),
        CechFunctor::Npic => {
            let mut terms = Vec::with_capacity(es.site_b.subsets.len());
            for (i, e_t) in es.exts.iter().enumerate() {
                let nil_b = e_t.nil_b();
                let eg = nu_enumerated(e_t.b(), nil_b, d, bound)?;
                let mut extra = Vec::new();
                let nil_a = e_t
                    .nil_a()
                    .elements
                    .as_ref()
                    .ok_or_else(|| Error::out_of_scope("finite base needed"))?;
                for n in nil_a.iter().filter(|n| !n.is_zero()) {
                    for deg in 1..=d {
                        let mut tup = vec![e_t.b().zero(); d];
                        tup[deg - 1] = e_t.f().apply(n);
                        extra.push(eg.expr(&tup).ok_or_else(|| {
                            Error::construction("image generator escaped the nil-unit group")
                        })?);
                    }
                }
                terms.push(TermData {
                    eg,
                    extra_relations: extra,
                });
                let _ = i;
            }
            assemble(
                &es.site_b.subsets,
                &terms,
                cover,
                functor,
                |si, di, gen: &Vec<RingElement>| {
                    let q = &es.site_b.transitions[&(si, di)];
                    gen.iter().map(|c| q.apply(c)).collect()
                },
            )
        }
        CechFunctor::Pic => {
            let mut terms = Vec::with_capacity(es.site_b.subsets.len());
            for e_t in es.exts.iter() {
                let eg = e_t.b().unit_group(bound)?;
                let mut extra = Vec::new();
                for u in e_t.a().elements(bound)? {
                    if u.is_unit() {
                        let img = e_t.f().apply(&u);
                        extra.push(eg.expr(&img).ok_or_else(|| {
                            Error::construction("unit image escaped the unit group")
                        })?);
                    }
                }
                terms.push(TermData {
                    eg,
                    extra_relations: extra,
                });
            }
            assemble(
                &es.site_b.subsets,
                &terms,
                cover,
                functor,
                |si, di, gen: &RingElement| es.site_b.transitions[&(si, di)].apply(gen),
            )
        }
    }
}

// ---------------------------------------------------------------------------
// The localization-colimit comparison
// ---------------------------------------------------------------------------

/// Compares `NU_D(R_s)` with the colimit of `NU_D(R)` along the coefficient
/// substitution `c_i -> c_i s^i`. Over an artinian ring the system
/// stabilizes onto its eventual image, and the localization map must carry
/// that image bijectively onto `NU_D(R_s)`.
pub fn nu_localization_colimit_agrees(
    ring: &Ring,
    s: &RingElement,
    d: usize,
    bound: u64,
) -> Result<bool> {
    let nil = nilradical(ring, bound)?;
    let elements = nil
        .elements
        .as_ref()
        .ok_or_else(|| Error::out_of_scope("finite base needed"))?;
    let tuples = nu_tuples(elements, d);
    let sigma = |tup: &Vec<RingElement>| -> Vec<RingElement> {
        tup.iter()
            .enumerate()
            .map(|(i, c)| c * &s.pow((i + 1) as u64))
            .collect()
    };
    let mut current: std::collections::HashSet<Vec<RingElement>> =
        tuples.iter().cloned().collect();
    loop {
        let next: std::collections::HashSet<Vec<RingElement>> =
            current.iter().map(&sigma).collect();
        if next == current {
            break;
        }
        current = next;
    }
    let loc = localize(ring, s, bound)?;
    let nil_loc = nilradical(&loc.ring, bound)?;
    let loc_tuples: std::collections::HashSet<Vec<RingElement>> =
        nu_tuples(nil_loc.elements.as_ref().expect("finite"), d)
            .into_iter()
            .collect();
    let image: std::collections::HashSet<Vec<RingElement>> = current
        .iter()
        .map(|tup| tup.iter().map(|c| loc.map.apply(c)).collect())
        .collect();
    Ok(image == loc_tuples && current.len() == loc_tuples.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z12() -> Ring {
        Ring::integers_mod(12).unwrap()
    }

    fn cover_z12_49() -> (Ring, Cover) {
        let r = z12();
        let c = make_cover(&r, vec![r.from_i64(4), r.from_i64(9)], 100_000).unwrap();
        (r, c)
    }

    #[test]
    fn cover_validation() {
        let r = z12();
        assert!(make_cover(&r, vec![r.from_i64(4), r.from_i64(9)], 100_000).is_ok());
        // 2x + 3y = 1 is solvable mod 6
        let z6 = Ring::integers_mod(6).unwrap();
        assert!(make_cover(&z6, vec![z6.from_i64(2), z6.from_i64(3)], 100_000).is_ok());
        // {0} generates nothing
        assert!(make_cover(&r, vec![r.zero()], 100_000).is_err());
        // {2} generates (2) which misses 1 mod 12
        assert!(make_cover(&r, vec![r.from_i64(2)], 100_000).is_err());
    }

    #[test]
    fn nu_complex_over_z12_is_exact() {
        let (r, c) = cover_z12_49();
        for d in 1..=3usize {
            let cx = build_nu_complex(&r, &c, d, 1_000_000).unwrap();
            let rep = verify_exactness(&cx).unwrap();
            assert!(rep.pass, "d = {d}: {:?}", rep.homology);
        }
    }

    #[test]
    fn nu_complex_structure_matches_components() {
        // NU(Z/12) = {1, 1+6t, ...}: Nil(Z/12) = {0,6}; the cover {4,9}
        // splits Z/12 into Z/3 x Z/4 and the overlap localization is zero
        let (r, c) = cover_z12_49();
        let cx = build_nu_complex(&r, &c, 2, 1_000_000).unwrap();
        // global term: NU_2(Z/12) has 4 elements [2,2]
        assert_eq!(cx.complex.terms[0].group.invariants, vec![2, 2]);
        // level 1: NU(Z/3) (trivial) x NU(Z/4) ([2,2])
        assert_eq!(cx.complex.terms[1].group.invariants, vec![2, 2]);
        // level 2: the double overlap D(36) = D(0) is the zero ring
        assert!(cx.complex.terms[2].group.is_trivial());
    }

    #[test]
    fn three_element_cover_is_exact() {
        let r = z12();
        let c = make_cover(
            &r,
            vec![r.from_i64(4), r.from_i64(9), r.from_i64(3)],
            100_000,
        )
        .unwrap();
        let cx = build_nu_complex(&r, &c, 2, 1_000_000).unwrap();
        let rep = verify_exactness(&cx).unwrap();
        assert!(rep.pass, "{:?}", rep.homology);
    }

    #[test]
    fn cover_with_unit_contracts() {
        let r = z12();
        let c = make_cover(&r, vec![r.from_i64(1), r.from_i64(4)], 100_000).unwrap();
        let cx = build_nu_complex(&r, &c, 2, 1_000_000).unwrap();
        assert!(verify_exactness(&cx).unwrap().pass);
    }

    fn dual_ext(n: u64, name: &str) -> Extension {
        let zn = Ring::integers_mod(n).unwrap();
        let d = Ring::dual_numbers(name, &zn).unwrap();
        let f = RingMap::new(&zn, &d, vec![d.one()]).unwrap();
        Extension::new(format!("dual-z{n}"), f, 1_000_000).unwrap()
    }

    #[test]
    fn npic_complex_over_z6_is_exact() {
        let e = dual_ext(6, "Z6[eps]");
        let z6 = e.a().clone();
        let c = make_cover(&z6, vec![z6.from_i64(2), z6.from_i64(3)], 100_000).unwrap();
        for d in 1..=3usize {
            let cx = build_ext_complex(&e, &c, CechFunctor::Npic, d, 1_000_000).unwrap();
            let rep = verify_exactness(&cx).unwrap();
            assert!(rep.pass, "d = {d}: {:?}", rep.homology);
        }
    }

    #[test]
    fn pic_complex_over_split_cover() {
        let e = dual_ext(6, "Z6[eps]");
        let z6 = e.a().clone();
        let c = make_cover(&z6, vec![z6.from_i64(3), z6.from_i64(4)], 100_000).unwrap();
        let cx = build_ext_complex(&e, &c, CechFunctor::Pic, 1, 1_000_000).unwrap();
        cx.complex.validate().unwrap();
        // H^0 of the Pic complex vanishes here as well (component split)
        let rep = verify_exactness(&cx).unwrap();
        assert!(rep.pass, "{:?}", rep.homology);
    }

    #[test]
    fn trivial_cover_of_extension() {
        let e = dual_ext(4, "Z4[eps]");
        let z4 = e.a().clone();
        let c = make_cover(&z4, vec![z4.one()], 100_000).unwrap();
        let cx = build_ext_complex(&e, &c, CechFunctor::Npic, 2, 1_000_000).unwrap();
        let rep = verify_exactness(&cx).unwrap();
        assert!(rep.pass);
        // the complex is NPic(f) -> NPic(f) with the identity differential
        assert_eq!(cx.complex.terms.len(), 2);
    }

    #[test]
    fn corrupted_differential_is_detected() {
        let (r, c) = cover_z12_49();
        let mut cx = build_nu_complex(&r, &c, 2, 1_000_000).unwrap();
        // zero out the augmentation: homology must appear
        let cols = cx.complex.maps[0].cols;
        let rows = cx.complex.maps[0].rows;
        cx.complex.maps[0] = IntMatrix::zero(rows, cols);
        let rep = verify_exactness(&cx).unwrap();
        assert!(!rep.pass);
        assert!(rep.homology.iter().any(|h| !h.is_trivial()));
    }

    #[test]
    fn refinement_keeps_augmentation_kernel() {
        let (r, c) = cover_z12_49();
        let cx = build_nu_complex(&r, &c, 2, 1_000_000).unwrap();
        let h0 = cx.complex.homology(0);
        let refined = make_cover(
            &r,
            vec![r.from_i64(4), r.from_i64(9), r.from_i64(1)],
            100_000,
        )
        .unwrap();
        let cx2 = build_nu_complex(&r, &refined, 2, 1_000_000).unwrap();
        assert_eq!(h0, cx2.complex.homology(0));
    }

    #[test]
    fn localization_colimit_shadow() {
        let r = z12();
        for s in [4i64, 9, 3, 1] {
            assert!(
                nu_localization_colimit_agrees(&r, &r.from_i64(s), 3, 1_000_000).unwrap(),
                "s = {s}"
            );
        }
        let z6 = Ring::integers_mod(6).unwrap();
        for s in [2i64, 3, 5] {
            assert!(
                nu_localization_colimit_agrees(&z6, &z6.from_i64(s), 3, 1_000_000).unwrap(),
                "s = {s}"
            );
        }
    }
}
