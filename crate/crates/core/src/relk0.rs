//! Relative `K_0` of an extension `f: A -> B` by matrix triples.
//!
//! A class is a triple `[A^n, alpha, A^n]` with `alpha` invertible over
//! `B`; over the semilocal rings in scope every finitely generated
//! projective is free, so free triples lose nothing. Reduction writes
//! `alpha` as a product of elementary matrices times `diag(u, 1, ..., 1)`
//! by Gaussian elimination with unit pivots, manufactured componentwise
//! through the primitive idempotents; elementary factors die in `K_0(f)`,
//! so the class is the unit class of `u`. The determinant map computed
//! independently (division-free characteristic polynomial) must agree —
//! that agreement is the computable form of `SK_0(f) = 0` in scope.

use rand::Rng;

use crate::abelian::AbGroup;
use crate::matrix::RingMat;
use crate::relpic::{pic_group, Extension, PicClass, PicContext};
use crate::ring::{
    ideal_closure, idempotents, primitive_idempotents, quotient_ring, Ring, RingElement, RingMap,
};
use crate::{Error, Result};

/// `[A^n, alpha, A^n]` with `alpha` in `GL_n(B)`.
#[derive(Clone, Debug)]
pub struct K0Triple {
    pub size: usize,
    pub matrix: RingMat,
}

impl K0Triple {
    pub fn new(ext: &Extension, matrix: RingMat) -> Result<K0Triple> {
        if matrix.rows != matrix.cols {
            return Err(Error::mismatch("triple matrices are square"));
        }
        if matrix.ring() != ext.b() {
            return Err(Error::mismatch("triple matrix must live over the target ring"));
        }
        if matrix.rows > 0 && !matrix.det().is_unit() {
            return Err(Error::Singular("triple matrix is not invertible".into()));
        }
        Ok(K0Triple {
            size: matrix.rows,
            matrix,
        })
    }

    pub fn zero(ext: &Extension) -> K0Triple {
        K0Triple {
            size: 0,
            matrix: RingMat::zero(ext.b(), 0, 0),
        }
    }

    pub fn block_sum(&self, other: &K0Triple) -> K0Triple {
        K0Triple {
            size: self.size + other.size,
            matrix: self.matrix.block_sum(&other.matrix),
        }
    }

    pub fn tensor(&self, other: &K0Triple) -> K0Triple {
        K0Triple {
            size: self.size * other.size,
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }
}

/// The boundary `GL_n(B) -> K_0(f)`, `g -> [A^n, g, A^n]`.
pub fn boundary(ext: &Extension, g: RingMat) -> Result<K0Triple> {
    K0Triple::new(ext, g)
}

/// Determinant map to the unit-class model of `Pic(f)`.
pub fn det_map(t: &K0Triple, ext: &Extension) -> Result<PicClass> {
    let d = if t.size == 0 {
        ext.b().one()
    } else {
        t.matrix.det()
    };
    if !d.is_unit() {
        return Err(Error::Singular("triple determinant is not a unit".into()));
    }
    Ok(PicClass { unit: d })
}

/// Inverse of `x` on the component cut out by the idempotent `e`, i.e.
/// `e y` with `x y = e` on that component; `None` when `e x` is not a unit
/// there.
fn invert_in_component(x: &RingElement, e: &RingElement) -> Option<RingElement> {
    let ring = x.ring();
    let probe = &(e * x) + &(&ring.one() - e);
    probe.try_invert().map(|inv| e * &inv)
}

/// Gaussian reduction of a triple to `diag(u, 1, .., 1)` by elementary row
/// and column operations; returns the unit class of `u`.
pub fn reduce(t: &K0Triple, ext: &Extension, bound: u64) -> Result<PicClass> {
    let ring = ext.b().clone();
    if t.size == 0 {
        return Ok(PicClass { unit: ring.one() });
    }
    let prims = primitive_idempotents(&ring, bound)?;
    let n = t.size;
    let mut w = t.matrix.clone();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if !w.get(k, k).is_unit() {
            // manufacture a unit pivot componentwise: on each component
            // where the pivot is singular, add a multiple of a row whose
            // entry is invertible there
            for e in &prims {
                if invert_in_component(w.get(k, k), e).is_some() {
                    continue;
                }
                let mut fixed = false;
                for i in k + 1..n {
                    if let Some(inv) = invert_in_component(w.get(i, k), e) {
                        // c = e (1 - w[k][k]) inv makes the pivot equal e there
                        let c = &(e - &(e * w.get(k, k))) * &inv;
                        for j in 0..n {
                            let v = &(&c * w.get(i, j)) + w.get(k, j);
                            w.set(k, j, v);
                        }
                        fixed = true;
                        break;
                    }
                }
                if !fixed {
                    return Err(Error::Singular(format!(
                        "no unit pivot available in column {k}"
                    )));
                }
            }
        }
        let pivot = w.get(k, k).clone();
        let pinv = pivot
            .try_invert()
            .ok_or_else(|| Error::Singular(format!("pivot in column {k} is not a unit")))?;
        // clear the column below
        for i in k + 1..n {
            if w.get(i, k).is_zero() {
                continue;
            }
            let c = &(-w.get(i, k)) * &pinv;
            for j in 0..n {
                let v = &(&c * w.get(k, j)) + w.get(i, j);
                w.set(i, j, v);
            }
        }
        // clear the row to the right
        for j in k + 1..n {
            if w.get(k, j).is_zero() {
                continue;
            }
            let c = &(-w.get(k, j)) * &pinv;
            for i in 0..n {
                let v = &(&c * w.get(i, k)) + w.get(i, j);
                w.set(i, j, v);
            }
        }
        diag.push(pivot);
    }
    let unit = diag.iter().fold(ring.one(), |acc, d| &acc * d);
    if !unit.is_unit() {
        return Err(Error::Singular("reduction produced a non-unit".into()));
    }
    Ok(PicClass { unit })
}

/// The operation `lambda^i` on triples: the `i`-th compound matrix, of size
/// `C(n, i)`; zero above the rank.
pub fn lambda_op(i: usize, t: &K0Triple, ext: &Extension) -> K0Triple {
    assert!(i >= 1);
    if i > t.size {
        return K0Triple::zero(ext);
    }
    let m = t.matrix.compound(i);
    K0Triple {
        size: m.rows,
        matrix: m,
    }
}

/// A seeded random element of a finite ring.
pub fn random_element(ring: &Ring, rng: &mut impl Rng) -> RingElement {
    let n = ring.base().size().expect("finite base");
    let coords = (0..ring.rank())
        .map(|_| crate::scalar::Coeff::Mod(rng.random_range(0..n)))
        .collect();
    ring.from_coords(coords)
}

/// A seeded random invertible matrix: a product of elementary matrices and
/// a diagonal of random units.
pub fn random_gl(ring: &Ring, n: usize, rng: &mut impl Rng, bound: u64) -> Result<RingMat> {
    let units: Vec<RingElement> = ring
        .elements(bound)?
        .into_iter()
        .filter(|x| x.is_unit())
        .collect();
    let mut m = RingMat::from_fn(ring, n, n, |i, j| {
        if i == j {
            units[rng.random_range(0..units.len())].clone()
        } else {
            ring.zero()
        }
    });
    for _ in 0..2 * n * n {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n);
        if n > 1 {
            while j == i {
                j = rng.random_range(0..n);
            }
        } else {
            continue;
        }
        let c = random_element(ring, rng);
        // row_i += c * row_j
        for k in 0..n {
            let v = &(&c * m.get(j, k)) + m.get(i, k);
            m.set(i, k, v);
        }
    }
    Ok(m)
}

/// Seeded batch of random triples, for demos and sweeps.
pub fn random_triples(
    ext: &Extension,
    count: usize,
    max_n: usize,
    seed: u64,
    bound: u64,
) -> Result<Vec<K0Triple>> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=max_n);
            K0Triple::new(ext, random_gl(ext.b(), n, &mut rng, bound)?)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Excision
// ---------------------------------------------------------------------------

pub struct ExcisionReport {
    pub shared_ideal: bool,
    pub k0_f: AbGroup,
    pub k0_fbar: AbGroup,
    pub iso: bool,
    pub pass: bool,
    pub detail: String,
}

/// Verifies `K_0(f) = K_0(f bar)` for an ideal of `A` mapping isomorphically
/// onto an ideal of `B`, by exhaustive comparison of the unit-class groups.
pub fn excision_check(
    ext: &Extension,
    ideal_gens: &[RingElement],
    bound: u64,
) -> Result<ExcisionReport> {
    let a = ext.a();
    let b = ext.b();
    let elems_a = a.elements(bound)?;
    let elems_b = b.elements(bound)?;
    let ideal_a = ideal_closure(a, ideal_gens, &elems_a);
    let mapped_gens: Vec<RingElement> = ideal_gens.iter().map(|g| ext.f().apply(g)).collect();
    let ideal_b = ideal_closure(b, &mapped_gens, &elems_b);
    let image: Vec<RingElement> = {
        let mut v: Vec<RingElement> = ideal_a.iter().map(|x| ext.f().apply(x)).collect();
        v.sort();
        v
    };
    let shared = image == ideal_b;
    if !shared {
        return Ok(ExcisionReport {
            shared_ideal: false,
            k0_f: AbGroup::trivial(),
            k0_fbar: AbGroup::trivial(),
            iso: false,
            pass: false,
            detail: format!(
                "f(I) has {} elements but the ideal it generates in B has {}",
                image.len(),
                ideal_b.len()
            ),
        });
    }

    let qa = quotient_ring(a, ideal_gens, bound)?;
    let qb = quotient_ring(b, &mapped_gens, bound)?;
    let images: Vec<RingElement> = qa
        .basis_lifts
        .iter()
        .map(|l| qb.map.apply(&ext.f().apply(l)))
        .collect();
    let fbar = RingMap::new(&qa.ring, &qb.ring, images)?;
    let ext_bar = Extension::new(format!("{}-mod-ideal", ext.name()), fbar, bound)?;

    let k0_f = pic_group(ext, bound)?;
    let k0_fbar = pic_group(&ext_bar, bound)?;

    // the natural map on unit classes: surjective + equal orders => iso
    let ug_bar = qb.ring.unit_group(bound)?;
    let mut sub: Vec<RingElement> = Vec::new();
    for u in elems_b.iter().filter(|x| x.is_unit()) {
        sub.push(qb.map.apply(u));
    }
    for u in qa.ring.elements(bound)?.into_iter().filter(|x| x.is_unit()) {
        sub.push(ext_bar.f().apply(&u));
    }
    let coker = ug_bar.quotient(&sub)?;
    let surjective = coker.is_trivial();
    let iso = surjective && k0_f.order() == k0_fbar.order() && k0_f.invariants == k0_fbar.invariants;

    Ok(ExcisionReport {
        shared_ideal: true,
        iso,
        pass: iso,
        detail: format!("K0(f) = {k0_f}, K0(fbar) = {k0_fbar}"),
        k0_f,
        k0_fbar,
    })
}

// ---------------------------------------------------------------------------
// Subintegral extensions
// ---------------------------------------------------------------------------

pub struct SubintegralReport {
    pub subintegral: bool,
    pub reason: String,
    pub det_iso_verified: bool,
    pub sequence_exact: bool,
    pub k0: AbGroup,
    pub pass: bool,
}

/// Decides subintegrality (spectrum bijection with matching residue fields)
/// from the component decomposition of both rings.
pub fn is_subintegral(ext: &Extension, bound: u64) -> Result<(bool, String)> {
    let a = ext.a();
    let b = ext.b();
    let prims_a = primitive_idempotents(a, bound)?;
    let prims_b = primitive_idempotents(b, bound)?;
    let idems_b = idempotents(b, bound)?;
    for e in &prims_a {
        let fe = ext.f().apply(e);
        let below = idems_b
            .iter()
            .filter(|g| !g.is_zero() && &(*g * &fe) == *g)
            .count();
        if below != 1 {
            return Ok((
                false,
                format!(
                    "component of A at {} splits into {} components of B",
                    e.render(),
                    below
                ),
            ));
        }
    }
    if prims_a.len() != prims_b.len() {
        return Ok((
            false,
            format!(
                "{} components upstairs, {} downstairs",
                prims_b.len(),
                prims_a.len()
            ),
        ));
    }
    // residue fields must match in size
    let elems_a = a.elements(bound)?;
    let elems_b = b.elements(bound)?;
    for e in &prims_a {
        let fe = ext.f().apply(e);
        let comp_a: std::collections::HashSet<RingElement> =
            elems_a.iter().map(|x| e * x).collect();
        let nil_a = comp_a.iter().filter(|x| x.is_nilpotent()).count();
        let comp_b: std::collections::HashSet<RingElement> =
            elems_b.iter().map(|x| &fe * x).collect();
        let nil_b = comp_b.iter().filter(|x| x.is_nilpotent()).count();
        let ka = comp_a.len() / nil_a;
        let kb = comp_b.len() / nil_b;
        if ka != kb {
            return Ok((
                false,
                format!(
                    "residue fields differ at {}: size {} vs {}",
                    e.render(),
                    ka,
                    kb
                ),
            ));
        }
    }
    Ok((true, "spectrum bijection with matching residue fields".into()))
}

/// For a subintegral extension, checks that the determinant identifies
/// `K_0(f)` with `Pic(f)` on random triples, and that the four-term unit
/// sequence is exact (with `K_0` of each semilocal ring free on its
/// components).
pub fn subintegral_report(
    ext: &Extension,
    bound: u64,
    samples: usize,
    seed: u64,
) -> Result<SubintegralReport> {
    let (subintegral, reason) = is_subintegral(ext, bound)?;
    let k0 = pic_group(ext, bound)?;
    if !subintegral {
        return Ok(SubintegralReport {
            subintegral,
            reason,
            det_iso_verified: false,
            sequence_exact: false,
            k0,
            pass: false,
        });
    }

    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let ctx = PicContext::new(ext, bound)?;
    let mut det_ok = true;
    for _ in 0..samples {
        let n = rng.random_range(1..=3);
        let g = random_gl(ext.b(), n, &mut rng, bound)?;
        let t = K0Triple::new(ext, g)?;
        let via_det = det_map(&t, ext)?;
        let via_reduce = reduce(&t, ext, bound)?;
        if !ctx.same(&via_det, &via_reduce) {
            det_ok = false;
            break;
        }
    }

    // K0(A) -> K0(B) on component classes must be a bijection
    let prims_a = primitive_idempotents(ext.a(), bound)?;
    let prims_b = primitive_idempotents(ext.b(), bound)?;
    let mut seq_ok = prims_a.len() == prims_b.len();
    for e in &prims_a {
        let fe = ext.f().apply(e);
        let hits = prims_b.iter().filter(|g| &(&fe * *g) == *g).count();
        if hits != 1 {
            seq_ok = false;
        }
    }

    let pass = det_ok && seq_ok;
    Ok(SubintegralReport {
        subintegral,
        reason,
        det_iso_verified: det_ok,
        sequence_exact: seq_ok,
        k0,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dual_f2() -> Extension {
        let f2 = Ring::prime_field(2).unwrap();
        let d = Ring::dual_numbers("F2[eps]", &f2).unwrap();
        let f = RingMap::new(&f2, &d, vec![d.one()]).unwrap();
        Extension::new("dual-f2", f, 100_000).unwrap()
    }

    fn conductor_f2() -> (Extension, RingElement) {
        // A = F2[eps] embedded in B = F2[eps] x F2 by 1 -> (1,1), eps -> (eps,0)
        let f2 = Ring::prime_field(2).unwrap();
        let d = Ring::dual_numbers("F2[eps]", &f2).unwrap();
        let b = Ring::direct_product("F2[eps]xF2", &d, &f2).unwrap();
        // basis of b: 1.l, eps.l, 1.r ; images: 1 -> 1.l + 1.r, eps -> eps.l
        let one_img = &b.basis(0) + &b.basis(2);
        let eps_img = b.basis(1);
        let f = RingMap::new(&d, &b, vec![one_img, eps_img]).unwrap();
        let ext = Extension::new("conductor-f2", f, 100_000).unwrap();
        let eps = d.basis(1);
        (ext, eps)
    }

    fn cusp_f2() -> (Extension, RingElement) {
        // A = F2[del] -> B = F2[eps]/(eps^3), del -> eps^2
        let f2 = Ring::prime_field(2).unwrap();
        let a = Ring::dual_numbers("F2[del]", &f2).unwrap();
        let o = crate::scalar::Coeff::Mod(1);
        let z = crate::scalar::Coeff::Mod(0);
        let b = Ring::algebra(
            "F2[eps]^3",
            &f2,
            vec!["1".into(), "eps".into(), "eps2".into()],
            vec![
                vec![o.clone(), z.clone(), z.clone()],
                vec![z.clone(), o.clone(), z.clone()],
                vec![z.clone(), z.clone(), o.clone()],
                vec![z.clone(), o.clone(), z.clone()],
                vec![z.clone(), z.clone(), o.clone()],
                vec![z.clone(), z.clone(), z.clone()],
                vec![z.clone(), z.clone(), o.clone()],
                vec![z.clone(), z.clone(), z.clone()],
                vec![z.clone(), z.clone(), z.clone()],
            ],
            vec![o.clone(), z.clone(), z.clone()],
        )
        .unwrap();
        let f = RingMap::new(&a, &b, vec![b.one(), b.basis(2)]).unwrap();
        let ext = Extension::new("cusp-f2", f, 100_000).unwrap();
        let del = a.basis(1);
        (ext, del)
    }

    #[test]
    fn boundary_of_identity_is_zero_class() {
        let e = dual_f2();
        let g = RingMat::identity(e.b(), 2);
        let t = boundary(&e, g).unwrap();
        let c = reduce(&t, &e, 100_000).unwrap();
        let ctx = PicContext::new(&e, 100_000).unwrap();
        assert!(ctx.is_trivial(&c));
    }

    #[test]
    fn boundary_of_unit_is_its_class() {
        let e = dual_f2();
        let u = &e.b().one() + &e.b().basis(1); // 1 + eps
        let mut g = RingMat::zero(e.b(), 1, 1);
        g.set(0, 0, u.clone());
        let t = boundary(&e, g).unwrap();
        let c = reduce(&t, &e, 100_000).unwrap();
        assert_eq!(c.unit, u);
    }

    #[test]
    fn elementary_matrices_reduce_to_zero() {
        let e = dual_f2();
        let mut g = RingMat::identity(e.b(), 2);
        g.set(0, 1, e.b().basis(1));
        let t = boundary(&e, g).unwrap();
        let ctx = PicContext::new(&e, 100_000).unwrap();
        let c = reduce(&t, &e, 100_000).unwrap();
        assert!(ctx.is_trivial(&c));
        assert!(ctx.is_trivial(&det_map(&t, &e).unwrap()));
    }

    #[test]
    fn reduce_agrees_with_det_on_random_triples() {
        for (ext, _) in [conductor_f2()] {
            let ctx = PicContext::new(&ext, 100_000).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..40 {
                let n = rng.random_range(1..=3);
                let g = random_gl(ext.b(), n, &mut rng, 100_000).unwrap();
                let t = K0Triple::new(&ext, g).unwrap();
                let a = det_map(&t, &ext).unwrap();
                let b = reduce(&t, &ext, 100_000).unwrap();
                assert!(ctx.same(&a, &b));
            }
        }
    }

    #[test]
    fn reduce_needs_componentwise_pivoting() {
        // over F2 x F2 a matrix can be invertible with no unit entries in a
        // column position until rows are mixed
        let f2 = Ring::prime_field(2).unwrap();
        let b = Ring::direct_product("F2xF2", &f2, &f2).unwrap();
        let f = RingMap::new(&f2, &b, vec![b.one()]).unwrap();
        let ext = Extension::new("split-f2", f, 100_000).unwrap();
        let e0 = b.basis(0);
        let e1 = b.basis(1);
        // [[ (1,0), (0,1) ], [ (0,1), (1,0) ]] has determinant (1,1)... build it
        let m = RingMat::from_fn(&b, 2, 2, |i, j| {
            if i == j {
                e0.clone()
            } else {
                e1.clone()
            }
        });
        let t = K0Triple::new(&ext, m).unwrap();
        let ctx = PicContext::new(&ext, 100_000).unwrap();
        let r = reduce(&t, &ext, 100_000).unwrap();
        let d = det_map(&t, &ext).unwrap();
        assert!(ctx.same(&r, &d));
    }

    #[test]
    fn lambda_operations() {
        let e = dual_f2();
        let b = e.b();
        let u = &b.one() + &b.basis(1);
        let v = b.one();
        let mut g = RingMat::zero(b, 2, 2);
        g.set(0, 0, u.clone());
        g.set(1, 1, v.clone());
        let t = K0Triple::new(&e, g).unwrap();
        // lambda^2 of diag(u, v) is the 1x1 triple [uv]
        let l2 = lambda_op(2, &t, &e);
        assert_eq!(l2.size, 1);
        assert_eq!(l2.matrix.get(0, 0), &(&u * &v));
        // above the rank: zero
        assert_eq!(lambda_op(3, &t, &e).size, 0);
        // lambda^1 is the identity
        let l1 = lambda_op(1, &t, &e);
        assert_eq!(l1.matrix, t.matrix);
    }

    #[test]
    fn whitney_sum_on_small_triples() {
        let (ext, _) = conductor_f2();
        let ctx = PicContext::new(&ext, 100_000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let x = K0Triple::new(&ext, random_gl(ext.b(), 2, &mut rng, 100_000).unwrap()).unwrap();
            let y = K0Triple::new(&ext, random_gl(ext.b(), 2, &mut rng, 100_000).unwrap()).unwrap();
            let s = x.block_sum(&y);
            for k in 1..=4usize {
                // lambda^k(x + y) = sum_{i+j=k} lambda^i x . lambda^j y
                let lhs = reduce(&lambda_op(k, &s, &ext), &ext, 100_000).unwrap();
                let mut rhs_unit = ext.b().one();
                for i in 0..=k {
                    let j = k - i;
                    let ti = if i == 0 {
                        None
                    } else if i > x.size {
                        Some(K0Triple::zero(&ext))
                    } else {
                        Some(lambda_op(i, &x, &ext))
                    };
                    let tj = if j == 0 {
                        None
                    } else if j > y.size {
                        Some(K0Triple::zero(&ext))
                    } else {
                        Some(lambda_op(j, &y, &ext))
                    };
                    let term = match (ti, tj) {
                        (None, Some(t)) | (Some(t), None) => t,
                        (Some(a), Some(b)) => a.tensor(&b),
                        (None, None) => unreachable!(),
                    };
                    let c = reduce(&term, &ext, 100_000).unwrap();
                    rhs_unit = &rhs_unit * &c.unit;
                }
                let rhs = PicClass { unit: rhs_unit };
                assert!(ctx.same(&lhs, &rhs), "k = {k}");
            }
        }
    }

    #[test]
    fn excision_on_conductor_square() {
        let (ext, eps) = conductor_f2();
        let rep = excision_check(&ext, &[eps], 100_000).unwrap();
        assert!(rep.shared_ideal);
        assert!(rep.iso, "{}", rep.detail);
        // both groups are trivial here
        assert!(rep.k0_f.is_trivial());
    }

    #[test]
    fn excision_on_cusp_shadow() {
        let (ext, del) = cusp_f2();
        let rep = excision_check(&ext, &[del], 100_000).unwrap();
        assert!(rep.shared_ideal);
        assert!(rep.iso, "{}", rep.detail);
        assert_eq!(rep.k0_f.invariants, vec![2]);
        assert_eq!(rep.k0_fbar.invariants, vec![2]);
    }

    #[test]
    fn excision_with_zero_ideal_is_tautological() {
        let e = dual_f2();
        let rep = excision_check(&e, &[], 100_000).unwrap();
        assert!(rep.shared_ideal);
        assert!(rep.iso);
        assert_eq!(rep.k0_f.invariants, rep.k0_fbar.invariants);
    }

    #[test]
    fn subintegral_dual_numbers() {
        let e = dual_f2();
        let rep = subintegral_report(&e, 100_000, 20, 3).unwrap();
        assert!(rep.subintegral, "{}", rep.reason);
        assert!(rep.pass);
        assert_eq!(rep.k0.invariants, vec![2]); // B^x/A^x = {1, 1+eps}
    }

    #[test]
    fn subintegral_declines_field_extension() {
        let f2 = Ring::prime_field(2).unwrap();
        let o = crate::scalar::Coeff::Mod(1);
        let z = crate::scalar::Coeff::Mod(0);
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
        let f = RingMap::new(&f2, &f4, vec![f4.one()]).unwrap();
        let ext = Extension::new("f2-f4", f, 100_000).unwrap();
        let rep = subintegral_report(&ext, 100_000, 5, 1).unwrap();
        assert!(!rep.subintegral);
        assert!(rep.reason.contains("residue fields"));
    }

    #[test]
    fn subintegral_declines_split_extension() {
        let f2 = Ring::prime_field(2).unwrap();
        let b = Ring::direct_product("F2xF2", &f2, &f2).unwrap();
        let f = RingMap::new(&f2, &b, vec![b.one()]).unwrap();
        let ext = Extension::new("split-f2", f, 100_000).unwrap();
        let (ok, _) = is_subintegral(&ext, 100_000).unwrap();
        assert!(!ok);
    }
}
