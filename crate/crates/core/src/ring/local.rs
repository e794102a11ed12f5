//! Idempotent localization and quotients of finite rings.
//!
//! Localizing an artinian ring at `s` splits off the component where `s` is
//! invertible: the powers of `s` stabilize, `(s^k) = (s^{k+1})`, and the
//! stable ideal is generated by an idempotent `e`. The localized ring is
//! `eR` with identity `e`. Both `eR` and quotients `R/I` are re-presented as
//! structure-constant algebras over `Z/char` by finding a free basis, which
//! is what `present_finite_ring` does for any finite commutative ring given
//! by black-box operations.

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::abelian::IntMatrix;
use crate::matrix::{mod_solve, rat_column_basis, rat_solve};
use crate::scalar::{BaseRing, Coeff};
use crate::{Error, Result};

use super::{Ring, RingElement, RingMap};

/// A localization `R -> R_s = eR`.
#[derive(Clone, Debug)]
pub struct Localization {
    pub ring: Ring,
    pub map: RingMap,
    pub idempotent: RingElement,
    /// Elements of the parent ring lifting the basis of the localized ring;
    /// lets callers build transition maps between iterated localizations.
    pub basis_lifts: Vec<RingElement>,
}

/// A quotient `R -> R/I` together with the enumerated ideal.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub ring: Ring,
    pub map: RingMap,
    pub ideal: Vec<RingElement>,
    /// Coset representatives in the parent ring lifting the quotient basis.
    pub basis_lifts: Vec<RingElement>,
}

/// Presents a finite commutative ring, given as a closed set of abstract
/// elements with black-box operations, as a structure-constant algebra over
/// `Z/m` where `m` is the additive order of the identity. Returns the new
/// ring, the basis (as abstract elements) and the coordinates of every
/// element. Fails when the additive group is not free over `Z/m`.
pub fn present_finite_ring<T, FA, FM>(
    name: &str,
    elems: &[T],
    zero: &T,
    one: &T,
    add: FA,
    mul: FM,
    label: impl Fn(usize) -> String,
) -> Result<(Ring, Vec<T>, HashMap<T, Vec<Coeff>>)>
where
    T: Clone + Eq + Hash + Ord,
    FA: Fn(&T, &T) -> T,
    FM: Fn(&T, &T) -> T,
{
    if elems.len() == 1 {
        let ring = Ring::zero_ring();
        let mut coords = HashMap::new();
        coords.insert(zero.clone(), vec![Coeff::Mod(0)]);
        return Ok((ring, vec![zero.clone()], coords));
    }

    // additive order of 1 = characteristic
    let mut m = 1u64;
    let mut acc = one.clone();
    while &acc != zero {
        acc = add(&acc, one);
        m += 1;
        if m as usize > elems.len() + 1 {
            return Err(Error::construction("identity has unbounded additive order"));
        }
    }

    let additive_order = |x: &T| -> u64 {
        let mut k = 1u64;
        let mut acc = x.clone();
        while &acc != zero {
            acc = add(&acc, x);
            k += 1;
        }
        k
    };

    // greedy free basis over Z/m
    let mut basis: Vec<T> = Vec::new();
    let mut span: HashMap<T, Vec<u64>> = HashMap::new();
    span.insert(zero.clone(), vec![]);
    let mut sorted = elems.to_vec();
    sorted.sort();
    for x in &sorted {
        if span.len() == elems.len() {
            break;
        }
        if span.contains_key(x) || additive_order(x) != m {
            continue;
        }
        // reject if <x> meets the current span
        let mut meets = false;
        let mut p = x.clone();
        for _ in 1..m {
            if span.contains_key(&p) {
                meets = true;
                break;
            }
            p = add(&p, x);
        }
        if meets {
            continue;
        }
        let pos = basis.len();
        let old: Vec<(T, Vec<u64>)> = span.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        let mut p = x.clone();
        for j in 1..m {
            for (h, he) in &old {
                let elem = add(&p, h);
                let mut e = he.clone();
                e.resize(pos + 1, 0);
                e[pos] = j;
                span.insert(elem, e);
            }
            p = add(&p, x);
        }
        basis.push(x.clone());
    }
    if span.len() != elems.len() {
        return Err(Error::out_of_scope(
            "finite ring is not a free module over Z/char",
        ));
    }

    let rank = basis.len();
    let pad = |v: &Vec<u64>| -> Vec<Coeff> {
        let mut c: Vec<Coeff> = v.iter().map(|x| Coeff::Mod(*x)).collect();
        c.resize(rank, Coeff::Mod(0));
        c
    };
    let coords: HashMap<T, Vec<Coeff>> = span.iter().map(|(k, v)| (k.clone(), pad(v))).collect();

    let scalar = if m == 1 {
        Ring::zero_ring()
    } else {
        Ring::integers_mod(m)?
    };
    let mut table = Vec::with_capacity(rank * rank);
    for i in 0..rank {
        for j in 0..rank {
            let p = mul(&basis[i], &basis[j]);
            table.push(coords.get(&p).expect("product stays in the ring").clone());
        }
    }
    let one_coords = coords.get(one).expect("identity is an element").clone();
    let labels = (0..rank).map(label).collect();
    let ring = Ring::algebra(name, &scalar, labels, table, one_coords)?;
    Ok((ring, basis, coords))
}

/// Least `k >= 1` with `s^k in (s^{k+1})`, together with the witness `x`
/// solving `s^k = s^{k+1} x`.
fn stabilize(s: &RingElement, cap: usize) -> Result<(u64, RingElement)> {
    let ring = s.ring().clone();
    for k in 1..=cap as u64 {
        let sk = s.pow(k);
        let sk1 = s.pow(k + 1);
        let m = sk1.mul_matrix();
        let sol = match ring.base() {
            BaseRing::Mod(n) => {
                let rows: Vec<Vec<BigInt>> = (0..ring.rank())
                    .map(|i| {
                        (0..ring.rank())
                            .map(|j| match &m.get(i, j).coords()[0] {
                                Coeff::Mod(v) => BigInt::from(*v),
                                Coeff::Rat(_) => unreachable!(),
                            })
                            .collect()
                    })
                    .collect();
                let b: Vec<BigInt> = sk
                    .coords()
                    .iter()
                    .map(|c| match c {
                        Coeff::Mod(v) => BigInt::from(*v),
                        Coeff::Rat(_) => unreachable!(),
                    })
                    .collect();
                mod_solve(n, &IntMatrix::from_rows(&rows), &b)
                    .map(|v| ring.from_coords(v.iter().map(|x| ring.base().from_bigint(x)).collect()))
            }
            BaseRing::Rat => {
                let rows: Vec<Vec<BigRational>> = (0..ring.rank())
                    .map(|i| {
                        (0..ring.rank())
                            .map(|j| m.get(i, j).coords()[0].as_rational().unwrap().clone())
                            .collect()
                    })
                    .collect();
                let b: Vec<BigRational> = sk
                    .coords()
                    .iter()
                    .map(|c| c.as_rational().unwrap().clone())
                    .collect();
                rat_solve(&rows, &b)
                    .map(|v| ring.from_coords(v.into_iter().map(Coeff::Rat).collect()))
            }
        };
        if let Some(x) = sol {
            return Ok((k, x));
        }
    }
    Err(Error::out_of_scope(
        "powers of the localization element did not stabilize (ring not artinian?)",
    ))
}

/// Localization of an artinian ring at `s`, by idempotent splitting.
pub fn localize(ring: &Ring, s: &RingElement, bound: u64) -> Result<Localization> {
    if s.ring() != ring {
        return Err(Error::mismatch("element not in the ring"));
    }
    if ring.is_zero_ring() || s.is_unit() {
        return Ok(Localization {
            ring: ring.clone(),
            map: RingMap::identity(ring),
            idempotent: ring.one(),
            basis_lifts: (0..ring.rank()).map(|i| ring.basis(i)).collect(),
        });
    }
    let cap = 64 * ring.rank() + 4;
    let (k, x) = stabilize(s, cap)?;
    let e = (s * &x).pow(k);
    if &(&e * &e) != &e {
        return Err(Error::construction("stabilization produced a non-idempotent"));
    }
    if e.is_zero() {
        let zr = Ring::zero_ring();
        let map = RingMap::new(ring, &zr, vec![zr.zero(); ring.rank()])?;
        return Ok(Localization {
            ring: zr,
            map,
            idempotent: e,
            basis_lifts: vec![ring.zero()],
        });
    }
    if e.is_one() {
        return Ok(Localization {
            ring: ring.clone(),
            map: RingMap::identity(ring),
            idempotent: e,
            basis_lifts: (0..ring.rank()).map(|i| ring.basis(i)).collect(),
        });
    }

    match ring.base() {
        BaseRing::Mod(_) => {
            let elems = ring.elements(bound)?;
            let mut sub: Vec<RingElement> = elems.iter().map(|r| &e * r).collect();
            sub.sort();
            sub.dedup();
            let name = format!("{}_loc", ring.name());
            let (lring, basis, coords) = present_finite_ring(
                &name,
                &sub,
                &ring.zero(),
                &e,
                |a, b| a + b,
                |a, b| a * b,
                |i| format!("b{i}"),
            )?;
            let images: Vec<RingElement> = (0..ring.rank())
                .map(|i| {
                    let t = &e * &ring.basis(i);
                    lring.from_coords(coords.get(&t).expect("eR is closed").clone())
                })
                .collect();
            let map = RingMap::new(ring, &lring, images)?;
            Ok(Localization {
                ring: lring,
                map,
                idempotent: e,
                basis_lifts: basis,
            })
        }
        BaseRing::Rat => {
            // column space of multiplication by e is the subalgebra eR
            let r = ring.rank();
            let me = e.mul_matrix();
            let cols: Vec<Vec<BigRational>> = (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| me.get(i, j).coords()[0].as_rational().unwrap().clone())
                        .collect()
                })
                .collect();
            let keep = rat_column_basis(&cols);
            let basis: Vec<RingElement> = keep
                .iter()
                .map(|&j| &e * &ring.basis(j))
                .collect();
            let express = |x: &RingElement| -> Result<Vec<Coeff>> {
                let rows: Vec<Vec<BigRational>> = (0..r)
                    .map(|i| {
                        basis
                            .iter()
                            .map(|b| b.coords()[i].as_rational().unwrap().clone())
                            .collect()
                    })
                    .collect();
                let b: Vec<BigRational> = x
                    .coords()
                    .iter()
                    .map(|c| c.as_rational().unwrap().clone())
                    .collect();
                let sol = rat_solve(&rows, &b)
                    .ok_or_else(|| Error::construction("element not in the subalgebra"))?;
                Ok(sol.into_iter().map(Coeff::Rat).collect())
            };
            let rr = basis.len();
            let mut table = Vec::with_capacity(rr * rr);
            for i in 0..rr {
                for j in 0..rr {
                    table.push(express(&(&basis[i] * &basis[j]))?);
                }
            }
            let one_coords = express(&e)?;
            let labels = (0..rr).map(|i| format!("b{i}")).collect();
            let lring = Ring::algebra(
                format!("{}_loc", ring.name()),
                &Ring::rationals(),
                labels,
                table,
                one_coords,
            )?;
            let images: Vec<RingElement> = (0..r)
                .map(|i| express(&(&e * &ring.basis(i))).map(|c| lring.from_coords(c)))
                .collect::<Result<_>>()?;
            let map = RingMap::new(ring, &lring, images)?;
            Ok(Localization {
                ring: lring,
                map,
                idempotent: e,
                basis_lifts: basis,
            })
        }
    }
}

/// Quotient of a finite ring by the ideal generated by `gens`.
pub fn quotient_ring(ring: &Ring, gens: &[RingElement], bound: u64) -> Result<QuotientRing> {
    if gens.iter().any(|g| g.ring() != ring) {
        return Err(Error::mismatch("ideal generators not in the ring"));
    }
    let elems = ring.elements(bound)?;
    let ideal = ideal_closure(ring, gens, &elems);
    let rep = |x: &RingElement| -> RingElement {
        ideal.iter().map(|i| x + i).min().expect("ideal nonempty")
    };
    let mut reps: Vec<RingElement> = elems.iter().map(&rep).collect();
    reps.sort();
    reps.dedup();
    let zero = rep(&ring.zero());
    let one = rep(&ring.one());
    let name = format!("{}_quo", ring.name());
    let (qring, basis, coords) = present_finite_ring(
        &name,
        &reps,
        &zero,
        &one,
        |a, b| rep(&(a + b)),
        |a, b| rep(&(a * b)),
        |i| format!("q{i}"),
    )?;
    let images: Vec<RingElement> = (0..ring.rank())
        .map(|i| qring.from_coords(coords.get(&rep(&ring.basis(i))).unwrap().clone()))
        .collect();
    let map = RingMap::new(ring, &qring, images)?;
    Ok(QuotientRing {
        ring: qring,
        map,
        ideal,
        basis_lifts: basis,
    })
}

/// The ideal generated by `gens` inside a finite ring, as a sorted element
/// list.
pub fn ideal_closure(
    ring: &Ring,
    gens: &[RingElement],
    elems: &[RingElement],
) -> Vec<RingElement> {
    let mut seed = Vec::new();
    for g in gens {
        for r in elems {
            seed.push(r * g);
        }
    }
    let mut set: std::collections::HashSet<RingElement> = std::collections::HashSet::new();
    set.insert(ring.zero());
    let mut frontier = vec![ring.zero()];
    while let Some(x) = frontier.pop() {
        for s in &seed {
            let y = &x + s;
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let mut out: Vec<RingElement> = set.into_iter().collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn localize_z6_at_3() {
        let r = Ring::integers_mod(6).unwrap();
        let loc = localize(&r, &r.from_i64(3), 1000).unwrap();
        assert_eq!(loc.idempotent, r.from_i64(3));
        assert_eq!(loc.ring.size(), Some(2));
        // the canonical map sends 3 to the identity of eR
        assert!(loc.map.apply(&r.from_i64(3)).is_one());
    }

    #[test]
    fn localize_z12_at_4() {
        let r = Ring::integers_mod(12).unwrap();
        let loc = localize(&r, &r.from_i64(4), 1000).unwrap();
        assert_eq!(loc.idempotent, r.from_i64(4));
        assert_eq!(loc.ring.size(), Some(3));
        assert_eq!(loc.ring.characteristic(), 3);
        // image of s is a unit
        assert!(loc.map.apply(&r.from_i64(4)).is_unit());
    }

    #[test]
    fn localize_z12_at_3_gives_z4_component() {
        let r = Ring::integers_mod(12).unwrap();
        let loc = localize(&r, &r.from_i64(3), 1000).unwrap();
        assert_eq!(loc.ring.size(), Some(4));
        assert_eq!(loc.ring.characteristic(), 4);
    }

    #[test]
    fn localize_at_unit_is_identity() {
        let r = Ring::integers_mod(12).unwrap();
        let loc = localize(&r, &r.from_i64(5), 1000).unwrap();
        assert!(loc.idempotent.is_one());
        assert_eq!(loc.ring, r);
    }

    #[test]
    fn localize_at_nilpotent_is_zero() {
        let r = Ring::integers_mod(12).unwrap();
        let loc = localize(&r, &r.from_i64(6), 1000).unwrap();
        assert!(loc.ring.is_zero_ring());
    }

    #[test]
    fn iterated_localization_matches_product() {
        // localize(R, s) then localize at the image of s' lands in the same
        // component as localize(R, s s'): compare idempotents through the maps
        let r = Ring::integers_mod(12).unwrap();
        let s = r.from_i64(4);
        let s2 = r.from_i64(9);
        let first = localize(&r, &s, 1000).unwrap();
        let second = localize(&first.ring, &first.map.apply(&s2), 1000).unwrap();
        let direct = localize(&r, &(&s * &s2), 1000).unwrap();
        assert_eq!(direct.ring.size(), second.ring.size());
        assert_eq!(direct.ring.characteristic(), second.ring.characteristic());
    }

    #[test]
    fn localize_product_ring_component() {
        let f2 = Ring::prime_field(2).unwrap();
        let d = Ring::dual_numbers("F2[eps]", &f2).unwrap();
        let p = Ring::direct_product("F2[eps]xF2", &d, &f2).unwrap();
        // localize at (1, 0): picks out the dual-numbers component
        let mut coords = vec![Coeff::Mod(0); 3];
        coords[0] = Coeff::Mod(1);
        let s = p.from_coords(coords);
        let loc = localize(&p, &s, 1000).unwrap();
        assert_eq!(loc.ring.size(), Some(4));
        let nil = super::super::nilradical(&loc.ring, 1000).unwrap();
        assert_eq!(nil.dim(), 1);
    }

    #[test]
    fn quotient_by_nilpotents() {
        let r = Ring::integers_mod(12).unwrap();
        let q = quotient_ring(&r, &[r.from_i64(6)], 1000).unwrap();
        assert_eq!(q.ideal.len(), 2);
        assert_eq!(q.ring.size(), Some(6));
        assert!(q.map.apply(&r.from_i64(6)).is_zero());
    }

    #[test]
    fn quotient_of_dual_numbers() {
        let f2 = Ring::prime_field(2).unwrap();
        let d = Ring::dual_numbers("F2[eps]", &f2).unwrap();
        let q = quotient_ring(&d, &[d.basis(1)], 1000).unwrap();
        assert_eq!(q.ring.size(), Some(2));
    }

    #[test]
    fn localize_rational_dual_numbers_at_unit() {
        let q = Ring::rationals();
        let d = Ring::dual_numbers("Q[eps]", &q).unwrap();
        let two = d.from_i64(2);
        let loc = localize(&d, &two, 1000).unwrap();
        assert!(loc.idempotent.is_one());
    }
}
