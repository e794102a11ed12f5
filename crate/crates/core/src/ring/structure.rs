//! Structure analysis of artinian rings: nilradicals, idempotents and the
//! component decomposition.

use std::collections::HashSet;

use num_rational::BigRational;

use crate::matrix::{rat_column_basis, rat_kernel};
use crate::scalar::{BaseRing, Coeff};
use crate::{Error, Result};

use super::{Ring, RingElement};

/// The nilradical: a generating set, the least `e` with `Nil^e = 0`, and —
/// over a finite base — the full list of nilpotent elements.
#[derive(Clone, Debug)]
pub struct NilData {
    pub generators: Vec<RingElement>,
    pub index: usize,
    pub elements: Option<Vec<RingElement>>,
}

impl NilData {
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn contains(&self, x: &RingElement) -> bool {
        match &self.elements {
            Some(els) => els.binary_search(x).is_ok(),
            None => x.is_nilpotent(),
        }
    }
}

/// Closure of a set of elements under addition.
fn additive_closure(seed: &[RingElement], ring: &Ring) -> Vec<RingElement> {
    let mut set: HashSet<RingElement> = HashSet::new();
    set.insert(ring.zero());
    let mut frontier: Vec<RingElement> = vec![ring.zero()];
    while let Some(x) = frontier.pop() {
        for s in seed {
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

pub fn nilradical(ring: &Ring, bound: u64) -> Result<NilData> {
    match ring.base() {
        BaseRing::Mod(_) => {
            let mut all: Vec<RingElement> = ring
                .elements(bound)?
                .into_iter()
                .filter(|x| x.is_nilpotent())
                .collect();
            all.sort();
            // greedy ideal generators
            let mut gens: Vec<RingElement> = Vec::new();
            let mut span: Vec<RingElement> = vec![ring.zero()];
            let ring_elems = ring.elements(bound)?;
            for x in &all {
                if span.binary_search(x).is_ok() {
                    continue;
                }
                gens.push(x.clone());
                let mut seed = Vec::new();
                for g in &gens {
                    for r in &ring_elems {
                        seed.push(r * g);
                    }
                }
                span = additive_closure(&seed, ring);
            }
            // nilpotency index of the ideal
            let mut index = 1;
            let mut power: Vec<RingElement> = all.clone();
            while power.iter().any(|x| !x.is_zero()) {
                index += 1;
                if index > ring.rank() * 64 + 2 {
                    return Err(Error::out_of_scope("nilpotency index did not stabilize"));
                }
                let mut seed = Vec::new();
                for x in &power {
                    for y in &all {
                        seed.push(x * y);
                    }
                }
                power = additive_closure(&seed, ring);
            }
            Ok(NilData {
                generators: gens,
                index,
                elements: Some(all),
            })
        }
        BaseRing::Rat => {
            // Radical of the trace form; valid in characteristic zero.
            let r = ring.rank();
            let trace = |x: &RingElement| -> BigRational {
                let m = x.mul_matrix();
                let mut t = BigRational::from_integer(0.into());
                for i in 0..r {
                    t += m.get(i, i).coords()[0].as_rational().expect("Q base");
                }
                t
            };
            let gram: Vec<Vec<BigRational>> = (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| trace(&(&ring.basis(i) * &ring.basis(j))))
                        .collect()
                })
                .collect();
            let basis: Vec<RingElement> = rat_kernel(&gram)
                .into_iter()
                .map(|v| ring.from_coords(v.into_iter().map(Coeff::Rat).collect()))
                .collect();
            for b in &basis {
                debug_assert!(b.is_nilpotent());
            }
            // index by iterating products of spanning sets
            let mut index = 1;
            let mut power = basis.clone();
            while !power.is_empty() {
                index += 1;
                if index > r + 2 {
                    return Err(Error::out_of_scope("nilpotency index did not stabilize"));
                }
                let mut products: Vec<Vec<BigRational>> = Vec::new();
                for x in &power {
                    for y in &basis {
                        let p = x * y;
                        products.push(
                            p.coords()
                                .iter()
                                .map(|c| c.as_rational().expect("Q base").clone())
                                .collect(),
                        );
                    }
                }
                if products.is_empty() {
                    break;
                }
                // keep an independent spanning subset
                let cols: Vec<Vec<BigRational>> = (0..r)
                    .map(|i| products.iter().map(|p| p[i].clone()).collect())
                    .collect();
                let keep = rat_column_basis(&cols);
                power = keep
                    .into_iter()
                    .map(|j| {
                        ring.from_coords(
                            (0..r).map(|i| Coeff::Rat(products[j][i].clone())).collect(),
                        )
                    })
                    .collect();
            }
            Ok(NilData {
                generators: basis,
                index,
                elements: None,
            })
        }
    }
}

/// All idempotents of a finite ring (or of a local ℚ-algebra).
pub fn idempotents(ring: &Ring, bound: u64) -> Result<Vec<RingElement>> {
    match ring.base() {
        BaseRing::Mod(_) => Ok(ring
            .elements(bound)?
            .into_iter()
            .filter(|e| &(e * e) == e)
            .collect()),
        BaseRing::Rat => {
            let nil = nilradical(ring, bound)?;
            if ring.rank() - nil.dim() == 1 {
                Ok(vec![ring.zero(), ring.one()])
            } else {
                Err(Error::out_of_scope(
                    "idempotents of a non-local Q-algebra require factorization",
                ))
            }
        }
    }
}

/// The primitive idempotents, i.e. the atoms of the Boolean algebra of
/// idempotents. Their count is the number of connected components of the
/// spectrum; for the zero ring the list is empty.
pub fn primitive_idempotents(ring: &Ring, bound: u64) -> Result<Vec<RingElement>> {
    let idems = idempotents(ring, bound)?;
    let mut prims = Vec::new();
    for e in &idems {
        if e.is_zero() {
            continue;
        }
        // e is primitive when the only idempotents below it are 0 and e
        let below = idems
            .iter()
            .filter(|f| !f.is_zero() && &(*f * e) == *f)
            .count();
        if below == 1 {
            prims.push(e.clone());
        }
    }
    Ok(prims)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilradical_of_z12() {
        let r = Ring::integers_mod(12).unwrap();
        let nil = nilradical(&r, 1000).unwrap();
        assert_eq!(nil.generators, vec![r.from_i64(6)]);
        assert_eq!(nil.index, 2);
        assert_eq!(nil.elements.as_ref().unwrap().len(), 2); // {0, 6}
    }

    #[test]
    fn nilradical_of_z6_is_trivial() {
        let r = Ring::integers_mod(6).unwrap();
        let nil = nilradical(&r, 1000).unwrap();
        assert!(nil.generators.is_empty());
        assert_eq!(nil.index, 1);
    }

    #[test]
    fn nilradical_of_dual_numbers() {
        let f2 = Ring::prime_field(2).unwrap();
        let d = Ring::dual_numbers("F2[eps]", &f2).unwrap();
        let nil = nilradical(&d, 1000).unwrap();
        assert_eq!(nil.generators, vec![d.basis(1)]);
        assert_eq!(nil.index, 2);
    }

    #[test]
    fn nilradical_over_q() {
        let q = Ring::rationals();
        let d = Ring::dual_numbers("Q[eps]", &q).unwrap();
        let nil = nilradical(&d, 1000).unwrap();
        assert_eq!(nil.dim(), 1);
        assert_eq!(nil.index, 2);
        assert!(nil.contains(&d.basis(1)));
        let nil_q = nilradical(&q, 1000).unwrap();
        assert_eq!(nil_q.dim(), 0);
        assert_eq!(nil_q.index, 1);
    }

    #[test]
    fn idempotents_of_z6() {
        let r = Ring::integers_mod(6).unwrap();
        let idems = idempotents(&r, 1000).unwrap();
        let vals: Vec<RingElement> = [0, 1, 3, 4].iter().map(|v| r.from_i64(*v)).collect();
        assert_eq!(idems, vals);
        let prims = primitive_idempotents(&r, 1000).unwrap();
        assert_eq!(prims.len(), 2);
        // they sum to 1 and are orthogonal
        let s = prims.iter().fold(r.zero(), |acc, e| &acc + e);
        assert!(s.is_one());
        assert!((&prims[0] * &prims[1]).is_zero());
    }

    #[test]
    fn local_ring_has_two_idempotents() {
        let f3 = Ring::prime_field(3).unwrap();
        let d = Ring::dual_numbers("F3[eps]", &f3).unwrap();
        assert_eq!(idempotents(&d, 1000).unwrap().len(), 2);
        assert_eq!(primitive_idempotents(&d, 1000).unwrap().len(), 1);
    }

    #[test]
    fn split_ring_has_four_idempotents() {
        let f2 = Ring::prime_field(2).unwrap();
        let p = Ring::direct_product("F2xF2", &f2, &f2).unwrap();
        assert_eq!(idempotents(&p, 1000).unwrap().len(), 4);
        assert_eq!(primitive_idempotents(&p, 1000).unwrap().len(), 2);
    }

    #[test]
    fn zero_ring_has_no_components() {
        let z = Ring::zero_ring();
        assert_eq!(primitive_idempotents(&z, 10).unwrap().len(), 0);
    }
}
