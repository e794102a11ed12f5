//! Ring homomorphisms between presented rings.
//!
//! A map is stored by the images of the source basis elements. Every
//! unital ring homomorphism is ℤ-linear, so this determines it: over a
//! finite base the coordinates are lifted to ℤ and act through the integer
//! module structure of the target, over ℚ the map is ℚ-linear. Construction
//! verifies `f(1) = 1`, multiplicativity on all basis pairs, and additive
//! well-definedness (`n · f(e_i) = 0` when the source base is ℤ/n).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::abelian::IntMatrix;
use crate::matrix::{mod_kernel, rat_kernel};
use crate::scalar::{BaseRing, Coeff};
use crate::{Error, Result};

use super::{Ring, RingElement};

#[derive(Clone, Debug)]
pub struct RingMap {
    source: Ring,
    target: Ring,
    images: Vec<RingElement>,
}

impl RingMap {
    pub fn new(source: &Ring, target: &Ring, images: Vec<RingElement>) -> Result<RingMap> {
        if images.len() != source.rank() {
            return Err(Error::construction("one image per source basis element"));
        }
        if images.iter().any(|x| x.ring() != target) {
            return Err(Error::construction("images must lie in the target ring"));
        }
        if source.base() == BaseRing::Rat && target.base() != BaseRing::Rat {
            return Err(Error::construction(
                "no ring map from a Q-algebra to a torsion ring",
            ));
        }
        let map = RingMap {
            source: source.clone(),
            target: target.clone(),
            images,
        };
        // additive well-definedness over Z/n
        if let BaseRing::Mod(n) = source.base() {
            let n = BigInt::from(n);
            for (i, im) in map.images.iter().enumerate() {
                if !im.int_mul(&n).is_zero() {
                    return Err(Error::construction(format!(
                        "image of basis element {} is not killed by the source characteristic",
                        source.labels()[i]
                    )));
                }
            }
        }
        if !map.apply(&source.one()).is_one() {
            return Err(Error::construction("map does not send 1 to 1"));
        }
        for i in 0..source.rank() {
            for j in i..source.rank() {
                let lhs = map.apply(&(&source.basis(i) * &source.basis(j)));
                let rhs = &map.images[i] * &map.images[j];
                if lhs != rhs {
                    return Err(Error::construction(format!(
                        "multiplicativity fails on ({}, {})",
                        source.labels()[i],
                        source.labels()[j]
                    )));
                }
            }
        }
        Ok(map)
    }

    pub fn identity(ring: &Ring) -> RingMap {
        RingMap {
            source: ring.clone(),
            target: ring.clone(),
            images: (0..ring.rank()).map(|i| ring.basis(i)).collect(),
        }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn images(&self) -> &[RingElement] {
        &self.images
    }

    pub fn apply(&self, x: &RingElement) -> RingElement {
        assert!(x.ring() == &self.source, "element not in the source ring");
        let mut acc = self.target.zero();
        for (c, im) in x.coords().iter().zip(&self.images) {
            match c {
                Coeff::Mod(v) => {
                    if *v != 0 {
                        acc = &acc + &im.int_mul(&BigInt::from(*v));
                    }
                }
                Coeff::Rat(_) => {
                    acc = &acc + &im.scalar_mul(c);
                }
            }
        }
        acc
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RingMap) -> Result<RingMap> {
        if inner.target != self.source {
            return Err(Error::mismatch("composition targets/sources differ"));
        }
        RingMap::new(
            &inner.source,
            &self.target,
            inner.images.iter().map(|x| self.apply(x)).collect(),
        )
    }

    /// A nonzero kernel element, if one exists.
    pub fn kernel_element(&self) -> Option<RingElement> {
        match (self.source.base(), self.target.base()) {
            (BaseRing::Rat, _) => {
                let rows: Vec<Vec<BigRational>> = (0..self.target.rank())
                    .map(|i| {
                        self.images
                            .iter()
                            .map(|im| im.coords()[i].as_rational().expect("Q target").clone())
                            .collect()
                    })
                    .collect();
                for v in rat_kernel(&rows) {
                    if v.iter().any(|x| !x.is_zero()) {
                        let coords = v.into_iter().map(Coeff::Rat).collect();
                        return Some(self.source.from_coords(coords));
                    }
                }
                None
            }
            (BaseRing::Mod(n), tbase) => {
                let m = tbase.characteristic().max(1);
                // integer matrix of image coordinates (target coords lifted)
                let mat = IntMatrix::from_rows(
                    &(0..self.target.rank())
                        .map(|i| {
                            self.images
                                .iter()
                                .map(|im| match &im.coords()[i] {
                                    Coeff::Mod(v) => BigInt::from(*v),
                                    Coeff::Rat(_) => unreachable!("Mod source maps to Mod target"),
                                })
                                .collect::<Vec<_>>()
                        })
                        .collect::<Vec<_>>(),
                );
                let nn = BigInt::from(n);
                for v in mod_kernel(m, &mat) {
                    let reduced: Vec<BigInt> =
                        v.iter().map(|x| num_integer::Integer::mod_floor(x, &nn)).collect();
                    if reduced.iter().any(|x| !x.is_zero()) {
                        let coords = reduced
                            .iter()
                            .map(|x| self.source.base().from_bigint(x))
                            .collect();
                        let elem = self.source.from_coords(coords);
                        debug_assert!(self.apply(&elem).is_zero());
                        return Some(elem);
                    }
                }
                None
            }
        }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_element().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusion_of_prime_field() {
        let f2 = Ring::prime_field(2).unwrap();
        let d = Ring::dual_numbers("F2[eps]", &f2).unwrap();
        let f = RingMap::new(&f2, &d, vec![d.one()]).unwrap();
        assert!(f.is_injective());
        assert_eq!(f.apply(&f2.from_i64(1)), d.one());
    }

    #[test]
    fn projection_has_kernel() {
        let z6 = Ring::integers_mod(6).unwrap();
        let z3 = Ring::prime_field(3).unwrap();
        let f = RingMap::new(&z6, &z3, vec![z3.one()]).unwrap();
        assert!(!f.is_injective());
        let k = f.kernel_element().unwrap();
        assert!(!k.is_zero());
        assert!(f.apply(&k).is_zero());
    }

    #[test]
    fn rejects_ill_defined_map() {
        // Z/4 -> Z/3 sending 1 to 1 is not additive (4*1 != 0 in Z/3)
        let z4 = Ring::integers_mod(4).unwrap();
        let z3 = Ring::prime_field(3).unwrap();
        assert!(RingMap::new(&z4, &z3, vec![z3.one()]).is_err());
    }

    #[test]
    fn rejects_non_multiplicative_map() {
        // F2[eps] -> F2[eps], eps -> 1 is not multiplicative
        let f2 = Ring::prime_field(2).unwrap();
        let d = Ring::dual_numbers("F2[eps]", &f2).unwrap();
        assert!(RingMap::new(&d, &d, vec![d.one(), d.one()]).is_err());
    }

    #[test]
    fn composition() {
        let f2 = Ring::prime_field(2).unwrap();
        let d = Ring::dual_numbers("F2[eps]", &f2).unwrap();
        let inc = RingMap::new(&f2, &d, vec![d.one()]).unwrap();
        let id = RingMap::identity(&d);
        let c = id.compose(&inc).unwrap();
        assert!(c.is_injective());
    }

    #[test]
    fn rational_injectivity() {
        let q = Ring::rationals();
        let dq = Ring::dual_numbers("Q[eps]", &q).unwrap();
        let f = RingMap::new(&q, &dq, vec![dq.one()]).unwrap();
        assert!(f.is_injective());
    }
}
