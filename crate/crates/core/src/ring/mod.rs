//! Computable commutative rings: ℤ/n, prime fields, ℚ, and finite-rank
//! commutative algebras presented by structure constants over these.
//!
//! A ring is a free module of finite rank over its [`BaseRing`] with a
//! multiplication table on basis elements. Scalar rings are rank-1 algebras
//! over themselves, so elements are uniformly coordinate vectors in
//! canonical form and can be hashed and ordered. All construction checks
//! (commutativity, associativity, unit laws) are exhaustive over basis
//! triples.

mod local;
mod map;
mod structure;

pub use local::{ideal_closure, localize, present_finite_ring, quotient_ring, Localization, QuotientRing};
pub use map::RingMap;
pub use structure::{idempotents, nilradical, primitive_idempotents, NilData};

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::matrix::RingMat;
use crate::scalar::{is_prime, BaseRing, Coeff};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RingKind {
    IntegersModN(u64),
    PrimeField(u64),
    Rationals,
    Algebra,
}

#[derive(PartialEq, Eq, Debug)]
struct RingData {
    kind: RingKind,
    name: String,
    base: BaseRing,
    rank: usize,
    labels: Vec<String>,
    /// `table[i * rank + j]` = coordinates of `e_i * e_j`.
    table: Vec<Vec<Coeff>>,
    one: Vec<Coeff>,
}

/// A shared, immutable ring description. Cloning is cheap.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.name)
    }
}

impl Ring {
    pub fn integers_mod(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(Error::construction("modulus must be at least 2"));
        }
        Ok(Self::scalar(
            RingKind::IntegersModN(n),
            BaseRing::Mod(n),
            format!("Z/{n}"),
        ))
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::construction(format!("{p} is not prime")));
        }
        Ok(Self::scalar(
            RingKind::PrimeField(p),
            BaseRing::Mod(p),
            format!("F{p}"),
        ))
    }

    pub fn rationals() -> Ring {
        Self::scalar(RingKind::Rationals, BaseRing::Rat, "Q".into())
    }

    /// The zero ring, used internally as the localization of a ring at a
    /// nilpotent element.
    pub fn zero_ring() -> Ring {
        Self::scalar(RingKind::IntegersModN(1), BaseRing::Mod(1), "0".into())
    }

    fn scalar(kind: RingKind, base: BaseRing, name: String) -> Ring {
        Ring(Arc::new(RingData {
            kind,
            name,
            base,
            rank: 1,
            labels: vec!["1".into()],
            table: vec![vec![base.one()]],
            one: vec![base.one()],
        }))
    }

    /// A finite-rank commutative algebra over a scalar ring, given by its
    /// multiplication table on basis elements and the coordinates of 1.
    /// Commutativity, associativity and the unit laws are checked on all
    /// basis triples.
    pub fn algebra(
        name: impl Into<String>,
        base_ring: &Ring,
        labels: Vec<String>,
        table: Vec<Vec<Coeff>>,
        one: Vec<Coeff>,
    ) -> Result<Ring> {
        let name = name.into();
        if base_ring.rank() != 1 {
            return Err(Error::construction("algebra base must be a scalar ring"));
        }
        let base = base_ring.base();
        let rank = labels.len();
        if rank == 0 {
            return Err(Error::construction("algebra needs at least one basis element"));
        }
        if table.len() != rank * rank || table.iter().any(|c| c.len() != rank) {
            return Err(Error::construction("structure constant table has wrong shape"));
        }
        if one.len() != rank {
            return Err(Error::construction("unit vector has wrong length"));
        }
        let data = RingData {
            kind: RingKind::Algebra,
            name: name.clone(),
            base,
            rank,
            labels,
            table,
            one,
        };
        let ring = Ring(Arc::new(data));
        ring.check_laws()?;
        Ok(ring)
    }

    /// The dual numbers `base[eps]/(eps^2)` over a scalar ring.
    pub fn dual_numbers(name: impl Into<String>, base_ring: &Ring) -> Result<Ring> {
        let b = base_ring.base();
        let z = b.zero();
        let o = b.one();
        Ring::algebra(
            name,
            base_ring,
            vec!["1".into(), "eps".into()],
            vec![
                vec![o.clone(), z.clone()],
                vec![z.clone(), o.clone()],
                vec![z.clone(), o.clone()],
                vec![z.clone(), z.clone()],
            ],
            vec![o, z],
        )
    }

    /// Direct product of two algebras over the same base.
    pub fn direct_product(name: impl Into<String>, left: &Ring, right: &Ring) -> Result<Ring> {
        if left.base() != right.base() {
            return Err(Error::construction("product factors must share a base ring"));
        }
        let base = left.base();
        let r1 = left.rank();
        let r2 = right.rank();
        let rank = r1 + r2;
        let mut labels = Vec::with_capacity(rank);
        for l in left.labels() {
            labels.push(format!("{l}.l"));
        }
        for l in right.labels() {
            labels.push(format!("{l}.r"));
        }
        let zero = base.zero();
        let mut table = vec![vec![zero.clone(); rank]; rank * rank];
        for i in 0..r1 {
            for j in 0..r1 {
                let c = &left.0.table[i * r1 + j];
                for k in 0..r1 {
                    table[i * rank + j][k] = c[k].clone();
                }
            }
        }
        for i in 0..r2 {
            for j in 0..r2 {
                let c = &right.0.table[i * r2 + j];
                for k in 0..r2 {
                    table[(r1 + i) * rank + (r1 + j)][r1 + k] = c[k].clone();
                }
            }
        }
        let mut one = Vec::with_capacity(rank);
        one.extend(left.0.one.iter().cloned());
        one.extend(right.0.one.iter().cloned());
        Self::algebra(name, &left.base_scalar_ring(), labels, table, one)
    }

    /// The scalar ring underlying this algebra's base.
    pub fn base_scalar_ring(&self) -> Ring {
        match self.base() {
            BaseRing::Mod(1) => Ring::zero_ring(),
            BaseRing::Mod(n) => match self.kind() {
                RingKind::PrimeField(_) => Ring::prime_field(n).expect("prime checked"),
                _ => Ring::integers_mod(n).expect("n >= 2"),
            },
            BaseRing::Rat => Ring::rationals(),
        }
    }

    fn check_laws(&self) -> Result<()> {
        let r = self.rank();
        for i in 0..r {
            for j in 0..r {
                if self.0.table[i * r + j] != self.0.table[j * r + i] {
                    return Err(Error::construction(format!(
                        "multiplication not commutative on ({}, {})",
                        self.0.labels[i], self.0.labels[j]
                    )));
                }
            }
        }
        let one = self.one();
        for i in 0..r {
            let e = self.basis(i);
            if &one * &e != e {
                return Err(Error::construction(format!(
                    "unit law fails on basis element {}",
                    self.0.labels[i]
                )));
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let a = self.basis(i);
                    let b = self.basis(j);
                    let c = self.basis(k);
                    if &(&a * &b) * &c != &a * &(&b * &c) {
                        return Err(Error::construction(format!(
                            "associativity fails on triple ({}, {}, {})",
                            self.0.labels[i], self.0.labels[j], self.0.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> &RingKind {
        &self.0.kind
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn base(&self) -> BaseRing {
        self.0.base
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn characteristic(&self) -> u64 {
        self.0.base.characteristic()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.0.base == BaseRing::Mod(1)
    }

    /// Number of elements; `None` for ℚ-algebras.
    pub fn size(&self) -> Option<u128> {
        self.base()
            .size()
            .map(|n| (n as u128).pow(self.rank() as u32))
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            ring: self.clone(),
            coords: vec![self.base().zero(); self.rank()],
        }
    }

    pub fn one(&self) -> RingElement {
        RingElement {
            ring: self.clone(),
            coords: self.0.one.clone(),
        }
    }

    pub fn basis(&self, i: usize) -> RingElement {
        let mut coords = vec![self.base().zero(); self.rank()];
        coords[i] = self.base().one();
        RingElement {
            ring: self.clone(),
            coords,
        }
    }

    pub fn from_coords(&self, coords: Vec<Coeff>) -> RingElement {
        assert_eq!(coords.len(), self.rank(), "coordinate length");
        RingElement {
            ring: self.clone(),
            coords,
        }
    }

    pub fn from_i64(&self, v: i64) -> RingElement {
        self.one().int_mul(&BigInt::from(v))
    }

    fn mul_coords(&self, a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
        let base = self.base();
        let r = self.rank();
        let mut out = vec![base.zero(); r];
        for i in 0..r {
            if a[i].is_zero_c() {
                continue;
            }
            for j in 0..r {
                if b[j].is_zero_c() {
                    continue;
                }
                let s = base.mul(&a[i], &b[j]);
                for (k, c) in self.0.table[i * r + j].iter().enumerate() {
                    if !c.is_zero_c() {
                        out[k] = base.add(&out[k], &base.mul(&s, c));
                    }
                }
            }
        }
        out
    }

    /// All elements, in a fixed canonical order. Errors over ℚ or when the
    /// ring has more than `bound` elements.
    pub fn elements(&self, bound: u64) -> Result<Vec<RingElement>> {
        let n = self
            .base()
            .size()
            .ok_or_else(|| Error::out_of_scope("cannot enumerate a Q-algebra"))?;
        let total = (n as u128).pow(self.rank() as u32);
        if total > bound as u128 {
            return Err(Error::bound(bound, format!("enumerating {}", self.name())));
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut digits = vec![0u64; self.rank()];
        loop {
            out.push(self.from_coords(digits.iter().map(|d| Coeff::Mod(*d)).collect()));
            let mut i = 0;
            loop {
                if i == self.rank() {
                    return Ok(out);
                }
                digits[i] += 1;
                if digits[i] < n {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    /// The unit group as an enumerated abelian group.
    pub fn unit_group(&self, bound: u64) -> Result<crate::abelian::EnumeratedGroup<RingElement>> {
        let units: Vec<RingElement> = self
            .elements(bound)?
            .into_iter()
            .filter(|x| x.is_unit())
            .collect();
        crate::abelian::enumerate_abelian_group(&units, self.one(), |a, b| a * b, bound)
    }
}

/// An element of a [`Ring`]: a canonical coordinate vector over the base.
///
/// Equality requires the owners to agree; ordering and hashing look only at
/// coordinates and are meant for containers holding elements of one ring.
#[derive(Clone)]
pub struct RingElement {
    ring: Ring,
    coords: Vec<Coeff>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.ring == other.ring
    }
}
impl Eq for RingElement {}

impl std::hash::Hash for RingElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for RingElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for RingElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl RingElement {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coords(&self) -> &[Coeff] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero_c())
    }

    pub fn is_one(&self) -> bool {
        self.coords == self.ring.0.one
    }

    fn assert_owner(&self, other: &RingElement) {
        assert!(
            self.ring == other.ring,
            "elements of different rings: {} vs {}",
            self.ring.name(),
            other.ring.name()
        );
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        if self.ring != other.ring {
            return Err(Error::mismatch(format!(
                "{} vs {}",
                self.ring.name(),
                other.ring.name()
            )));
        }
        Ok(self * other)
    }

    pub fn scalar_mul(&self, c: &Coeff) -> RingElement {
        let base = self.ring.base();
        self.ring
            .from_coords(self.coords.iter().map(|x| base.mul(c, x)).collect())
    }

    pub fn int_mul(&self, k: &BigInt) -> RingElement {
        let base = self.ring.base();
        self.ring
            .from_coords(self.coords.iter().map(|x| base.int_mul(k, x)).collect())
    }

    pub fn pow(&self, mut e: u64) -> RingElement {
        let mut acc = self.ring.one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    /// Matrix of multiplication by `self` on the underlying free module,
    /// as a matrix over the base scalar ring.
    pub fn mul_matrix(&self) -> RingMat {
        let scalars = self.ring.base_scalar_ring();
        let r = self.ring.rank();
        let mut entries = Vec::with_capacity(r * r);
        let mut cols = Vec::with_capacity(r);
        for j in 0..r {
            cols.push(self.ring.mul_coords(&self.coords, self.ring.basis(j).coords()));
        }
        for i in 0..r {
            for col in cols.iter() {
                entries.push(scalars.from_coords(vec![col[i].clone()]));
            }
        }
        RingMat::from_entries(&scalars, r, r, entries)
    }

    /// Multiplicative inverse, if this element is a unit. Works over any
    /// base via the division-free characteristic polynomial of the
    /// multiplication matrix and Cayley-Hamilton; the only division is by
    /// the determinant, which must be a unit scalar.
    pub fn try_invert(&self) -> Option<RingElement> {
        let r = self.ring.rank();
        let base = self.ring.base();
        let p = self.mul_matrix().charpoly(); // p[0].. p[r], p[0] = 1
        let pr = p[r].coords()[0].clone(); // (-1)^r det
        let neg_pr_inv = base.inv(&base.neg(&pr))?;
        // a * (p_0 a^{r-1} + p_1 a^{r-2} + ... + p_{r-1}) = -p_r
        let mut acc = self.ring.zero();
        for (k, pk) in p.iter().take(r).enumerate() {
            let t = self.pow((r - 1 - k) as u64).scalar_mul(&pk.coords()[0]);
            acc = &acc + &t;
        }
        Some(acc.scalar_mul(&neg_pr_inv))
    }

    pub fn is_unit(&self) -> bool {
        let p = self.mul_matrix().charpoly();
        let pr = &p[self.ring.rank()].coords()[0];
        self.ring.base().is_unit(pr)
    }

    /// Exact nilpotency test: repeated squaring past the ring size over a
    /// finite base, `x^rank = 0` over ℚ.
    pub fn is_nilpotent(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        match self.ring.base() {
            BaseRing::Rat => self.pow(self.ring.rank() as u64).is_zero(),
            BaseRing::Mod(n) => {
                let bits = 64 - n.leading_zeros() as usize;
                let steps = self.ring.rank() * bits + 1;
                let mut x = self.clone();
                for _ in 0..steps {
                    if x.is_zero() {
                        return true;
                    }
                    x = &x * &x;
                }
                x.is_zero()
            }
        }
    }

    pub fn render(&self) -> String {
        let base = self.ring.base();
        let mut parts = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero_c() {
                continue;
            }
            let label = &self.ring.0.labels[i];
            let cs = base.render(c);
            if label == "1" {
                parts.push(cs);
            } else if cs == "1" {
                parts.push(label.clone());
            } else {
                parts.push(format!("{cs}*{label}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl std::ops::Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.assert_owner(rhs);
        let base = self.ring.base();
        self.ring.from_coords(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| base.add(a, b))
                .collect(),
        )
    }
}

impl std::ops::Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.assert_owner(rhs);
        let base = self.ring.base();
        self.ring.from_coords(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| base.sub(a, b))
                .collect(),
        )
    }
}

impl std::ops::Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        let base = self.ring.base();
        self.ring
            .from_coords(self.coords.iter().map(|a| base.neg(a)).collect())
    }
}

impl std::ops::Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.assert_owner(rhs);
        self.ring
            .from_coords(self.ring.mul_coords(&self.coords, &rhs.coords))
    }
}
