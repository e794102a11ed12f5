//! Exact base-ring scalars: residues mod n and arbitrary-precision rationals.
//!
//! Every ring in the library is a free module over one of these two base
//! rings; all coordinate arithmetic bottoms out here. Residues are kept
//! canonical in `[0, n)`, rationals are kept reduced with positive
//! denominator (the `BigRational` constructor guarantees this), so scalars
//! are directly hashable and orderable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// The base ring a coordinate lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum BaseRing {
    /// Integers mod `n`, `n >= 1`. `Mod(1)` is the zero ring and only
    /// arises internally (localization at a nilpotent element).
    Mod(u64),
    /// The rational numbers.
    Rat,
}

/// A canonical scalar: a residue in `[0, n)` or a reduced rational.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Coeff {
    Mod(u64),
    Rat(BigRational),
}

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Extended gcd: returns (g, x) with x*a ≡ g (mod n), g = gcd(a, n).
fn inv_mod(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (n as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(n as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl BaseRing {
    pub fn characteristic(&self) -> u64 {
        match self {
            BaseRing::Mod(n) => *n,
            BaseRing::Rat => 0,
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            BaseRing::Mod(n) => is_prime(*n),
            BaseRing::Rat => true,
        }
    }

    /// Number of scalars, `None` for ℚ.
    pub fn size(&self) -> Option<u64> {
        match self {
            BaseRing::Mod(n) => Some(*n),
            BaseRing::Rat => None,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            BaseRing::Mod(_) => Coeff::Mod(0),
            BaseRing::Rat => Coeff::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            BaseRing::Mod(n) => Coeff::Mod(if *n == 1 { 0 } else { 1 }),
            BaseRing::Rat => Coeff::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            BaseRing::Mod(n) => Coeff::Mod((v as i128).rem_euclid(*n as i128) as u64),
            BaseRing::Rat => Coeff::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            BaseRing::Mod(n) => {
                let m = v.mod_floor(&BigInt::from(*n));
                Coeff::Mod(u64::try_from(m).expect("residue fits in u64"))
            }
            BaseRing::Rat => Coeff::Rat(BigRational::from_integer(v.clone())),
        }
    }

    /// Interprets `num/den` in this base ring. Over `Mod(n)` the denominator
    /// must be a unit mod n.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Coeff> {
        if den == 0 {
            return Err(Error::construction("zero denominator"));
        }
        match self {
            BaseRing::Mod(n) => {
                let d = (den as i128).rem_euclid(*n as i128) as u64;
                let inv = inv_mod(d, *n).ok_or_else(|| {
                    Error::construction(format!("denominator {den} is not a unit mod {n}"))
                })?;
                let nu = (num as i128).rem_euclid(*n as i128) as u64;
                Ok(Coeff::Mod(mulmod(nu, inv, *n)))
            }
            BaseRing::Rat => Ok(Coeff::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (BaseRing::Mod(n), Coeff::Mod(a), Coeff::Mod(b)) => {
                Coeff::Mod(((a + b) as u128 % *n as u128) as u64)
            }
            (BaseRing::Rat, Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a + b),
            _ => unreachable!("scalar/base mismatch"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (BaseRing::Mod(n), Coeff::Mod(a)) => Coeff::Mod(if *a == 0 { 0 } else { n - a }),
            (BaseRing::Rat, Coeff::Rat(a)) => Coeff::Rat(-a),
            _ => unreachable!("scalar/base mismatch"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (BaseRing::Mod(n), Coeff::Mod(a), Coeff::Mod(b)) => Coeff::Mod(mulmod(*a, *b, *n)),
            (BaseRing::Rat, Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a * b),
            _ => unreachable!("scalar/base mismatch"),
        }
    }

    pub fn inv(&self, a: &Coeff) -> Option<Coeff> {
        match (self, a) {
            (BaseRing::Mod(n), Coeff::Mod(a)) => inv_mod(*a, *n).map(Coeff::Mod),
            (BaseRing::Rat, Coeff::Rat(a)) => {
                if a.is_zero() {
                    None
                } else {
                    Some(Coeff::Rat(a.recip()))
                }
            }
            _ => unreachable!("scalar/base mismatch"),
        }
    }

    pub fn is_unit(&self, a: &Coeff) -> bool {
        self.inv(a).is_some()
    }

    /// The ℤ-action `k · a`.
    pub fn int_mul(&self, k: &BigInt, a: &Coeff) -> Coeff {
        match (self, a) {
            (BaseRing::Mod(n), Coeff::Mod(a)) => {
                let k = k.mod_floor(&BigInt::from(*n));
                let k = u64::try_from(k).expect("residue fits in u64");
                Coeff::Mod(mulmod(k, *a, *n))
            }
            (BaseRing::Rat, Coeff::Rat(a)) => Coeff::Rat(BigRational::from_integer(k.clone()) * a),
            _ => unreachable!("scalar/base mismatch"),
        }
    }

    /// Lift of a scalar to ℤ: the canonical residue, or the rational itself
    /// when it is an integer.
    pub fn lift(&self, a: &Coeff) -> Option<BigInt> {
        match a {
            Coeff::Mod(a) => Some(BigInt::from(*a)),
            Coeff::Rat(a) => a.is_integer().then(|| a.to_integer()),
        }
    }

    /// All scalars, smallest first. `None` over ℚ.
    pub fn enumerate(&self) -> Option<Vec<Coeff>> {
        match self {
            BaseRing::Mod(n) => Some((0..*n).map(Coeff::Mod).collect()),
            BaseRing::Rat => None,
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Mod(a) => *a == 0,
            Coeff::Rat(a) => a.is_zero(),
        }
    }

    pub fn render(&self, a: &Coeff) -> String {
        match a {
            Coeff::Mod(a) => a.to_string(),
            Coeff::Rat(a) => {
                if a.is_integer() {
                    a.to_integer().to_string()
                } else {
                    format!("{}/{}", a.numer(), a.denom())
                }
            }
        }
    }
}

impl Coeff {
    pub fn is_zero_c(&self) -> bool {
        match self {
            Coeff::Mod(a) => *a == 0,
            Coeff::Rat(a) => a.is_zero(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Rat(r) => Some(r),
            Coeff::Mod(_) => None,
        }
    }
}

/// Reduces a rational with denominator prime to `n` into ℤ/n. Used by tests
/// that compare a torsion computation against its characteristic-zero lift.
pub fn reduce_rational_mod(r: &BigRational, n: u64) -> Option<u64> {
    let nn = BigInt::from(n);
    let den = r.denom().mod_floor(&nn);
    let den = u64::try_from(den).ok()?;
    let inv = inv_mod(den, n)?;
    let num = r.numer().mod_floor(&nn);
    let num = u64::try_from(num).ok()?;
    Some(mulmod(num, inv, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_arithmetic_is_canonical() {
        let b = BaseRing::Mod(6);
        let five = b.from_i64(5);
        assert_eq!(b.mul(&five, &five), Coeff::Mod(1));
        assert_eq!(b.from_i64(-1), Coeff::Mod(5));
        assert_eq!(b.neg(&b.zero()), Coeff::Mod(0));
    }

    #[test]
    fn inverses_mod_n() {
        let b = BaseRing::Mod(12);
        assert_eq!(b.inv(&Coeff::Mod(5)), Some(Coeff::Mod(5)));
        assert_eq!(b.inv(&Coeff::Mod(6)), None);
        assert_eq!(b.inv(&Coeff::Mod(7)), Some(Coeff::Mod(7)));
    }

    #[test]
    fn zero_ring_scalars() {
        let b = BaseRing::Mod(1);
        assert_eq!(b.one(), Coeff::Mod(0));
        // 0 is a unit in the zero ring.
        assert!(b.is_unit(&b.zero()));
    }

    #[test]
    fn rational_ratio_parsing() {
        let b = BaseRing::Rat;
        let h = b.from_ratio(1, 2).unwrap();
        assert_eq!(b.add(&h, &h), b.one());
        let m = BaseRing::Mod(5);
        // 1/2 = 3 mod 5
        assert_eq!(m.from_ratio(1, 2).unwrap(), Coeff::Mod(3));
        assert!(m.from_ratio(1, 5).is_err());
    }

    #[test]
    fn rational_reduction() {
        let r = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(reduce_rational_mod(&r, 5), Some(3));
        assert_eq!(reduce_rational_mod(&r, 4), None);
    }
}
