//! Truncated big Witt vectors `W_N(A)`.
//!
//! An element is a series `1 + a_1 t + ... + a_N t^N` modulo `t^{N+1}`.
//! Witt addition is series multiplication. Multiplication goes through the
//! factorization `u = prod (1 - a_m t^m)`: on basic factors
//!
//! ```text
//! (1 - a t^n) * (1 - b t^m) = (1 - a^{m/d} b^{n/d} t^{nm/d})^d,   d = gcd(n, m),
//! ```
//!
//! which is the unique rule compatible with ghost components over torsion-
//! free rings and is taken as the definition everywhere else. Frobenius acts
//! on basics by `F_n(1 - a t^m) = (1 - a^{n/d} t^{m/d})^d`, Verschiebung by
//! `t -> t^n`. The ghost map (valid over ℚ-algebras) is an independent
//! oracle for all of this and is cross-checked in the test suites.
//!
//! Coefficients of `F_n` below level `N/n` depend on coefficients of the
//! argument beyond level `N`; operations resolve this through the canonical
//! polynomial lift given by the factorization, so all identities hold
//! exactly at every truncation.

use num_integer::Integer;

use crate::matrix::RingMat;
use crate::poly;
use crate::ring::{Ring, RingElement};
use crate::scalar::BaseRing;
use crate::{Error, Result};

/// An element of `W_N(A)`: the series `1 + a_1 t + ... + a_N t^N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WittVector {
    ring: Ring,
    level: usize,
    /// a_1 .. a_N
    coeffs: Vec<RingElement>,
}

impl WittVector {
    pub fn new(ring: &Ring, level: usize, coeffs: Vec<RingElement>) -> Result<WittVector> {
        if level == 0 {
            return Err(Error::construction("truncation level must be at least 1"));
        }
        if coeffs.len() != level {
            return Err(Error::construction("expected one coefficient per degree"));
        }
        if coeffs.iter().any(|c| c.ring() != ring) {
            return Err(Error::mismatch("coefficient from a different ring"));
        }
        Ok(WittVector {
            ring: ring.clone(),
            level,
            coeffs,
        })
    }

    /// The zero of W_N: the series 1.
    pub fn zero(ring: &Ring, level: usize) -> WittVector {
        WittVector {
            ring: ring.clone(),
            level,
            coeffs: vec![ring.zero(); level],
        }
    }

    /// The multiplicative identity of W_N: the series `1 - t`.
    pub fn one(ring: &Ring, level: usize) -> WittVector {
        Self::basic(ring, level, 1, &ring.one())
    }

    /// The basic Witt vector `1 - a t^m`.
    pub fn basic(ring: &Ring, level: usize, m: usize, a: &RingElement) -> WittVector {
        let mut coeffs = vec![ring.zero(); level];
        if m >= 1 && m <= level {
            coeffs[m - 1] = -a;
        }
        WittVector {
            ring: ring.clone(),
            level,
            coeffs,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Full series `1 + a_1 t + ...` as a truncated polynomial.
    fn series(&self) -> poly::TPoly {
        let mut s = Vec::with_capacity(self.level + 1);
        s.push(self.ring.one());
        s.extend(self.coeffs.iter().cloned());
        s
    }

    fn from_series(ring: &Ring, series: poly::TPoly) -> WittVector {
        debug_assert!(series[0].is_one());
        WittVector {
            ring: ring.clone(),
            level: series.len() - 1,
            coeffs: series[1..].to_vec(),
        }
    }

    fn check_compat(&self, other: &WittVector) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::mismatch("Witt vectors over different rings"));
        }
        if self.level != other.level {
            return Err(Error::mismatch("Witt vectors at different truncations"));
        }
        Ok(())
    }

    /// Drops coefficients above `level`.
    pub fn truncate(&self, level: usize) -> WittVector {
        assert!(level >= 1 && level <= self.level);
        WittVector {
            ring: self.ring.clone(),
            level,
            coeffs: self.coeffs[..level].to_vec(),
        }
    }

    /// Extends to a higher truncation through the canonical polynomial
    /// lift `prod (1 - a_m t^m)` with factors of degree at most the current
    /// level. `F_n` lands in `W_{N/n}`, so identities that compose it with
    /// other operations are stated exactly by extending inputs to level
    /// `n * N` first and truncating afterwards.
    pub fn extend(&self, level: usize) -> WittVector {
        assert!(level >= self.level);
        Self::from_basics(&self.ring, level, &self.basic_factorization())
    }

    /// Witt addition: series multiplication.
    pub fn add(&self, other: &WittVector) -> Result<WittVector> {
        self.check_compat(other)?;
        Ok(Self::from_series(
            &self.ring,
            poly::mul(&self.series(), &other.series()),
        ))
    }

    /// Witt negation: series inverse.
    pub fn neg(&self) -> WittVector {
        let inv = poly::inv(&self.series()).expect("constant term 1 is a unit");
        Self::from_series(&self.ring, inv)
    }

    pub fn sub(&self, other: &WittVector) -> Result<WittVector> {
        self.add(&other.neg())
    }

    /// The unique coefficients with `u = prod_m (1 - a_m t^m)`, extracted
    /// degree by degree. Only nonzero factors are returned.
    pub fn basic_factorization(&self) -> Vec<(usize, RingElement)> {
        let mut residual = self.series();
        let mut out = Vec::new();
        for m in 1..=self.level {
            let c = residual[m].clone();
            if !c.is_zero() {
                // residual has the shape 1 + c t^m + O(t^{m+1});
                // the next factor is (1 - a_m t^m) with a_m = -c
                let factor = WittVector::basic(&self.ring, self.level, m, &(-&c));
                let inv = poly::inv(&factor.series()).expect("unit constant term");
                residual = poly::mul(&residual, &inv);
                out.push((m, -&c));
            }
        }
        debug_assert!(poly::is_one(&residual));
        out
    }

    /// Rebuilds `prod (1 - a_m t^m)` at the given level.
    pub fn from_basics(
        ring: &Ring,
        level: usize,
        factors: &[(usize, RingElement)],
    ) -> WittVector {
        let mut acc = poly::one(ring, level);
        for (m, a) in factors {
            if *m > level || a.is_zero() {
                continue;
            }
            let f = WittVector::basic(ring, level, *m, a);
            acc = poly::mul(&acc, &f.series());
        }
        Self::from_series(ring, acc)
    }

    /// Witt multiplication through basic factors and the gcd rule.
    pub fn mul(&self, other: &WittVector) -> Result<WittVector> {
        self.check_compat(other)?;
        let fu = self.basic_factorization();
        let fv = other.basic_factorization();
        let mut acc = poly::one(&self.ring, self.level);
        for (n, a) in &fu {
            for (m, b) in &fv {
                let d = n.gcd(m);
                let l = n / d * m;
                if l > self.level {
                    continue;
                }
                let c = &a.pow((m / d) as u64) * &b.pow((n / d) as u64);
                let basic = WittVector::basic(&self.ring, self.level, l, &c);
                acc = poly::mul(&acc, &poly::pow(&basic.series(), d as u64));
            }
        }
        Ok(Self::from_series(&self.ring, acc))
    }

    /// Verschiebung `V_n`: substitution `t -> t^n`.
    pub fn verschiebung(&self, n: usize) -> WittVector {
        assert!(n >= 1);
        Self::from_series(&self.ring, poly::substitute_tn(&self.series(), n))
    }

    /// Frobenius `F_n`, on basics `F_n(1 - a t^m) = (1 - a^{n/d} t^{m/d})^d`
    /// with `d = gcd(n, m)`.
    pub fn frobenius(&self, n: usize) -> WittVector {
        assert!(n >= 1);
        let mut acc = poly::one(&self.ring, self.level);
        for (m, a) in self.basic_factorization() {
            let d = n.gcd(&m);
            let basic = WittVector::basic(&self.ring, self.level, m / d, &a.pow((n / d) as u64));
            acc = poly::mul(&acc, &poly::pow(&basic.series(), d as u64));
        }
        Self::from_series(&self.ring, acc)
    }

    /// Ghost components `w_1 .. w_N`, the coefficients of `-t u'(t)/u(t)`.
    /// Requires a torsion-free coefficient ring, i.e. a ℚ-algebra here.
    pub fn ghost(&self) -> Result<Vec<RingElement>> {
        if self.ring.base() != BaseRing::Rat {
            return Err(Error::out_of_scope(
                "ghost components need a torsion-free coefficient ring",
            ));
        }
        let s = self.series();
        let ds = poly::derivative(&s);
        // t * u'(t): shift up by one
        let mut shifted = vec![self.ring.zero(); self.level + 1];
        for i in 0..self.level {
            shifted[i + 1] = ds[i].clone();
        }
        let q = poly::mul(&shifted, &poly::inv(&s).expect("unit constant term"));
        Ok((1..=self.level).map(|j| -&q[j]).collect())
    }

    /// Coefficient-wise transport along a ring map (functoriality of W).
    pub fn map_along(&self, f: &crate::ring::RingMap) -> Result<WittVector> {
        if f.source() != &self.ring {
            return Err(Error::mismatch("map source differs from owner"));
        }
        WittVector::new(
            f.target(),
            self.level,
            self.coeffs.iter().map(|c| f.apply(c)).collect(),
        )
    }

    pub fn render(&self) -> String {
        let mut s = String::from("1");
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let deg = i + 1;
            let t = if deg == 1 { "t".into() } else { format!("t^{deg}") };
            let cs = c.render();
            if cs == "1" {
                s.push_str(&format!(" + {t}"));
            } else if let Some(neg) = cs.strip_prefix('-') {
                if neg == "1" {
                    s.push_str(&format!(" - {t}"));
                } else if neg.contains('+') || neg.contains(' ') {
                    s.push_str(&format!(" + ({cs})*{t}"));
                } else {
                    s.push_str(&format!(" - {neg}*{t}"));
                }
            } else if cs.contains('+') || cs.contains(' ') {
                s.push_str(&format!(" + ({cs})*{t}"));
            } else {
                s.push_str(&format!(" + {cs}*{t}"));
            }
        }
        s
    }
}

/// A class `[A^n, M] - [A^n, 0]` in the endomorphism ring, kept as the
/// matrix `M`.
#[derive(Clone, Debug)]
pub struct EndClass {
    pub matrix: RingMat,
}

impl EndClass {
    pub fn new(matrix: RingMat) -> Result<EndClass> {
        if matrix.rows != matrix.cols {
            return Err(Error::mismatch("endomorphism matrices are square"));
        }
        Ok(EndClass { matrix })
    }

    /// Characteristic series `det(1 - t M)` truncated to the given level,
    /// computed division-free from the characteristic polynomial.
    pub fn char_series(&self, level: usize) -> WittVector {
        let ring = self.matrix.ring().clone();
        let p = self.matrix.charpoly(); // det(xI - M) = sum p_k x^{n-k}
        let mut coeffs = vec![ring.zero(); level];
        for (k, pk) in p.iter().enumerate().skip(1) {
            if k > level {
                break;
            }
            // det(1 - tM) = sum p_k t^k
            coeffs[k - 1] = pk.clone();
        }
        WittVector {
            ring,
            level,
            coeffs,
        }
    }

    pub fn direct_sum(&self, other: &EndClass) -> EndClass {
        EndClass {
            matrix: self.matrix.block_sum(&other.matrix),
        }
    }

    pub fn tensor(&self, other: &EndClass) -> EndClass {
        EndClass {
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use crate::scalar::{reduce_rational_mod, Coeff};

    fn wq(level: usize, coeffs: &[i64]) -> WittVector {
        let q = Ring::rationals();
        let c = (0..level)
            .map(|i| q.from_i64(coeffs.get(i).copied().unwrap_or(0)))
            .collect();
        WittVector::new(&q, level, c).unwrap()
    }

    #[test]
    fn addition_is_series_multiplication() {
        let q = Ring::rationals();
        let u = WittVector::basic(&q, 4, 1, &q.from_i64(2)); // 1 - 2t
        let v = WittVector::basic(&q, 4, 1, &q.from_i64(3)); // 1 - 3t
        let s = u.add(&v).unwrap();
        // (1-2t)(1-3t) = 1 - 5t + 6t^2
        assert_eq!(s.coeffs()[0], q.from_i64(-5));
        assert_eq!(s.coeffs()[1], q.from_i64(6));
        assert!(u.add(&u.neg()).unwrap().is_zero());
        assert_eq!(u.add(&WittVector::zero(&q, 4)).unwrap(), u);
    }

    #[test]
    fn ghost_of_basic() {
        let q = Ring::rationals();
        let a = q.from_i64(3);
        let u = WittVector::basic(&q, 5, 1, &a);
        let g = u.ghost().unwrap();
        let expect: Vec<RingElement> = (1..=5).map(|j| q.from_i64(3i64.pow(j))).collect();
        assert_eq!(g, expect);
        // ghost(1 - t) = (1,1,1,...)
        let one = WittVector::one(&q, 5);
        assert!(one.ghost().unwrap().iter().all(|x| x.is_one()));
    }

    #[test]
    fn ghost_turns_addition_into_addition() {
        let u = wq(6, &[1, -2, 3, 0, 1, 4]);
        let v = wq(6, &[-1, 5, 0, 2, 2, -3]);
        let s = u.add(&v).unwrap();
        let gu = u.ghost().unwrap();
        let gv = v.ghost().unwrap();
        let gs = s.ghost().unwrap();
        for j in 0..6 {
            assert_eq!(gs[j], &gu[j] + &gv[j]);
        }
    }

    #[test]
    fn multiplication_matches_ghost_products() {
        let u = wq(6, &[1, -2, 3, 0, 1, 4]);
        let v = wq(6, &[-1, 5, 0, 2, 2, -3]);
        let p = u.mul(&v).unwrap();
        let gu = u.ghost().unwrap();
        let gv = v.ghost().unwrap();
        let gp = p.ghost().unwrap();
        for j in 0..6 {
            assert_eq!(gp[j], &gu[j] * &gv[j]);
        }
    }

    #[test]
    fn one_minus_t_is_identity() {
        let u = wq(6, &[2, 1, 0, -1, 3, 5]);
        let one = WittVector::one(&Ring::rationals(), 6);
        assert_eq!(u.mul(&one).unwrap(), u);
    }

    #[test]
    fn product_of_basics_in_distinct_degrees() {
        // (1 - a t^2) * (1 - b t^3) = 1 - a^3 b^2 t^6 over Q
        let q = Ring::rationals();
        let a = q.from_i64(2);
        let b = q.from_i64(5);
        let u = WittVector::basic(&q, 6, 2, &a);
        let v = WittVector::basic(&q, 6, 3, &b);
        let p = u.mul(&v).unwrap();
        let expect = WittVector::basic(&q, 6, 6, &q.from_i64(2 * 2 * 2 * 5 * 5));
        assert_eq!(p, expect);
    }

    #[test]
    fn frobenius_on_basics() {
        let q = Ring::rationals();
        let a = q.from_i64(3);
        // F_2(1 - a t) = 1 - a^2 t
        let u = WittVector::basic(&q, 6, 1, &a);
        assert_eq!(
            u.frobenius(2),
            WittVector::basic(&q, 6, 1, &q.from_i64(9))
        );
        // F_2(1 - a t^2) = (1 - a t)^2
        let v = WittVector::basic(&q, 6, 2, &a);
        let b = WittVector::basic(&q, 6, 1, &a);
        assert_eq!(v.frobenius(2), b.add(&b).unwrap());
        // F_1 = identity
        let w = wq(6, &[1, 2, 3, 4, 5, 6]);
        assert_eq!(w.frobenius(1), w);
    }

    #[test]
    fn frobenius_ghost_relation() {
        // gh_j(F_n u) = gh_{nj}(u), with u extended by its canonical lift
        let u = wq(4, &[2, -1, 3, 1]);
        for n in 1..=3usize {
            let fu = u.frobenius(n);
            let lift = WittVector::from_basics(
                &Ring::rationals(),
                4 * n,
                &u.basic_factorization(),
            );
            let g_lift = lift.ghost().unwrap();
            let g_fu = fu.ghost().unwrap();
            for j in 1..=4 / n {
                assert_eq!(g_fu[j - 1], g_lift[n * j - 1], "n={n} j={j}");
            }
        }
    }

    #[test]
    fn verschiebung_composition_and_additivity() {
        let u = wq(12, &[1, 2, 0, 1, 0, 0, 3, 0, 0, 1, 0, 2]);
        assert_eq!(u.verschiebung(2).verschiebung(3), u.verschiebung(6));
        assert_eq!(u.verschiebung(1), u);
        let v = wq(12, &[2, 0, 1, 0, 0, 1, 0, 0, 2, 0, 1, 0]);
        let lhs = u.add(&v).unwrap().verschiebung(2);
        let rhs = u.verschiebung(2).add(&v.verschiebung(2)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn fn_vn_is_multiplication_by_n() {
        // F_n: W_{nN} -> W_N, so the composite is computed through level n*N
        let u = wq(8, &[3, -1, 2, 0, 1, 1, 0, 2]);
        for n in 1..=4usize {
            let lhs = u
                .extend(8 * n)
                .verschiebung(n)
                .frobenius(n)
                .truncate(8);
            let mut rhs = WittVector::zero(&Ring::rationals(), 8);
            for _ in 0..n {
                rhs = rhs.add(&u).unwrap();
            }
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn frobenius_is_multiplicative_through_lifts() {
        let u = wq(6, &[1, 0, 2, -1, 0, 3]);
        let v = wq(6, &[0, 1, -2, 0, 1, 0]);
        for n in 2..=3usize {
            let lhs = u
                .extend(6 * n)
                .mul(&v.extend(6 * n))
                .unwrap()
                .frobenius(n)
                .truncate(6);
            let rhs = u.frobenius(n).mul(&v.frobenius(n)).unwrap();
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn projection_formula_on_samples() {
        let a = wq(8, &[1, 2, 0, -1, 1, 0, 3, 0]);
        let b = wq(8, &[2, -1, 1, 0, 0, 2, 0, 1]);
        for n in 1..=4usize {
            let lhs = a.verschiebung(n).mul(&b).unwrap();
            let rhs = a.mul(&b.frobenius(n)).unwrap().verschiebung(n);
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn factorization_roundtrip_over_z4() {
        let r = Ring::integers_mod(4).unwrap();
        // u = 1 + t
        let mut coeffs = vec![r.zero(); 4];
        coeffs[0] = r.one();
        let u = WittVector::new(&r, 4, coeffs).unwrap();
        let f = u.basic_factorization();
        assert_eq!(f[0], (1, r.from_i64(-1)));
        let back = WittVector::from_basics(&r, 4, &f);
        assert_eq!(back, u);
    }

    #[test]
    fn torsion_multiplication_agrees_with_rational_lift() {
        // over Z/6, compare u*v with the reduction of the lifted product
        let r = Ring::integers_mod(6).unwrap();
        let q = Ring::rationals();
        let uc = [1i64, 4, 2, 0, 5, 3];
        let vc = [5i64, 1, 0, 2, 3, 1];
        let level = 6;
        let u = WittVector::new(&r, level, uc.iter().map(|v| r.from_i64(*v)).collect()).unwrap();
        let v = WittVector::new(&r, level, vc.iter().map(|v| r.from_i64(*v)).collect()).unwrap();
        let uq = WittVector::new(&q, level, uc.iter().map(|v| q.from_i64(*v)).collect()).unwrap();
        let vq = WittVector::new(&q, level, vc.iter().map(|v| q.from_i64(*v)).collect()).unwrap();
        let p = u.mul(&v).unwrap();
        let pq = uq.mul(&vq).unwrap();
        for j in 0..level {
            let lift = pq.coeffs()[j].coords()[0].as_rational().unwrap();
            let red = reduce_rational_mod(lift, 6).expect("integral lift");
            assert_eq!(p.coeffs()[j].coords()[0], Coeff::Mod(red), "degree {}", j + 1);
        }
    }

    #[test]
    fn char_series_of_small_matrices() {
        let q = Ring::rationals();
        let zero2 = RingMat::zero(&q, 2, 2);
        let e = EndClass::new(zero2).unwrap();
        assert!(e.char_series(6).is_zero());

        // nilpotent single Jordan block
        let mut nil = RingMat::zero(&q, 2, 2);
        nil.set(0, 1, q.one());
        let e = EndClass::new(nil).unwrap();
        assert!(e.char_series(6).is_zero());

        // diag(a, b) -> (1 - a t)(1 - b t)
        let mut d = RingMat::zero(&q, 2, 2);
        d.set(0, 0, q.from_i64(2));
        d.set(1, 1, q.from_i64(3));
        let e = EndClass::new(d).unwrap();
        let u = WittVector::basic(&q, 6, 1, &q.from_i64(2));
        let v = WittVector::basic(&q, 6, 1, &q.from_i64(3));
        assert_eq!(e.char_series(6), u.add(&v).unwrap());
    }

    #[test]
    fn char_series_turns_sum_and_tensor_into_witt_ops() {
        let r = Ring::integers_mod(6).unwrap();
        let a = RingMat::from_fn(&r, 2, 2, |i, j| r.from_i64([[1, 2], [3, 4]][i][j]));
        let b = RingMat::from_fn(&r, 2, 2, |i, j| r.from_i64([[5, 1], [2, 3]][i][j]));
        let ea = EndClass::new(a).unwrap();
        let eb = EndClass::new(b).unwrap();
        let level = 6;
        let sum = ea.direct_sum(&eb).char_series(level);
        assert_eq!(
            sum,
            ea.char_series(level).add(&eb.char_series(level)).unwrap()
        );
        let prod = ea.tensor(&eb).char_series(level);
        assert_eq!(
            prod,
            ea.char_series(level).mul(&eb.char_series(level)).unwrap()
        );
    }

    #[test]
    fn ghost_rejects_torsion() {
        let r = Ring::integers_mod(4).unwrap();
        let u = WittVector::one(&r, 3);
        assert!(u.ghost().is_err());
    }

    #[test]
    fn rational_coefficients_roundtrip() {
        let q = Ring::rationals();
        let half = q.from_coords(vec![Coeff::Rat(BigRational::new(
            BigInt::from(1),
            BigInt::from(2),
        ))]);
        let u = WittVector::basic(&q, 4, 1, &half);
        let g = u.ghost().unwrap();
        assert_eq!(g[1], &half * &half);
        let f = u.basic_factorization();
        assert_eq!(WittVector::from_basics(&q, 4, &f), u);
    }
}
