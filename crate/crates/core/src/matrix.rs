//! Matrices over a [`Ring`], with division-free characteristic polynomials
//! (Berkowitz), plus the linear-algebra helpers the rest of the library
//! leans on: Gaussian elimination over ℚ and lattice-based solving mod n.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::abelian::{kernel_basis, solve as int_solve, IntMatrix};
use crate::ring::{Ring, RingElement};
use crate::scalar::Coeff;

/// Dense matrix with entries in one ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingMat {
    ring: Ring,
    pub rows: usize,
    pub cols: usize,
    data: Vec<RingElement>,
}

impl RingMat {
    pub fn from_entries(ring: &Ring, rows: usize, cols: usize, data: Vec<RingElement>) -> Self {
        assert_eq!(data.len(), rows * cols);
        RingMat {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_fn(
        ring: &Ring,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> RingElement,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RingMat::from_entries(ring, rows, cols, data)
    }

    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Self {
        RingMat::from_fn(ring, rows, cols, |_, _| ring.zero())
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        RingMat::from_fn(ring, n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &RingMat) -> RingMat {
        assert_eq!(self.cols, other.rows);
        RingMat::from_fn(&self.ring, self.rows, other.cols, |i, j| {
            let mut acc = self.ring.zero();
            for k in 0..self.cols {
                acc = &acc + &(self.get(i, k) * other.get(k, j));
            }
            acc
        })
    }

    /// Block-diagonal sum.
    pub fn block_sum(&self, other: &RingMat) -> RingMat {
        let n = self.rows + other.rows;
        let m = self.cols + other.cols;
        RingMat::from_fn(&self.ring, n, m, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                other.get(i - self.rows, j - self.cols).clone()
            } else {
                self.ring.zero()
            }
        })
    }

    pub fn kronecker(&self, other: &RingMat) -> RingMat {
        RingMat::from_fn(
            &self.ring,
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                let (i1, i2) = (i / other.rows, i % other.rows);
                let (j1, j2) = (j / other.cols, j % other.cols);
                self.get(i1, j1) * other.get(i2, j2)
            },
        )
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RingMat {
        RingMat::from_fn(&self.ring, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Berkowitz characteristic polynomial: returns `p_0..p_n` with
    /// `det(x I - M) = sum p_k x^(n-k)` and `p_0 = 1`. Division-free, so it
    /// is valid over any commutative ring.
    pub fn charpoly(&self) -> Vec<RingElement> {
        assert_eq!(self.rows, self.cols, "charpoly of square matrices only");
        let n = self.rows;
        let mut c = vec![self.ring.one()];
        for i in 1..=n {
            let a = self.get(i - 1, i - 1).clone();
            // Toeplitz column: v = (1, -a, -R S, -R B S, -R B^2 S, ...)
            let mut v = Vec::with_capacity(i + 1);
            v.push(self.ring.one());
            v.push(-&a);
            if i > 1 {
                let r_row: Vec<&RingElement> = (0..i - 1).map(|j| self.get(i - 1, j)).collect();
                let mut w: Vec<RingElement> = (0..i - 1).map(|j| self.get(j, i - 1).clone()).collect();
                for _ in 2..=i {
                    let mut dot = self.ring.zero();
                    for (rj, wj) in r_row.iter().zip(&w) {
                        dot = &dot + &(*rj * wj);
                    }
                    v.push(-&dot);
                    // w = B w
                    let mut nw = Vec::with_capacity(i - 1);
                    for bi in 0..i - 1 {
                        let mut acc = self.ring.zero();
                        for (bj, wj) in w.iter().enumerate() {
                            acc = &acc + &(self.get(bi, bj) * wj);
                        }
                        nw.push(acc);
                    }
                    w = nw;
                }
            }
            let mut next = Vec::with_capacity(i + 1);
            for j in 0..=i {
                let mut acc = self.ring.zero();
                for (t, vt) in v.iter().enumerate().take(j + 1) {
                    if j - t < c.len() {
                        acc = &acc + &(vt * &c[j - t]);
                    }
                }
                next.push(acc);
            }
            c = next;
        }
        c
    }

    /// Determinant via the characteristic polynomial: `(-1)^n p_n`.
    pub fn det(&self) -> RingElement {
        let n = self.rows;
        let p = self.charpoly();
        let last = p.into_iter().nth(n).expect("charpoly has n+1 coefficients");
        if n % 2 == 0 {
            last
        } else {
            -&last
        }
    }

    /// Determinant of a matrix over a scalar ring, as a scalar.
    pub fn det_scalar(&self) -> Option<Coeff> {
        if self.ring.rank() != 1 {
            return None;
        }
        Some(self.det().coords()[0].clone())
    }

    /// The `k`-th compound matrix: entries are `k x k` minors indexed by
    /// lexicographically ordered row/column subsets.
    pub fn compound(&self, k: usize) -> RingMat {
        assert_eq!(self.rows, self.cols);
        let subsets = combinations(self.rows, k);
        RingMat::from_fn(&self.ring, subsets.len(), subsets.len(), |i, j| {
            self.submatrix(&subsets[i], &subsets[j]).det()
        })
    }
}

/// All k-subsets of {0..n-1} in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        if k == 0 {
            return out;
        }
        let mut i = k as isize - 1;
        while i >= 0 && cur[i as usize] == i as usize + n - k {
            i -= 1;
        }
        if i < 0 {
            return out;
        }
        let i = i as usize;
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Rational linear algebra
// ---------------------------------------------------------------------------

/// Row-reduce in place; returns pivot columns.
fn rref(m: &mut Vec<Vec<BigRational>>) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Solves `A x = b` over ℚ (A given by rows). Returns one solution.
pub fn rat_solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // inconsistent if a pivot lands in the augmented column
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][cols].clone();
    }
    Some(x)
}

/// Basis of the null space of `A` over ℚ.
pub fn rat_kernel(a: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<BigRational>> = a.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![BigRational::zero(); cols];
        v[f] = BigRational::from_integer(1.into());
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -m[i][f].clone();
        }
        basis.push(v);
    }
    basis
}

/// Indices of a column basis of `A` (pivot columns) over ℚ.
pub fn rat_column_basis(a: &[Vec<BigRational>]) -> Vec<usize> {
    let mut m = a.to_vec();
    rref(&mut m)
}

pub fn rat_rank(a: &[Vec<BigRational>]) -> usize {
    rat_column_basis(a).len()
}

// ---------------------------------------------------------------------------
// Linear algebra mod n, through integer lattices
// ---------------------------------------------------------------------------

/// Solves `A x = b (mod n)` where `A` is an integer matrix with entries
/// lifted from ℤ/n. Returns residues in `[0, n)`.
pub fn mod_solve(n: u64, a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let nn = BigInt::from(n);
    let mut scaled = IntMatrix::identity(a.rows);
    for i in 0..a.rows {
        scaled.set(i, i, nn.clone());
    }
    let stacked = a.hstack(&scaled);
    let sol = int_solve(&stacked, b)?;
    Some(
        sol[..a.cols]
            .iter()
            .map(|x| num_integer::Integer::mod_floor(x, &nn))
            .collect(),
    )
}

/// Generators of the integer lattice `{x : A x = 0 (mod n)}`, unreduced.
/// The lattice always contains `n Z^cols`; callers reduce modulo whatever
/// characteristic their ambient module carries.
pub fn mod_kernel(n: u64, a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let nn = BigInt::from(n);
    let mut scaled = IntMatrix::identity(a.rows);
    for i in 0..a.rows {
        scaled.set(i, i, nn.clone());
    }
    let stacked = a.hstack(&scaled);
    let k = kernel_basis(&stacked);
    let mut out = Vec::new();
    for c in 0..k.cols {
        let v: Vec<BigInt> = (0..a.cols).map(|i| k.get(i, c).clone()).collect();
        if v.iter().any(|x| !x.is_zero()) {
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn charpoly_of_diagonal() {
        let r = Ring::rationals();
        let m = RingMat::from_fn(&r, 2, 2, |i, j| {
            if i == j {
                r.from_i64(if i == 0 { 2 } else { 3 })
            } else {
                r.zero()
            }
        });
        let p = m.charpoly();
        // (x-2)(x-3) = x^2 - 5x + 6
        assert_eq!(p[0], r.one());
        assert_eq!(p[1], r.from_i64(-5));
        assert_eq!(p[2], r.from_i64(6));
        assert_eq!(m.det(), r.from_i64(6));
    }

    #[test]
    fn charpoly_matches_cofactor_det_over_z6() {
        // oracle: naive cofactor expansion
        fn cofactor_det(m: &RingMat) -> RingElement {
            let n = m.rows;
            if n == 0 {
                return m.ring().one();
            }
            if n == 1 {
                return m.get(0, 0).clone();
            }
            let rest: Vec<usize> = (1..n).collect();
            let mut acc = m.ring().zero();
            for j in 0..n {
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let minor = cofactor_det(&m.submatrix(&rest, &cols));
                let term = m.get(0, j) * &minor;
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }

        let r = Ring::integers_mod(6).unwrap();
        let vals = [
            [1, 2, 3, 4, 5, 0, 1, 1, 2],
            [5, 5, 1, 0, 3, 2, 4, 4, 4],
            [2, 0, 0, 0, 3, 1, 1, 5, 2],
        ];
        for v in vals {
            let m = RingMat::from_fn(&r, 3, 3, |i, j| r.from_i64(v[i * 3 + j]));
            assert_eq!(m.det(), cofactor_det(&m));
        }
    }

    #[test]
    fn det_of_nilpotent_shift() {
        let r = Ring::integers_mod(4).unwrap();
        let m = RingMat::from_fn(&r, 2, 2, |i, j| {
            if i == 0 && j == 1 {
                r.one()
            } else {
                r.zero()
            }
        });
        let p = m.charpoly();
        assert_eq!(p[1], r.zero());
        assert_eq!(p[2], r.zero());
    }

    #[test]
    fn compound_of_rank_two_is_determinant() {
        let r = Ring::rationals();
        let m = RingMat::from_fn(&r, 2, 2, |i, j| r.from_i64([[2, 1], [1, 3]][i][j]));
        let c2 = m.compound(2);
        assert_eq!(c2.rows, 1);
        assert_eq!(c2.get(0, 0), &r.from_i64(5));
    }

    #[test]
    fn compound_is_multiplicative() {
        let r = Ring::integers_mod(6).unwrap();
        let a = RingMat::from_fn(&r, 3, 3, |i, j| r.from_i64([[1, 2, 0], [0, 1, 3], [2, 0, 1]][i][j]));
        let b = RingMat::from_fn(&r, 3, 3, |i, j| r.from_i64([[5, 1, 1], [2, 2, 0], [1, 0, 3]][i][j]));
        let lhs = a.mul(&b).compound(2);
        let rhs = a.compound(2).mul(&b.compound(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_solve_and_kernel() {
        let a = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        let x = rat_solve(&a, &[q(3), q(6)]).unwrap();
        assert_eq!(&x[0] + &x[1] * q(2), q(3));
        assert!(rat_solve(&a, &[q(1), q(1)]).is_none());
        let k = rat_kernel(&a);
        assert_eq!(k.len(), 1);
        assert!((&k[0][0] * q(1) + &k[0][1] * q(2)).is_zero());
    }

    #[test]
    fn mod_solve_works_with_zero_divisors() {
        // 2x = 2 (mod 6) has solutions x = 1, 4
        let a = IntMatrix::from_rows(&[vec![2i64]]);
        let x = mod_solve(6, &a, &[BigInt::from(2)]).unwrap();
        let v = &x[0];
        assert!((v * 2 - 2) % 6 == BigInt::zero());
        // 2x = 1 (mod 6) has none
        assert!(mod_solve(6, &a, &[BigInt::one()]).is_none());
    }

    #[test]
    fn combinations_order() {
        assert_eq!(combinations(4, 2), vec![
            vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]
        ]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}
