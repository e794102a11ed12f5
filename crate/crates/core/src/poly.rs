//! Truncated polynomial arithmetic over a ring: fixed-length coefficient
//! vectors representing elements of `R[t]/(t^{cap+1})`. Shared by the Witt
//! vector and nil-unit code.

use crate::ring::{Ring, RingElement};

/// Coefficient vector of length `cap + 1` representing `sum c_i t^i`.
pub(crate) type TPoly = Vec<RingElement>;

pub(crate) fn constant(ring: &Ring, cap: usize, c: RingElement) -> TPoly {
    let mut v = vec![ring.zero(); cap + 1];
    v[0] = c;
    v
}

pub(crate) fn one(ring: &Ring, cap: usize) -> TPoly {
    constant(ring, cap, ring.one())
}

pub(crate) fn is_one(p: &TPoly) -> bool {
    p[0].is_one() && p[1..].iter().all(|c| c.is_zero())
}

pub(crate) fn add(a: &TPoly, b: &TPoly) -> TPoly {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn mul(a: &TPoly, b: &TPoly) -> TPoly {
    let cap = a.len() - 1;
    let ring = a[0].ring().clone();
    let mut out = vec![ring.zero(); cap + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j > cap {
                break;
            }
            if y.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Inverse of a series with unit constant term.
pub(crate) fn inv(a: &TPoly) -> Option<TPoly> {
    let cap = a.len() - 1;
    let ring = a[0].ring().clone();
    let c0 = a[0].try_invert()?;
    let mut out = vec![ring.zero(); cap + 1];
    out[0] = c0.clone();
    for k in 1..=cap {
        // coefficient of t^k in a * out must vanish
        let mut acc = ring.zero();
        for i in 1..=k {
            if !a[i].is_zero() {
                acc = &acc + &(&a[i] * &out[k - i]);
            }
        }
        out[k] = -&(&acc * &c0);
    }
    Some(out)
}

/// Substitution `t -> t^n`, truncated.
pub(crate) fn substitute_tn(a: &TPoly, n: usize) -> TPoly {
    let cap = a.len() - 1;
    let ring = a[0].ring().clone();
    let mut out = vec![ring.zero(); cap + 1];
    for (i, c) in a.iter().enumerate() {
        if i * n > cap {
            break;
        }
        out[i * n] = c.clone();
    }
    out
}

pub(crate) fn pow(a: &TPoly, mut e: u64) -> TPoly {
    let cap = a.len() - 1;
    let ring = a[0].ring().clone();
    let mut acc = one(&ring, cap);
    let mut b = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &b);
        }
        b = mul(&b, &b);
        e >>= 1;
    }
    acc
}

/// Formal derivative (length shrinks by one conceptually; the result is
/// padded back to full length).
pub(crate) fn derivative(a: &TPoly) -> TPoly {
    let cap = a.len() - 1;
    let ring = a[0].ring().clone();
    let mut out = vec![ring.zero(); cap + 1];
    for i in 1..=cap {
        out[i - 1] = a[i].int_mul(&num_bigint::BigInt::from(i));
    }
    out
}

/// Applies a coefficient map.
pub(crate) fn map_coeffs(a: &TPoly, f: impl Fn(&RingElement) -> RingElement) -> TPoly {
    a.iter().map(f).collect()
}
