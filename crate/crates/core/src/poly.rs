//! Dense univariate polynomials over a [`FieldOps`] field, stored
//! low-degree coefficient first.

use crate::field::FieldOps;

pub fn trim<F: FieldOps>(f: &F, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
    while a.last().is_some_and(|&c| f.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree of a trimmed polynomial; `None` for the zero polynomial.
pub fn degree<F: FieldOps>(f: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().rposition(|&c| !f.is_zero(c))
}

pub fn mul<F: FieldOps>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(f, out)
}

/// Remainder of `a` modulo a nonzero `b`.
pub fn rem<F: FieldOps>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let db = degree(f, b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut r = trim(f, a.to_vec());
    while let Some(dr) = degree(f, &r) {
        if dr < db {
            break;
        }
        let factor = f.mul(r[dr], lead_inv);
        let shift = dr - db;
        for (i, &c) in b[..=db].iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(factor, c));
        }
        r = trim(f, r);
    }
    r
}

pub fn mulmod<F: FieldOps>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
    modulus: &[F::Elem],
) -> Vec<F::Elem> {
    rem(f, &mul(f, a, b), modulus)
}

pub fn powmod<F: FieldOps>(
    f: &F,
    a: &[F::Elem],
    mut exp: u64,
    modulus: &[F::Elem],
) -> Vec<F::Elem> {
    let mut base = rem(f, a, modulus);
    let mut acc = rem(f, &[f.one()], modulus);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(f, &acc, &base, modulus);
        }
        base = mulmod(f, &base, &base, modulus);
        exp >>= 1;
    }
    acc
}

/// The `index`-th monic polynomial of degree `deg`: its low coefficients are
/// the base-`order` digits of `index`, least significant digit first.
pub fn monic_from_index<F: FieldOps>(f: &F, deg: usize, mut index: u64) -> Vec<F::Elem> {
    let order = f.order() as u64;
    let mut coeffs = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        coeffs.push(f.element((index % order) as u32));
        index /= order;
    }
    coeffs.push(f.one());
    coeffs
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible<F: FieldOps>(f: &F, a: &[F::Elem]) -> bool {
    let Some(deg) = degree(f, a) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    let order = f.order() as u64;
    for d in 1..=deg / 2 {
        for idx in 0..order.pow(d as u32) {
            let divisor = monic_from_index(f, d, idx);
            if degree(f, &rem(f, a, &divisor)).is_none() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `deg`, ordering candidates
/// by the integer whose base-`order` digits are the coefficients (constant
/// term least significant).
pub fn smallest_irreducible<F: FieldOps>(f: &F, deg: usize) -> Vec<F::Elem> {
    let order = f.order() as u64;
    (0..order.pow(deg as u32))
        .map(|idx| monic_from_index(f, deg, idx))
        .find(|cand| is_irreducible(f, cand))
        .expect("irreducible polynomials exist in every degree")
}
