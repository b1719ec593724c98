//! The arithmetic interface shared by every field in the tower.
//!
//! Linear algebra and polynomial routines are written once against
//! [`FieldOps`] and reused for GF(p), GF(q) and GF(q^m).

use std::fmt::Debug;
use std::hash::Hash;

/// Arithmetic on a finite field whose elements are small copyable handles.
///
/// Elements are indexed `0..order()`; index 0 is the zero element and
/// index 1 is the unit. [`FieldOps::element`] and [`FieldOps::index`] convert
/// between a handle and its index, which fixes a canonical enumeration order.
pub trait FieldOps {
    type Elem: Copy + Eq + Ord + Hash + Debug;

    fn order(&self) -> u32;
    fn element(&self, index: u32) -> Self::Elem;
    fn index(&self, a: Self::Elem) -> u32;

    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;

    fn zero(&self) -> Self::Elem {
        self.element(0)
    }

    fn one(&self) -> Self::Elem {
        self.element(1)
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_> {
        Box::new((0..self.order()).map(move |i| self.element(i)))
    }

    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        a.iter()
            .zip(b)
            .fold(self.zero(), |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    fn pow(&self, a: Self::Elem, mut exp: u64) -> Self::Elem {
        let mut base = a;
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// GF(p) with plain modular arithmetic. Only used to bootstrap the base field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Option<Self> {
        is_prime(p).then_some(Self { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }
}

impl FieldOps for PrimeField {
    type Elem = u32;

    fn order(&self) -> u32 {
        self.p
    }

    fn element(&self, index: u32) -> u32 {
        debug_assert!(index < self.p);
        index
    }

    fn index(&self, a: u32) -> u32 {
        a
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        Some(self.pow(a, self.p as u64 - 2))
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
