//! Exact arithmetic in the tower GF(p) ⊂ GF(q = p^e) ⊂ GF(q^m).
//!
//! Elements are stored as integer handles whose base-`p` digits are the
//! two-level coordinates: an element of GF(q^m) is `m` coordinates over GF(q)
//! (basis `1, x, …, x^{m-1}` of the extension modulus) and each GF(q)
//! coordinate is `e` digits over GF(p). Digit `j` of coordinate `i` has weight
//! `p^(e·i + j)`.
//!
//! Moduli are chosen as the smallest monic irreducible polynomial, ordering
//! candidates by the integer spelled by their coefficients (constant term
//! least significant), so every build picks the same tower.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{is_prime, FieldOps, PrimeField};
use crate::poly;

/// Largest base field GF(q) supported; its arithmetic is fully tabulated.
pub const MAX_BASE_ORDER: u64 = 256;
/// Hard cap on q^m.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u32 = 1024;

/// Element of the base field GF(q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(pub u32);

/// Element of the top field GF(q^m).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub u32);

/// GF(q) = GF(p)[y]/(base_modulus), fully tabulated.
#[derive(Clone)]
pub struct BaseField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl fmt::Debug for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BaseField")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for BaseField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for BaseField {}

impl BaseField {
    /// GF(p^e) with the canonical modulus.
    pub fn new(p: u32, e: u32) -> Result<Self> {
        let prime = PrimeField::new(p).ok_or(Error::NonPrime(p))?;
        if e == 0 {
            return Err(Error::ZeroDegree);
        }
        check_order(p as u64, e, MAX_BASE_ORDER)?;
        let modulus = poly::smallest_irreducible(&prime, e as usize);
        Self::with_modulus(p, modulus)
    }

    /// GF(p)[y]/(modulus) for a monic irreducible `modulus` (low degree first).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let prime = PrimeField::new(p).ok_or(Error::NonPrime(p))?;
        let e = modulus.len().saturating_sub(1);
        if e == 0 {
            return Err(Error::ZeroDegree);
        }
        check_order(p as u64, e as u32, MAX_BASE_ORDER)?;
        if modulus.iter().any(|&c| c >= p)
            || modulus[e] != 1
            || !poly::is_irreducible(&prime, &modulus)
        {
            return Err(Error::InvalidModulus { degree: e });
        }
        let q = p.pow(e as u32);
        let digits = |v: u32| -> Vec<u32> {
            let mut v = v;
            (0..e)
                .map(|_| {
                    let d = v % p;
                    v /= p;
                    d
                })
                .collect()
        };
        let undigits = |ds: &[u32]| -> u32 { ds.iter().rev().fold(0, |acc, &d| acc * p + d) };

        let size = (q * q) as usize;
        let mut add = vec![0; size];
        let mut mul = vec![0; size];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| prime.add(x, y)).collect();
                add[(a * q + b) as usize] = undigits(&sum);
                let mut prod = poly::mulmod(&prime, &da, &db, &modulus);
                prod.resize(e, 0);
                mul[(a * q + b) as usize] = undigits(&prod);
            }
        }
        let neg = (0..q)
            .map(|a| undigits(&digits(a).iter().map(|&d| prime.neg(d)).collect::<Vec<_>>()))
            .collect();
        let mut inv = vec![0; q as usize];
        for a in 1..q {
            inv[a as usize] = (1..q)
                .find(|&b| mul[(a * q + b) as usize] == 1)
                .expect("nonzero elements of a field are invertible");
        }
        Ok(Self { p, e: e as u32, q, modulus, add, mul, neg, inv })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Coordinates of `s` over GF(p), lowest degree first.
    pub fn digits(&self, s: Scalar) -> Vec<u32> {
        let mut v = s.0;
        (0..self.e)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Scalar> {
        if digits.len() != self.e as usize || digits.iter().any(|&d| d >= self.p) {
            return Err(Error::Malformed(format!(
                "expected {} digits mod {}, got {:?}",
                self.e, self.p, digits
            )));
        }
        Ok(Scalar(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)))
    }

    pub fn scalar(&self, index: u32) -> Result<Scalar> {
        if index >= self.q {
            return Err(Error::InvalidElement { value: index as u64, order: self.q as u64 });
        }
        Ok(Scalar(index))
    }

    /// A square root of `a` in GF(q), if one exists (smallest index first).
    pub fn sqrt(&self, a: Scalar) -> Option<Scalar> {
        (0..self.q).map(Scalar).find(|&r| self.mul(r, r) == a)
    }

    #[inline]
    fn at(&self, a: Scalar, b: Scalar) -> usize {
        (a.0 * self.q + b.0) as usize
    }
}

impl FieldOps for BaseField {
    type Elem = Scalar;

    fn order(&self) -> u32 {
        self.q
    }

    fn element(&self, index: u32) -> Scalar {
        debug_assert!(index < self.q);
        Scalar(index)
    }

    fn index(&self, a: Scalar) -> u32 {
        a.0
    }

    #[inline]
    fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        Scalar(self.add[self.at(a, b)])
    }

    #[inline]
    fn neg(&self, a: Scalar) -> Scalar {
        Scalar(self.neg[a.0 as usize])
    }

    #[inline]
    fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        Scalar(self.mul[self.at(a, b)])
    }

    fn inv(&self, a: Scalar) -> Option<Scalar> {
        (a.0 != 0).then(|| Scalar(self.inv[a.0 as usize]))
    }
}

fn check_order(base: u64, exp: u32, cap: u64) -> Result<u64> {
    let order = (base as u128).checked_pow(exp).unwrap_or(u128::MAX);
    if order > cap as u128 {
        return Err(Error::BudgetExceeded {
            order: order.min(u64::MAX as u128) as u64,
            cap,
        });
    }
    Ok(order as u64)
}

/// Serialized form of a tower: moduli are given low degree first, the
/// extension modulus as GF(q) coefficients each spelled as `e` digits mod p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerDescriptor {
    pub p: u32,
    pub e: u32,
    pub m: u32,
    pub base_modulus: Vec<u32>,
    pub ext_modulus: Vec<Vec<u32>>,
}

/// The chain GF(p) ⊂ GF(q) ⊂ GF(q^m) with tabulated arithmetic in GF(q^m).
pub struct FieldTower {
    base: Arc<BaseField>,
    m: u32,
    order: u32,
    ext_modulus: Vec<Scalar>,
    /// Column `j` holds the coordinates of `(x^j)^q`.
    frobenius_matrix: Vec<Vec<Scalar>>,
    coords: Vec<Scalar>,
    add: Option<Vec<u16>>,
    neg: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    frob: Vec<u32>,
    trace: Vec<Scalar>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.base.p)
            .field("e", &self.base.e)
            .field("m", &self.m)
            .field("base_modulus", &self.base.modulus)
            .field("ext_modulus", &self.ext_modulus)
            .finish()
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.base == other.base && self.ext_modulus == other.ext_modulus
    }
}

impl Eq for FieldTower {}

/// Builds GF(p^e)^m with the canonical moduli.
pub fn make_tower(p: u32, e: u32, m: u32) -> Result<Arc<FieldTower>> {
    FieldTower::new(p, e, m).map(Arc::new)
}

impl FieldTower {
    pub fn new(p: u32, e: u32, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if e == 0 || m == 0 {
            return Err(Error::ZeroDegree);
        }
        check_order(p as u64, e.saturating_mul(m), MAX_FIELD_ORDER)?;
        let base = BaseField::new(p, e)?;
        let ext_modulus = poly::smallest_irreducible(&base, m as usize);
        Self::with_moduli(Arc::new(base), ext_modulus)
    }

    /// Tower over `base` with an explicit monic irreducible extension modulus.
    pub fn with_moduli(base: Arc<BaseField>, ext_modulus: Vec<Scalar>) -> Result<Self> {
        let m = ext_modulus.len().saturating_sub(1);
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = base.q;
        let order = check_order(q as u64, m as u32, MAX_FIELD_ORDER)? as u32;
        if ext_modulus.iter().any(|s| s.0 >= q)
            || ext_modulus[m] != base.one()
            || !poly::is_irreducible(&*base, &ext_modulus)
        {
            return Err(Error::InvalidModulus { degree: m });
        }

        let mut coords = Vec::with_capacity(order as usize * m);
        for v in 0..order {
            let mut v = v;
            for _ in 0..m {
                coords.push(Scalar(v % q));
                v /= q;
            }
        }
        let encode = |cs: &[Scalar]| -> u32 {
            let mut padded = cs.to_vec();
            padded.resize(m, Scalar(0));
            padded.iter().rev().fold(0, |acc, s| acc * q + s.0)
        };
        let coord_slice = |v: u32| &coords[v as usize * m..(v as usize + 1) * m];

        let digit_add = |a: u32, b: u32| -> u32 {
            let sum: Vec<Scalar> = coord_slice(a)
                .iter()
                .zip(coord_slice(b))
                .map(|(&x, &y)| base.add(x, y))
                .collect();
            encode(&sum)
        };
        let add = (order <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u16; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    t[(a * order + b) as usize] = digit_add(a, b) as u16;
                }
            }
            t
        });
        let neg = (0..order)
            .map(|a| encode(&coord_slice(a).iter().map(|&c| base.neg(c)).collect::<Vec<_>>()))
            .collect();

        // Powers of the first primitive element in index order.
        let mul_poly = |a: u32, b: u32| -> u32 {
            encode(&poly::mulmod(&*base, coord_slice(a), coord_slice(b), &ext_modulus))
        };
        let mut exp = Vec::new();
        if order == 2 {
            exp.push(1);
        } else {
            for g in 2..order {
                let mut powers = vec![1u32];
                let mut cur = g;
                while cur != 1 {
                    powers.push(cur);
                    cur = mul_poly(cur, g);
                }
                if powers.len() == (order - 1) as usize {
                    exp = powers;
                    break;
                }
            }
        }
        let mut log = vec![0u32; order as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        let cycle = exp.clone();
        exp.extend(cycle);

        // (x^j)^q = (x^q)^j reduced mod the extension modulus.
        let x_poly = poly::rem(&*base, &[base.zero(), base.one()], &ext_modulus);
        let x_q = poly::powmod(&*base, &x_poly, q as u64, &ext_modulus);
        let mut frobenius_matrix = vec![vec![Scalar(0); m]; m];
        let mut col = poly::rem(&*base, &[base.one()], &ext_modulus);
        for j in 0..m {
            let mut c = col.clone();
            c.resize(m, Scalar(0));
            for (i, &v) in c.iter().enumerate() {
                frobenius_matrix[i][j] = v;
            }
            col = poly::mulmod(&*base, &col, &x_q, &ext_modulus);
        }

        let mut tower = Self {
            base,
            m: m as u32,
            order,
            ext_modulus,
            frobenius_matrix,
            coords,
            add,
            neg,
            exp,
            log,
            frob: Vec::new(),
            trace: Vec::new(),
        };
        tower.frob = (0..order)
            .map(|v| tower.apply_frobenius_matrix(Elem(v)).0)
            .collect();
        tower.trace = (0..order)
            .map(|v| {
                let mut acc = tower.zero();
                let mut cur = Elem(v);
                for _ in 0..m {
                    acc = tower.add(acc, cur);
                    cur = Elem(tower.frob[cur.0 as usize]);
                }
                debug_assert!(tower.coords(acc)[1..].iter().all(|c| c.0 == 0));
                tower.coords(acc)[0]
            })
            .collect();
        Ok(tower)
    }

    pub fn from_descriptor(d: &TowerDescriptor) -> Result<Self> {
        let base = BaseField::with_modulus(d.p, d.base_modulus.clone())?;
        if base.e != d.e {
            return Err(Error::Malformed("base modulus degree does not match e".into()));
        }
        let ext = d
            .ext_modulus
            .iter()
            .map(|c| base.from_digits(c))
            .collect::<Result<Vec<_>>>()?;
        if ext.len() != d.m as usize + 1 {
            return Err(Error::Malformed("extension modulus degree does not match m".into()));
        }
        Self::with_moduli(Arc::new(base), ext)
    }

    pub fn descriptor(&self) -> TowerDescriptor {
        TowerDescriptor {
            p: self.base.p,
            e: self.base.e,
            m: self.m,
            base_modulus: self.base.modulus.clone(),
            ext_modulus: self.ext_modulus.iter().map(|&c| self.base.digits(c)).collect(),
        }
    }

    pub fn base(&self) -> &Arc<BaseField> {
        &self.base
    }

    pub fn p(&self) -> u32 {
        self.base.p
    }

    pub fn e(&self) -> u32 {
        self.base.e
    }

    pub fn q(&self) -> u32 {
        self.base.q
    }

    pub fn m(&self) -> usize {
        self.m as usize
    }

    pub fn ext_modulus(&self) -> &[Scalar] {
        &self.ext_modulus
    }

    pub fn frobenius_matrix(&self) -> &[Vec<Scalar>] {
        &self.frobenius_matrix
    }

    pub fn elem(&self, index: u32) -> Result<Elem> {
        if index >= self.order {
            return Err(Error::InvalidElement { value: index as u64, order: self.order as u64 });
        }
        Ok(Elem(index))
    }

    /// Coordinates over GF(q) in the basis `1, x, …, x^{m-1}`.
    #[inline]
    pub fn coords(&self, a: Elem) -> &[Scalar] {
        let m = self.m as usize;
        &self.coords[a.0 as usize * m..(a.0 as usize + 1) * m]
    }

    pub fn from_coords(&self, coords: &[Scalar]) -> Result<Elem> {
        if coords.len() != self.m() || coords.iter().any(|c| c.0 >= self.q()) {
            return Err(Error::Malformed(format!(
                "expected {} coordinates in GF({})",
                self.m,
                self.q()
            )));
        }
        Ok(Elem(coords.iter().rev().fold(0, |acc, s| acc * self.q() + s.0)))
    }

    /// The image of a base-field scalar in GF(q^m).
    #[inline]
    pub fn embed(&self, s: Scalar) -> Elem {
        Elem(s.0)
    }

    /// `Some(s)` when `a` lies in the subfield GF(q).
    pub fn as_base(&self, a: Elem) -> Option<Scalar> {
        (a.0 < self.q()).then_some(Scalar(a.0))
    }

    /// `a^{q^i}`; `i` is reduced modulo `m`.
    pub fn frobenius(&self, a: Elem, i: i64) -> Elem {
        let steps = i.rem_euclid(self.m as i64);
        (0..steps).fold(a, |acc, _| Elem(self.frob[acc.0 as usize]))
    }

    /// One application of the stored Frobenius matrix to the coordinates of `a`.
    pub fn apply_frobenius_matrix(&self, a: Elem) -> Elem {
        let c = self.coords(a);
        let out: Vec<Scalar> = self
            .frobenius_matrix
            .iter()
            .map(|row| self.base.dot(row, c))
            .collect();
        self.from_coords(&out).expect("matrix output is a valid coordinate vector")
    }

    /// Relative trace `a + a^q + … + a^{q^{m-1}}`, which lies in GF(q).
    #[inline]
    pub fn trace(&self, a: Elem) -> Scalar {
        self.trace[a.0 as usize]
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, inv))
    }

    pub fn elem_to_json(&self, a: Elem) -> Vec<Vec<u32>> {
        self.coords(a).iter().map(|&c| self.base.digits(c)).collect()
    }

    pub fn elem_from_json(&self, v: &[Vec<u32>]) -> Result<Elem> {
        let coords = v
            .iter()
            .map(|c| self.base.from_digits(c))
            .collect::<Result<Vec<_>>>()?;
        self.from_coords(&coords)
    }

    /// Human-readable polynomial in `x` with GF(q) coefficients.
    pub fn format(&self, a: Elem) -> String {
        let terms: Vec<String> = self
            .coords(a)
            .iter()
            .enumerate()
            .filter(|(_, c)| c.0 != 0)
            .map(|(i, c)| {
                let coef = if self.e() == 1 {
                    c.0.to_string()
                } else {
                    format!("({})", c.0)
                };
                match (i, c.0) {
                    (0, _) => coef,
                    (1, 1) => "x".to_string(),
                    (1, _) => format!("{coef}x"),
                    (_, 1) => format!("x^{i}"),
                    _ => format!("{coef}x^{i}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl FieldOps for FieldTower {
    type Elem = Elem;

    fn order(&self) -> u32 {
        self.order
    }

    fn element(&self, index: u32) -> Elem {
        debug_assert!(index < self.order);
        Elem(index)
    }

    fn index(&self, a: Elem) -> u32 {
        a.0
    }

    #[inline]
    fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.base.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if let Some(t) = &self.add {
            return Elem(t[(a.0 * self.order + b.0) as usize] as u32);
        }
        let (ca, cb) = (self.coords(a), self.coords(b));
        let mut acc = 0u32;
        for i in (0..self.m as usize).rev() {
            acc = acc * self.base.q + self.base.add(ca[i], cb[i]).0;
        }
        Elem(acc)
    }

    #[inline]
    fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize])
    }

    #[inline]
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem(0);
        }
        let i = self.log[a.0 as usize] + self.log[b.0 as usize];
        Elem(self.exp[i as usize])
    }

    fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let n = self.order - 1;
        Some(Elem(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }
}

/// An element bundled with its tower, with arithmetic that rejects operands
/// from different towers.
#[derive(Clone)]
pub struct FieldElement {
    tower: Arc<FieldTower>,
    value: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tower.format(self.value))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && same_tower(&self.tower, &other.tower)
    }
}

pub(crate) fn same_tower(a: &Arc<FieldTower>, b: &Arc<FieldTower>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FieldElement {
    pub fn new(tower: &Arc<FieldTower>, value: Elem) -> Result<Self> {
        tower.elem(value.0)?;
        Ok(Self { tower: tower.clone(), value })
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    fn binary(&self, other: &Self, op: impl Fn(&FieldTower, Elem, Elem) -> Result<Elem>) -> Result<Self> {
        if !same_tower(&self.tower, &other.tower) {
            return Err(Error::TowerMismatch);
        }
        Ok(Self {
            tower: self.tower.clone(),
            value: op(&self.tower, self.value, other.value)?,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.binary(other, |t, a, b| Ok(t.add(a, b)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, |t, a, b| Ok(t.sub(a, b)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, |t, a, b| Ok(t.mul(a, b)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.binary(other, |t, a, b| t.div(a, b))
    }

    pub fn frobenius(&self, i: i64) -> Self {
        Self { tower: self.tower.clone(), value: self.tower.frobenius(self.value, i) }
    }

    pub fn trace(&self) -> Scalar {
        self.tower.trace(self.value)
    }
}
