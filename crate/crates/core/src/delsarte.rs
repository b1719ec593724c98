//! Matrix codes: GF(q)-linear subspaces of `n × m` matrices over GF(q) under
//! the rank metric.
//!
//! A code is stored as the reduced row-echelon basis of the row-major
//! vectorizations of its matrices. The trace inner product `Tra(A·Bᵀ)` equals
//! the dot product of those vectorizations, so duals are plain null spaces.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{is_prime, FieldOps};
use crate::finite_field::{BaseField, Scalar};
use crate::linalg::{self, Matrix};

/// Default cap on the number of codewords any enumeration may visit.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 20;

#[derive(Clone)]
pub struct MatrixCode {
    field: Arc<BaseField>,
    n: usize,
    m: usize,
    basis: Matrix<Scalar>,
}

impl fmt::Debug for MatrixCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixCode")
            .field("q", &self.field.q())
            .field("n", &self.n)
            .field("m", &self.m)
            .field("dim", &self.basis.len())
            .finish()
    }
}

impl PartialEq for MatrixCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.m == other.m && self.field == other.field && self.basis == other.basis
    }
}

impl Eq for MatrixCode {}

impl MatrixCode {
    /// Span of the given `n × m` matrices.
    pub fn new(field: &Arc<BaseField>, n: usize, m: usize, generators: &[Matrix<Scalar>]) -> Result<Self> {
        let mut rows = Vec::with_capacity(generators.len());
        for g in generators {
            check_shape(g, n, m)?;
            rows.push(vectorize(g));
        }
        Self::from_vectors(field, n, m, rows)
    }

    /// Span of row-major vectorizations of length `n·m`.
    pub fn from_vectors(field: &Arc<BaseField>, n: usize, m: usize, rows: Matrix<Scalar>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != n * m) {
            return Err(Error::BadDimension(format!(
                "vectorized {n}×{m} matrices have length {}, got {}",
                n * m,
                bad.len()
            )));
        }
        if rows.iter().flatten().any(|s| s.0 >= field.q()) {
            return Err(Error::InvalidElement { value: field.q() as u64, order: field.q() as u64 });
        }
        let basis = linalg::row_space(&**field, &rows);
        Ok(Self { field: field.clone(), n, m, basis })
    }

    pub fn zero(field: &Arc<BaseField>, n: usize, m: usize) -> Self {
        Self { field: field.clone(), n, m, basis: Vec::new() }
    }

    pub fn full(field: &Arc<BaseField>, n: usize, m: usize) -> Self {
        Self { field: field.clone(), n, m, basis: linalg::identity(&**field, n * m) }
    }

    pub fn field(&self) -> &Arc<BaseField> {
        &self.field
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical basis as row-major vectorizations.
    pub fn basis_vectors(&self) -> &Matrix<Scalar> {
        &self.basis
    }

    /// Canonical basis as matrices.
    pub fn generators(&self) -> Vec<Matrix<Scalar>> {
        self.basis.iter().map(|v| unvectorize(v, self.n, self.m)).collect()
    }

    pub fn contains(&self, a: &[Vec<Scalar>]) -> Result<bool> {
        check_shape(a, self.n, self.m)?;
        Ok(linalg::contains(&*self.field, &self.basis, &vectorize(a)))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch { expected: self.shape(), found: other.shape() });
        }
        if self.field != other.field {
            return Err(Error::TowerMismatch);
        }
        Ok(())
    }

    /// `{B : ⟨A, B⟩ = 0 for all A ∈ C}`.
    pub fn dual(&self) -> Self {
        let basis = linalg::null_space(&*self.field, &self.basis, self.n * self.m);
        Self { field: self.field.clone(), n: self.n, m: self.m, basis }
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let basis = linalg::intersection(&*self.field, &self.basis, &other.basis, self.n * self.m);
        Ok(Self { field: self.field.clone(), n: self.n, m: self.m, basis })
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let basis = linalg::sum(&*self.field, &self.basis, &other.basis);
        Ok(Self { field: self.field.clone(), n: self.n, m: self.m, basis })
    }

    /// `C ∩ C^⊥`.
    pub fn hull(&self) -> Self {
        self.intersect(&self.dual()).expect("a code and its dual share a shape")
    }

    pub fn is_lcd(&self) -> bool {
        self.hull().is_zero()
    }

    /// Number of codewords, or `EnumerationTooLarge` if above `cap`.
    pub fn enumeration_size(&self, cap: u64) -> Result<u64> {
        enumeration_size(self.field.q(), self.dim(), cap)
    }

    /// Rank → number of codewords, by full enumeration.
    pub fn rank_distribution(&self, cap: u64) -> Result<BTreeMap<usize, u64>> {
        self.enumeration_size(cap)?;
        let f = &*self.field;
        let mut counts = BTreeMap::new();
        let mut scratch = vec![vec![Scalar(0); self.m]; self.n];
        linalg::for_each_combination(f, &self.basis, self.n * self.m, |v| {
            let r = rank_of_vectorized(f, v, self.m, &mut scratch);
            *counts.entry(r).or_insert(0) += 1;
        });
        Ok(counts)
    }

    pub fn rank_range(&self, cap: u64) -> Result<RankRange> {
        let counts = self.rank_distribution(cap)?;
        Ok(RankRange::from_counts(&counts))
    }

    pub fn to_json(&self) -> MatrixCodeJson {
        MatrixCodeJson {
            n: self.n,
            m: self.m,
            q: self.field.q(),
            generators: self
                .generators()
                .iter()
                .map(|g| g.iter().map(|row| row.iter().map(|&s| scalar_json(&self.field, s)).collect()).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &MatrixCodeJson) -> Result<Self> {
        let field = Arc::new(base_field_of_order(j.q)?);
        let gens = j
            .generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|row| row.iter().map(|v| scalar_from_json(&field, v)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Matrix<Scalar>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&field, j.n, j.m, &gens)
    }
}

/// Minimum and maximum rank over a code. `min_rank` counts nonzero codewords
/// only and is reported as 0 (with `has_nonzero = false`) for the zero code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRange {
    pub min_rank: usize,
    pub max_rank: usize,
    pub has_nonzero: bool,
}

impl RankRange {
    pub fn from_counts(counts: &BTreeMap<usize, u64>) -> Self {
        let nonzero = counts.keys().copied().filter(|&r| r > 0);
        let min_rank = nonzero.clone().min().unwrap_or(0);
        let max_rank = counts.keys().copied().max().unwrap_or(0);
        Self { min_rank, max_rank, has_nonzero: max_rank > 0 }
    }
}

pub fn enumeration_size(q: u32, dim: usize, cap: u64) -> Result<u64> {
    let size = (q as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::EnumerationTooLarge { size, cap });
    }
    Ok(size as u64)
}

/// `max{n,m} · (min{n,m} − d + 1)`: the largest dimension a code with
/// minimum rank `d` can have.
pub fn singleton_like_bound(n: usize, m: usize, d: usize) -> usize {
    n.max(m) * (n.min(m) + 1).saturating_sub(d)
}

/// Whether the code meets `dim = max{n,m}·(min{n,m} − d_r + 1)`.
pub fn is_mrd_delsarte(c: &MatrixCode, cap: u64) -> Result<bool> {
    if c.is_zero() {
        return Err(Error::ZeroCode);
    }
    let range = c.rank_range(cap)?;
    Ok(c.dim() == singleton_like_bound(c.n, c.m, range.min_rank))
}

/// Whether the code meets `dim = max{n,m}·maxrk`.
pub fn is_optimal_anticode(c: &MatrixCode, cap: u64) -> Result<bool> {
    let range = c.rank_range(cap)?;
    Ok(c.dim() == c.n.max(c.m) * range.max_rank)
}

/// `minrk(C) > min{n,m} − maxrk(C)` for a nonzero optimal anticode. A `true`
/// result implies the code is LCD; `false` decides nothing.
pub fn lcd_anticode_criterion(c: &MatrixCode, cap: u64) -> Result<bool> {
    if c.is_zero() {
        return Err(Error::ZeroCode);
    }
    let range = c.rank_range(cap)?;
    if c.dim() != c.n.max(c.m) * range.max_rank {
        return Err(Error::NotOptimalAnticode);
    }
    Ok(range.min_rank + range.max_rank > c.n.min(c.m))
}

/// `⟨A, B⟩ = Tra(A·Bᵀ)`.
pub fn trace_inner_product(field: &BaseField, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<Scalar> {
    let (n, m) = (a.len(), a.first().map_or(0, Vec::len));
    check_shape(a, n, m)?;
    check_shape(b, n, m)?;
    let prod = linalg::mat_mul(field, a, &linalg::transpose(b));
    Ok((0..n).fold(Scalar(0), |acc, i| field.add(acc, prod[i][i])))
}

/// Rank over GF(q) of an `n × m` matrix.
pub fn matrix_rank(field: &BaseField, a: &[Vec<Scalar>]) -> usize {
    linalg::rank(field, a)
}

pub fn vectorize(a: &[Vec<Scalar>]) -> Vec<Scalar> {
    a.iter().flatten().copied().collect()
}

pub fn unvectorize(v: &[Scalar], n: usize, m: usize) -> Matrix<Scalar> {
    debug_assert_eq!(v.len(), n * m);
    v.chunks(m).map(<[Scalar]>::to_vec).collect()
}

fn rank_of_vectorized(f: &BaseField, v: &[Scalar], m: usize, scratch: &mut [Vec<Scalar>]) -> usize {
    for (row, chunk) in scratch.iter_mut().zip(v.chunks(m)) {
        row.copy_from_slice(chunk);
    }
    linalg::rank_in_place(f, scratch)
}

fn check_shape(a: &[Vec<Scalar>], n: usize, m: usize) -> Result<()> {
    let found = (a.len(), a.first().map_or(0, Vec::len));
    if a.len() != n || a.iter().any(|r| r.len() != m) {
        return Err(Error::ShapeMismatch { expected: (n, m), found });
    }
    Ok(())
}

/// A subspace of GF(q)^n in canonical (RREF) form.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Arc<BaseField>,
    n: usize,
    basis: Matrix<Scalar>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<u32>> = self.basis.iter().map(|r| r.iter().map(|s| s.0).collect()).collect();
        write!(f, "Subspace(n={}, {:?})", self.n, rows)
    }
}

impl Subspace {
    pub fn new(field: &Arc<BaseField>, n: usize, vectors: Matrix<Scalar>) -> Result<Self> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::AmbientMismatch(n, bad.len()));
        }
        if vectors.iter().flatten().any(|s| s.0 >= field.q()) {
            return Err(Error::InvalidElement { value: field.q() as u64, order: field.q() as u64 });
        }
        Ok(Self { field: field.clone(), n, basis: linalg::row_space(&**field, &vectors) })
    }

    pub fn zero(field: &Arc<BaseField>, n: usize) -> Self {
        Self { field: field.clone(), n, basis: Vec::new() }
    }

    pub fn full(field: &Arc<BaseField>, n: usize) -> Self {
        Self { field: field.clone(), n, basis: linalg::identity(&**field, n) }
    }

    pub fn field(&self) -> &Arc<BaseField> {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Matrix<Scalar> {
        &self.basis
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        if self.field != other.field {
            return Err(Error::TowerMismatch);
        }
        Ok(())
    }

    /// Euclidean dual.
    pub fn dual(&self) -> Self {
        Self {
            field: self.field.clone(),
            n: self.n,
            basis: linalg::null_space(&*self.field, &self.basis, self.n),
        }
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { field: self.field.clone(), n: self.n, basis: linalg::sum(&*self.field, &self.basis, &other.basis) })
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            field: self.field.clone(),
            n: self.n,
            basis: linalg::intersection(&*self.field, &self.basis, &other.basis, self.n),
        })
    }

    /// `U ∩ U^⊥ = {0}`.
    pub fn is_lcd(&self) -> bool {
        self.intersection(&self.dual()).expect("same ambient").dim() == 0
    }

    pub fn to_json(&self) -> SubspaceJson {
        SubspaceJson {
            n: self.n,
            q: self.field.q(),
            basis: self
                .basis
                .iter()
                .map(|r| r.iter().map(|&s| scalar_json(&self.field, s)).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &SubspaceJson) -> Result<Self> {
        let field = Arc::new(base_field_of_order(j.q)?);
        let vectors = j
            .basis
            .iter()
            .map(|r| r.iter().map(|v| scalar_from_json(&field, v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Matrix<Scalar>>>()?;
        Self::new(&field, j.n, vectors)
    }
}

/// `F_q^{n×m}(U)`: all `n × m` matrices whose column space lies in `U`.
pub fn ambient_restriction(u: &Subspace, m: usize) -> MatrixCode {
    let n = u.n;
    let rows = u
        .basis
        .iter()
        .flat_map(|b| {
            (0..m).map(move |j| {
                let mut v = vec![Scalar(0); n * m];
                for (i, &x) in b.iter().enumerate() {
                    v[i * m + j] = x;
                }
                v
            })
        })
        .collect();
    MatrixCode::from_vectors(&u.field, n, m, rows).expect("shapes are consistent")
}

/// Every subspace of GF(q)^n, ordered by dimension, then pivot set, then
/// free entries.
pub fn all_subspaces(field: &Arc<BaseField>, n: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &pc)| (pc + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            let q = field.q() as u64;
            let total = q.pow(free.len() as u32);
            for mut idx in 0..total {
                let mut rows = vec![vec![Scalar(0); n]; k];
                for (r, &pc) in pivots.iter().enumerate() {
                    rows[r][pc] = Scalar(1);
                }
                for &(r, c) in &free {
                    rows[r][c] = Scalar((idx % q) as u32);
                    idx /= q;
                }
                out.push(Subspace { field: field.clone(), n, basis: rows });
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every matrix code in GF(q)^{n×m}.
pub fn all_matrix_codes(field: &Arc<BaseField>, n: usize, m: usize) -> Vec<MatrixCode> {
    all_subspaces(field, n * m)
        .into_iter()
        .map(|s| MatrixCode { field: field.clone(), n, m, basis: s.basis })
        .collect()
}

/// Serialized matrix code. Entries are integers mod p when `q` is prime and
/// arrays of `e` digits mod p otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixCodeJson {
    pub n: usize,
    pub m: usize,
    pub q: u32,
    pub generators: Vec<Vec<Vec<Value>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub n: usize,
    pub q: u32,
    pub basis: Vec<Vec<Value>>,
}

pub fn scalar_json(field: &BaseField, s: Scalar) -> Value {
    if field.degree() == 1 {
        Value::from(s.0)
    } else {
        Value::from(field.digits(s))
    }
}

pub fn scalar_from_json(field: &BaseField, v: &Value) -> Result<Scalar> {
    let bad = || Error::Malformed(format!("bad GF({}) entry {v}", field.q()));
    match v {
        Value::Number(n) if field.degree() == 1 => {
            let x = n.as_u64().ok_or_else(bad)?;
            if x >= field.q() as u64 {
                return Err(bad());
            }
            Ok(Scalar(x as u32))
        }
        Value::Array(ds) => {
            let digits = ds
                .iter()
                .map(|d| d.as_u64().map(|x| x as u32).ok_or_else(bad))
                .collect::<Result<Vec<_>>>()?;
            field.from_digits(&digits)
        }
        _ => Err(bad()),
    }
}

/// GF(q) with the canonical modulus, recovering `p` and `e` from `q`.
pub fn base_field_of_order(q: u32) -> Result<BaseField> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or(Error::NonPrime(q))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 || !is_prime(p) {
        return Err(Error::NonPrime(q));
    }
    BaseField::new(p, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Arc<BaseField> {
        Arc::new(base_field_of_order(q).unwrap())
    }

    fn mat(rows: &[&[u32]]) -> Matrix<Scalar> {
        rows.iter().map(|r| r.iter().map(|&x| Scalar(x)).collect()).collect()
    }

    fn e(i: usize, j: usize) -> Matrix<Scalar> {
        let mut a = vec![vec![Scalar(0); 2]; 2];
        a[i][j] = Scalar(1);
        a
    }

    #[test]
    fn trace_inner_product_examples() {
        let f = gf(2);
        let i2 = mat(&[&[1, 0], &[0, 1]]);
        assert_eq!(trace_inner_product(&f, &i2, &mat(&[&[0, 0], &[0, 0]])).unwrap(), Scalar(0));
        assert_eq!(trace_inner_product(&f, &i2, &i2).unwrap(), Scalar(0));
        assert_eq!(trace_inner_product(&f, &i2, &e(0, 0)).unwrap(), Scalar(1));
        assert!(matches!(
            trace_inner_product(&f, &i2, &mat(&[&[1, 0, 0], &[0, 1, 0]])),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn dual_examples() {
        let f = gf(2);
        assert_eq!(MatrixCode::zero(&f, 2, 2).dual(), MatrixCode::full(&f, 2, 2));
        assert_eq!(MatrixCode::full(&f, 2, 2).dual(), MatrixCode::zero(&f, 2, 2));
        let c = MatrixCode::new(&f, 2, 2, &[e(0, 0)]).unwrap();
        let expected = MatrixCode::new(&f, 2, 2, &[e(0, 1), e(1, 0), e(1, 1)]).unwrap();
        assert_eq!(c.dual(), expected);
        assert_eq!(c.dual().dual(), c);
    }

    #[test]
    fn intersection_and_lcd() {
        let f = gf(2);
        let c = MatrixCode::new(&f, 2, 2, &[e(0, 0)]).unwrap();
        assert_eq!(c.intersect(&c).unwrap(), c);
        assert!(c.intersect(&c.dual()).unwrap().is_zero());
        assert!(c.intersect(&MatrixCode::zero(&f, 2, 2)).unwrap().is_zero());
        assert!(c.is_lcd());
        assert!(MatrixCode::full(&f, 2, 2).is_lcd());
        assert!(MatrixCode::zero(&f, 2, 2).is_lcd());
        let iso = MatrixCode::new(&f, 2, 2, &[mat(&[&[1, 1], &[0, 0]])]).unwrap();
        assert!(!iso.is_lcd());
        let other = MatrixCode::zero(&f, 2, 3);
        assert!(matches!(c.intersect(&other), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn rank_range_examples() {
        let f = gf(2);
        let zero = MatrixCode::zero(&f, 2, 2).rank_range(DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(zero, RankRange { min_rank: 0, max_rank: 0, has_nonzero: false });
        let c = MatrixCode::new(&f, 2, 2, &[e(0, 0)]).unwrap();
        assert_eq!(c.rank_range(DEFAULT_ENUM_CAP).unwrap(), RankRange { min_rank: 1, max_rank: 1, has_nonzero: true });
        let d = MatrixCode::new(&f, 2, 2, &[e(0, 0), e(1, 1)]).unwrap();
        assert_eq!(d.rank_range(DEFAULT_ENUM_CAP).unwrap(), RankRange { min_rank: 1, max_rank: 2, has_nonzero: true });
        assert!(matches!(
            MatrixCode::full(&gf(3), 3, 3).rank_range(1000),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn bound_predicates() {
        let f = gf(2);
        let cap = DEFAULT_ENUM_CAP;
        let full = MatrixCode::full(&f, 2, 2);
        assert!(is_mrd_delsarte(&full, cap).unwrap());
        assert!(is_optimal_anticode(&full, cap).unwrap());
        assert!(lcd_anticode_criterion(&full, cap).unwrap());
        let c = MatrixCode::new(&f, 2, 2, &[e(0, 0)]).unwrap();
        assert!(!is_mrd_delsarte(&c, cap).unwrap());
        let id = MatrixCode::new(&f, 2, 2, &[mat(&[&[1, 0], &[0, 1]])]).unwrap();
        assert!(!is_optimal_anticode(&id, cap).unwrap());
        assert_eq!(lcd_anticode_criterion(&id, cap).unwrap_err(), Error::NotOptimalAnticode);
        assert_eq!(is_mrd_delsarte(&MatrixCode::zero(&f, 2, 2), cap).unwrap_err(), Error::ZeroCode);
        let row = MatrixCode::full(&f, 1, 3);
        assert!(lcd_anticode_criterion(&row, cap).unwrap());
    }

    #[test]
    fn ambient_restriction_examples() {
        let f = gf(2);
        let u = Subspace::new(&f, 2, mat(&[&[1, 0]])).unwrap();
        let c = ambient_restriction(&u, 2);
        assert_eq!(c, MatrixCode::new(&f, 2, 2, &[e(0, 0), e(0, 1)]).unwrap());
        assert_eq!(c.rank_range(DEFAULT_ENUM_CAP).unwrap().max_rank, 1);
        assert!(is_optimal_anticode(&c, DEFAULT_ENUM_CAP).unwrap());
        assert!(!lcd_anticode_criterion(&c, DEFAULT_ENUM_CAP).unwrap());
        assert!(c.is_lcd());
        assert!(ambient_restriction(&Subspace::zero(&f, 2), 3).is_zero());
        assert_eq!(ambient_restriction(&Subspace::full(&f, 2), 3), MatrixCode::full(&f, 2, 3));
    }

    #[test]
    fn subspace_examples() {
        let f = gf(2);
        let u = Subspace::new(&f, 2, mat(&[&[1, 0]])).unwrap();
        assert_eq!(u.dual(), Subspace::new(&f, 2, mat(&[&[0, 1]])).unwrap());
        assert!(u.is_lcd());
        assert_eq!(u.sum(&u.dual()).unwrap(), Subspace::full(&f, 2));
        let v = Subspace::new(&f, 2, mat(&[&[1, 1]])).unwrap();
        assert_eq!(v.dual(), v);
        assert!(!v.is_lcd());
        let w = Subspace::zero(&f, 3);
        assert_eq!(u.sum(&w).unwrap_err(), Error::AmbientMismatch(2, 3));
    }

    #[test]
    fn subspace_counts() {
        // Gaussian binomial sums: GF(2)^3 has 16 subspaces, GF(3)^2 has 6,
        // GF(2)^4 has 67.
        assert_eq!(all_subspaces(&gf(2), 3).len(), 16);
        assert_eq!(all_subspaces(&gf(3), 2).len(), 6);
        assert_eq!(all_subspaces(&gf(2), 4).len(), 67);
        let subs = all_subspaces(&gf(2), 3);
        let distinct: std::collections::BTreeSet<String> = subs.iter().map(|s| format!("{s:?}")).collect();
        assert_eq!(distinct.len(), subs.len());
    }

    #[test]
    fn json_round_trip() {
        let f = gf(4);
        let c = MatrixCode::new(&f, 2, 2, &[mat(&[&[1, 2], &[3, 0]])]).unwrap();
        let j = c.to_json();
        assert_eq!(serde_json::to_value(&j).unwrap()["generators"][0][0][1], serde_json::json!([0, 1]));
        assert_eq!(MatrixCode::from_json(&j).unwrap(), c);
        let g2 = gf(2);
        let s = Subspace::new(&g2, 3, mat(&[&[1, 1, 0]])).unwrap();
        assert_eq!(serde_json::to_string(&s.to_json()).unwrap(), r#"{"n":3,"q":2,"basis":[[1,1,0]]}"#);
        assert_eq!(Subspace::from_json(&s.to_json()).unwrap(), s);
        assert!(base_field_of_order(6).is_err());
    }
}
