//! Vector codes over GF(q^m) under the rank metric.
//!
//! The rank of a vector is the GF(q)-dimension of the span of its
//! coordinates. Gabidulin codes are generated by Moore matrices; every other
//! operation here works for arbitrary linear codes over GF(q^m).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::basis::{expand_vector, ExtensionBasis};
use crate::delsarte::{enumeration_size, vectorize, MatrixCode};
use crate::error::{Error, Result};
use crate::field::FieldOps;
use crate::finite_field::{same_tower, Elem, FieldTower, Scalar, TowerDescriptor};
use crate::linalg::{self, Matrix};

/// A linear code in GF(q^m)^n given by a full-rank generator matrix. The zero
/// code has no generator rows.
#[derive(Clone)]
pub struct VectorCode {
    tower: Arc<FieldTower>,
    n: usize,
    generator: Matrix<Elem>,
}

impl fmt::Debug for VectorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .generator
            .iter()
            .map(|r| r.iter().map(|&a| self.tower.format(a)).collect())
            .collect();
        f.debug_struct("VectorCode").field("n", &self.n).field("generator", &rows).finish()
    }
}

impl VectorCode {
    pub fn new(tower: &Arc<FieldTower>, generator: Matrix<Elem>) -> Result<Self> {
        let n = generator.first().map_or(0, Vec::len);
        if generator.is_empty() || n == 0 {
            return Err(Error::BadDimension("generator needs at least one nonempty row".into()));
        }
        if generator.iter().any(|r| r.len() != n) {
            return Err(Error::BadDimension("generator rows differ in length".into()));
        }
        for &a in generator.iter().flatten() {
            tower.elem(a.0)?;
        }
        if linalg::rank(&**tower, &generator) != generator.len() {
            return Err(Error::RankDeficient);
        }
        Ok(Self { tower: tower.clone(), n, generator })
    }

    /// The zero code of length `n`.
    pub fn zero(tower: &Arc<FieldTower>, n: usize) -> Self {
        Self { tower: tower.clone(), n, generator: Vec::new() }
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    pub fn is_zero(&self) -> bool {
        self.generator.is_empty()
    }

    pub fn generator(&self) -> &Matrix<Elem> {
        &self.generator
    }

    /// Reduced row-echelon generator; equal codes have equal canonical forms.
    pub fn canonical(&self) -> Matrix<Elem> {
        linalg::row_space(&*self.tower, &self.generator)
    }

    pub fn same_code(&self, other: &Self) -> bool {
        self.n == other.n && same_tower(&self.tower, &other.tower) && self.canonical() == other.canonical()
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        v.len() == self.n && linalg::contains(&*self.tower, &self.generator, v)
    }

    pub fn to_json(&self) -> VectorCodeJson {
        VectorCodeJson {
            tower: self.tower.descriptor(),
            n: self.n,
            generator: self
                .generator
                .iter()
                .map(|r| r.iter().map(|&a| self.tower.elem_to_json(a)).collect())
                .collect(),
        }
    }

    /// Rebuilds a code; `tower` is reused when it matches the descriptor.
    pub fn from_json(j: &VectorCodeJson, tower: Option<&Arc<FieldTower>>) -> Result<Self> {
        let tower = match tower {
            Some(t) if t.descriptor() == j.tower => t.clone(),
            _ => Arc::new(FieldTower::from_descriptor(&j.tower)?),
        };
        let generator = j
            .generator
            .iter()
            .map(|r| r.iter().map(|e| tower.elem_from_json(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Matrix<Elem>>>()?;
        if generator.is_empty() {
            return Ok(Self::zero(&tower, j.n));
        }
        let code = Self::new(&tower, generator)?;
        if code.n != j.n {
            return Err(Error::BadDimension(format!("declared length {} but rows have {}", j.n, code.n)));
        }
        Ok(code)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorCodeJson {
    pub tower: TowerDescriptor,
    pub n: usize,
    pub generator: Vec<Vec<Vec<Vec<u32>>>>,
}

/// Number of codewords of each rank. `min_rank` is 0 for the zero code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankProfile {
    pub min_rank: usize,
    pub counts: BTreeMap<usize, u64>,
}

/// `M_k(g)`: row `i` is `(g_1^{[i]}, …, g_n^{[i]})` for `i < k`.
pub fn moore_matrix(tower: &Arc<FieldTower>, g: &[Elem], k: usize) -> Result<Matrix<Elem>> {
    let n = g.len();
    if k == 0 || k > n {
        return Err(Error::BadDimension(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    if n > tower.m() {
        return Err(Error::BadDimension(format!("length {n} exceeds extension degree {}", tower.m())));
    }
    for &a in g {
        tower.elem(a.0)?;
    }
    if vector_rank(tower, g) != n {
        return Err(Error::DependentGenerators);
    }
    Ok((0..k)
        .map(|i| g.iter().map(|&a| tower.frobenius(a, i as i64)).collect())
        .collect())
}

/// The code generated by `M_k(g)`; an `[n, k, n − k + 1]` MRD code.
pub fn gabidulin_code(tower: &Arc<FieldTower>, g: &[Elem], k: usize) -> Result<VectorCode> {
    let generator = moore_matrix(tower, g, k)?;
    VectorCode::new(tower, generator)
}

/// GF(q)-dimension of the span of the coordinates of `v`.
pub fn vector_rank(tower: &FieldTower, v: &[Elem]) -> usize {
    let mut rows: Matrix<Scalar> = v.iter().map(|&a| tower.coords(a).to_vec()).collect();
    linalg::rank_in_place(&**tower.base(), &mut rows)
}

pub fn singleton_bound(n: usize, k: usize) -> usize {
    n + 1 - k
}

/// Rank distribution by enumerating all `(q^m)^k` codewords.
pub fn rank_profile(c: &VectorCode, cap: u64) -> Result<RankProfile> {
    let t = &*c.tower;
    enumeration_size(t.order(), c.dimension(), cap)?;
    let base = &**t.base();
    let mut counts = BTreeMap::new();
    let mut scratch = vec![vec![Scalar(0); t.m()]; c.n];
    linalg::for_each_combination(t, &c.generator, c.n, |word| {
        for (row, &a) in scratch.iter_mut().zip(word) {
            row.copy_from_slice(t.coords(a));
        }
        let r = linalg::rank_in_place(base, &mut scratch);
        *counts.entry(r).or_insert(0u64) += 1;
    });
    let min_rank = counts.keys().copied().find(|&r| r > 0).unwrap_or(0);
    Ok(RankProfile { min_rank, counts })
}

pub fn min_rank_distance(c: &VectorCode, cap: u64) -> Result<usize> {
    rank_profile(c, cap).map(|p| p.min_rank)
}

/// Whether the minimum rank distance equals `n − k + 1`.
pub fn is_mrd(c: &VectorCode, cap: u64) -> Result<bool> {
    if c.is_zero() {
        return Err(Error::ZeroCode);
    }
    Ok(min_rank_distance(c, cap)? == singleton_bound(c.n, c.dimension()))
}

/// Euclidean dual; the zero code when `k = n`.
pub fn dual_code(c: &VectorCode) -> VectorCode {
    let h = linalg::null_space(&*c.tower, &c.generator, c.n);
    VectorCode { tower: c.tower.clone(), n: c.n, generator: h }
}

/// `G·Gᵀ` over GF(q^m).
pub fn gram_product(c: &VectorCode) -> Matrix<Elem> {
    linalg::mat_mul(&*c.tower, &c.generator, &linalg::transpose(&c.generator))
}

/// LCD test by nonsingularity of `G·Gᵀ`.
pub fn is_lcd_massey(c: &VectorCode) -> bool {
    let t = &*c.tower;
    !t.is_zero(linalg::determinant(t, &gram_product(c)))
}

/// `dim C + dim C^⊥ − rank [G; H]`.
pub fn hull_dimension(c: &VectorCode) -> usize {
    let d = dual_code(c);
    let stacked: Matrix<Elem> = c.generator.iter().chain(&d.generator).cloned().collect();
    c.dimension() + d.dimension() - linalg::rank(&*c.tower, &stacked)
}

/// `C ∩ C^⊥`, computed as the dual of `C^⊥ + C`.
pub fn hull(c: &VectorCode) -> VectorCode {
    let d = dual_code(c);
    let generator = linalg::intersection(&*c.tower, &c.generator, &d.generator, c.n);
    debug_assert_eq!(generator.len(), hull_dimension(c));
    VectorCode { tower: c.tower.clone(), n: c.n, generator }
}

/// `C^s = C × ⋯ × C` with block-diagonal generator.
pub fn cartesian_power(c: &VectorCode, s: usize) -> Result<VectorCode> {
    if s == 0 {
        return Err(Error::BadDimension("cartesian power needs s >= 1".into()));
    }
    let (n, k) = (c.n, c.dimension());
    let mut generator = vec![vec![Elem(0); n * s]; k * s];
    for b in 0..s {
        for (i, row) in c.generator.iter().enumerate() {
            generator[b * k + i][b * n..(b + 1) * n].copy_from_slice(row);
        }
    }
    Ok(VectorCode { tower: c.tower.clone(), n: n * s, generator })
}

/// The matrix code `{M_B(β) : β ∈ C}` of `n × m` expansions in basis `B`.
///
/// Spanned over GF(q) by the expansions of `x^j · g_i` for every generator
/// row `g_i` and every monomial `x^j`, which gives dimension `m·k`.
pub fn expand_code(c: &VectorCode, b: &ExtensionBasis) -> Result<MatrixCode> {
    if !same_tower(&c.tower, b.tower()) {
        return Err(Error::TowerMismatch);
    }
    let t = &*c.tower;
    let m = t.m();
    let rows: Matrix<Scalar> = c
        .generator
        .iter()
        .flat_map(|row| {
            (0..m).map(move |j| {
                let monomial = Elem(t.q().pow(j as u32));
                let scaled: Vec<Elem> = row.iter().map(|&a| t.mul(monomial, a)).collect();
                vectorize(&expand_vector(&scaled, b))
            })
        })
        .collect();
    MatrixCode::from_vectors(t.base(), c.n, m, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delsarte::DEFAULT_ENUM_CAP;
    use crate::finite_field::make_tower;

    const CAP: u64 = DEFAULT_ENUM_CAP;
    const W: Elem = Elem(2);
    const W2: Elem = Elem(3);

    fn gf4() -> Arc<FieldTower> {
        make_tower(2, 1, 2).unwrap()
    }

    #[test]
    fn moore_matrix_examples() {
        let t = gf4();
        assert_eq!(moore_matrix(&t, &[W, W2], 1).unwrap(), vec![vec![W, W2]]);
        assert_eq!(moore_matrix(&t, &[W, W2], 2).unwrap(), vec![vec![W, W2], vec![W2, W]]);
        assert_eq!(moore_matrix(&t, &[W, W], 1).unwrap_err(), Error::DependentGenerators);
        assert!(matches!(moore_matrix(&t, &[W, W2], 3), Err(Error::BadDimension(_))));
        assert!(matches!(moore_matrix(&t, &[W, W2, Elem(1)], 1), Err(Error::BadDimension(_))));
        assert!(matches!(moore_matrix(&t, &[W], 0), Err(Error::BadDimension(_))));
    }

    #[test]
    fn vector_rank_examples() {
        let t = gf4();
        assert_eq!(vector_rank(&t, &[Elem(0), Elem(0)]), 0);
        assert_eq!(vector_rank(&t, &[W, W2]), 2);
        assert_eq!(vector_rank(&t, &[W, W]), 1);
    }

    #[test]
    fn gf4_code_profile() {
        let c = gabidulin_code(&gf4(), &[W, W2], 1).unwrap();
        let p = rank_profile(&c, CAP).unwrap();
        assert_eq!(p.min_rank, 2);
        assert_eq!(p.counts, BTreeMap::from([(0, 1), (2, 3)]));
        assert!(is_mrd(&c, CAP).unwrap());
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"min_rank":2,"counts":{"0":1,"2":3}}"#
        );
    }

    #[test]
    fn full_space_and_identity_generator() {
        let t = make_tower(2, 1, 3).unwrap();
        let id: Matrix<Elem> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { Elem(1) } else { Elem(0) }).collect())
            .collect();
        let c = VectorCode::new(&t, id).unwrap();
        assert_eq!(min_rank_distance(&c, CAP).unwrap(), 1);
        assert!(is_mrd(&c, CAP).unwrap());
        assert!(is_lcd_massey(&c));
        assert!(dual_code(&c).is_zero());
        assert!(hull(&c).is_zero());
    }

    #[test]
    fn non_mrd_code() {
        let c = VectorCode::new(&gf4(), vec![vec![Elem(1), Elem(0)]]).unwrap();
        assert_eq!(min_rank_distance(&c, CAP).unwrap(), 1);
        assert!(!is_mrd(&c, CAP).unwrap());
    }

    #[test]
    fn gf9_self_orthogonal_line() {
        let t = make_tower(3, 1, 2).unwrap();
        let alpha = Elem(3);
        let c = VectorCode::new(&t, vec![vec![alpha, Elem(1)]]).unwrap();
        let d = dual_code(&c);
        let neg_alpha = t.neg(alpha);
        let expected = VectorCode::new(&t, vec![vec![Elem(1), neg_alpha]]).unwrap();
        assert!(d.same_code(&expected));
        assert_eq!(gram_product(&c), vec![vec![Elem(0)]]);
        assert!(!is_lcd_massey(&c));
        assert!(hull(&c).same_code(&c));
        assert_eq!(hull_dimension(&c), 1);
    }

    #[test]
    fn gf4_lcd_line() {
        let c = VectorCode::new(&gf4(), vec![vec![W, W2]]).unwrap();
        assert_eq!(gram_product(&c), vec![vec![Elem(1)]]);
        assert!(is_lcd_massey(&c));
        assert!(hull(&c).is_zero());
        assert_eq!(dual_code(&c).dimension() + c.dimension(), 2);
        assert!(dual_code(&dual_code(&c)).same_code(&c));
    }

    #[test]
    fn cartesian_power_of_gf4_line() {
        let c = gabidulin_code(&gf4(), &[W, W2], 1).unwrap();
        assert!(cartesian_power(&c, 1).unwrap().same_code(&c));
        let c2 = cartesian_power(&c, 2).unwrap();
        assert_eq!((c2.length(), c2.dimension()), (4, 2));
        assert_eq!(min_rank_distance(&c2, CAP).unwrap(), 2);
        assert!(cartesian_power(&c, 0).is_err());
    }

    #[test]
    fn expansion_of_gf4_line() {
        let t = gf4();
        let c = gabidulin_code(&t, &[W, W2], 1).unwrap();
        let b = ExtensionBasis::new(&t, vec![W, W2]).unwrap();
        let mc = expand_code(&c, &b).unwrap();
        assert_eq!(mc.dim(), 2);
        assert_eq!(mc.shape(), (2, 2));
        assert_eq!(mc.rank_range(CAP).unwrap().min_rank, 2);
        let other = make_tower(3, 1, 2).unwrap();
        let b9 = ExtensionBasis::standard(&other);
        assert_eq!(expand_code(&c, &b9).unwrap_err(), Error::TowerMismatch);
    }

    #[test]
    fn json_round_trip() {
        let t = make_tower(2, 2, 2).unwrap();
        let c = gabidulin_code(&t, &[Elem(1), Elem(4)], 1).unwrap();
        let j = c.to_json();
        let back = VectorCode::from_json(&j, None).unwrap();
        assert!(back.same_code(&c));
        let z = VectorCode::zero(&t, 3);
        assert!(VectorCode::from_json(&z.to_json(), Some(&t)).unwrap().is_zero());
    }

    #[test]
    fn rank_deficient_generator_is_rejected() {
        let t = gf4();
        assert_eq!(
            VectorCode::new(&t, vec![vec![W, W2], vec![Elem(1), W]]).unwrap_err(),
            Error::RankDeficient
        );
    }
}
