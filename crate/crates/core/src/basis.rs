//! Bases of GF(q^m) over GF(q) and the trace form `(a, b) ↦ Tr(ab)`.
//!
//! Covers Gram matrices, trace-dual bases, the search for self-dual and
//! almost self-dual bases, and coordinate expansion of vectors over GF(q^m)
//! into matrices over GF(q).

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldOps;
use crate::finite_field::{same_tower, Elem, FieldTower, Scalar};
use crate::linalg::{self, Matrix};

/// Randomized restarts allowed after the deterministic pass stalls.
pub const MAX_RANDOM_ATTEMPTS: u32 = 10_000;

/// An ordered basis of GF(q^m) over GF(q).
#[derive(Clone)]
pub struct ExtensionBasis {
    tower: Arc<FieldTower>,
    elements: Vec<Elem>,
    /// Inverse of the matrix whose rows are the coordinates of the elements.
    to_basis: Matrix<Scalar>,
}

impl std::fmt::Debug for ExtensionBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = self.elements.iter().map(|&a| self.tower.format(a)).collect();
        f.debug_tuple("ExtensionBasis").field(&names).finish()
    }
}

impl PartialEq for ExtensionBasis {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && same_tower(&self.tower, &other.tower)
    }
}

impl Eq for ExtensionBasis {}

impl ExtensionBasis {
    pub fn new(tower: &Arc<FieldTower>, elements: Vec<Elem>) -> Result<Self> {
        let m = tower.m();
        if elements.len() != m {
            return Err(Error::BadDimension(format!(
                "a basis of GF(q^{m}) needs {m} elements, got {}",
                elements.len()
            )));
        }
        for &a in &elements {
            tower.elem(a.0)?;
        }
        let rows: Matrix<Scalar> = elements.iter().map(|&a| tower.coords(a).to_vec()).collect();
        let to_basis = linalg::inverse(&**tower.base(), &rows).ok_or(Error::DependentGenerators)?;
        Ok(Self { tower: tower.clone(), elements, to_basis })
    }

    /// The polynomial basis `1, x, …, x^{m-1}`.
    pub fn standard(tower: &Arc<FieldTower>) -> Self {
        let q = tower.q();
        let elements = (0..tower.m()).map(|i| Elem(q.pow(i as u32))).collect();
        Self::new(tower, elements).expect("monomials form a basis")
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Coordinates of `b` in this basis: `b = Σ_j c_j a_j`.
    pub fn expand(&self, b: Elem) -> Vec<Scalar> {
        linalg::vec_mat(&**self.tower.base(), self.tower.coords(b), &self.to_basis)
    }

    /// `Σ_j c_j a_j`.
    pub fn combine(&self, coeffs: &[Scalar]) -> Elem {
        let t = &*self.tower;
        coeffs
            .iter()
            .zip(&self.elements)
            .fold(t.zero(), |acc, (&c, &a)| t.add(acc, t.mul(t.embed(c), a)))
    }

    pub fn to_json(&self) -> Vec<Vec<Vec<u32>>> {
        self.elements.iter().map(|&a| self.tower.elem_to_json(a)).collect()
    }

    pub fn from_json(tower: &Arc<FieldTower>, v: &[Vec<Vec<u32>>]) -> Result<Self> {
        let elements = v
            .iter()
            .map(|e| tower.elem_from_json(e))
            .collect::<Result<Vec<_>>>()?;
        Self::new(tower, elements)
    }
}

/// Symmetric matrix `(Tr(a_i a_j))` over GF(q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix(pub Matrix<Scalar>);

impl GramMatrix {
    pub fn rows(&self) -> &Matrix<Scalar> {
        &self.0
    }

    pub fn is_symmetric(&self) -> bool {
        self.0 == linalg::transpose(&self.0)
    }

    pub fn is_identity(&self) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, s)| s.0 == u32::from(i == j)))
    }

    /// `Some(a)` when the matrix is `diag(1, …, 1, a)` with `a ≠ 0`.
    pub fn almost_identity(&self) -> Option<Scalar> {
        let n = self.0.len();
        if n == 0 {
            return None;
        }
        let last = self.0[n - 1][n - 1];
        let ok = last.0 != 0
            && self.0.iter().enumerate().all(|(i, row)| {
                row.iter().enumerate().all(|(j, s)| {
                    if i != j {
                        s.0 == 0
                    } else {
                        i == n - 1 || s.0 == 1
                    }
                })
            });
        ok.then_some(last)
    }

    pub fn to_json(&self) -> Vec<Vec<u32>> {
        self.0.iter().map(|r| r.iter().map(|s| s.0).collect()).collect()
    }
}

/// `(Tr(a_i b_j))` for two tuples of elements.
pub fn trace_pairing(tower: &FieldTower, a: &[Elem], b: &[Elem]) -> Matrix<Scalar> {
    a.iter()
        .map(|&x| b.iter().map(|&y| tower.trace(tower.mul(x, y))).collect())
        .collect()
}

pub fn gram_matrix(b: &ExtensionBasis) -> GramMatrix {
    GramMatrix(trace_pairing(&b.tower, &b.elements, &b.elements))
}

/// The unique basis `B'` with `Tr(a_i a'_j) = δ_ij`: `a'_j = Σ_i (T^{-1})_{ji} a_i`
/// for the Gram matrix `T`.
pub fn dual_basis(b: &ExtensionBasis) -> ExtensionBasis {
    let base = &**b.tower.base();
    let gram = gram_matrix(b);
    let inv = linalg::inverse(base, &gram.0).expect("the trace form is nondegenerate");
    let elements = inv.iter().map(|row| b.combine(row)).collect();
    let dual = ExtensionBasis::new(&b.tower, elements).expect("dual of a basis is a basis");
    debug_assert!(linalg::is_identity(
        base,
        &trace_pairing(&b.tower, &b.elements, &dual.elements)
    ));
    dual
}

pub fn is_self_dual(b: &ExtensionBasis) -> bool {
    gram_matrix(b).is_identity()
}

/// The scalar `a = Tr(g_m^2)` when the Gram matrix is `diag(1, …, 1, a)`.
pub fn is_almost_self_dual(b: &ExtensionBasis) -> Option<Scalar> {
    gram_matrix(b).almost_identity()
}

/// Whether a self-dual basis of GF(q^m) over GF(q) can exist: q even, or q and
/// m both odd.
pub fn self_dual_admissible(tower: &FieldTower) -> bool {
    tower.p() == 2 || tower.m() % 2 == 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelfDualSearch {
    Found {
        basis: ExtensionBasis,
        seed: u64,
        /// Randomized restarts used; 0 when the deterministic pass succeeded.
        random_attempts: u32,
    },
    NotExists,
}

impl SelfDualSearch {
    pub fn basis(&self) -> Option<&ExtensionBasis> {
        match self {
            Self::Found { basis, .. } => Some(basis),
            Self::NotExists => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostSelfDual {
    pub basis: ExtensionBasis,
    /// `Tr(g_m^2)`; equal to 1 when the basis is self-dual.
    pub a: Scalar,
    pub seed: u64,
}

/// Serialized outcome of a basis search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<u32>>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<Vec<u32>>>>,
}

impl SearchReport {
    pub fn from_self_dual(tower: &FieldTower, s: &SelfDualSearch, seed: u64) -> Self {
        match s {
            SelfDualSearch::Found { basis, seed, .. } => Self {
                kind: "self_dual".into(),
                a: Some(tower.base().digits(Scalar(1))),
                seed: *seed,
                basis: Some(basis.to_json()),
            },
            SelfDualSearch::NotExists => Self { kind: "not_exists".into(), a: None, seed, basis: None },
        }
    }

    pub fn from_almost(tower: &FieldTower, s: &AlmostSelfDual) -> Self {
        Self {
            kind: "almost_self_dual".into(),
            a: Some(tower.base().digits(s.a)),
            seed: s.seed,
            basis: Some(s.basis.to_json()),
        }
    }
}

/// Finds a basis with identity Gram matrix, or reports that none exists.
///
/// The trace form is diagonalized by repeatedly taking an element of the
/// current orthogonal complement whose square has a nonzero square trace and
/// rescaling it to trace 1. The first pass takes candidates in index order;
/// if it stalls (in characteristic 2 the complement can become totally
/// isotropic) the pass is retried with candidates drawn from a ChaCha8 stream
/// seeded by `seed`.
pub fn find_self_dual_basis(tower: &Arc<FieldTower>, seed: u64) -> Result<SelfDualSearch> {
    if !self_dual_admissible(tower) {
        return Ok(SelfDualSearch::NotExists);
    }
    let m = tower.m();
    if let Some(elements) = orthonormal_prefix(tower, m, None) {
        let basis = ExtensionBasis::new(tower, elements)?;
        return Ok(SelfDualSearch::Found { basis, seed, random_attempts: 0 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=MAX_RANDOM_ATTEMPTS {
        if let Some(elements) = orthonormal_prefix(tower, m, Some(&mut rng)) {
            let basis = ExtensionBasis::new(tower, elements)?;
            return Ok(SelfDualSearch::Found { basis, seed, random_attempts: attempt });
        }
    }
    Err(Error::SearchFailed { attempts: MAX_RANDOM_ATTEMPTS })
}

/// Finds a basis with Gram matrix `diag(1, …, 1, a)`, `a ≠ 0`, for odd q.
///
/// The first `m − 1` elements are orthonormal; the last spans the remaining
/// one-dimensional complement and is rescaled to `a = 1` when possible.
pub fn find_almost_self_dual_basis(tower: &Arc<FieldTower>, seed: u64) -> Result<AlmostSelfDual> {
    if tower.p() == 2 {
        return Err(Error::EvenCharacteristic(tower.q()));
    }
    let m = tower.m();
    let mut prefix = orthonormal_prefix(tower, m - 1, None);
    if prefix.is_none() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..MAX_RANDOM_ATTEMPTS {
            prefix = orthonormal_prefix(tower, m - 1, Some(&mut rng));
            if prefix.is_some() {
                break;
            }
        }
    }
    let mut elements =
        prefix.ok_or(Error::SearchFailed { attempts: MAX_RANDOM_ATTEMPTS })?;
    let complement: Vec<Elem> = tower
        .elements()
        .filter(|&x| x.0 != 0 && orthogonal_to_all(tower, x, &elements))
        .collect();
    let last = complement
        .iter()
        .copied()
        .find(|&x| tower.trace(tower.mul(x, x)) == Scalar(1))
        .or_else(|| complement.first().copied())
        .ok_or(Error::SearchFailed { attempts: 0 })?;
    elements.push(last);
    let basis = ExtensionBasis::new(tower, elements)?;
    let a = is_almost_self_dual(&basis).expect("constructed Gram matrix is diag(1, …, 1, a)");
    Ok(AlmostSelfDual { basis, a, seed })
}

fn orthogonal_to_all(tower: &FieldTower, x: Elem, chosen: &[Elem]) -> bool {
    chosen.iter().all(|&c| tower.trace(tower.mul(x, c)).0 == 0)
}

/// Up to `count` mutually orthogonal elements with `Tr(x^2) = 1`, or `None`
/// if the complement runs out of usable elements first.
fn orthonormal_prefix(
    tower: &FieldTower,
    count: usize,
    mut rng: Option<&mut ChaCha8Rng>,
) -> Option<Vec<Elem>> {
    let base = &**tower.base();
    let mut chosen: Vec<Elem> = Vec::with_capacity(count);
    while chosen.len() < count {
        let candidates: Vec<Elem> = tower
            .elements()
            .filter(|&x| x.0 != 0 && orthogonal_to_all(tower, x, &chosen))
            .filter_map(|x| {
                let norm = tower.trace(tower.mul(x, x));
                if norm.0 == 0 {
                    return None;
                }
                let root = base.sqrt(norm)?;
                let scale = tower.embed(base.inv(root).expect("root of a nonzero scalar"));
                Some(tower.mul(x, scale))
            })
            .collect();
        let pick = match rng.as_deref_mut() {
            None => candidates.first().copied(),
            Some(rng) => candidates.choose(rng).copied(),
        }?;
        chosen.push(pick);
    }
    Some(chosen)
}

/// Expands each coordinate of `v` in the basis: row `i` of the result holds
/// the coefficients of `v_i`.
pub fn expand_vector(v: &[Elem], b: &ExtensionBasis) -> Matrix<Scalar> {
    v.iter().map(|&x| b.expand(x)).collect()
}

/// Inverse of [`expand_vector`].
pub fn collapse_matrix(m: &[Vec<Scalar>], b: &ExtensionBasis) -> Vec<Elem> {
    m.iter().map(|row| b.combine(row)).collect()
}

/// Visits every ordered basis of GF(q^m) over GF(q).
pub fn for_each_ordered_basis(tower: &FieldTower, mut visit: impl FnMut(&[Elem])) {
    let order = tower.order() as usize;
    let mut span = vec![false; order];
    span[0] = true;
    let mut chosen = Vec::with_capacity(tower.m());
    extend_bases(tower, &mut chosen, &span, &mut visit);
}

fn extend_bases(
    tower: &FieldTower,
    chosen: &mut Vec<Elem>,
    span: &[bool],
    visit: &mut impl FnMut(&[Elem]),
) {
    if chosen.len() == tower.m() {
        visit(chosen);
        return;
    }
    let members: Vec<Elem> = (0..span.len() as u32).filter(|&i| span[i as usize]).map(Elem).collect();
    for x in tower.elements() {
        if span[x.0 as usize] {
            continue;
        }
        let mut next = vec![false; span.len()];
        for &s in &members {
            for c in 0..tower.q() {
                let y = tower.add(s, tower.mul(tower.embed(Scalar(c)), x));
                next[y.0 as usize] = true;
            }
        }
        chosen.push(x);
        extend_bases(tower, chosen, &next, visit);
        chosen.pop();
    }
}

/// Number of ordered bases: `∏_{i<m} (q^m − q^i)`.
pub fn ordered_basis_count(tower: &FieldTower) -> u128 {
    let q = tower.q() as u128;
    let order = tower.order() as u128;
    (0..tower.m() as u32).map(|i| order - q.pow(i)).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::make_tower;

    fn gf4() -> Arc<FieldTower> {
        make_tower(2, 1, 2).unwrap()
    }

    const W: Elem = Elem(2);
    const W2: Elem = Elem(3);

    #[test]
    fn gram_examples_in_gf4() {
        let t = gf4();
        let b = ExtensionBasis::new(&t, vec![W, W2]).unwrap();
        assert!(gram_matrix(&b).is_identity());
        let std = ExtensionBasis::new(&t, vec![Elem(1), W]).unwrap();
        assert_eq!(gram_matrix(&std).to_json(), vec![vec![0, 1], vec![1, 1]]);
        assert!(gram_matrix(&std).is_symmetric());
    }

    #[test]
    fn dual_of_standard_gf4_basis() {
        let t = gf4();
        let std = ExtensionBasis::new(&t, vec![Elem(1), W]).unwrap();
        assert_eq!(dual_basis(&std).elements(), &[W2, Elem(1)]);
        let sd = ExtensionBasis::new(&t, vec![W, W2]).unwrap();
        assert_eq!(dual_basis(&sd), sd);
        assert_eq!(dual_basis(&dual_basis(&std)), std);
    }

    #[test]
    fn self_duality_predicates() {
        let t = gf4();
        assert!(is_self_dual(&ExtensionBasis::new(&t, vec![W, W2]).unwrap()));
        assert!(!is_self_dual(&ExtensionBasis::new(&t, vec![Elem(1), W]).unwrap()));
        assert_eq!(is_almost_self_dual(&ExtensionBasis::new(&t, vec![W, W2]).unwrap()), Some(Scalar(1)));
        assert_eq!(is_almost_self_dual(&ExtensionBasis::new(&t, vec![Elem(1), W]).unwrap()), None);

        let t9 = make_tower(3, 1, 2).unwrap();
        let alpha = Elem(3);
        let b = ExtensionBasis::new(&t9, vec![alpha, Elem(1)]).unwrap();
        assert_eq!(is_almost_self_dual(&b), Some(Scalar(2)));
    }

    #[test]
    fn invalid_bases_are_rejected() {
        let t = gf4();
        assert_eq!(ExtensionBasis::new(&t, vec![W, W]).unwrap_err(), Error::DependentGenerators);
        assert!(matches!(ExtensionBasis::new(&t, vec![W]), Err(Error::BadDimension(_))));
        assert!(ExtensionBasis::new(&t, vec![W, Elem(9)]).is_err());
    }

    #[test]
    fn self_dual_search_examples() {
        let found = find_self_dual_basis(&gf4(), 0).unwrap();
        assert_eq!(found.basis().unwrap().elements(), &[W, W2]);

        let t8 = make_tower(2, 1, 3).unwrap();
        let b = find_self_dual_basis(&t8, 0).unwrap();
        assert!(is_self_dual(b.basis().unwrap()));

        let t9 = make_tower(3, 1, 2).unwrap();
        assert_eq!(find_self_dual_basis(&t9, 0).unwrap(), SelfDualSearch::NotExists);
    }

    #[test]
    fn almost_self_dual_search_examples() {
        let t9 = make_tower(3, 1, 2).unwrap();
        let r = find_almost_self_dual_basis(&t9, 0).unwrap();
        assert_eq!(r.basis.elements(), &[Elem(3), Elem(1)]);
        assert_eq!(r.a, Scalar(2));

        let t27 = make_tower(3, 1, 3).unwrap();
        let r = find_almost_self_dual_basis(&t27, 0).unwrap();
        assert_eq!(is_almost_self_dual(&r.basis), Some(r.a));

        assert_eq!(find_almost_self_dual_basis(&gf4(), 0).unwrap_err(), Error::EvenCharacteristic(2));
    }

    #[test]
    fn expansion_examples() {
        let t = gf4();
        let b = ExtensionBasis::new(&t, vec![W, W2]).unwrap();
        assert_eq!(expand_vector(&[W], &b), vec![vec![Scalar(1), Scalar(0)]]);
        assert_eq!(expand_vector(&[Elem(1)], &b), vec![vec![Scalar(1), Scalar(1)]]);
        assert_eq!(expand_vector(&[Elem(0)], &b), vec![vec![Scalar(0), Scalar(0)]]);
        let v = [W, Elem(1), W2];
        assert_eq!(collapse_matrix(&expand_vector(&v, &b), &b), v);
    }

    #[test]
    fn basis_counts() {
        for (p, e, m, expected) in [(2, 1, 2, 6u128), (2, 1, 3, 168), (3, 1, 2, 48), (2, 2, 2, 180)] {
            let t = make_tower(p, e, m).unwrap();
            let mut n = 0u128;
            for_each_ordered_basis(&t, |_| n += 1);
            assert_eq!(n, expected);
            assert_eq!(ordered_basis_count(&t), expected);
        }
    }

    #[test]
    fn search_report_json() {
        let t9 = make_tower(3, 1, 2).unwrap();
        let r = find_almost_self_dual_basis(&t9, 7).unwrap();
        let json = serde_json::to_string(&SearchReport::from_almost(&t9, &r)).unwrap();
        assert_eq!(json, r#"{"kind":"almost_self_dual","a":[2],"seed":7,"basis":[[[0],[1]],[[1],[0]]]}"#);
        let none = SearchReport::from_self_dual(&t9, &SelfDualSearch::NotExists, 3);
        assert_eq!(serde_json::to_string(&none).unwrap(), r#"{"kind":"not_exists","seed":3}"#);
    }
}
