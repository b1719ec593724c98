use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use rankmetric::delsarte::{
    all_matrix_codes, all_subspaces, ambient_restriction, is_mrd_delsarte, is_optimal_anticode,
    lcd_anticode_criterion, singleton_like_bound, trace_inner_product, unvectorize, vectorize, MatrixCode, Subspace,
    DEFAULT_ENUM_CAP,
};
use rankmetric::finite_field::{BaseField, Scalar};
use rankmetric::linalg::Matrix;
use rankmetric::FieldOps;

const CAP: u64 = DEFAULT_ENUM_CAP;

fn field(p: u32) -> Arc<BaseField> {
    Arc::new(BaseField::new(p, 1).unwrap())
}

/// Every vector of GF(q)^len, in index order.
fn all_vectors(f: &BaseField, len: usize) -> Vec<Vec<Scalar>> {
    let q = f.q() as u64;
    (0..q.pow(len as u32))
        .map(|mut idx| {
            (0..len)
                .map(|_| {
                    let d = Scalar((idx % q) as u32);
                    idx /= q;
                    d
                })
                .collect()
        })
        .collect()
}

/// All codewords of the span of `rows`, by explicit coefficient enumeration.
fn span(f: &BaseField, rows: &[Vec<Scalar>], len: usize) -> BTreeSet<Vec<Scalar>> {
    all_vectors(f, rows.len())
        .into_iter()
        .map(|coefs| {
            let mut v = vec![Scalar(0); len];
            for (c, row) in coefs.iter().zip(rows) {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(*c, r));
                }
            }
            v
        })
        .collect()
}

fn codewords(c: &MatrixCode) -> BTreeSet<Vec<Scalar>> {
    let (n, m) = c.shape();
    span(c.field(), c.basis_vectors(), n * m)
}

/// Rank as `log_q` of the size of the row space `{xA}`.
fn row_space_rank(f: &BaseField, a: &Matrix<Scalar>) -> usize {
    let m = a.first().map_or(0, Vec::len);
    let size = span(f, a, m).len();
    (size as f64).log(f.q() as f64).round() as usize
}

fn brute_min_max(c: &MatrixCode) -> (usize, usize) {
    let (n, m) = c.shape();
    let ranks: Vec<usize> =
        codewords(c).iter().map(|v| row_space_rank(c.field(), &unvectorize(v, n, m))).collect();
    let min = ranks.iter().copied().filter(|&r| r > 0).min().unwrap_or(0);
    (min, ranks.into_iter().max().unwrap_or(0))
}

fn naive_trace(f: &BaseField, a: &Matrix<Scalar>, b: &Matrix<Scalar>) -> Scalar {
    let mut acc = Scalar(0);
    for i in 0..a.len() {
        for k in 0..a[0].len() {
            // (A Bᵀ)_{ii} = Σ_k A_{ik} B_{ik}
            acc = f.add(acc, f.mul(a[i][k], b[i][k]));
        }
    }
    acc
}

fn subspace_elements(u: &Subspace) -> BTreeSet<Vec<Scalar>> {
    span(u.field(), u.basis(), u.ambient_dim())
}

fn grid() -> Vec<(u32, usize, usize)> {
    let mut out = Vec::new();
    for (p, n) in [(2, 2), (2, 3), (3, 2)] {
        for m in [2, 3] {
            out.push((p, n, m));
        }
    }
    out
}

#[test]
fn trace_product_is_the_vectorized_dot_product() {
    let f = field(2);
    let mats: Vec<Matrix<Scalar>> = all_vectors(&f, 4).iter().map(|v| unvectorize(v, 2, 2)).collect();
    for a in &mats {
        for b in &mats {
            let t = trace_inner_product(&f, a, b).unwrap();
            assert_eq!(t, f.dot(&vectorize(a), &vectorize(b)));
            assert_eq!(t, naive_trace(&f, a, b));
            // column-wise Euclidean products
            let cols = (0..2).fold(Scalar(0), |acc, j| {
                f.add(acc, f.add(f.mul(a[0][j], b[0][j]), f.mul(a[1][j], b[1][j])))
            });
            assert_eq!(t, cols);
            assert_eq!(t, trace_inner_product(&f, b, a).unwrap());
        }
    }
    let f3 = field(3);
    for a in all_vectors(&f3, 6).iter().step_by(37) {
        for b in all_vectors(&f3, 6).iter().step_by(41) {
            let (a, b) = (unvectorize(a, 2, 3), unvectorize(b, 2, 3));
            assert_eq!(trace_inner_product(&f3, &a, &b).unwrap(), naive_trace(&f3, &a, &b));
        }
    }
}

#[test]
fn dual_matches_brute_force_orthogonality() {
    let f = field(2);
    let codes = all_matrix_codes(&f, 2, 2);
    assert_eq!(codes.len(), 67);
    let all: Vec<Matrix<Scalar>> = all_vectors(&f, 4).iter().map(|v| unvectorize(v, 2, 2)).collect();
    for c in &codes {
        let gens = c.generators();
        let expected: BTreeSet<Vec<Scalar>> = all
            .iter()
            .filter(|b| gens.iter().all(|g| naive_trace(&f, g, b) == Scalar(0)))
            .map(|b| vectorize(b))
            .collect();
        assert_eq!(codewords(&c.dual()), expected);
    }
}

#[test]
fn duality_is_an_involution_on_every_small_code() {
    for (p, n, m) in [(2, 2, 2), (2, 2, 3), (3, 2, 2)] {
        let f = field(p);
        for c in all_matrix_codes(&f, n, m) {
            let d = c.dual();
            assert_eq!(c.dim() + d.dim(), n * m);
            assert_eq!(d.dual(), c);
            let h = c.hull();
            assert_eq!(codewords(&h), &codewords(&c) & &codewords(&d));
        }
    }
}

#[test]
fn rank_range_matches_brute_force() {
    for (p, n, m) in [(2, 2, 2), (3, 2, 2)] {
        let f = field(p);
        for c in all_matrix_codes(&f, n, m) {
            let r = c.rank_range(CAP).unwrap();
            assert_eq!((r.min_rank, r.max_rank), brute_min_max(&c));
        }
    }
}

#[test]
fn ambient_restriction_matches_column_space_definition() {
    for (p, n, m) in grid() {
        let f = field(p);
        let all = all_vectors(&f, n * m);
        for u in all_subspaces(&f, n) {
            let elems = subspace_elements(&u);
            let expected: BTreeSet<Vec<Scalar>> = all
                .iter()
                .filter(|v| {
                    let a = unvectorize(v, n, m);
                    (0..m).all(|j| elems.contains(&a.iter().map(|row| row[j]).collect::<Vec<_>>()))
                })
                .cloned()
                .collect();
            let c = ambient_restriction(&u, m);
            assert_eq!(codewords(&c), expected);
            assert_eq!(c.dim(), m * u.dim());
        }
    }
}

#[test]
fn ambient_identities_hold_on_every_subspace() {
    for (p, n, m) in grid() {
        let f = field(p);
        for u in all_subspaces(&f, n) {
            let ud = u.dual();
            let c = ambient_restriction(&u, m);
            let cd = ambient_restriction(&ud, m);
            // dual commutes with restriction
            assert_eq!(c.dual(), cd);
            // sum and intersection commute with restriction
            assert_eq!(c.sum(&cd).unwrap(), ambient_restriction(&u.sum(&ud).unwrap(), m));
            assert_eq!(c.intersect(&cd).unwrap(), ambient_restriction(&u.intersection(&ud).unwrap(), m));
            // LCD transfers both ways
            let brute_lcd = (&subspace_elements(&u) & &subspace_elements(&ud)).len() == 1;
            assert_eq!(u.is_lcd(), brute_lcd);
            assert_eq!(c.is_lcd(), u.is_lcd());
            // anticode facts
            let r = c.rank_range(CAP).unwrap();
            assert_eq!(r.max_rank, u.dim().min(m));
            assert!(c.dim() <= n.max(m) * r.max_rank);
            if is_optimal_anticode(&c, CAP).unwrap() {
                assert!(is_optimal_anticode(&c.dual(), CAP).unwrap());
                if !c.is_zero() && lcd_anticode_criterion(&c, CAP).unwrap() {
                    assert!(c.is_lcd());
                }
            }
        }
    }
}

#[test]
fn criterion_is_sufficient_only() {
    let f = field(2);
    let u = Subspace::new(&f, 2, vec![vec![Scalar(1), Scalar(0)]]).unwrap();
    let c = ambient_restriction(&u, 2);
    assert!(is_optimal_anticode(&c, CAP).unwrap());
    assert!(!lcd_anticode_criterion(&c, CAP).unwrap());
    assert!(c.is_lcd());
}

#[test]
fn anticode_theorems_hold_for_every_matrix_code() {
    for (p, n, m) in [(2, 2, 2), (2, 2, 3), (3, 2, 2)] {
        let f = field(p);
        let mut optimal = 0;
        for c in all_matrix_codes(&f, n, m) {
            let r = c.rank_range(CAP).unwrap();
            assert!(c.dim() <= n.max(m) * r.max_rank);
            if c.is_zero() {
                continue;
            }
            assert!(c.dim() <= singleton_like_bound(n, m, r.min_rank));
            if is_optimal_anticode(&c, CAP).unwrap() {
                optimal += 1;
                assert!(is_optimal_anticode(&c.dual(), CAP).unwrap());
                if lcd_anticode_criterion(&c, CAP).unwrap() {
                    assert!(c.is_lcd());
                }
            }
        }
        assert!(optimal > 0);
    }
}

/// The bound with `+ dim/max` in place of `− dim/max` is never attained:
/// it would need `d > min{n,m}`.
#[test]
fn plus_sign_bound_is_never_attained() {
    for (p, n, m) in [(2, 2, 2), (2, 2, 3), (3, 2, 2)] {
        let f = field(p);
        let mut mrd = 0;
        for c in all_matrix_codes(&f, n, m).into_iter().filter(|c| !c.is_zero()) {
            let d = c.rank_range(CAP).unwrap().min_rank;
            let big = n.max(m);
            // d ≤ min + dim/max + 1, with equality meaning d·max = min·max + dim + max
            assert!(d * big < n.min(m) * big + c.dim() + big);
            if is_mrd_delsarte(&c, CAP).unwrap() {
                mrd += 1;
            }
        }
        assert!(mrd > 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn random_codes_are_dual_involutive(
        p in prop_oneof![Just(2u32), Just(3u32), Just(5u32)],
        n in 1usize..=3,
        m in 1usize..=4,
        seed_rows in proptest::collection::vec(proptest::collection::vec(0u32..5, 12), 0..6),
    ) {
        let f = field(p);
        let gens: Vec<Matrix<Scalar>> = seed_rows
            .iter()
            .map(|r| unvectorize(&r[..n * m].iter().map(|&x| Scalar(x % p)).collect::<Vec<_>>(), n, m))
            .collect();
        let c = MatrixCode::new(&f, n, m, &gens).unwrap();
        let d = c.dual();
        prop_assert_eq!(c.dim() + d.dim(), n * m);
        prop_assert_eq!(d.dual(), c.clone());
        for g in &gens {
            prop_assert!(c.contains(g).unwrap());
        }
        for g in c.generators() {
            for h in d.generators() {
                prop_assert_eq!(trace_inner_product(&f, &g, &h).unwrap(), Scalar(0));
            }
        }
    }
}
