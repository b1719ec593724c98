//! Dense exact linear algebra over any [`FieldOps`] field.
//!
//! Matrices are `Vec` of rows. Elimination always takes the leftmost pivot
//! column and the smallest-index row carrying a nonzero entry there, so
//! reduced row-echelon forms are canonical and comparable with `==`.

use crate::field::FieldOps;

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduces `rows` in place to reduced row-echelon form, dropping zero rows.
/// Returns the pivot columns.
pub fn rref<F: FieldOps>(f: &F, rows: &mut Matrix<F::Elem>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !f.is_zero(rows[i][c])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]).expect("pivot is nonzero");
        if inv != f.one() {
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        for i in 0..rows.len() {
            if i != r && !f.is_zero(rows[i][c]) {
                let factor = rows[i][c];
                for j in c..ncols {
                    let t = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Canonical basis (RREF) of the row space.
pub fn row_space<F: FieldOps>(f: &F, rows: &[Vec<F::Elem>]) -> Matrix<F::Elem> {
    let mut m = rows.to_vec();
    rref(f, &mut m);
    m
}

pub fn rank<F: FieldOps>(f: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m = rows.to_vec();
    rank_in_place(f, &mut m)
}

/// Row-echelon rank without back substitution; clobbers `rows`.
pub fn rank_in_place<F: FieldOps>(f: &F, rows: &mut [Vec<F::Elem>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !f.is_zero(rows[i][c])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]).expect("pivot is nonzero");
        for i in r + 1..rows.len() {
            if !f.is_zero(rows[i][c]) {
                let factor = f.mul(rows[i][c], inv);
                for j in c..ncols {
                    let t = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], t);
                }
            }
        }
        r += 1;
    }
    r
}

/// Basis of `{x : rows · x = 0}` for vectors of length `ncols`, in RREF.
pub fn null_space<F: FieldOps>(f: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Matrix<F::Elem> {
    let mut m: Matrix<F::Elem> = rows.to_vec();
    let pivots = rref(f, &mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = f.neg(row[free]);
        }
        basis.push(v);
    }
    rref(f, &mut basis);
    basis
}

pub fn transpose<E: Copy>(a: &[Vec<E>]) -> Matrix<E> {
    let ncols = a.first().map_or(0, Vec::len);
    (0..ncols).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

pub fn mat_mul<F: FieldOps>(f: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Matrix<F::Elem> {
    let bt = transpose(b);
    a.iter()
        .map(|row| bt.iter().map(|col| f.dot(row, col)).collect())
        .collect()
}

/// `v · A` for a row vector `v`.
pub fn vec_mat<F: FieldOps>(f: &F, v: &[F::Elem], a: &[Vec<F::Elem>]) -> Vec<F::Elem> {
    let ncols = a.first().map_or(0, Vec::len);
    let mut out = vec![f.zero(); ncols];
    for (&c, row) in v.iter().zip(a) {
        if f.is_zero(c) {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(row) {
            *o = f.add(*o, f.mul(c, x));
        }
    }
    out
}

pub fn identity<F: FieldOps>(f: &F, n: usize) -> Matrix<F::Elem> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
        .collect()
}

pub fn is_identity<F: FieldOps>(f: &F, a: &[Vec<F::Elem>]) -> bool {
    a == identity(f, a.len()).as_slice()
}

pub fn inverse<F: FieldOps>(f: &F, a: &[Vec<F::Elem>]) -> Option<Matrix<F::Elem>> {
    let n = a.len();
    let mut aug: Matrix<F::Elem> = a
        .iter()
        .zip(identity(f, n))
        .map(|(row, id)| row.iter().copied().chain(id).collect())
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn determinant<F: FieldOps>(f: &F, a: &[Vec<F::Elem>]) -> F::Elem {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = f.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !f.is_zero(m[i][c])) else {
            return f.zero();
        };
        if pr != c {
            m.swap(pr, c);
            det = f.neg(det);
        }
        det = f.mul(det, m[c][c]);
        let inv = f.inv(m[c][c]).expect("pivot is nonzero");
        for i in c + 1..n {
            if !f.is_zero(m[i][c]) {
                let factor = f.mul(m[i][c], inv);
                for j in c..n {
                    let t = f.mul(factor, m[c][j]);
                    m[i][j] = f.sub(m[i][j], t);
                }
            }
        }
    }
    det
}

/// Canonical basis of `U + V`.
pub fn sum<F: FieldOps>(f: &F, u: &[Vec<F::Elem>], v: &[Vec<F::Elem>]) -> Matrix<F::Elem> {
    let stacked: Matrix<F::Elem> = u.iter().chain(v).cloned().collect();
    row_space(f, &stacked)
}

/// Canonical basis of `U ∩ V` in an ambient space of dimension `n`, computed
/// as `(U^⊥ + V^⊥)^⊥` under the standard dot product.
pub fn intersection<F: FieldOps>(
    f: &F,
    u: &[Vec<F::Elem>],
    v: &[Vec<F::Elem>],
    n: usize,
) -> Matrix<F::Elem> {
    let du = null_space(f, u, n);
    let dv = null_space(f, v, n);
    null_space(f, &sum(f, &du, &dv), n)
}

pub fn contains<F: FieldOps>(f: &F, basis: &[Vec<F::Elem>], x: &[F::Elem]) -> bool {
    let mut m = basis.to_vec();
    m.push(x.to_vec());
    rank(f, &m) == rank(f, basis)
}

/// Calls `visit` on every `F`-linear combination of `gens`, reusing one buffer.
/// Combinations are visited in odometer order with the last generator's
/// coefficient varying fastest.
pub fn for_each_combination<F: FieldOps>(
    f: &F,
    gens: &[Vec<F::Elem>],
    len: usize,
    mut visit: impl FnMut(&[F::Elem]),
) {
    let k = gens.len();
    let order = f.order();
    let mut digits = vec![0u32; k];
    let mut cur = vec![f.zero(); len];
    loop {
        visit(&cur);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            let old = f.element(digits[i]);
            digits[i] = (digits[i] + 1) % order;
            let new = f.element(digits[i]);
            let delta = f.sub(new, old);
            for (c, &g) in cur.iter_mut().zip(&gens[i]) {
                *c = f.add(*c, f.mul(delta, g));
            }
            if digits[i] != 0 {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn rref_is_canonical() {
        let f = PrimeField::new(3).unwrap();
        let a = vec![vec![0, 1, 1], vec![1, 1, 0], vec![1, 0, 2]];
        let b = vec![vec![1, 0, 2], vec![2, 2, 0]];
        assert_eq!(row_space(&f, &a), row_space(&f, &b));
        assert_eq!(rank(&f, &a), 2);
    }

    #[test]
    fn null_space_annihilates() {
        let f = PrimeField::new(5).unwrap();
        let a = vec![vec![1, 2, 3, 4], vec![0, 1, 1, 1]];
        let ns = null_space(&f, &a, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &a {
                assert_eq!(f.dot(row, v), 0);
            }
        }
        assert_eq!(null_space(&f, &[], 3).len(), 3);
    }

    #[test]
    fn inverse_and_determinant() {
        let f = PrimeField::new(7).unwrap();
        let a = vec![vec![2, 3], vec![1, 4]];
        let inv = inverse(&f, &a).unwrap();
        assert!(is_identity(&f, &mat_mul(&f, &a, &inv)));
        assert_eq!(determinant(&f, &a), 5);
        let singular = vec![vec![1, 2], vec![2, 4]];
        assert!(inverse(&f, &singular).is_none());
        assert_eq!(determinant(&f, &singular), 0);
    }

    #[test]
    fn intersection_of_planes() {
        let f = PrimeField::new(2).unwrap();
        let u = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let v = vec![vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(intersection(&f, &u, &v, 3), vec![vec![0, 1, 0]]);
        assert!(contains(&f, &u, &[1, 1, 0]));
        assert!(!contains(&f, &u, &[0, 0, 1]));
    }

    #[test]
    fn combinations_cover_span() {
        let f = PrimeField::new(3).unwrap();
        let gens = vec![vec![1, 0, 1], vec![0, 1, 1]];
        let mut seen = std::collections::BTreeSet::new();
        for_each_combination(&f, &gens, 3, |v| {
            seen.insert(v.to_vec());
        });
        assert_eq!(seen.len(), 9);
        assert!(seen.contains(&vec![2, 1, 0]));
        let mut count = 0;
        for_each_combination(&f, &[], 2, |v| {
            assert_eq!(v, &[0, 0]);
            count += 1;
        });
        assert_eq!(count, 1);
    }
}
