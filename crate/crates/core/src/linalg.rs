//! Exact kernels over `Z` and `F2`.
//!
//! Integer kernels are computed by unimodular column reduction, so the returned
//! vectors are a basis of the full kernel lattice (not just a finite-index
//! sublattice). Bases are then put into Hermite normal form so that two lattices
//! are equal exactly when their canonical bases are equal.

use num_traits::Zero;

use crate::rings::{Coefficient, F2};

pub trait KernelRing: Coefficient {
    /// A basis of `{ v : M v = 0 }` for the `rows` of `M`, each of length `ncols`.
    fn kernel(rows: &[Vec<Self>], ncols: usize) -> Vec<Vec<Self>>;

    /// Canonical basis of the span of `vectors` (Hermite normal form over `Z`,
    /// reduced row echelon form over `F2`).
    fn canonical_basis(vectors: &[Vec<Self>], ncols: usize) -> Vec<Vec<Self>>;
}

impl KernelRing for i64 {
    fn kernel(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
        let kernel = integer_kernel(rows, ncols);
        hermite_normal_form(&kernel, ncols)
    }

    fn canonical_basis(vectors: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
        hermite_normal_form(vectors, ncols)
    }
}

impl KernelRing for F2 {
    fn kernel(rows: &[Vec<F2>], ncols: usize) -> Vec<Vec<F2>> {
        gf2_kernel(rows, ncols)
    }

    fn canonical_basis(vectors: &[Vec<F2>], ncols: usize) -> Vec<Vec<F2>> {
        let (rref, _) = gf2_rref(vectors, ncols);
        rref
    }
}

/// Column-reduces `M` by unimodular operations, tracking them in `U`; the columns
/// of `U` that become zero in `M·U` span the kernel lattice.
pub fn integer_kernel(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = rows.to_vec();
    let mut u: Vec<Vec<i64>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| i64::from(i == j)).collect())
        .collect();
    // Column operations on m (stored row-major) mirrored on u (stored column-major: u[col]).
    let mut pivot = 0;
    for r in 0..m.len() {
        if pivot == ncols {
            break;
        }
        loop {
            let best = (pivot..ncols)
                .filter(|&c| m[r][c] != 0)
                .min_by_key(|&c| m[r][c].unsigned_abs());
            let Some(best) = best else { break };
            swap_cols(&mut m, &mut u, pivot, best);
            let mut done = true;
            for c in pivot + 1..ncols {
                if m[r][c] != 0 {
                    let q = m[r][c].div_euclid(m[r][pivot]);
                    add_col_multiple(&mut m, &mut u, c, pivot, -q);
                    if m[r][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[r][pivot] != 0 {
            pivot += 1;
        }
    }
    u[pivot..].to_vec()
}

fn swap_cols(m: &mut [Vec<i64>], u: &mut [Vec<i64>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
    u.swap(a, b);
}

/// `col[target] += k · col[source]`.
fn add_col_multiple(m: &mut [Vec<i64>], u: &mut [Vec<i64>], target: usize, source: usize, k: i64) {
    for row in m.iter_mut() {
        row[target] += k * row[source];
    }
    let src = u[source].clone();
    for (t, s) in u[target].iter_mut().zip(src) {
        *t += k * s;
    }
}

/// Row-style Hermite normal form: echelon, positive pivots, entries above each
/// pivot reduced into `0..pivot`. Zero rows are dropped.
pub fn hermite_normal_form(vectors: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = vectors.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        loop {
            let best = (top..rows.len())
                .filter(|&r| rows[r][col] != 0)
                .min_by_key(|&r| rows[r][col].unsigned_abs());
            let Some(best) = best else { break };
            rows.swap(top, best);
            let mut done = true;
            for r in top + 1..rows.len() {
                if rows[r][col] != 0 {
                    let q = rows[r][col].div_euclid(rows[top][col]);
                    let pivot_row = rows[top].clone();
                    for (x, p) in rows[r].iter_mut().zip(&pivot_row) {
                        *x -= q * p;
                    }
                    if rows[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if top < rows.len() && rows[top][col] != 0 {
            if rows[top][col] < 0 {
                for x in rows[top].iter_mut() {
                    *x = -*x;
                }
            }
            let pivot_row = rows[top].clone();
            for row in rows.iter_mut().take(top) {
                let q = row[col].div_euclid(pivot_row[col]);
                if q != 0 {
                    for (x, p) in row.iter_mut().zip(&pivot_row) {
                        *x -= q * p;
                    }
                }
            }
            top += 1;
        }
    }
    rows.truncate(top);
    rows
}

/// Reduced row echelon form over `F2` and the pivot columns.
pub fn gf2_rref(vectors: &[Vec<F2>], ncols: usize) -> (Vec<Vec<F2>>, Vec<usize>) {
    let mut rows: Vec<Vec<F2>> = vectors.to_vec();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(p) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(top, p);
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != top && !row[col].is_zero() {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = *x + *y;
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    (rows, pivots)
}

pub fn gf2_kernel(rows: &[Vec<F2>], ncols: usize) -> Vec<Vec<F2>> {
    let (rref, pivots) = gf2_rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F2::ZERO; ncols];
            v[f] = F2::ONE;
            for (row, &p) in rref.iter().zip(&pivots) {
                v[p] = row[f];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn apply(rows: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
        rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    #[test]
    fn kernel_of_small_integer_matrix() {
        // x + 2y + 3z = 0 has kernel lattice of rank 2.
        let m = vec![vec![1, 2, 3]];
        let k = i64::kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(apply(&m, v), vec![0]);
        }
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x - 2y = 0: the kernel is spanned by (1, 1), not (2, 2).
        let k = i64::kernel(&[vec![2, -2]], 2);
        assert_eq!(k, vec![vec![1, 1]]);
    }

    #[test]
    fn hermite_form_identifies_equal_lattices() {
        let a = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let b = vec![vec![1, 2, 1], vec![-1, -1, 0]];
        assert_eq!(hermite_normal_form(&a, 3), hermite_normal_form(&b, 3));
        let c = vec![vec![2, 2, 0], vec![0, 1, 1]];
        assert_ne!(hermite_normal_form(&a, 3), hermite_normal_form(&c, 3));
    }

    #[test]
    fn gf2_kernel_example() {
        let o = F2::ONE;
        let z = F2::ZERO;
        let k = gf2_kernel(&[vec![o, o, z], vec![z, o, o]], 3);
        assert_eq!(k, vec![vec![o, o, o]]);
    }

    proptest! {
        #[test]
        fn integer_kernel_vectors_are_annihilated(
            rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 0..4)
        ) {
            let k = i64::kernel(&rows, 5);
            for v in &k {
                prop_assert!(apply(&rows, v).iter().all(|&x| x == 0));
            }
            // rank-nullity over Q: rank of the row space plus kernel rank equals 5
            let rank = hermite_normal_form(&rows, 5).len();
            prop_assert_eq!(rank + k.len(), 5);
        }
    }
}
