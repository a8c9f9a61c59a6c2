use num_bigint::BigInt;
use num_traits::Zero;

use crate::matrix::{DenseMatrix, IntMatrix};

/// Numerical rank by Gaussian elimination with complete pivoting; pivots at
/// or below `1e-8 · max(rows, cols) · max|entry|` count as zero.
pub fn matrix_rank(m: &DenseMatrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let scale = m.max_abs();
    if scale == 0.0 {
        return 0;
    }
    let threshold = 1e-8 * rows.max(cols) as f64 * scale;
    let mut a = m.to_rows();
    let mut rank = 0;
    while rank < rows.min(cols) {
        let mut best = (0.0, rank, rank);
        for (i, row) in a.iter().enumerate().skip(rank) {
            for (j, x) in row.iter().enumerate().skip(rank) {
                if x.abs() > best.0 {
                    best = (x.abs(), i, j);
                }
            }
        }
        let (pivot_abs, pi, pj) = best;
        if pivot_abs <= threshold {
            break;
        }
        a.swap(rank, pi);
        for row in a.iter_mut() {
            row.swap(rank, pj);
        }
        let pivot_row = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            let f = row[rank] / pivot_row[rank];
            if f != 0.0 {
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(rank) {
                    *x -= f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Exact rank over ℚ by fraction-free (Bareiss) elimination, in `i128` with
/// a big-integer fallback when an intermediate minor overflows.
pub fn integer_rank(m: &IntMatrix) -> usize {
    let rows: Vec<Vec<i128>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|&v| v as i128).collect())
        .collect();
    match bareiss_i128(rows) {
        Some(r) => r,
        None => bareiss_big(
            (0..m.rows())
                .map(|i| m.row(i).iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        ),
    }
}

fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev: i128 = 1;
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][col];
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let lead = row[col];
            for j in (col + 1)..ncols {
                let x = pivot
                    .checked_mul(row[j])?
                    .checked_sub(lead.checked_mul(pivot_row[j])?)?;
                row[j] = x / prev;
            }
            row[col] = 0;
        }
        prev = pivot;
        r += 1;
    }
    Some(r)
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][col].clone();
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let lead = row[col].clone();
            for j in (col + 1)..ncols {
                row[j] = (&pivot * &row[j] - &lead * &pivot_row[j]) / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::FlagComplex;
    use crate::graphs::{complete_graph, random_gnp, Graph};

    #[test]
    fn examples() {
        assert_eq!(matrix_rank(&DenseMatrix::zeros(3, 4)), 0);
        assert_eq!(integer_rank(&IntMatrix::zeros(3, 4)), 0);
        let x = FlagComplex::full(&complete_graph(2)).unwrap();
        let d0 = x.coboundary_matrix(0).unwrap();
        assert_eq!(integer_rank(&d0), 1);
        assert_eq!(matrix_rank(&d0.to_dense()), 1);
    }

    #[test]
    fn tree_incidence_rank() {
        // spanning tree on 7 vertices: rank n - components = 6
        let tree = Graph::new(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6)]).unwrap();
        let d0 = FlagComplex::full(&tree).unwrap().coboundary_matrix(0).unwrap();
        assert_eq!(integer_rank(&d0), 6);
        // forest with two trees: n - 2
        let forest = Graph::new(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let d0 = FlagComplex::full(&forest).unwrap().coboundary_matrix(0).unwrap();
        assert_eq!(integer_rank(&d0), 4);
    }

    #[test]
    fn exact_and_numerical_agree_on_coboundaries() {
        for seed in 0..6 {
            let x = FlagComplex::full(&random_gnp(9, 0.6, seed).unwrap()).unwrap();
            for k in -1..x.max_dim() as i64 {
                let d = x.coboundary_matrix(k).unwrap();
                assert_eq!(integer_rank(&d), matrix_rank(&d.to_dense()), "seed {seed} k {k}");
            }
        }
    }

    #[test]
    fn big_integer_fallback_matches() {
        // Hilbert-like integer matrix with large minors forces overflow
        let n = 24;
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| ((i as i64 + 3) * (j as i64 + 7)).pow(3) % 1_000_003 + i as i64).collect())
            .collect();
        let m = IntMatrix::from_rows(&rows).unwrap();
        let as_i128: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
        assert!(bareiss_i128(as_i128).is_none());
        let big = bareiss_big(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect());
        assert_eq!(integer_rank(&m), big);
        assert!(big <= n);
    }
}
