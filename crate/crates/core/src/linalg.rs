//! Small dense linear-algebra helpers used by the ideal and representation code.

use num_bigint::BigInt;
use num_traits::Zero;

/// Pivot threshold for floating-point row reduction.
pub const PIVOT_TOL: f64 = 1e-9;

/// Row-reduces `rows` (each of equal length) and returns the indices of the
/// rows that were independent of the previous ones, in input order.
pub fn independent_rows(rows: &[Vec<f64>]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<f64>)> = Vec::new();
    let mut picked = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        for (pivot, b) in &basis {
            let f = r[*pivot];
            if f != 0.0 {
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= f * y;
                }
            }
        }
        let scale = row.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
        let (pivot, pv) = r.iter().enumerate().fold((0, 0.0f64), |(bi, bv), (i, v)| {
            if v.abs() > bv.abs() {
                (i, *v)
            } else {
                (bi, bv)
            }
        });
        if pv.abs() > PIVOT_TOL * scale {
            for x in r.iter_mut() {
                *x /= pv;
            }
            // keep the basis fully reduced in the new pivot column
            for (_, b) in basis.iter_mut() {
                let f = b[pivot];
                if f != 0.0 {
                    for (x, y) in b.iter_mut().zip(&r) {
                        *x -= f * y;
                    }
                }
            }
            basis.push((pivot, r));
            picked.push(idx);
        }
    }
    picked
}

pub fn rank_f64(rows: &[Vec<f64>]) -> usize {
    independent_rows(rows).len()
}

/// Exact rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn rank_exact(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let nrows = m.len();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Converts a row of dyadic rationals to integers after multiplying by
/// `2^shift`. Returns `None` if any entry is not an exact multiple of
/// `2^-shift`.
pub fn dyadic_to_int(row: &[f64], shift: i32) -> Option<Vec<i64>> {
    let scale = 2f64.powi(shift);
    row.iter()
        .map(|&x| {
            let y = x * scale;
            (y.fract() == 0.0 && y.abs() < 9.0e15).then_some(y as i64)
        })
        .collect()
}

/// SVD least-squares coefficients of `target`
/// in the span of `columns`. Returns the coefficients and the residual norm.
pub fn least_squares(columns: &[Vec<f64>], target: &[f64]) -> (Vec<f64>, f64) {
    let k = columns.len();
    let n = target.len();
    let a = nalgebra::DMatrix::from_fn(n, k, |i, j| columns[j][i]);
    let b = nalgebra::DVector::from_column_slice(target);
    let svd = a.clone().svd(true, true);
    let x = svd
        .solve(&b, 1e-12)
        .unwrap_or_else(|_| nalgebra::DVector::zeros(k));
    let r = &a * &x - &b;
    (x.iter().copied().collect(), r.norm())
}
