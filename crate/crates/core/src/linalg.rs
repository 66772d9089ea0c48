//! Exact integer linear algebra over `BigInt`: fraction-free determinants,
//! adjugates and row-style Hermite normal forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

pub fn from_i64(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Determinant by Bareiss elimination.
pub fn det(m: &Matrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn minor(m: &Matrix, skip_row: usize, skip_col: usize) -> Matrix {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != skip_row)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|&(j, _)| j != skip_col)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Classical adjugate, so that `adj(m) * m = det(m) * I`.
pub fn adjugate(m: &Matrix) -> Matrix {
    let n = m.len();
    if n == 1 {
        return vec![vec![BigInt::one()]];
    }
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = det(&minor(m, i, j));
            adj[j][i] = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    adj
}

/// Hermite normal form of the lattice spanned by the rows of `rows`.
///
/// Returns the nonzero rows in echelon form: pivots strictly increase to
/// the right, each pivot is positive, and entries above a pivot are reduced
/// into `[0, pivot)`.
pub fn hermite_rows(rows: &Matrix) -> Matrix {
    hermite_rows_with_transform(rows).0
}

/// Like [`hermite_rows`], but also tracks the unimodular transform: the
/// second component lists, for every row of the echelon form (including
/// trailing zero rows), its coefficients with respect to the input rows.
pub fn hermite_rows_with_transform(rows: &Matrix) -> (Matrix, Matrix) {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut a = rows.clone();
    let mut u: Matrix = (0..nrows)
        .map(|i| {
            (0..nrows)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();

    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        if pivot_row == nrows {
            break;
        }
        // gcd-eliminate everything below pivot_row in this column
        loop {
            let best = (pivot_row..nrows)
                .filter(|&r| !a[r][col].is_zero())
                .min_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()));
            let Some(best) = best else { break };
            a.swap(pivot_row, best);
            u.swap(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..nrows {
                if a[r][col].is_zero() {
                    continue;
                }
                let q = a[r][col].div_floor(&a[pivot_row][col]);
                row_axpy(&mut a, r, pivot_row, &q);
                row_axpy(&mut u, r, pivot_row, &q);
                if !a[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[pivot_row][col].is_zero() {
            continue;
        }
        if a[pivot_row][col].is_negative() {
            negate_row(&mut a, pivot_row);
            negate_row(&mut u, pivot_row);
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }

    for &(pr, col) in &pivots {
        for r in 0..pr {
            let q = a[r][col].div_floor(&a[pr][col]);
            if !q.is_zero() {
                row_axpy(&mut a, r, pr, &q);
                row_axpy(&mut u, r, pr, &q);
            }
        }
    }

    a.truncate(pivot_row);
    (a, u)
}

// rows[target] -= q * rows[source]
fn row_axpy(m: &mut Matrix, target: usize, source: usize, q: &BigInt) {
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(src.iter()) {
        *t -= q * s;
    }
}

fn negate_row(m: &mut Matrix, r: usize) {
    for x in m[r].iter_mut() {
        *x = -x.clone();
    }
}

/// Basis of the integer kernel `{u ∈ ℤⁿ : u·M = 0}` where `M` has `n` rows.
pub fn integer_left_kernel(m: &Matrix) -> Matrix {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let (h, u) = hermite_rows_with_transform(m);
    let rank = h.len();
    debug_assert!(rank <= ncols);
    u[rank..nrows].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Matrix {
        from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn det_small() {
        assert_eq!(det(&mat(&[&[2, 0], &[0, 3]])), BigInt::from(6));
        assert_eq!(det(&mat(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det(&mat(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(
            det(&mat(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]])),
            BigInt::from(2)
        );
    }

    #[test]
    fn adjugate_inverts() {
        let m = mat(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let adj = adjugate(&m);
        let d = det(&m);
        for i in 0..3 {
            for j in 0..3 {
                let s: BigInt = (0..3).map(|l| &adj[i][l] * &m[l][j]).sum();
                let expect = if i == j { d.clone() } else { BigInt::zero() };
                assert_eq!(s, expect);
            }
        }
    }

    #[test]
    fn hermite_index_two() {
        let h = hermite_rows(&mat(&[&[4, 2], &[2, 2], &[0, 2]]));
        assert_eq!(h, mat(&[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn kernel_of_column() {
        let k = integer_left_kernel(&mat(&[&[1], &[1], &[2]]));
        assert_eq!(k.len(), 2);
        for row in &k {
            let s: BigInt = row[0].clone() + &row[1] + &row[2] * 2;
            assert!(s.is_zero());
        }
    }
}
