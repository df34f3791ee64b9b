use num_traits::Zero;

use super::{Basis, ExactScalar, Matrix};

fn row_nnz(row: &[ExactScalar]) -> usize {
    row.iter().filter(|v| !v.is_zero()).count()
}

/// In-place reduced row echelon form over dense rows. Among the candidate
/// pivot rows for a column the sparsest one wins, ties going to the lowest
/// index, so the result is a pure function of the input.
pub(crate) fn rref_rows(rows: &mut [Vec<ExactScalar>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(best) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| row_nnz(&rows[i]))
        else {
            continue;
        };
        rows.swap(r, best);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        let support: Vec<usize> = (c..ncols).filter(|&k| !rows[r][k].is_zero()).collect();
        for &k in &support {
            rows[r][k] = &rows[r][k] * &inv;
        }
        let (before, rest) = rows.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("row r exists");
        for row in before.iter_mut().chain(after.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &k in &support {
                let delta = &factor * &pivot_row[k];
                row[k] -= &delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form and the (increasing) pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut rows = m.to_dense();
    let pivots = rref_rows(&mut rows, m.cols());
    (Matrix::from_dense(m.rows(), m.cols(), rows), pivots)
}

pub fn rank(m: &Matrix) -> usize {
    if m.is_zero() {
        return 0;
    }
    let mut rows = m.to_dense();
    rref_rows(&mut rows, m.cols()).len()
}

/// Basis of `{v : m·v = 0}`, one vector per free column.
pub fn kernel_basis(m: &Matrix) -> Basis {
    let n = m.cols();
    if m.is_zero() {
        return Basis::standard(n);
    }
    let mut rows = m.to_dense();
    let pivots = rref_rows(&mut rows, n);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![ExactScalar::zero(); n];
            v[f] = num_traits::One::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&rows[i][f];
            }
            v
        })
        .collect();
    Basis::from_independent(n, vectors)
}

/// Basis of the column space, given by the pivot columns of `m` itself.
pub fn image_basis(m: &Matrix) -> Basis {
    if m.is_zero() {
        return Basis::empty(m.rows());
    }
    let (_, pivots) = rref(m);
    let vectors = pivots.iter().map(|&c| m.column(c)).collect();
    Basis::from_independent(m.rows(), vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Fraction-free (Bareiss) elimination over the Gaussian integers,
    /// written against plain `(i128, i128)` pairs.
    fn bareiss_rank(mut a: Vec<Vec<(i128, i128)>>) -> usize {
        fn mul(x: (i128, i128), y: (i128, i128)) -> (i128, i128) {
            (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)
        }
        fn sub(x: (i128, i128), y: (i128, i128)) -> (i128, i128) {
            (x.0 - y.0, x.1 - y.1)
        }
        fn div_exact(x: (i128, i128), y: (i128, i128)) -> (i128, i128) {
            let n = y.0 * y.0 + y.1 * y.1;
            let num = mul(x, (y.0, -y.1));
            assert!(num.0 % n == 0 && num.1 % n == 0, "Bareiss division not exact");
            (num.0 / n, num.1 / n)
        }
        let rows = a.len();
        let cols = if rows == 0 { 0 } else { a[0].len() };
        let mut prev = (1i128, 0i128);
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| a[i][c] != (0, 0)) else {
                continue;
            };
            a.swap(r, p);
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let t = sub(mul(a[r][c], a[i][j]), mul(a[i][c], a[r][j]));
                    a[i][j] = div_exact(t, prev);
                }
                a[i][c] = (0, 0);
            }
            prev = a[r][c];
            r += 1;
        }
        r
    }

    fn random_gaussian_int_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<(i128, i128)>> {
        (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| {
                        if rng.gen_bool(0.4) {
                            (0, 0)
                        } else {
                            (rng.gen_range(-4..=4), rng.gen_range(-4..=4))
                        }
                    })
                    .collect()
            })
            .collect()
    }

    fn to_matrix(a: &[Vec<(i128, i128)>], cols: usize) -> Matrix {
        let data = a
            .iter()
            .map(|r| r.iter().map(|&(x, y)| ExactScalar::gaussian(x as i64, y as i64)).collect())
            .collect();
        Matrix::from_dense(a.len(), cols, data)
    }

    #[test]
    fn rref_identity_and_rank_one() {
        let (r, p) = rref(&Matrix::identity(2));
        assert_eq!(r, Matrix::identity(2));
        assert_eq!(p, vec![0, 1]);
        let (r, p) = rref(&Matrix::from_ints(&[&[1, 1], &[1, 1]]));
        assert_eq!(r, Matrix::from_ints(&[&[1, 1], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rank_matches_fraction_free_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for trial in 0..200 {
            let (rows, cols) = if trial < 100 { (5, 7) } else { (rng.gen_range(1..7), rng.gen_range(1..7)) };
            let mut a = random_gaussian_int_matrix(&mut rng, rows, cols);
            // force some rank deficiency half the time
            if trial % 2 == 0 && rows > 2 {
                let combo: Vec<_> = (0..cols)
                    .map(|j| (a[0][j].0 + 2 * a[1][j].0 - a[1][j].1, a[0][j].1 + 2 * a[1][j].1 + a[1][j].0))
                    .collect();
                a[rows - 1] = combo;
            }
            let m = to_matrix(&a, cols);
            assert_eq!(rank(&m), bareiss_rank(a.clone()), "trial {trial}");
        }
    }

    #[test]
    fn rref_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let a = random_gaussian_int_matrix(&mut rng, 4, 6);
            let (r, p) = rref(&to_matrix(&a, 6));
            let (rr, pp) = rref(&r);
            assert_eq!(r, rr);
            assert_eq!(p, pp);
        }
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(3)).dim(), 0);
        let k = kernel_basis(&Matrix::from_ints(&[&[1, 1], &[1, 1]]));
        assert_eq!(k.dim(), 1);
        let v = &k.vectors()[0];
        assert_eq!(v[0], -&v[1]);
    }

    #[test]
    fn kernel_multiplies_back_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..8);
            let m = to_matrix(&random_gaussian_int_matrix(&mut rng, rows, cols), cols);
            let k = kernel_basis(&m);
            assert_eq!(k.dim() + rank(&m), cols);
            for v in k.vectors() {
                assert!(m.apply(v).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn image_contains_every_column() {
        assert_eq!(image_basis(&Matrix::zeros(3, 2)).dim(), 0);
        assert_eq!(image_basis(&Matrix::identity(4)).dim(), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..8);
            let m = to_matrix(&random_gaussian_int_matrix(&mut rng, rows, cols), cols);
            let im = image_basis(&m);
            assert_eq!(im.dim(), rank(&m));
            for c in 0..cols {
                // membership via rref of [basis | column]
                let stacked = im.as_matrix().hstack(&Matrix::from_columns(rows, &[m.column(c)]));
                assert_eq!(rank(&stacked), im.dim());
            }
        }
    }
}
