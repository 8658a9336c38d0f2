//! Integer Smith normal form with the left transformation tracked.

/// `left · A · right = diag(d_1, …, d_r, 0, …)` with d_1 | d_2 | … and every
/// d_i > 0. `left` and `right` are unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<i128>,
    pub left: Vec<Vec<i128>>,
    pub right: Vec<Vec<i128>>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors larger than one.
    pub fn torsion(&self) -> Vec<i128> {
        self.diagonal.iter().copied().filter(|&d| d > 1).collect()
    }

    /// Rank of the cokernel ℤ^rows / im(A) beyond its torsion.
    pub fn cokernel_free_rank(&self) -> usize {
        self.rows - self.rank()
    }
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

pub fn smith_normal_form(matrix: &[Vec<i128>]) -> SmithForm {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> = matrix.to_vec();
    let mut left = identity(rows);
    let mut right = identity(cols);
    let mut diagonal = Vec::new();

    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return finish(diagonal, left, right, rows, cols);
            };
            a.swap(t, pi);
            left.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in right.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    for j in 0..cols {
                        a[i][j] -= q * a[t][j];
                    }
                    for j in 0..rows {
                        left[i][j] -= q * left[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    for i in 0..rows {
                        a[i][j] -= q * a[i][t];
                    }
                    for i in 0..cols {
                        right[i][j] -= q * right[i][t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % a[t][t] != 0));
            if let Some(i) = offender {
                for j in 0..cols {
                    a[t][j] += a[i][j];
                }
                for j in 0..rows {
                    left[t][j] += left[i][j];
                }
                continue;
            }
            break;
        }
        if a[t][t] < 0 {
            for j in 0..cols {
                a[t][j] = -a[t][j];
            }
            for j in 0..rows {
                left[t][j] = -left[t][j];
            }
        }
        diagonal.push(a[t][t]);
    }
    finish(diagonal, left, right, rows, cols)
}

fn finish(
    diagonal: Vec<i128>,
    left: Vec<Vec<i128>>,
    right: Vec<Vec<i128>>,
    rows: usize,
    cols: usize,
) -> SmithForm {
    SmithForm {
        diagonal,
        left,
        right,
        rows,
        cols,
    }
}

pub fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(matrix: &[Vec<i128>]) -> i128 {
    let n = matrix.len();
    let mut a = matrix.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}
