//! Small exact linear algebra over Z and Q.
//!
//! Matrices are row-major `Vec<Vec<BigInt>>`. Everything here is sized for
//! ambient rank at most a handful; nothing is asymptotically clever.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Rank over Q of a list of integer vectors (rows).
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    rank_rational(&mut m)
}

fn rank_rational(m: &mut [Vec<BigRational>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in (rank + 1)..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &m[rank][col];
            for c in col..cols {
                let delta = &factor * &m[rank][c];
                m[r][c] -= delta;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
pub fn det(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = ((k + 1)..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Solves `columns * x = rhs` for a nonsingular square system whose columns
/// are given as vectors. Returns `None` when singular.
pub fn solve_columns(columns: &[Vec<BigInt>], rhs: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = columns.len();
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = columns
                .iter()
                .map(|c| BigRational::from_integer(c[i].clone()))
                .collect();
            row.push(BigRational::from_integer(rhs[i].clone()));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let p = aug[col][col].clone();
        for c in col..=n {
            aug[col][c] = &aug[col][c] / &p;
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for c in col..=n {
                let delta = &factor * &aug[col][c];
                aug[r][c] -= delta;
            }
        }
    }
    Some(aug.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Diagonal of a lower-triangular Hermite form of the lattice spanned by
/// `columns` (nonsingular, square). The box `0 <= k_i < diag_i` is then a
/// complete set of coset representatives of `Z^n / lattice`.
pub fn hermite_diagonal(columns: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = columns.len();
    let mut cols: Vec<Vec<BigInt>> = columns.to_vec();
    for row in 0..n {
        // Column gcd steps on columns row..n to clear entries right of the pivot.
        for j in (row + 1)..n {
            if cols[j][row].is_zero() {
                continue;
            }
            let a = cols[row][row].clone();
            let b = cols[j][row].clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let a_g = &a / &g;
            let b_g = &b / &g;
            let new_pivot: Vec<BigInt> = (0..n)
                .map(|i| &x * &cols[row][i] + &y * &cols[j][i])
                .collect();
            let new_other: Vec<BigInt> = (0..n)
                .map(|i| &a_g * &cols[j][i] - &b_g * &cols[row][i])
                .collect();
            cols[row] = new_pivot;
            cols[j] = new_other;
        }
        if cols[row][row].is_negative() {
            for v in cols[row].iter_mut() {
                *v = -v.clone();
            }
        }
    }
    (0..n).map(|i| cols[i][i].clone()).collect()
}

/// Integer normal vector to the hyperplane spanned by `n - 1` vectors in
/// rank `n` (generalised cross product via signed maximal minors).
pub fn normal_vector(rows: &[Vec<BigInt>], n: usize) -> Vec<BigInt> {
    (0..n)
        .map(|skip| {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != skip)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let d = det(&minor);
            if skip % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Divides out the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn dot(u: &[BigInt], a: &[BigInt]) -> BigInt {
    u.iter().zip(a).map(|(x, y)| x * y).sum()
}

/// Iterator over all `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = k;
        let advanced = loop {
            if i == 0 {
                break false;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in (i + 1)..k {
                    next[j] = next[j - 1] + 1;
                }
                break true;
            }
        };
        current = if advanced { Some(next) } else { None };
        Some(out)
    })
}
