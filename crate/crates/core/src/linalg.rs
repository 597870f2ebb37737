//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Everything here is eigen-free: determinants use fraction-free Bareiss
//! elimination over `BigInt`, semidefiniteness uses symmetric pivoting over
//! `BigRational`, and integer kernels come from unimodular column echelon
//! reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Determinant of a square integer matrix.
pub fn det(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(
        rows.iter().all(|r| r.len() == n),
        "det of a non-square matrix"
    );
    let mut m = to_big(rows);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Rank over the rationals of an arbitrary integer matrix.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[r][c];
            let (top, bottom) = m.split_at_mut(i);
            for (x, y) in bottom[0][c..ncols].iter_mut().zip(&top[r][c..ncols]) {
                *x -= &f * y;
            }
        }
        r += 1;
    }
    r
}

/// Whether a symmetric integer matrix is positive semidefinite.
///
/// Symmetric Gaussian elimination: a negative diagonal entry, or a zero
/// diagonal entry with a nonzero entry in its row, certifies indefiniteness.
pub fn is_positive_semidefinite(rows: &[Vec<i64>]) -> bool {
    let n = rows.len();
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let mut alive: Vec<bool> = vec![true; n];
    loop {
        let live: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
        if live.is_empty() {
            return true;
        }
        if live.iter().any(|&i| m[i][i].is_negative()) {
            return false;
        }
        // Zero diagonal rows must vanish entirely; drop them.
        let mut dropped = false;
        for &i in &live {
            if m[i][i].is_zero() {
                if live.iter().any(|&j| !m[i][j].is_zero()) {
                    return false;
                }
                alive[i] = false;
                dropped = true;
            }
        }
        if dropped {
            continue;
        }
        let p = live[0];
        alive[p] = false;
        let rest: Vec<usize> = live[1..].to_vec();
        for &i in &rest {
            let f = &m[i][p] / &m[p][p];
            for &j in &rest {
                let v = &f * &m[p][j];
                m[i][j] -= v;
            }
        }
    }
}

/// Basis of the integer kernel `{ x in Z^r : A x = 0 }` of a `k x r` matrix.
///
/// The returned vectors form a Z-basis of the kernel lattice, which is always
/// saturated in Z^r.
pub fn integer_kernel(a: &[Vec<i64>], ncols: usize) -> Result<Vec<Vec<i64>>> {
    let mut m = to_big(a);
    // Columns of u track the unimodular column operations.
    let mut u: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| {
            (0..ncols)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut pivot = 0usize;
    for row in 0..m.len() {
        if pivot == ncols {
            break;
        }
        // Euclid on columns pivot..ncols until only column `pivot` is nonzero in `row`.
        loop {
            let nz: Vec<usize> = (pivot..ncols).filter(|&c| !m[row][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz
                .iter()
                .min_by_key(|&&c| m[row][c].abs())
                .expect("nonempty");
            swap_cols(&mut m, &mut u, pivot, best);
            let mut done = true;
            for c in pivot + 1..ncols {
                if m[row][c].is_zero() {
                    continue;
                }
                let q = m[row][c].div_floor(&m[row][pivot]);
                axpy_col(&mut m, &mut u, c, pivot, &q);
                if !m[row][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !m[row][pivot].is_zero() {
            pivot += 1;
        }
    }
    (pivot..ncols)
        .map(|c| {
            (0..ncols)
                .map(|i| u[i][c].to_i64().ok_or(Error::Overflow("integer kernel")))
                .collect()
        })
        .collect()
}

fn swap_cols(m: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for r in m.iter_mut().chain(u.iter_mut()) {
        r.swap(a, b);
    }
}

// col[c] -= q * col[p]
fn axpy_col(m: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], c: usize, p: usize, q: &BigInt) {
    for r in m.iter_mut().chain(u.iter_mut()) {
        let v = q * &r[p];
        r[c] -= v;
    }
}

/// `rows^T * gram * cols` style product for lists of integer vectors.
pub fn gram_of(vectors: &[Vec<i64>], gram: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    vectors
        .iter()
        .map(|v| {
            vectors
                .iter()
                .map(|w| bilinear(gram, v, w))
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

/// `v^T * gram * w` with checked arithmetic.
pub fn bilinear(gram: &[Vec<i64>], v: &[i64], w: &[i64]) -> Result<i64> {
    let mut acc: i64 = 0;
    for (i, row) in gram.iter().enumerate() {
        if v[i] == 0 {
            continue;
        }
        let mut inner: i64 = 0;
        for (j, &g) in row.iter().enumerate() {
            if g == 0 || w[j] == 0 {
                continue;
            }
            let t = g.checked_mul(w[j]).ok_or(Error::Overflow("intersection"))?;
            inner = inner
                .checked_add(t)
                .ok_or(Error::Overflow("intersection"))?;
        }
        let t = v[i]
            .checked_mul(inner)
            .ok_or(Error::Overflow("intersection"))?;
        acc = acc.checked_add(t).ok_or(Error::Overflow("intersection"))?;
    }
    Ok(acc)
}
