//! Dense numeric linear algebra: rank and determinant over finite fields,
//! exact determinant over `Z`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::field::FiniteField;

/// Rank of `m` over `f` by Gaussian elimination (destroys `m`).
pub fn rank<F: FiniteField>(f: &F, m: &mut [Vec<u64>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = f.inv(m[r][c]);
        for i in r + 1..rows {
            if m[i][c] == 0 {
                continue;
            }
            let factor = f.mul(m[i][c], inv);
            for j in c..cols {
                let t = f.mul(factor, m[r][j]);
                m[i][j] = f.sub(m[i][j], t);
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Determinant of a square matrix over `f` (destroys `m`).
pub fn det<F: FiniteField>(f: &F, m: &mut [Vec<u64>]) -> u64 {
    let n = m.len();
    let mut acc = 1;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| m[i][c] != 0) else {
            return 0;
        };
        if piv != c {
            m.swap(c, piv);
            acc = f.neg(acc);
        }
        acc = f.mul(acc, m[c][c]);
        let inv = f.inv(m[c][c]);
        for i in c + 1..n {
            if m[i][c] == 0 {
                continue;
            }
            let factor = f.mul(m[i][c], inv);
            for j in c..n {
                let t = f.mul(factor, m[c][j]);
                m[i][j] = f.sub(m[i][j], t);
            }
        }
    }
    acc
}

/// Exact integer determinant by fraction-free elimination, in `i128` while
/// it fits and in `BigInt` afterwards.
pub fn det_integer(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    match bareiss_i128(&mut a) {
        Some(d) => BigInt::from(d),
        None => {
            let b: Vec<Vec<BigInt>> = m
                .iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            debug_assert!(b.len() == n);
            bareiss_big(b)
        }
    }
}

fn bareiss_i128(a: &mut [Vec<i128>]) -> Option<i128> {
    let n = a.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(piv) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return Some(0);
            };
            a.swap(k, piv);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = a[i][j].checked_mul(a[k][k])?;
                let y = a[i][k].checked_mul(a[k][j])?;
                a[i][j] = x.checked_sub(y)? / prev;
            }
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(piv) => {
                    a.swap(k, piv);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
