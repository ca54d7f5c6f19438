//! Oracles and fixtures shared by the integration tests. Nothing here calls
//! into the library's own linear algebra or Pfaffian code.
#![allow(dead_code)]

use gggr_core::{
    wdd, Domain, GradedPieces, GramMatrix, Monomial, RootSystem, SparsePoly, StructureConstants,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub fn root_system(t: &str) -> RootSystem {
    RootSystem::new(t.parse().unwrap()).unwrap()
}

pub fn gram(t: &str, key: &str) -> GramMatrix {
    let rs = root_system(t);
    let sc = StructureConstants::new(&rs);
    let d = wdd::find_diagram(&rs, key).unwrap();
    GramMatrix::build(&sc, &GradedPieces::new(&rs, &d)).unwrap()
}

/// Textbook fraction-free elimination with row swaps, over `BigInt`.
pub fn bareiss(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
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
                let (q, r) = v.div_rem(&prev);
                assert!(r.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn bareiss_i64(m: &[Vec<i64>]) -> BigInt {
    let big: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    bareiss(&big)
}

/// Rewrites `poly` (variables indexed as in `g`) in the variable order
/// `order`, given as the digit strings of the weight-2 roots.
pub fn in_order(poly: &SparsePoly, g: &GramMatrix, order: &[&str]) -> SparsePoly {
    assert_eq!(order.len(), g.m(), "variable list has the wrong length");
    let target: Vec<usize> = g
        .var_labels()
        .iter()
        .map(|r| {
            order
                .iter()
                .position(|o| o == r)
                .unwrap_or_else(|| panic!("{r} missing from the listed variables"))
        })
        .collect();
    let terms = poly.terms().iter().map(|(mono, c)| {
        let mut exps = vec![0u16; order.len()];
        for (i, &e) in mono.exponents().iter().enumerate() {
            exps[target[i]] = e;
        }
        (Monomial::from_exponents(&exps), c.clone())
    });
    SparsePoly::from_terms(order.len(), poly.domain(), terms)
}

/// Whether some substitution `x_i -> ±x_i` turns `a` into `b`.
pub fn equal_up_to_sign_flips(a: &SparsePoly, b: &SparsePoly) -> bool {
    let m = a.nvars();
    assert!(m <= 16);
    (0u32..1 << m).any(|mask| {
        let flips: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
        &a.flip_signs(&flips) == b
    })
}

pub fn parse(text: &str, nvars: usize) -> SparsePoly {
    SparsePoly::parse(text, nvars, Domain::Integer).unwrap()
}

/// Parses a printed matrix: one row per line, cells such as `0`, `x3`,
/// `-2x1`, separated by whitespace. Returns `(coeff, var)` per cell, with
/// 0-based variables.
pub fn parse_printed(text: &str) -> Vec<Vec<Option<(i64, usize)>>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|line| {
            line.split_whitespace()
                .map(|cell| {
                    if cell == "0" {
                        return None;
                    }
                    let (sign, rest) = match cell.strip_prefix('-') {
                        Some(r) => (-1, r),
                        None => (1, cell),
                    };
                    let (c, v) = rest.split_once('x').expect("cell has a variable");
                    let c: i64 = if c.is_empty() { 1 } else { c.parse().unwrap() };
                    Some((sign * c, v.parse::<usize>().unwrap() - 1))
                })
                .collect()
        })
        .collect()
}

/// Whether `g` turns into `printed` (variables numbered as in `order`)
/// under `e_β ↦ ±e_β` on rows, `x_l ↦ ±x_l`, and a global sign: a linear
/// system over F_2 in the unknown signs.
pub fn matches_printed(g: &GramMatrix, order: &[&str], printed: &[Vec<Option<(i64, usize)>>]) -> bool {
    let n = g.n();
    let m = order.len();
    assert!(n + m + 1 <= 64);
    if printed.len() != n || printed.iter().any(|r| r.len() != n) {
        return false;
    }
    let var_of: Vec<usize> = g
        .var_labels()
        .iter()
        .map(|r| order.iter().position(|o| o == r).expect("listed variable"))
        .collect();
    let mut rows: Vec<(u64, bool)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            match (g.entry(i, j), printed[i][j]) {
                (None, None) => {}
                (Some(e), Some((c, v))) => {
                    if var_of[e.var] != v || e.coeff.abs() != c.abs() {
                        return false;
                    }
                    let mask = (1u64 << i) ^ (1u64 << j) ^ (1u64 << (n + v)) ^ (1u64 << (n + m));
                    rows.push((mask, (e.coeff < 0) != (c < 0)));
                }
                _ => return false,
            }
        }
    }
    // elimination over F_2
    let mut pivots: Vec<(u64, bool)> = Vec::new();
    for (mut mask, mut rhs) in rows {
        for &(p, r) in &pivots {
            if mask & (p & p.wrapping_neg()) != 0 {
                mask ^= p;
                rhs ^= r;
            }
        }
        if mask == 0 {
            if rhs {
                return false;
            }
            continue;
        }
        let low = mask & mask.wrapping_neg();
        for (p, r) in pivots.iter_mut() {
            if *p & low != 0 {
                *p ^= mask;
                *r ^= rhs;
            }
        }
        pivots.push((mask, rhs));
    }
    true
}
