//! Pfaffians of antisymmetric polynomial matrices by memoized row
//! expansion.
//!
//! Subproblems are identified by the set of surviving indices, so the memo
//! key is a bitmask. Each step expands along the surviving row with the
//! fewest nonzero entries.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg;
use crate::poly::{Domain, SparsePoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewPolyMatrix {
    n: usize,
    nvars: usize,
    domain: Domain,
    entries: Vec<Vec<SparsePoly>>,
}

impl SkewPolyMatrix {
    /// Validates shape, matching domains, zero diagonal and antisymmetry.
    pub fn new(entries: Vec<Vec<SparsePoly>>) -> Result<Self> {
        let n = entries.len();
        if n > 64 {
            return Err(Error::Contract(format!("dimension {n} exceeds 64")));
        }
        let (nvars, domain) = match entries.first().and_then(|r| r.first()) {
            Some(p) => (p.nvars(), p.domain()),
            None => (0, Domain::Integer),
        };
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Contract(format!("row {i} has length {}", row.len())));
            }
            for (j, e) in row.iter().enumerate() {
                if e.nvars() != nvars || e.domain() != domain {
                    return Err(Error::Contract(format!("entry ({i},{j}) has another ring")));
                }
                if i == j && !e.is_zero() {
                    return Err(Error::Contract(format!("diagonal entry {i} is nonzero")));
                }
                if j > i && *e != entries[j][i].neg() {
                    return Err(Error::Contract(format!("not antisymmetric at ({i},{j})")));
                }
            }
        }
        Ok(SkewPolyMatrix {
            n,
            nvars,
            domain,
            entries,
        })
    }

    /// Integer matrix viewed as constant polynomials.
    pub fn from_integers(m: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            m.iter()
                .map(|row| {
                    row.iter()
                        .map(|&x| SparsePoly::constant(0, Domain::Integer, x))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn entry(&self, i: usize, j: usize) -> &SparsePoly {
        &self.entries[i][j]
    }

    pub fn reduce_mod(&self, p: u64) -> Result<SkewPolyMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.reduce_mod(p)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        Ok(SkewPolyMatrix {
            n: self.n,
            nvars: self.nvars,
            domain: Domain::Modular(p),
            entries,
        })
    }

    /// Simultaneous permutation of rows and columns: new index `k` is old
    /// index `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> SkewPolyMatrix {
        let entries = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect();
        SkewPolyMatrix {
            entries,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PfaffianOptions {
    /// Upper bound on term multiplications; `None` means unlimited.
    pub max_steps: Option<u64>,
    /// Memo stops growing once it holds this many terms in total.
    pub memo_cap_terms: usize,
}

impl Default for PfaffianOptions {
    fn default() -> Self {
        PfaffianOptions {
            max_steps: None,
            memo_cap_terms: 8_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PfaffianStats {
    pub steps: u64,
    pub memo_entries: usize,
    pub memo_terms: usize,
    pub memo_hits: u64,
    pub memo_full: bool,
}

struct Expander<'a> {
    m: &'a SkewPolyMatrix,
    /// Bitmask of nonzero columns per row.
    support: Vec<u64>,
    memo: HashMap<u64, SparsePoly>,
    opts: PfaffianOptions,
    stats: PfaffianStats,
}

impl Expander<'_> {
    fn pf(&mut self, set: u64) -> Result<SparsePoly> {
        if set == 0 {
            return Ok(SparsePoly::constant(self.m.nvars, self.m.domain, 1));
        }
        if let Some(v) = self.memo.get(&set) {
            self.stats.memo_hits += 1;
            return Ok(v.clone());
        }
        let mut pivot = None;
        let mut best = u32::MAX;
        let mut bits = set;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let deg = (self.support[i] & set).count_ones();
            if deg < best {
                best = deg;
                pivot = Some(i);
            }
        }
        let i = pivot.expect("nonempty set");
        let zero = SparsePoly::zero(self.m.nvars, self.m.domain);
        if best == 0 {
            return Ok(zero);
        }
        let pos_i = (set & ((1u64 << i) - 1)).count_ones() as usize;
        let mut acc = zero;
        let mut cols = self.support[i] & set;
        while cols != 0 {
            let j = cols.trailing_zeros() as usize;
            cols &= cols - 1;
            let rest = set & !(1u64 << i) & !(1u64 << j);
            let sub = self.pf(rest)?;
            if sub.is_zero() {
                continue;
            }
            let pos_j = (set & ((1u64 << j) - 1)).count_ones() as usize;
            // (-1)^(i+j+1+[i>j]) with 1-based positions; same parity with 0-based
            let odd = (pos_i + pos_j + 1 + usize::from(pos_i > pos_j)) % 2 == 1;
            let a = &self.m.entries[i][j];
            let a = if odd { a.neg() } else { a.clone() };
            let term = if a.monomial_count() == 1 {
                let (mono, c) = &a.terms()[0];
                sub.mul_term(c, mono)
            } else {
                &a * &sub
            };
            self.stats.steps += (a.monomial_count() * sub.monomial_count()) as u64;
            if let Some(limit) = self.opts.max_steps {
                if self.stats.steps > limit {
                    return Err(Error::Budget(format!(
                        "Pfaffian expansion exceeded {limit} steps"
                    )));
                }
            }
            acc.add_assign(&term);
        }
        if !self.stats.memo_full {
            let size = acc.monomial_count().max(1);
            if self.stats.memo_terms + size > self.opts.memo_cap_terms {
                self.stats.memo_full = true;
            } else {
                self.stats.memo_terms += size;
                self.stats.memo_entries += 1;
                self.memo.insert(set, acc.clone());
            }
        }
        Ok(acc)
    }
}

pub fn pfaffian_with(m: &SkewPolyMatrix, opts: PfaffianOptions) -> Result<(SparsePoly, PfaffianStats)> {
    if m.n % 2 == 1 {
        return Ok((SparsePoly::zero(m.nvars, m.domain), PfaffianStats::default()));
    }
    let support = (0..m.n)
        .map(|i| {
            (0..m.n)
                .filter(|&j| !m.entries[i][j].is_zero())
                .fold(0u64, |acc, j| acc | 1 << j)
        })
        .collect();
    let mut ex = Expander {
        m,
        support,
        memo: HashMap::new(),
        opts,
        stats: PfaffianStats::default(),
    };
    let full = if m.n == 64 { u64::MAX } else { (1u64 << m.n) - 1 };
    let pf = ex.pf(full)?;
    Ok((pf, ex.stats))
}

/// Pfaffian with `Pf([[0, 1], [-1, 0]]) = 1`; zero in odd dimension.
pub fn pfaffian(m: &SkewPolyMatrix) -> Result<SparsePoly> {
    pfaffian_with(m, PfaffianOptions::default()).map(|(p, _)| p)
}

/// `det(M) = Pf(M)²`.
pub fn det_via_pfaffian(m: &SkewPolyMatrix) -> Result<SparsePoly> {
    let pf = pfaffian(m)?;
    Ok(&pf * &pf)
}

/// Rank over `F_p` of the matrix evaluated at `point`.
pub fn rank_at(m: &SkewPolyMatrix, point: &[u64], p: u64) -> Result<usize> {
    let f = PrimeField::new(p)?;
    if let Domain::Modular(q) = m.domain {
        if q != p {
            return Err(Error::Domain(format!("matrix over F{q}, rank requested over F{p}")));
        }
    }
    let pt: Vec<num_bigint::BigInt> = point.iter().map(|&x| x.into()).collect();
    let mut num = m
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| {
                    let v = e.evaluate(&pt)?;
                    Ok(crate::field::FiniteField::from_int(&f, &v))
                })
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(linalg::rank(&f, &mut num))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ints(m: &[Vec<i64>]) -> SkewPolyMatrix {
        SkewPolyMatrix::from_integers(m).unwrap()
    }

    fn value(p: &SparsePoly) -> BigInt {
        p.evaluate(&[]).unwrap()
    }

    #[test]
    fn two_by_two() {
        let x = SparsePoly::var(1, Domain::Integer, 0);
        let m = SkewPolyMatrix::new(vec![
            vec![SparsePoly::zero(1, Domain::Integer), x.clone()],
            vec![x.neg(), SparsePoly::zero(1, Domain::Integer)],
        ])
        .unwrap();
        assert_eq!(pfaffian(&m).unwrap(), x);
        assert_eq!(det_via_pfaffian(&m).unwrap().to_string(), "x1^2");
    }

    #[test]
    fn four_by_four_formula() {
        // Pf = a b' - ... = m01 m23 - m02 m13 + m03 m12
        let m = ints(&[
            vec![0, 2, 3, 5],
            vec![-2, 0, 7, 11],
            vec![-3, -7, 0, 13],
            vec![-5, -11, -13, 0],
        ]);
        assert_eq!(value(&pfaffian(&m).unwrap()), BigInt::from(2 * 13 - 3 * 11 + 5 * 7));
    }

    #[test]
    fn standard_symplectic_is_one() {
        let n = 6;
        let mut m = vec![vec![0i64; n]; n];
        for k in 0..n / 2 {
            m[k][k + n / 2] = 1;
            m[k + n / 2][k] = -1;
        }
        // block form [[0, I], [-I, 0]] has Pf = (-1)^{k(k-1)/2}
        let mut interleaved = vec![vec![0i64; n]; n];
        for k in 0..n / 2 {
            interleaved[2 * k][2 * k + 1] = 1;
            interleaved[2 * k + 1][2 * k] = -1;
        }
        assert_eq!(value(&pfaffian(&ints(&interleaved)).unwrap()), BigInt::from(1));
        assert_eq!(value(&pfaffian(&ints(&m)).unwrap()), BigInt::from(-1));
    }

    #[test]
    fn odd_dimension_is_zero() {
        let m = ints(&[vec![0, 1, 2], vec![-1, 0, 3], vec![-2, -3, 0]]);
        assert!(pfaffian(&m).unwrap().is_zero());
        assert!(det_via_pfaffian(&m).unwrap().is_zero());
    }

    #[test]
    fn rejects_non_antisymmetric() {
        let r = SkewPolyMatrix::from_integers(&[vec![0, 1], vec![1, 0]]);
        assert!(matches!(r, Err(Error::Contract(_))));
        let r = SkewPolyMatrix::from_integers(&[vec![1, 1], vec![-1, 0]]);
        assert!(matches!(r, Err(Error::Contract(_))));
    }

    #[test]
    fn step_budget() {
        let n = 8;
        let m: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (j as i64 - i as i64).signum()).collect())
            .collect();
        let opts = PfaffianOptions {
            max_steps: Some(3),
            ..Default::default()
        };
        assert!(matches!(pfaffian_with(&ints(&m), opts), Err(Error::Budget(_))));
        let tiny_memo = PfaffianOptions {
            memo_cap_terms: 0,
            ..Default::default()
        };
        let (a, stats) = pfaffian_with(&ints(&m), tiny_memo).unwrap();
        assert!(stats.memo_full);
        assert_eq!(a, pfaffian(&ints(&m)).unwrap());
    }

    #[test]
    fn rank_at_points() {
        let x = SparsePoly::var(1, Domain::Integer, 0);
        let z = SparsePoly::zero(1, Domain::Integer);
        let m = SkewPolyMatrix::new(vec![vec![z.clone(), x.clone()], vec![x.neg(), z]]).unwrap();
        assert_eq!(rank_at(&m, &[0], 2).unwrap(), 0);
        assert_eq!(rank_at(&m, &[1], 2).unwrap(), 2);
        assert_eq!(rank_at(&m, &[2], 2).unwrap(), 0);
    }
}
