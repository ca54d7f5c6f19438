//! Symbolic Gram matrix of `σ_λ` on `g(1)`.
//!
//! Rows are indexed by `Φ_1` and variables by `Φ_2`, both in the root
//! order; entry `(i, j)` is `N_{β_i, β_j}·x_l` when `β_i + β_j` is the
//! `l`-th root of `Φ_2`, and zero otherwise.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use crate::chevalley::StructureConstants;
use crate::error::{Error, Result};
use crate::grading::GradedPieces;
use crate::pfaffian::SkewPolyMatrix;
use crate::poly::{Domain, Monomial, SparsePoly};
use crate::rootsys::RootId;

/// A nonzero entry `coeff · x_var` (0-based variable index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GramEntry {
    pub var: usize,
    pub coeff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GramMatrix {
    n: usize,
    m: usize,
    rows: Vec<String>,
    vars: Vec<String>,
    #[serde(skip)]
    row_ids: Vec<RootId>,
    #[serde(skip)]
    var_ids: Vec<RootId>,
    entries: Vec<Vec<Option<GramEntry>>>,
}

impl GramMatrix {
    pub fn build(sc: &StructureConstants, pieces: &GradedPieces) -> Result<Self> {
        let rs = sc.root_system();
        let row_ids = pieces.phi(1).to_vec();
        if row_ids.is_empty() {
            return Err(Error::Domain("no odd part: g(1) = 0".into()));
        }
        let var_ids = pieces.phi(2).to_vec();
        let n = row_ids.len();
        let mut entries = vec![vec![None; n]; n];
        for (i, &a) in row_ids.iter().enumerate() {
            for (j, &b) in row_ids.iter().enumerate() {
                if let Some((s, c)) = sc.bracket_ids(a, b) {
                    let var = var_ids
                        .iter()
                        .position(|&v| v == s)
                        .expect("weight-1 roots sum into weight 2");
                    entries[i][j] = Some(GramEntry { var, coeff: c });
                }
            }
        }
        Ok(GramMatrix {
            n,
            m: var_ids.len(),
            rows: row_ids.iter().map(|&r| rs.root(r).digits()).collect(),
            vars: var_ids.iter().map(|&r| rs.root(r).digits()).collect(),
            row_ids,
            var_ids,
            entries,
        })
    }

    /// Dimension `|Φ_1|`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of variables `|Φ_2|`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<GramEntry> {
        self.entries[i][j]
    }

    pub fn row_roots(&self) -> &[RootId] {
        &self.row_ids
    }

    pub fn var_roots(&self) -> &[RootId] {
        &self.var_ids
    }

    /// Digit strings of the `Φ_1` basis.
    pub fn row_labels(&self) -> &[String] {
        &self.rows
    }

    /// Digit strings of the `Φ_2` roots carrying `x_1, ..., x_m`.
    pub fn var_labels(&self) -> &[String] {
        &self.vars
    }

    /// 0-based variable index of the `Φ_2` root with this digit string.
    pub fn var_index(&self, digits: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == digits)
    }

    /// Point with `x_l = 1` exactly for the listed roots of `Φ_2`.
    pub fn indicator_point(&self, roots: &[&str]) -> Result<Vec<i64>> {
        let mut pt = vec![0i64; self.m];
        for r in roots {
            let idx = self
                .var_index(r)
                .ok_or_else(|| Error::Config(format!("{r} is not a root of weight 2")))?;
            pt[idx] = 1;
        }
        Ok(pt)
    }

    pub fn to_skew(&self) -> SkewPolyMatrix {
        let polys = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| match self.entries[i][j] {
                        Some(e) => SparsePoly::term(
                            self.m,
                            Domain::Integer,
                            e.coeff,
                            Monomial::var(self.m, e.var),
                        ),
                        None => SparsePoly::zero(self.m, Domain::Integer),
                    })
                    .collect()
            })
            .collect();
        SkewPolyMatrix::new(polys).expect("Gram matrices are antisymmetric")
    }

    /// Numeric specialization over `Z`.
    pub fn at_integers(&self, point: &[i64]) -> Result<Vec<Vec<i64>>> {
        self.check_point(point.len())?;
        Ok(self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.map_or(0, |e| e.coeff * point[e.var]))
                    .collect()
            })
            .collect())
    }

    /// Numeric specialization, reduced into `[0, p)` when a modulus is given.
    pub fn gram_at(&self, point: &[BigInt], modulus: Option<u64>) -> Result<Vec<Vec<BigInt>>> {
        self.check_point(point.len())?;
        let reduce = |v: BigInt| match modulus {
            Some(p) => {
                let p = BigInt::from(p);
                ((v % &p) + &p) % &p
            }
            None => v,
        };
        Ok(self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        Some(e) => reduce(BigInt::from(e.coeff) * &point[e.var]),
                        None => BigInt::from(0),
                    })
                    .collect()
            })
            .collect())
    }

    fn check_point(&self, len: usize) -> Result<()> {
        if len != self.m {
            return Err(Error::Domain(format!(
                "point has {len} coordinates, expected {}",
                self.m
            )));
        }
        Ok(())
    }

    /// Copy with every coefficient negated where `flips` says so, i.e. the
    /// Gram matrix of a basis with `e_β ↦ -e_β` on flagged rows.
    pub fn with_row_signs(&self, flips: &[bool]) -> GramMatrix {
        let mut g = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                if let Some(e) = g.entries[i][j].as_mut() {
                    if flips[i] != flips[j] {
                        e.coeff = -e.coeff;
                    }
                }
            }
        }
        g
    }

    fn cell(&self, i: usize, j: usize) -> String {
        match self.entries[i][j] {
            None => "0".into(),
            Some(GramEntry { var, coeff }) => match coeff {
                1 => format!("x{}", var + 1),
                -1 => format!("-x{}", var + 1),
                c => format!("{c}*x{}", var + 1),
            },
        }
    }

    /// Aligned plain-text table with row and variable legends.
    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.cell(i, j)).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for (i, row) in cells.iter().enumerate() {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            let _ = writeln!(out, "{:>8} | {}", self.rows[i], line.join(" "));
        }
        let _ = writeln!(out);
        for (l, v) in self.vars.iter().enumerate() {
            let _ = writeln!(out, "x{} = {v}", l + 1);
        }
        out
    }

    /// `pmatrix` body in LaTeX.
    pub fn to_latex(&self) -> String {
        let mut out = String::from("\\begin{pmatrix}\n");
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| match self.entries[i][j] {
                    None => "0".into(),
                    Some(GramEntry { var, coeff }) => match coeff {
                        1 => format!("x_{{{}}}", var + 1),
                        -1 => format!("-x_{{{}}}", var + 1),
                        c => format!("{c}x_{{{}}}", var + 1),
                    },
                })
                .collect();
            let _ = writeln!(out, "  {} \\\\", row.join(" & "));
        }
        out.push_str("\\end{pmatrix}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;
    use crate::wdd::find_diagram;

    fn gram(t: &str, key: &str) -> GramMatrix {
        let rs = RootSystem::new(t.parse().unwrap()).unwrap();
        let sc = StructureConstants::new(&rs);
        let d = find_diagram(&rs, key).unwrap();
        GramMatrix::build(&sc, &GradedPieces::new(&rs, &d)).unwrap()
    }

    fn antidiagonal(g: &GramMatrix) -> Vec<i64> {
        let n = g.n();
        (0..n)
            .map(|i| {
                for j in 0..n {
                    if j != n - 1 - i {
                        assert!(g.entry(i, j).is_none());
                    }
                }
                g.entry(i, n - 1 - i).unwrap().coeff
            })
            .collect()
    }

    #[test]
    fn g2_antidiagonal() {
        let g = gram("G2", "01");
        assert_eq!((g.n(), g.m()), (4, 1));
        let a = antidiagonal(&g);
        let mags: Vec<i64> = a.iter().map(|c| c.abs()).collect();
        assert_eq!(mags, [1, 3, 3, 1]);
        assert_eq!(a[0], -a[3]);
        assert_eq!(a[1], -a[2]);
    }

    #[test]
    fn f4_a1_antidiagonal_multipliers() {
        let g = gram("F4", "A1");
        assert_eq!((g.n(), g.m()), (14, 1));
        let mut mags: Vec<i64> = antidiagonal(&g).iter().map(|c| c.abs()).collect();
        mags.sort_unstable();
        assert_eq!(mags, [1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn antisymmetric_and_degree_one() {
        let g = gram("F4", "~A2+A1");
        for i in 0..g.n() {
            assert!(g.entry(i, i).is_none());
            for j in 0..g.n() {
                match (g.entry(i, j), g.entry(j, i)) {
                    (None, None) => {}
                    (Some(a), Some(b)) => {
                        assert_eq!(a.var, b.var);
                        assert_eq!(a.coeff, -b.coeff);
                    }
                    _ => panic!("pattern not symmetric at ({i},{j})"),
                }
            }
        }
    }

    #[test]
    fn empty_odd_part_is_an_error() {
        let rs = RootSystem::new("F4".parse().unwrap()).unwrap();
        let sc = StructureConstants::new(&rs);
        let pieces = GradedPieces::from_weights(&rs, &[2, 2, 2, 2]);
        assert!(matches!(GramMatrix::build(&sc, &pieces), Err(Error::Domain(_))));
    }

    #[test]
    fn zero_point_gives_zero_matrix() {
        let g = gram("F4", "~A1");
        let zero = vec![0i64; g.m()];
        assert!(g.at_integers(&zero).unwrap().iter().flatten().all(|&x| x == 0));
        assert!(g.at_integers(&[0]).is_err());
    }
}
