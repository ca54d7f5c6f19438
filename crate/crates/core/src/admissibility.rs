//! Verdicts on the non-degeneracy of `σ_λ`: over `F̄_p` (condition K2)
//! and over `Z` (unimodularity), with witnesses or certificates, and the
//! sweeps comparing them with the reference tables.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::chevalley::StructureConstants;
use crate::error::{Error, Result};
use crate::field::{nonvanishing_point, ExtensionField, FieldPoly, FiniteField, PrimeField};
use crate::grading::GradedPieces;
use crate::gram::GramMatrix;
use crate::linalg;
use crate::pfaffian::{pfaffian_with, PfaffianOptions};
use crate::poly::is_prime;
use crate::rootsys::RootSystem;
use crate::wdd::{self, WeightedDiagram};

/// Work limits for the deciders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Points of `{0,1}^m` to try before falling back to the Pfaffian.
    pub max_candidates: u64,
    /// Largest Gram dimension for which a symbolic Pfaffian is attempted.
    pub max_pfaffian_dim: usize,
    /// Term multiplications allowed in one Pfaffian; `None` is unlimited.
    pub max_pfaffian_steps: Option<u64>,
    pub memo_cap_terms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_candidates: 1 << 22,
            max_pfaffian_dim: 36,
            max_pfaffian_steps: Some(30_000_000),
            memo_cap_terms: 8_000_000,
        }
    }
}

impl Budget {
    fn pfaffian_options(&self) -> PfaffianOptions {
        PfaffianOptions {
            max_steps: self.max_pfaffian_steps,
            memo_cap_terms: self.memo_cap_terms,
        }
    }
}

/// A point where the Gram matrix is non-degenerate over a finite field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "field", rename_all = "snake_case")]
pub enum Witness {
    /// Coordinates in `F_p`, as residues.
    Prime { p: u64, point: Vec<u64> },
    /// Coordinates in `F_p[t]/(f)`, packed base `p` (constant term first);
    /// `modulus` lists the low coefficients of the monic `f`.
    Extension {
        p: u64,
        degree: u32,
        modulus: Vec<u64>,
        point: Vec<u64>,
    },
}

impl Witness {
    pub fn point(&self) -> &[u64] {
        match self {
            Witness::Prime { point, .. } | Witness::Extension { point, .. } => point,
        }
    }

    /// Recomputes the rank at the witness; true iff it is full.
    pub fn verify(&self, g: &GramMatrix) -> bool {
        match self {
            Witness::Prime { p, point } => match PrimeField::new(*p) {
                Ok(f) => full_rank_at(&f, g, point),
                Err(_) => false,
            },
            Witness::Extension { p, degree, point, .. } => match ExtensionField::new(*p, *degree) {
                Ok(f) => full_rank_at(&f, g, point),
                Err(_) => false,
            },
        }
    }
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let pt: Vec<String> = self.point().iter().map(u64::to_string).collect();
        match self {
            Witness::Prime { p, .. } => write!(f, "F{p}:({})", pt.join(",")),
            Witness::Extension { p, degree, .. } => {
                write!(f, "F{p}^{degree}:({})", pt.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// `g(1) = 0`, nothing to decide.
    Trivial,
    /// Odd dimension: every alternating form is degenerate.
    Parity,
    WitnessSearch,
    SymbolicPfaffian,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum K2Status {
    Exists { witness: Witness },
    NotExists,
    TriviallyAdmissible,
    Unknown { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K2Verdict {
    pub status: K2Status,
    pub method: Method,
    pub prime: u64,
    pub candidates_tried: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum UnimodularStatus {
    /// `{0,1}` point with `Pf = ±1`.
    Exists { point: Vec<i64> },
    /// Every coefficient of `Pf` is divisible by `certificate` (0 when
    /// `Pf` vanishes identically).
    NotExists {
        #[serde(serialize_with = "as_string")]
        certificate: BigInt,
    },
    TriviallyAdmissible,
    Unknown { reason: String },
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnimodularVerdict {
    pub status: UnimodularStatus,
    pub method: Method,
    pub candidates_tried: u64,
}

impl K2Verdict {
    pub fn admissible(&self) -> Option<bool> {
        match self.status {
            K2Status::Exists { .. } | K2Status::TriviallyAdmissible => Some(true),
            K2Status::NotExists => Some(false),
            K2Status::Unknown { .. } => None,
        }
    }
}

impl UnimodularVerdict {
    pub fn admissible(&self) -> Option<bool> {
        match self.status {
            UnimodularStatus::Exists { .. } | UnimodularStatus::TriviallyAdmissible => Some(true),
            UnimodularStatus::NotExists { .. } => Some(false),
            UnimodularStatus::Unknown { .. } => None,
        }
    }
}

// ------------------------------------------------------------ enumeration

/// Points of `{0,1}^m`, grouped by the number of coordinates equal to
/// `fill` (decreasing from `m`), inside a group in lexicographic order of
/// the positions holding the other value.
struct CubeWalk {
    m: usize,
    fill: i64,
    /// positions currently holding `1 - fill`
    flipped: Vec<usize>,
    done: bool,
}

impl CubeWalk {
    fn new(m: usize, fill: i64, start_flips: usize) -> Self {
        CubeWalk {
            m,
            fill,
            flipped: (0..start_flips).collect(),
            done: start_flips > m,
        }
    }
}

impl Iterator for CubeWalk {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.done {
            return None;
        }
        let mut pt = vec![self.fill; self.m];
        for &i in &self.flipped {
            pt[i] = 1 - self.fill;
        }
        // next combination of the same size, else grow
        let k = self.flipped.len();
        let mut idx = k;
        while idx > 0 {
            idx -= 1;
            if self.flipped[idx] < self.m - k + idx {
                self.flipped[idx] += 1;
                for t in idx + 1..k {
                    self.flipped[t] = self.flipped[t - 1] + 1;
                }
                return Some(pt);
            }
        }
        if k == self.m {
            self.done = true;
        } else {
            self.flipped = (0..k + 1).collect();
        }
        Some(pt)
    }
}

const BATCH: usize = 4096;

/// First point (in walk order) satisfying `test`, within `limit` points.
fn search<I, F>(walk: I, limit: u64, test: F) -> (Option<Vec<i64>>, u64)
where
    I: Iterator<Item = Vec<i64>>,
    F: Fn(&[i64]) -> bool + Sync,
{
    let mut tried = 0u64;
    let mut walk = walk.take(limit as usize);
    loop {
        let batch: Vec<Vec<i64>> = walk.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            return (None, tried);
        }
        if let Some(pos) = batch.par_iter().position_first(|pt| test(pt)) {
            tried += pos as u64 + 1;
            return (Some(batch[pos].clone()), tried);
        }
        tried += batch.len() as u64;
    }
}

// ----------------------------------------------------------- numeric rank

/// Per-row column masks of entries with odd coefficient, split by variable.
fn f2_masks(g: &GramMatrix) -> Vec<Vec<(usize, u64)>> {
    (0..g.n())
        .map(|i| {
            let mut by_var: Vec<(usize, u64)> = Vec::new();
            for j in 0..g.n() {
                if let Some(e) = g.entry(i, j) {
                    if e.coeff % 2 != 0 {
                        match by_var.iter_mut().find(|(v, _)| *v == e.var) {
                            Some((_, mask)) => *mask |= 1 << j,
                            None => by_var.push((e.var, 1 << j)),
                        }
                    }
                }
            }
            by_var
        })
        .collect()
}

fn f2_full_rank(masks: &[Vec<(usize, u64)>], pt: &[i64]) -> bool {
    let mut rows: Vec<u64> = masks
        .iter()
        .map(|by_var| {
            by_var
                .iter()
                .filter(|(v, _)| pt[*v] & 1 == 1)
                .fold(0, |acc, (_, m)| acc | m)
        })
        .collect();
    let n = rows.len();
    for r in 0..n {
        let Some(piv) = (r..n).find(|&i| rows[i] != 0) else {
            return false;
        };
        rows.swap(r, piv);
        let low = rows[r] & rows[r].wrapping_neg();
        for i in r + 1..n {
            if rows[i] & low != 0 {
                rows[i] ^= rows[r];
            }
        }
    }
    true
}

fn full_rank_at<F: FiniteField>(f: &F, g: &GramMatrix, point: &[u64]) -> bool {
    if point.len() != g.m() {
        return false;
    }
    let n = g.n();
    let mut m: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match g.entry(i, j) {
                    Some(e) => f.mul(f.from_int(&BigInt::from(e.coeff)), point[e.var]),
                    None => 0,
                })
                .collect()
        })
        .collect();
    linalg::rank(f, &mut m) == n
}

fn modp_full_rank(g: &GramMatrix, p: u64, pt: &[i64]) -> bool {
    let n = g.n();
    let pi = p as i64;
    let mut m: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match g.entry(i, j) {
                    Some(e) => (e.coeff * pt[e.var]).rem_euclid(pi) as u64,
                    None => 0,
                })
                .collect()
        })
        .collect();
    let f = PrimeField::new(p).expect("checked prime");
    linalg::rank(&f, &mut m) == n
}

// ---------------------------------------------------------------- deciders

/// Condition K2 over `F̄_p` for a Gram matrix.
pub fn k2_decide(g: &GramMatrix, p: u64, budget: &Budget) -> Result<K2Verdict> {
    if !is_prime(p) || p >= 1 << 31 {
        return Err(Error::Config(format!("{p} is not a supported prime")));
    }
    let verdict = |status, method, tried| K2Verdict {
        status,
        method,
        prime: p,
        candidates_tried: tried,
    };
    if g.n() % 2 == 1 {
        return Ok(verdict(K2Status::NotExists, Method::Parity, 0));
    }
    let walk = CubeWalk::new(g.m(), 1, 0);
    let (found, tried) = if p == 2 {
        let masks = f2_masks(g);
        search(walk, budget.max_candidates, |pt| f2_full_rank(&masks, pt))
    } else {
        search(walk, budget.max_candidates, |pt| modp_full_rank(g, p, pt))
    };
    if let Some(pt) = found {
        let witness = Witness::Prime {
            p,
            point: pt.iter().map(|&x| x as u64).collect(),
        };
        return Ok(verdict(K2Status::Exists { witness }, Method::WitnessSearch, tried));
    }
    if g.n() > budget.max_pfaffian_dim {
        let reason = format!(
            "no witness among {tried} points and dimension {} exceeds the Pfaffian limit {}",
            g.n(),
            budget.max_pfaffian_dim
        );
        return Ok(verdict(K2Status::Unknown { reason }, Method::WitnessSearch, tried));
    }
    let skew = g.to_skew().reduce_mod(p)?;
    let pf = match pfaffian_with(&skew, budget.pfaffian_options()) {
        Ok((pf, _)) => pf,
        Err(Error::Budget(msg)) => {
            let reason = format!("no witness among {tried} points; {msg}");
            return Ok(verdict(K2Status::Unknown { reason }, Method::SymbolicPfaffian, tried));
        }
        Err(e) => return Err(e),
    };
    if pf.is_zero() {
        return Ok(verdict(K2Status::NotExists, Method::SymbolicPfaffian, tried));
    }
    let witness = pfaffian_witness(&pf, p, g)?;
    Ok(verdict(K2Status::Exists { witness }, Method::SymbolicPfaffian, tried))
}

/// Non-vanishing point of a nonzero Pfaffian mod `p`, over the smallest
/// field `F_{p^k}` with more elements than any single variable's degree.
fn pfaffian_witness(pf: &crate::poly::SparsePoly, p: u64, g: &GramMatrix) -> Result<Witness> {
    let deg = pf.max_var_degree() as u64;
    let mut k = 1u32;
    while p.pow(k) <= deg {
        k += 1;
    }
    let fail = || Error::Contract("no non-vanishing point for a nonzero Pfaffian".into());
    let witness = if k == 1 {
        let f = PrimeField::new(p)?;
        let fp = FieldPoly::from_sparse(&f, pf)?;
        let point = nonvanishing_point(&f, &fp, pf.nvars()).ok_or_else(fail)?;
        Witness::Prime { p, point }
    } else {
        let f = ExtensionField::new(p, k)?;
        let fp = FieldPoly::from_sparse(&f, pf)?;
        let point = nonvanishing_point(&f, &fp, pf.nvars()).ok_or_else(fail)?;
        Witness::Extension {
            p,
            degree: k,
            modulus: f.modulus().to_vec(),
            point,
        }
    };
    if !witness.verify(g) {
        return Err(Error::Contract("Pfaffian witness does not verify".into()));
    }
    Ok(witness)
}

/// Highest rank over `F_p` among the first `limit` points of the K2 walk,
/// with the first point attaining it.
pub fn max_rank_search(g: &GramMatrix, p: u64, limit: u64) -> Result<(usize, Vec<i64>)> {
    let f = PrimeField::new(p)?;
    let pi = p as i64;
    let mut best = (0usize, vec![0i64; g.m()]);
    for pt in CubeWalk::new(g.m(), 1, 0).take(limit as usize) {
        let mut m: Vec<Vec<u64>> = g
            .at_integers(&pt)?
            .iter()
            .map(|r| r.iter().map(|&x| x.rem_euclid(pi) as u64).collect())
            .collect();
        let r = linalg::rank(&f, &mut m);
        if r > best.0 {
            best = (r, pt);
            if r == g.n() {
                break;
            }
        }
    }
    Ok(best)
}

const FILTER_PRIME: u64 = 2_147_483_647;

fn is_unimodular_at(g: &GramMatrix, pt: &[i64]) -> bool {
    let m = g.at_integers(pt).expect("point length");
    let f = PrimeField::new(FILTER_PRIME).expect("prime");
    let mut red: Vec<Vec<u64>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(FILTER_PRIME as i64) as u64).collect())
        .collect();
    // det = Pf² ≥ 0, so unimodular means det = 1
    if linalg::det(&f, &mut red) != 1 {
        return false;
    }
    linalg::det_integer(&m).is_one()
}

/// Integral non-degeneracy: a `{0,1}` point with `|Pf| = 1`, or a content
/// certificate showing none exists.
pub fn unimodular_decide(g: &GramMatrix, budget: &Budget) -> Result<UnimodularVerdict> {
    let verdict = |status, method, tried| UnimodularVerdict {
        status,
        method,
        candidates_tried: tried,
    };
    if g.n() % 2 == 1 {
        let status = UnimodularStatus::NotExists {
            certificate: BigInt::zero(),
        };
        return Ok(verdict(status, Method::Parity, 0));
    }
    // sparse points first: fewest ones
    let walk = CubeWalk::new(g.m(), 0, 1);
    let (found, tried) = search(walk, budget.max_candidates, |pt| is_unimodular_at(g, pt));
    if let Some(point) = found {
        return Ok(verdict(UnimodularStatus::Exists { point }, Method::WitnessSearch, tried));
    }
    if g.n() > budget.max_pfaffian_dim {
        let reason = format!(
            "no witness among {tried} points and dimension {} exceeds the Pfaffian limit {}",
            g.n(),
            budget.max_pfaffian_dim
        );
        return Ok(verdict(UnimodularStatus::Unknown { reason }, Method::WitnessSearch, tried));
    }
    let pf = match pfaffian_with(&g.to_skew(), budget.pfaffian_options()) {
        Ok((pf, _)) => pf,
        Err(Error::Budget(msg)) => {
            let reason = format!("no witness among {tried} points; {msg}");
            let status = UnimodularStatus::Unknown { reason };
            return Ok(verdict(status, Method::SymbolicPfaffian, tried));
        }
        Err(e) => return Err(e),
    };
    let c = pf.content()?;
    let status = if c.is_one() {
        UnimodularStatus::Unknown {
            reason: format!("no witness among {tried} points and the Pfaffian has content 1"),
        }
    } else {
        UnimodularStatus::NotExists { certificate: c }
    };
    Ok(verdict(status, Method::SymbolicPfaffian, tried))
}

// ----------------------------------------------------------------- reports

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub label: String,
    pub weights: String,
    pub dim_g1: usize,
    pub dim_g2: usize,
    /// `trivial`, `exists`, `not_exists` or `unknown`.
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    pub expected: bool,
    pub agrees: bool,
}

impl ReportRow {
    /// Whether the computation says the diagram is admissible.
    pub fn observed(&self) -> Option<bool> {
        match self.verdict.as_str() {
            "trivial" | "exists" => Some(true),
            "not_exists" => Some(false),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    #[serde(rename = "type")]
    pub cartan_type: String,
    /// `k2` or `special`.
    pub conjecture: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub rows: Vec<ReportRow>,
}

impl ConjectureReport {
    pub fn disagreements(&self) -> Vec<&ReportRow> {
        self.rows
            .iter()
            .filter(|r| !r.agrees && r.observed().is_some())
            .collect()
    }

    pub fn unknowns(&self) -> Vec<&ReportRow> {
        self.rows.iter().filter(|r| r.observed().is_none()).collect()
    }

    /// Labels of diagrams found not admissible.
    pub fn failures(&self) -> Vec<&str> {
        self.rows
            .iter()
            .filter(|r| r.observed() == Some(false))
            .map(|r| r.label.as_str())
            .collect()
    }

    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agrees)
    }
}

fn base_row(rs: &RootSystem, d: &WeightedDiagram, expected: bool) -> (ReportRow, GradedPieces) {
    let pieces = GradedPieces::new(rs, d);
    let row = ReportRow {
        label: d.label.clone(),
        weights: d.weight_string(),
        dim_g1: pieces.phi(1).len(),
        dim_g2: pieces.phi(2).len(),
        verdict: "trivial".into(),
        witness: None,
        certificate: None,
        expected,
        agrees: expected,
    };
    (row, pieces)
}

fn point_string(pt: &[i64]) -> String {
    pt.iter().map(|x| x.to_string()).collect()
}

/// K2 verdict for one diagram (trivial when `g(1) = 0`).
pub fn k2_for_diagram(
    sc: &StructureConstants,
    d: &WeightedDiagram,
    p: u64,
    budget: &Budget,
) -> Result<(K2Verdict, Option<GramMatrix>)> {
    let rs = sc.root_system();
    let pieces = GradedPieces::new(rs, d);
    if pieces.phi(1).is_empty() {
        let v = K2Verdict {
            status: K2Status::TriviallyAdmissible,
            method: Method::Trivial,
            prime: p,
            candidates_tried: 0,
        };
        return Ok((v, None));
    }
    let g = GramMatrix::build(sc, &pieces)?;
    Ok((k2_decide(&g, p, budget)?, Some(g)))
}

/// Unimodularity verdict for one diagram (trivial when `g(1) = 0`).
pub fn unimodular_for_diagram(
    sc: &StructureConstants,
    d: &WeightedDiagram,
    budget: &Budget,
) -> Result<(UnimodularVerdict, Option<GramMatrix>)> {
    let rs = sc.root_system();
    let pieces = GradedPieces::new(rs, d);
    if pieces.phi(1).is_empty() {
        let v = UnimodularVerdict {
            status: UnimodularStatus::TriviallyAdmissible,
            method: Method::Trivial,
            candidates_tried: 0,
        };
        return Ok((v, None));
    }
    let g = GramMatrix::build(sc, &pieces)?;
    Ok((unimodular_decide(&g, budget)?, Some(g)))
}

/// Compares condition K2 with membership in `Δ•` at `p` for every diagram.
pub fn check_conjecture_k2(rs: &RootSystem, p: u64, budget: &Budget) -> Result<ConjectureReport> {
    let sc = StructureConstants::new(rs);
    let mut rows = Vec::new();
    for d in wdd::enumerate_diagrams(rs)? {
        let (_, expected) = wdd::lookup_membership(rs, &d, p)?;
        let (mut row, _) = base_row(rs, &d, expected);
        let (v, g) = k2_for_diagram(&sc, &d, p, budget)?;
        match &v.status {
            K2Status::TriviallyAdmissible => {}
            K2Status::Exists { witness } => {
                let g = g.as_ref().expect("nontrivial grading");
                if !witness.verify(g) {
                    return Err(Error::Contract(format!("witness for {} fails", d.label)));
                }
                row.verdict = "exists".into();
                row.witness = Some(witness.to_string());
            }
            K2Status::NotExists => row.verdict = "not_exists".into(),
            K2Status::Unknown { reason } => {
                row.verdict = "unknown".into();
                row.certificate = Some(reason.clone());
            }
        }
        row.agrees = row.observed() == Some(expected);
        rows.push(row);
    }
    Ok(ConjectureReport {
        cartan_type: rs.cartan_type().to_string(),
        conjecture: "k2".into(),
        prime: Some(p),
        rows,
    })
}

/// Compares unimodularity over `Z` with specialness for every diagram.
pub fn check_conjecture_special(rs: &RootSystem, budget: &Budget) -> Result<ConjectureReport> {
    let sc = StructureConstants::new(rs);
    let mut rows = Vec::new();
    for d in wdd::enumerate_diagrams(rs)? {
        let (special, _) = wdd::lookup_membership(rs, &d, 0)?;
        let (mut row, _) = base_row(rs, &d, special);
        let (v, g) = unimodular_for_diagram(&sc, &d, budget)?;
        match &v.status {
            UnimodularStatus::TriviallyAdmissible => {}
            UnimodularStatus::Exists { point } => {
                let g = g.as_ref().expect("nontrivial grading");
                let m = g.at_integers(point)?;
                if linalg::det_integer(&m).abs() != BigInt::one() {
                    return Err(Error::Contract(format!("witness for {} fails", d.label)));
                }
                row.verdict = "exists".into();
                row.witness = Some(point_string(point));
            }
            UnimodularStatus::NotExists { certificate } => {
                row.verdict = "not_exists".into();
                row.certificate = Some(certificate.to_string());
            }
            UnimodularStatus::Unknown { reason } => {
                row.verdict = "unknown".into();
                row.certificate = Some(reason.clone());
            }
        }
        row.agrees = row.observed() == Some(special);
        rows.push(row);
    }
    Ok(ConjectureReport {
        cartan_type: rs.cartan_type().to_string(),
        conjecture: "special".into(),
        prime: None,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_walk_orders() {
        let pts: Vec<Vec<i64>> = CubeWalk::new(3, 1, 0).collect();
        assert_eq!(pts.len(), 8);
        assert_eq!(pts[0], [1, 1, 1]);
        assert_eq!(pts[1], [0, 1, 1]);
        assert_eq!(pts[3], [1, 1, 0]);
        assert_eq!(pts[4], [0, 0, 1]);
        assert_eq!(pts[7], [0, 0, 0]);
        let sparse: Vec<Vec<i64>> = CubeWalk::new(3, 0, 1).collect();
        assert_eq!(sparse.len(), 7);
        assert_eq!(sparse[0], [1, 0, 0]);
        assert_eq!(sparse[6], [1, 1, 1]);
    }

    #[test]
    fn search_reports_first_hit() {
        let (pt, tried) = search(CubeWalk::new(4, 1, 0), 100, |p| p.iter().sum::<i64>() == 2);
        assert_eq!(pt.unwrap(), [0, 0, 1, 1]);
        assert_eq!(tried, 6);
        let (pt, tried) = search(CubeWalk::new(4, 1, 0), 3, |_| false);
        assert!(pt.is_none());
        assert_eq!(tried, 3);
    }

    fn g(t: &str, key: &str) -> GramMatrix {
        let rs = RootSystem::new(t.parse().unwrap()).unwrap();
        let sc = StructureConstants::new(&rs);
        let d = wdd::find_diagram(&rs, key).unwrap();
        GramMatrix::build(&sc, &GradedPieces::new(&rs, &d)).unwrap()
    }

    #[test]
    fn g2_verdicts() {
        let b = Budget::default();
        let gb = g("G2", "01");
        assert_eq!(k2_decide(&gb, 3, &b).unwrap().status, K2Status::NotExists);
        assert!(matches!(k2_decide(&gb, 2, &b).unwrap().status, K2Status::Exists { .. }));
        let u = unimodular_decide(&gb, &b).unwrap();
        assert_eq!(
            u.status,
            UnimodularStatus::NotExists {
                certificate: BigInt::from(3)
            }
        );
        assert!(k2_decide(&gb, 4, &b).is_err());
    }

    #[test]
    fn f2_rank_agrees_with_generic_rank() {
        let gram = g("F4", "~A2+A1");
        let masks = f2_masks(&gram);
        for pt in CubeWalk::new(gram.m(), 1, 0) {
            assert_eq!(f2_full_rank(&masks, &pt), modp_full_rank(&gram, 2, &pt));
        }
    }
}
