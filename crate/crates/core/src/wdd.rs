//! Weighted Dynkin diagrams of nilpotent orbits.
//!
//! Classical types are enumerated from partitions. Exceptional types are
//! read from line-oriented tables (`label|weights|special|condition`)
//! shipped with the crate; the same lists can be regenerated from the
//! Bala–Carter classification by [`bala_carter`].

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::rootsys::{CartanType, Family, Root, RootSystem};

/// Environment variable pointing at a directory of replacement tables.
pub const DATA_DIR_ENV: &str = "GGGR_DATA_DIR";

/// Primes `p` for which a non-special diagram still lies in `Δ•`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    Always,
    NotTwo,
    NotThree,
    NotFive,
    NotTwoThree,
}

impl Condition {
    pub fn holds(self, p: u64) -> bool {
        match self {
            Condition::Always => true,
            Condition::NotTwo => p != 2,
            Condition::NotThree => p != 3,
            Condition::NotFive => p != 5,
            Condition::NotTwoThree => p != 2 && p != 3,
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "-" => Condition::Always,
            "p!=2" => Condition::NotTwo,
            "p!=3" => Condition::NotThree,
            "p!=5" => Condition::NotFive,
            "p!=2,3" => Condition::NotTwoThree,
            _ => return None,
        })
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Always => "-",
            Condition::NotTwo => "p!=2",
            Condition::NotThree => "p!=3",
            Condition::NotFive => "p!=5",
            Condition::NotTwoThree => "p!=2,3",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedDiagram {
    pub label: String,
    pub weights: Vec<u8>,
    pub special: bool,
    pub condition: Condition,
}

impl WeightedDiagram {
    /// Weights as a digit string in simple-root order, e.g. `"1010"`.
    pub fn weight_string(&self) -> String {
        self.weights.iter().map(|w| char::from(b'0' + w)).collect()
    }

    /// Additive extension `d(Σ n_i α_i) = Σ n_i d(α_i)`.
    pub fn extend_weight(&self, root: &Root) -> i32 {
        extend(&self.weights, root)
    }
}

pub fn extend(weights: &[u8], root: &Root) -> i32 {
    root.coeffs()
        .iter()
        .zip(weights)
        .map(|(&c, &w)| c * w as i32)
        .sum()
}

/// All diagrams of the type, in a fixed order (decreasing `b_d`).
pub fn enumerate_diagrams(rs: &RootSystem) -> Result<Vec<WeightedDiagram>> {
    let ct = rs.cartan_type();
    if ct.family.is_exceptional() {
        load_table(ct)
    } else {
        Ok(classical_diagrams(rs))
    }
}

/// Looks a diagram up by label, or by its weight string.
pub fn find_diagram(rs: &RootSystem, key: &str) -> Result<WeightedDiagram> {
    let all = enumerate_diagrams(rs)?;
    all.iter()
        .find(|d| d.label == key)
        .or_else(|| all.iter().find(|d| d.weight_string() == key))
        .cloned()
        .ok_or_else(|| {
            Error::Config(format!(
                "no weighted diagram {key:?} for type {}",
                rs.cartan_type()
            ))
        })
}

/// `b_d` from the centralizer dimension `dim g(0) + dim g(1)`.
pub fn b_invariant(rs: &RootSystem, d: &WeightedDiagram) -> i64 {
    let (mut zero, mut one) = (0i64, 0i64);
    for r in rs.positive_roots() {
        match d.extend_weight(r) {
            0 => zero += 1,
            1 => one += 1,
            _ => {}
        }
    }
    (2 * zero + one) / 2
}

/// `(special, in Δ•)` for the characteristic `p` (`0` for characteristic 0).
pub fn lookup_membership(rs: &RootSystem, d: &WeightedDiagram, p: u64) -> Result<(bool, bool)> {
    let ct = rs.cartan_type();
    let known = enumerate_diagrams(rs)?
        .into_iter()
        .find(|e| e.weights == d.weights)
        .ok_or_else(|| {
            Error::Data(format!(
                "diagram {} is not listed for type {ct}",
                d.weight_string()
            ))
        })?;
    let good = p == 0 || !ct.is_bad_prime(p);
    let member = good || known.special || known.condition.holds(p);
    Ok((known.special, member))
}

// ---------------------------------------------------------------- tables

struct TableSpec {
    name: &'static str,
    embedded: &'static str,
}

fn table_spec(ct: CartanType) -> Option<TableSpec> {
    let (name, embedded) = match (ct.family, ct.rank) {
        (Family::G, 2) => ("g2", include_str!("../data/g2.txt")),
        (Family::F, 4) => ("f4", include_str!("../data/f4.txt")),
        (Family::E, 6) => ("e6", include_str!("../data/e6.txt")),
        (Family::E, 7) => ("e7", include_str!("../data/e7.txt")),
        (Family::E, 8) => ("e8", include_str!("../data/e8.txt")),
        _ => return None,
    };
    Some(TableSpec { name, embedded })
}

/// Names of the exceptional tables, in a fixed order.
pub const TABLE_NAMES: [&str; 5] = ["g2", "f4", "e6", "e7", "e8"];

fn table_text(spec: &TableSpec) -> Result<Cow<'static, str>> {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => {
            let path = PathBuf::from(dir).join(format!("{}.txt", spec.name));
            std::fs::read_to_string(&path)
                .map(Cow::Owned)
                .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))
        }
        None => Ok(Cow::Borrowed(spec.embedded)),
    }
}

/// SHA-256 over the record lines (comments excluded), newline-terminated.
pub fn body_checksum(text: &str) -> String {
    let mut h = Sha256::new();
    for line in text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        h.update(line.trim_end().as_bytes());
        h.update(b"\n");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// `(table name, checksum)` for every exceptional table currently in use.
pub fn data_checksums() -> Result<Vec<(String, String)>> {
    TABLE_NAMES
        .iter()
        .map(|name| {
            let ct: CartanType = name.to_uppercase().parse()?;
            let spec = table_spec(ct).expect("listed table");
            let text = table_text(&spec)?;
            verify_checksum(spec.name, &text)?;
            Ok((name.to_string(), body_checksum(&text)))
        })
        .collect()
}

fn verify_checksum(name: &str, text: &str) -> Result<()> {
    let declared = text
        .lines()
        .find_map(|l| l.strip_prefix("# sha256:"))
        .map(str::trim)
        .ok_or_else(|| Error::Data(format!("table {name} has no checksum header")))?;
    let actual = body_checksum(text);
    if declared != actual {
        return Err(Error::Data(format!(
            "table {name} checksum mismatch: header {declared}, content {actual}"
        )));
    }
    Ok(())
}

fn load_table(ct: CartanType) -> Result<Vec<WeightedDiagram>> {
    let spec =
        table_spec(ct).ok_or_else(|| Error::Data(format!("no diagram table for type {ct}")))?;
    let text = table_text(&spec)?;
    verify_checksum(spec.name, &text)?;
    parse_table(&text, ct.rank).map_err(|e| Error::Data(format!("table {}: {e}", spec.name)))
}

/// Parses `label|weights|special|condition` records.
pub fn parse_table(text: &str, rank: usize) -> std::result::Result<Vec<WeightedDiagram>, String> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('|').collect();
        let [label, weights, special, condition] = fields[..] else {
            return Err(format!("line {}: expected 4 fields", n + 1));
        };
        let weights: Vec<u8> = weights
            .chars()
            .map(|c| c.to_digit(10).filter(|&d| d <= 2).map(|d| d as u8))
            .collect::<Option<_>>()
            .filter(|w: &Vec<u8>| w.len() == rank)
            .ok_or_else(|| format!("line {}: bad weights {weights:?}", n + 1))?;
        let special = match special {
            "yes" => true,
            "no" => false,
            _ => return Err(format!("line {}: bad special flag {special:?}", n + 1)),
        };
        let condition = Condition::parse(condition)
            .ok_or_else(|| format!("line {}: bad condition {condition:?}", n + 1))?;
        out.push(WeightedDiagram {
            label: label.to_string(),
            weights,
            special,
            condition,
        });
    }
    Ok(out)
}

/// Renders records in table syntax (no header).
pub fn render_records(diagrams: &[WeightedDiagram]) -> String {
    diagrams
        .iter()
        .map(|d| {
            format!(
                "{}|{}|{}|{}\n",
                d.label,
                d.weight_string(),
                if d.special { "yes" } else { "no" },
                d.condition
            )
        })
        .collect()
}

// ------------------------------------------------------- classical types

/// Partitions of `n` with parts in non-increasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn multiplicity(lambda: &[usize], part: usize) -> usize {
    lambda.iter().filter(|&&x| x == part).count()
}

/// Every part with the given parity occurs with even multiplicity.
fn parity_parts_even_mult(lambda: &[usize], odd: bool) -> bool {
    lambda
        .iter()
        .filter(|&&x| (x % 2 == 1) == odd)
        .all(|&x| multiplicity(lambda, x) % 2 == 0)
}

fn transpose(lambda: &[usize]) -> Vec<usize> {
    let max = lambda.first().copied().unwrap_or(0);
    (1..=max)
        .map(|k| lambda.iter().filter(|&&x| x >= k).count())
        .collect()
}

/// Sorted (descending) eigenvalues of the neutral element for a partition.
fn neutral_values(lambda: &[usize]) -> Vec<i32> {
    let mut v: Vec<i32> = lambda
        .iter()
        .flat_map(|&p| (0..p).map(move |k| p as i32 - 1 - 2 * k as i32))
        .collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

fn partition_label(lambda: &[usize]) -> String {
    let inner: Vec<String> = lambda.iter().map(|p| p.to_string()).collect();
    format!("[{}]", inner.join(","))
}

fn classical_diagrams(rs: &RootSystem) -> Vec<WeightedDiagram> {
    let ct = rs.cartan_type();
    let n = ct.rank;
    let mut out = Vec::new();
    let mut push = |label: String, weights: Vec<i32>, special: bool| {
        let weights = weights
            .into_iter()
            .map(|w| u8::try_from(w).expect("weights lie in 0..=2"))
            .collect();
        out.push(WeightedDiagram {
            label,
            weights,
            special,
            condition: if special {
                Condition::Always
            } else {
                Condition::NotTwo
            },
        });
    };
    match ct.family {
        Family::A => {
            for lambda in partitions(n + 1) {
                let h = neutral_values(&lambda);
                let w = (0..n).map(|i| h[i] - h[i + 1]).collect();
                push(partition_label(&lambda), w, true);
            }
        }
        Family::B => {
            for lambda in partitions(2 * n + 1) {
                if !parity_parts_even_mult(&lambda, false) {
                    continue;
                }
                let h = neutral_values(&lambda);
                let mut w: Vec<i32> = (0..n - 1).map(|i| h[i] - h[i + 1]).collect();
                w.push(h[n - 1]);
                let special = parity_parts_even_mult(&transpose(&lambda), false);
                push(partition_label(&lambda), w, special);
            }
        }
        Family::C => {
            for lambda in partitions(2 * n) {
                if !parity_parts_even_mult(&lambda, true) {
                    continue;
                }
                let h = neutral_values(&lambda);
                let mut w: Vec<i32> = (0..n - 1).map(|i| h[i] - h[i + 1]).collect();
                w.push(2 * h[n - 1]);
                let special = parity_parts_even_mult(&transpose(&lambda), true);
                push(partition_label(&lambda), w, special);
            }
        }
        Family::D => {
            for lambda in partitions(2 * n) {
                if !parity_parts_even_mult(&lambda, false) {
                    continue;
                }
                let h = neutral_values(&lambda);
                let mut w: Vec<i32> = (0..n - 1).map(|i| h[i] - h[i + 1]).collect();
                w.push(h[n - 2] + h[n - 1]);
                let special = parity_parts_even_mult(&transpose(&lambda), true);
                let very_even = lambda.iter().all(|p| p % 2 == 0);
                if very_even {
                    let label = partition_label(&lambda);
                    let mut swapped = w.clone();
                    swapped.swap(n - 2, n - 1);
                    push(format!("{label}I"), w, special);
                    push(format!("{label}II"), swapped, special);
                } else {
                    push(partition_label(&lambda), w, special);
                }
            }
        }
        _ => unreachable!("exceptional types use tables"),
    }
    sort_by_b(rs, &mut out);
    out
}

fn sort_by_b(rs: &RootSystem, diagrams: &mut [WeightedDiagram]) {
    diagrams.sort_by_cached_key(|d| (std::cmp::Reverse(b_invariant(rs, d)), d.weights.clone()));
}

// ------------------------------------------------------------ Bala–Carter

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Component {
    priority: u8,
    rank: usize,
    long: bool,
    letter: char,
    qualifier: String,
}

impl Component {
    fn name(&self) -> String {
        let tilde = if self.long { "" } else { "~" };
        let q = if self.qualifier.is_empty() {
            String::new()
        } else {
            format!("({})", self.qualifier)
        };
        format!("{tilde}{}{}{q}", self.letter, self.rank)
    }
}

fn qualifiers(letter: char, rank: usize) -> Vec<&'static str> {
    match (letter, rank) {
        ('E', 6) => vec!["", "a1", "a3"],
        ('E', 7) => vec!["", "a1", "a2", "a3", "a4", "a5"],
        ('E', 8) => vec![
            "", "a1", "a2", "a3", "a4", "b4", "a5", "b5", "a6", "b6", "a7",
        ],
        ('F', 4) => vec!["", "a1", "a2", "a3"],
        ('G', 2) => vec!["", "a1"],
        _ => vec!["", "a1", "a2", "a3", "a4", "a5", "a6"],
    }
}

/// Connected components of the subdiagram on `subset`.
fn components(cartan: &[Vec<i32>], subset: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; cartan.len()];
    let mut out = Vec::new();
    for &start in subset {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for &j in subset {
                if !seen[j] && cartan[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Letter and shortness flag of a connected subdiagram.
fn component_type(rs: &RootSystem, comp: &[usize]) -> (char, bool) {
    let cartan = rs.cartan_matrix();
    let long: Vec<bool> = comp.iter().map(|&i| rs.is_long(rs.simple_root(i))).collect();
    let n_long = long.iter().filter(|&&l| l).count();
    let r = comp.len();
    if n_long == r || n_long == 0 {
        let short = n_long == 0;
        let degree = |i: usize| comp.iter().filter(|&&j| j != i && cartan[i][j] != 0).count();
        let Some(&branch) = comp.iter().find(|&&i| degree(i) == 3) else {
            return ('A', short);
        };
        // arm lengths from the branch node
        let mut arms = Vec::new();
        for &start in comp.iter().filter(|&&j| j != branch && cartan[branch][j] != 0) {
            let (mut prev, mut cur, mut len) = (branch, start, 1);
            while let Some(&next) = comp
                .iter()
                .find(|&&j| j != prev && j != cur && cartan[cur][j] != 0)
            {
                prev = cur;
                cur = next;
                len += 1;
            }
            arms.push(len);
        }
        arms.sort_unstable();
        return (if arms[1] == 1 { 'D' } else { 'E' }, short);
    }
    if r == 2 {
        let i = comp[0];
        let j = comp[1];
        let triple = cartan[i][j] == -3 || cartan[j][i] == -3;
        return (if triple { 'G' } else { 'B' }, false);
    }
    if r == 4 && n_long == 2 {
        return ('F', false);
    }
    if r - n_long == 1 {
        ('B', false)
    } else {
        ('C', false)
    }
}

fn priority(letter: char) -> u8 {
    match letter {
        'E' => 6,
        'F' => 5,
        'G' => 4,
        'D' => 3,
        'C' => 2,
        'B' => 1,
        _ => 0,
    }
}

/// Even diagrams `d ∈ {0,2}^comp` with `dim g(0) = dim g(2)`, paired with the
/// number of weight-0 positive roots, sorted by increasing count (that is,
/// decreasing orbit dimension).
fn distinguished(rs: &RootSystem, comp: &[usize]) -> Vec<(Vec<u8>, usize)> {
    let roots: Vec<&Root> = rs
        .positive_roots()
        .iter()
        .filter(|r| {
            r.coeffs()
                .iter()
                .enumerate()
                .all(|(i, &c)| c == 0 || comp.contains(&i))
        })
        .collect();
    let r = comp.len();
    let mut out = Vec::new();
    for mask in 0..(1u32 << r) {
        let mut w = vec![0u8; rs.rank()];
        for (k, &i) in comp.iter().enumerate() {
            if mask >> k & 1 == 1 {
                w[i] = 2;
            }
        }
        let (mut n0, mut n2) = (0usize, 0usize);
        for root in &roots {
            match extend(&w, root) {
                0 => n0 += 1,
                2 => n2 += 1,
                _ => {}
            }
        }
        if r + 2 * n0 == n2 {
            out.push((comp.iter().map(|&i| w[i]).collect(), n0));
        }
    }
    out.sort_by_key(|(_, n0)| *n0);
    out
}

/// Makes a weight vector dominant under simple reflections.
fn make_dominant(cartan: &[Vec<i32>], v: &mut [Rational64]) {
    while let Some(i) = (0..v.len()).find(|&i| v[i] < Rational64::zero()) {
        let vi = v[i];
        for (k, vk) in v.iter_mut().enumerate() {
            *vk -= Rational64::from_integer(cartan[i][k] as i64) * vi;
        }
    }
}

/// Solves `Σ_j c_j A_{j,i} = d_i` on `subset` and returns `α_k(h)` for all k.
fn neutral_element(cartan: &[Vec<i32>], subset: &[usize], d: &BTreeMap<usize, u8>) -> Vec<Rational64> {
    let r = subset.len();
    let mut m: Vec<Vec<Rational64>> = subset
        .iter()
        .map(|&i| {
            let mut row: Vec<Rational64> = subset
                .iter()
                .map(|&j| Rational64::from_integer(cartan[j][i] as i64))
                .collect();
            row.push(Rational64::from_integer(d[&i] as i64));
            row
        })
        .collect();
    for c in 0..r {
        let piv = (c..r).find(|&i| !m[i][c].is_zero()).expect("Cartan matrix invertible");
        m.swap(c, piv);
        let inv = Rational64::one() / m[c][c];
        for x in m[c].iter_mut() {
            *x *= inv;
        }
        for i in 0..r {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..=r {
                    let t = m[c][j] * f;
                    m[i][j] -= t;
                }
            }
        }
    }
    let coeff: Vec<Rational64> = (0..r).map(|i| m[i][r]).collect();
    (0..cartan.len())
        .map(|k| {
            subset
                .iter()
                .zip(&coeff)
                .map(|(&j, &c)| c * Rational64::from_integer(cartan[j][k] as i64))
                .sum()
        })
        .collect()
}

/// Every weighted diagram with its Bala–Carter label, one entry per orbit,
/// sorted by decreasing `b_d`. Specialness and conditions are not known
/// here and are reported as special / always.
pub fn bala_carter(rs: &RootSystem) -> Result<Vec<WeightedDiagram>> {
    let n = rs.rank();
    let cartan = rs.cartan_matrix();
    // diagram -> label
    let mut found: BTreeMap<Vec<u8>, String> = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let comps = components(cartan, &subset);
        let choices: Vec<Vec<(Vec<u8>, usize)>> =
            comps.iter().map(|c| distinguished(rs, c)).collect();
        let mut idx = vec![0usize; comps.len()];
        loop {
            let mut d = BTreeMap::new();
            let mut parts = Vec::new();
            for (k, comp) in comps.iter().enumerate() {
                let (w, _) = &choices[k][idx[k]];
                for (&i, &wi) in comp.iter().zip(w) {
                    d.insert(i, wi);
                }
                let (letter, short) = component_type(rs, comp);
                let qual = qualifiers(letter, comp.len());
                let qualifier = qual
                    .get(idx[k])
                    .ok_or_else(|| Error::Data(format!("too many distinguished orbits in {letter}{}", comp.len())))?
                    .to_string();
                parts.push(Component {
                    priority: priority(letter),
                    rank: comp.len(),
                    long: !short,
                    letter,
                    qualifier,
                });
            }
            let mut v = neutral_element(cartan, &subset, &d);
            make_dominant(cartan, &mut v);
            let weights: Vec<u8> = v
                .iter()
                .map(|x| {
                    (x.is_integer() && (0..=2).contains(&x.to_integer()))
                        .then(|| x.to_integer() as u8)
                        .ok_or_else(|| Error::Data("non-integral neutral element".into()))
                })
                .collect::<Result<_>>()?;
            let label = join_components(parts);
            match found.get(&weights) {
                Some(existing) if *existing != label => {
                    return Err(Error::Data(format!(
                        "labels {existing} and {label} share diagram {weights:?}"
                    )))
                }
                _ => {
                    found.insert(weights, label);
                }
            }
            // next choice in the product
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    let mut out: Vec<WeightedDiagram> = found
        .into_iter()
        .map(|(weights, label)| WeightedDiagram {
            label,
            weights,
            special: true,
            condition: Condition::Always,
        })
        .collect();
    sort_by_b(rs, &mut out);
    disambiguate(rs, &mut out);
    Ok(out)
}

fn join_components(mut parts: Vec<Component>) -> String {
    if parts.is_empty() {
        return "1".into();
    }
    parts.sort_by(|a, b| b.cmp(a));
    let mut pieces = Vec::new();
    let mut k = 0;
    while k < parts.len() {
        let mut m = 1;
        while k + m < parts.len() && parts[k + m] == parts[k] {
            m += 1;
        }
        let name = parts[k].name();
        pieces.push(if m > 1 { format!("{m}{name}") } else { name });
        k += m;
    }
    pieces.join("+")
}

/// Primes repeated labels: `'` for the smaller `b_d`, `''` for the larger.
fn disambiguate(rs: &RootSystem, diagrams: &mut [WeightedDiagram]) {
    let mut by_label: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, d) in diagrams.iter().enumerate() {
        by_label.entry(d.label.clone()).or_default().push(i);
    }
    for (label, mut idx) in by_label {
        if idx.len() < 2 {
            continue;
        }
        idx.sort_by_key(|&i| b_invariant(rs, &diagrams[i]));
        let base = if label.contains('+') || label.starts_with(|c: char| c.is_ascii_digit()) {
            format!("({label})")
        } else {
            label.clone()
        };
        for (rank, &i) in idx.iter().enumerate() {
            diagrams[i].label = format!("{base}{}", "'".repeat(rank + 1));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(t: &str) -> RootSystem {
        RootSystem::new(t.parse().unwrap()).unwrap()
    }

    fn weights(ds: &[WeightedDiagram]) -> Vec<String> {
        let mut w: Vec<String> = ds.iter().map(|d| d.weight_string()).collect();
        w.sort();
        w
    }

    #[test]
    fn c2_diagrams() {
        let r = rs("C2");
        let ds = enumerate_diagrams(&r).unwrap();
        assert_eq!(weights(&ds), ["00", "02", "10", "22"]);
        let d0 = ds.iter().find(|d| d.weights == [1, 0]).unwrap();
        assert_eq!(b_invariant(&r, d0), 2);
        assert!(!d0.special);
        assert_eq!(ds.iter().filter(|d| !d.special).count(), 1);
    }

    #[test]
    fn d4_diagrams() {
        let r = rs("D4");
        let ds = enumerate_diagrams(&r).unwrap();
        assert_eq!(ds.len(), 12);
        let nonspecial: Vec<_> = ds.iter().filter(|d| !d.special).collect();
        assert_eq!(nonspecial.len(), 1);
        assert_eq!(nonspecial[0].label, "[3,2,2,1]");
        assert_eq!(nonspecial[0].weights, [1, 0, 1, 1]);
        assert_eq!(b_invariant(&r, nonspecial[0]), 4);
        let a = find_diagram(&r, "0100").unwrap();
        assert_eq!(b_invariant(&r, &a), 7);
    }

    #[test]
    fn type_a_counts_match_partitions() {
        for n in 1..=8 {
            let r = rs(&format!("A{n}"));
            let ds = enumerate_diagrams(&r).unwrap();
            assert_eq!(ds.len(), partitions(n + 1).len());
            assert!(ds.iter().all(|d| d.special));
        }
    }

    #[test]
    fn regular_and_zero_orbits() {
        for t in ["A4", "B3", "C4", "D5", "G2", "F4", "E6"] {
            let r = rs(t);
            let ds = enumerate_diagrams(&r).unwrap();
            assert!(ds.iter().any(|d| d.weights.iter().all(|&w| w == 2)), "{t}");
            let zero = ds.iter().find(|d| d.weights.iter().all(|&w| w == 0)).unwrap();
            assert_eq!(b_invariant(&r, zero) as usize, r.num_positive(), "{t}");
        }
    }

    #[test]
    fn partition_helpers() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(transpose(&[3, 2, 2, 1]), vec![4, 3, 1]);
        assert_eq!(neutral_values(&[3, 1]), vec![2, 0, 0, -2]);
    }

    #[test]
    fn conditions() {
        assert!(!Condition::NotTwoThree.holds(3));
        assert!(Condition::NotFive.holds(2));
        for c in ["-", "p!=2", "p!=3", "p!=5", "p!=2,3"] {
            assert_eq!(Condition::parse(c).unwrap().to_string(), c);
        }
    }

    #[test]
    fn table_parsing_rejects_garbage() {
        assert!(parse_table("A1|10|yes", 2).is_err());
        assert!(parse_table("A1|13|yes|-", 2).is_err());
        assert!(parse_table("A1|10|maybe|-", 2).is_err());
        assert!(parse_table("A1|10|yes|p!=7", 2).is_err());
        assert_eq!(parse_table("# c\nA1|10|no|p!=2\n", 2).unwrap().len(), 1);
    }

    #[test]
    fn membership() {
        let r = rs("F4");
        let d = find_diagram(&r, "~A2+A1").unwrap();
        assert_eq!(lookup_membership(&r, &d, 3).unwrap(), (false, false));
        assert_eq!(lookup_membership(&r, &d, 2).unwrap(), (false, true));
        assert_eq!(lookup_membership(&r, &d, 0).unwrap(), (false, true));
        let d = find_diagram(&r, "~A1").unwrap();
        assert_eq!(lookup_membership(&r, &d, 2).unwrap(), (true, true));
        let bogus = WeightedDiagram {
            label: "x".into(),
            weights: vec![1, 1, 1, 1],
            special: true,
            condition: Condition::Always,
        };
        assert!(matches!(lookup_membership(&r, &bogus, 2), Err(Error::Data(_))));
    }
}
