//! Irreducible crystallographic root systems built from Cartan data.
//!
//! Simple roots are numbered as in Bourbaki (which is also the numbering
//! printed for `F4` and `E8` in the worked examples of this crate). Positive
//! roots are kept in a fixed total order: by height first, then
//! lexicographically on the coefficient tuple with larger leading
//! coefficients first. With this order `C2` gives `α, β, α+β, 2α+β`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// The seven families of irreducible reduced root systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn is_exceptional(self) -> bool {
        matches!(self, Family::E | Family::F | Family::G)
    }
}

/// A Cartan type such as `F4` or `A7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    /// Validates the rank against the supported range.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => (1..=15).contains(&rank),
            Family::B | Family::C => (2..=8).contains(&rank),
            Family::D => (4..=8).contains(&rank),
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::Config(format!(
                "unsupported Cartan type {}{}",
                family.letter(),
                rank
            )))
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    pub fn coxeter_number(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n + 1,
            Family::B | Family::C => 2 * n,
            Family::D => 2 * n - 2,
            Family::E => match n {
                6 => 12,
                7 => 18,
                _ => 30,
            },
            Family::F => 12,
            Family::G => 6,
        }
    }

    /// Primes that are bad for this type.
    pub fn bad_primes(self) -> &'static [u64] {
        match self.family {
            Family::A => &[],
            Family::B | Family::C | Family::D => &[2],
            Family::G | Family::F => &[2, 3],
            Family::E if self.rank == 8 => &[2, 3, 5],
            Family::E => &[2, 3],
        }
    }

    pub fn is_bad_prime(self, p: u64) -> bool {
        self.bad_primes().contains(&p)
    }

    /// Dynkin diagram edges (0-based) and squared root lengths, scaled so
    /// that short roots have squared length 2.
    fn diagram(self) -> (Vec<(usize, usize)>, Vec<i64>) {
        let n = self.rank;
        let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match self.family {
            Family::A => (chain(n), vec![2; n]),
            Family::B => {
                let mut lengths = vec![4; n];
                lengths[n - 1] = 2;
                (chain(n), lengths)
            }
            Family::C => {
                let mut lengths = vec![2; n];
                lengths[n - 1] = 4;
                (chain(n), lengths)
            }
            Family::D => {
                let mut edges = chain(n - 1);
                edges.push((n - 3, n - 1));
                (edges, vec![2; n])
            }
            Family::E => {
                // 1-3-4-5-...-n with 2 attached to 4 (1-based).
                let mut edges = vec![(0, 2), (1, 3)];
                for i in 2..n - 1 {
                    edges.push((i, i + 1));
                }
                (edges, vec![2; n])
            }
            Family::F => (chain(4), vec![4, 4, 2, 2]),
            Family::G => (chain(2), vec![2, 6]),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::Config("empty Cartan type".into()))?;
        let family = match letter.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(Error::Config(format!("unknown Cartan type {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Config(format!("bad rank in Cartan type {s:?}")))?;
        CartanType::new(family, rank)
    }
}

/// A root written in the basis of simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Root {
    coeffs: Vec<i32>,
}

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Self {
        Root { coeffs }
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.coeffs
    }

    pub fn height(&self) -> i32 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().any(|&c| c > 0)
    }

    fn neg(&self) -> Root {
        Root::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Compact digit string, e.g. `1342` for `α1+3α2+4α3+2α4`; negative
    /// roots get a leading `-`. Coefficients above 9 are not used by any
    /// supported type.
    pub fn digits(&self) -> String {
        let sign = if self.is_positive() { "" } else { "-" };
        let body: String = self
            .coeffs
            .iter()
            .map(|c| char::from_digit(c.unsigned_abs(), 10).unwrap_or('?'))
            .collect();
        format!("{sign}{body}")
    }

    /// Parses a digit string produced by [`Root::digits`].
    pub fn parse_digits(s: &str, rank: usize) -> Result<Root> {
        let (sign, body) = match s.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, s),
        };
        if body.len() != rank {
            return Err(Error::Config(format!(
                "root {s:?} must have {rank} digits"
            )));
        }
        let coeffs = body
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| sign * d as i32)
                    .ok_or_else(|| Error::Config(format!("bad digit in root {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Root::new(coeffs))
    }
}

/// Order used on positive roots: height, then coefficient tuple (larger first).
pub fn root_order(a: &Root, b: &Root) -> Ordering {
    a.height()
        .cmp(&b.height())
        .then_with(|| b.coeffs.cmp(&a.coeffs))
}

/// Index of a root in [`RootSystem::roots`]. Positive roots occupy
/// `0..num_positive()` in the order `≺`, their negatives follow in the
/// same order.
pub type RootId = usize;

#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    /// `cartan[i][j] = <α_i^∨, α_j>`.
    cartan: Vec<Vec<i32>>,
    /// Symmetric bilinear form on simple roots (short roots have norm 2).
    form: Vec<Vec<i64>>,
    roots: Vec<Root>,
    index: HashMap<Vec<i32>, RootId>,
    sums: Vec<Option<RootId>>,
}

impl RootSystem {
    /// Builds the root system of the given type by closing the simple
    /// roots under root strings.
    pub fn new(cartan_type: CartanType) -> Result<Self> {
        let cartan_type = CartanType::new(cartan_type.family, cartan_type.rank)?;
        let n = cartan_type.rank;
        let (edges, lengths) = cartan_type.diagram();
        let mut form = vec![vec![0i64; n]; n];
        for i in 0..n {
            form[i][i] = lengths[i];
        }
        for &(i, j) in &edges {
            let v = -lengths[i].max(lengths[j]) / 2;
            form[i][j] = v;
            form[j][i] = v;
        }
        let cartan: Vec<Vec<i32>> = (0..n)
            .map(|i| (0..n).map(|j| (2 * form[i][j] / form[i][i]) as i32).collect())
            .collect();

        let positives = close_positive_roots(&cartan);
        let mut positives = positives;
        positives.sort_by(root_order);
        let count = positives.len();
        if count != cartan_type.positive_root_count() {
            return Err(Error::Config(format!(
                "root closure for {cartan_type} produced {count} positive roots"
            )));
        }
        let mut roots = positives.clone();
        roots.extend(positives.iter().map(Root::neg));
        let index: HashMap<Vec<i32>, RootId> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coeffs.clone(), i))
            .collect();
        let total = roots.len();
        let mut sums = vec![None; total * total];
        for a in 0..total {
            for b in 0..total {
                let s: Vec<i32> = roots[a]
                    .coeffs
                    .iter()
                    .zip(&roots[b].coeffs)
                    .map(|(x, y)| x + y)
                    .collect();
                sums[a * total + b] = index.get(&s).copied();
            }
        }
        Ok(RootSystem {
            cartan_type,
            cartan,
            form,
            roots,
            index,
            sums,
        })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    /// All roots: positive ones in order `≺`, then their negatives.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id]
    }

    /// Positive roots in the order `≺`.
    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.num_positive()]
    }

    pub fn simple_root(&self, i: usize) -> RootId {
        let mut coeffs = vec![0; self.rank()];
        coeffs[i] = 1;
        self.index[&coeffs]
    }

    pub fn highest_root(&self) -> RootId {
        self.num_positive() - 1
    }

    pub fn id_of(&self, root: &Root) -> Option<RootId> {
        self.index.get(&root.coeffs).copied()
    }

    pub fn negate(&self, id: RootId) -> RootId {
        let np = self.num_positive();
        if id < np {
            id + np
        } else {
            id - np
        }
    }

    pub fn is_positive(&self, id: RootId) -> bool {
        id < self.num_positive()
    }

    /// `a + b` when it is a root.
    pub fn sum(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.sums[a * self.roots.len() + b]
    }

    /// Root-level version of [`RootSystem::sum`]; `None` also when either
    /// argument is not a root.
    pub fn root_sum(&self, a: &Root, b: &Root) -> Option<Root> {
        let (a, b) = (self.id_of(a)?, self.id_of(b)?);
        self.sum(a, b).map(|s| self.roots[s].clone())
    }

    /// `(a, b)` for the invariant form normalized so short roots have norm 2.
    pub fn inner(&self, a: RootId, b: RootId) -> i64 {
        let (x, y) = (&self.roots[a].coeffs, &self.roots[b].coeffs);
        let n = self.rank();
        let mut acc = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                acc += x[i] as i64 * y[j] as i64 * self.form[i][j];
            }
        }
        acc
    }

    pub fn norm(&self, a: RootId) -> i64 {
        self.inner(a, a)
    }

    pub fn is_long(&self, a: RootId) -> bool {
        let max = (0..self.rank()).map(|i| self.form[i][i]).max().unwrap_or(2);
        self.norm(a) == max
    }

    /// Largest `r` with `b - r·a` a root.
    pub fn string_below(&self, a: RootId, b: RootId) -> usize {
        let na = self.negate(a);
        let mut r = 0;
        let mut cur = b;
        while let Some(next) = self.sum(cur, na) {
            r += 1;
            cur = next;
        }
        r
    }

    /// `<b, a^∨> = 2(a,b)/(a,a)`.
    pub fn pairing(&self, b: RootId, a: RootId) -> i64 {
        2 * self.inner(a, b) / self.norm(a)
    }

    /// Positive roots in a fixed order (alias kept for readability at call sites).
    pub fn height_order(&self) -> &[Root] {
        self.positive_roots()
    }
}

/// Positive roots from the Cartan matrix: grow by simple roots using the
/// string condition `q = p - <β, α_i^∨>`.
fn close_positive_roots(cartan: &[Vec<i32>]) -> Vec<Root> {
    let n = cartan.len();
    let mut known: HashMap<Vec<i32>, ()> = HashMap::new();
    let mut layer: Vec<Vec<i32>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut all = Vec::new();
    for r in &layer {
        known.insert(r.clone(), ());
    }
    while !layer.is_empty() {
        let mut next = Vec::new();
        for root in &layer {
            for i in 0..n {
                let mut p = 0;
                let mut down = root.clone();
                loop {
                    down[i] -= 1;
                    if known.contains_key(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                // <root, α_i^∨> = Σ_j n_j A_{ij}
                let pair: i32 = (0..n).map(|j| root[j] * cartan[i][j]).sum();
                let q = p - pair;
                if q > 0 {
                    let mut up = root.clone();
                    up[i] += 1;
                    if !known.contains_key(&up) {
                        known.insert(up.clone(), ());
                        next.push(up);
                    }
                }
            }
        }
        all.extend(layer.drain(..));
        layer = next;
    }
    all.into_iter().map(Root::new).collect()
}
