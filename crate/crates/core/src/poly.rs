//! Sparse multivariate polynomials with exact coefficients.
//!
//! Coefficients are arbitrary-precision integers; a polynomial either lives
//! over `Z` or over `Z/pZ`, in which case every stored coefficient is
//! reduced into `[0, p)`. Terms are kept sorted by descending graded
//! lexicographic order (`x1 > x2 > ...`) with no zero coefficients, so
//! structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Domain {
    Integer,
    Modular(u64),
}

impl Domain {
    fn normalize(self, c: BigInt) -> BigInt {
        match self {
            Domain::Integer => c,
            Domain::Modular(p) => c.mod_floor(&BigInt::from(p)),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Integer => write!(f, "Z"),
            Domain::Modular(p) => write!(f, "F{p}"),
        }
    }
}

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u16; 24]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    fn mul_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.0[i] = m.0[i].checked_add(1).expect("exponent overflow");
        m
    }

    /// Graded lexicographic comparison.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    nvars: usize,
    domain: Domain,
    /// Descending grlex, no zero coefficients.
    terms: Vec<(Monomial, BigInt)>,
}

impl SparsePoly {
    pub fn zero(nvars: usize, domain: Domain) -> Self {
        SparsePoly {
            nvars,
            domain,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, domain: Domain, c: impl Into<BigInt>) -> Self {
        Self::term(nvars, domain, c, Monomial::one(nvars))
    }

    /// `x_i` (0-based index).
    pub fn var(nvars: usize, domain: Domain, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::term(nvars, domain, 1, Monomial::var(nvars, i))
    }

    pub fn term(nvars: usize, domain: Domain, c: impl Into<BigInt>, m: Monomial) -> Self {
        assert_eq!(m.0.len(), nvars);
        let c = domain.normalize(c.into());
        let terms = if c.is_zero() { vec![] } else { vec![(m, c)] };
        SparsePoly {
            nvars,
            domain,
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(
        nvars: usize,
        domain: Domain,
        terms: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars);
            *acc.entry(m).or_insert_with(BigInt::zero) += c;
        }
        let mut terms: Vec<(Monomial, BigInt)> = acc
            .into_iter()
            .map(|(m, c)| (m, domain.normalize(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        terms.sort_by(|a, b| b.0.grlex_cmp(&a.0));
        SparsePoly {
            nvars,
            domain,
            terms,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomial_count(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Largest exponent of any single variable.
    pub fn max_var_degree(&self) -> u32 {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.0.iter().map(|&e| e as u32))
            .max()
            .unwrap_or(0)
    }

    fn compatible(&self, other: &SparsePoly) -> Result<()> {
        if self.nvars != other.nvars || self.domain != other.domain {
            return Err(Error::Domain(format!(
                "polynomial mismatch: {} vars over {} vs {} vars over {}",
                self.nvars, self.domain, other.nvars, other.domain
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.compatible(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.compatible(other)?;
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Ok(other.mul_term(c, m));
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        Ok(SparsePoly::from_terms(
            self.nvars,
            self.domain,
            acc.into_iter(),
        ))
    }

    pub fn neg(&self) -> SparsePoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), self.domain.normalize(-c)))
            .collect();
        SparsePoly {
            nvars: self.nvars,
            domain: self.domain,
            terms,
        }
    }

    fn merge(&self, other: &SparsePoly, subtract: bool) -> SparsePoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &BigInt| if subtract { -c } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.grlex_cmp(mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), self.domain.normalize(sign(cb))));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.domain.normalize(ca + sign(cb));
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (m.clone(), self.domain.normalize(sign(c)))),
        );
        SparsePoly {
            nvars: self.nvars,
            domain: self.domain,
            terms: out,
        }
    }

    /// Multiplies by `c · m`. Monomial multiplication preserves grlex order,
    /// so no re-sorting happens.
    pub fn mul_term(&self, c: &BigInt, m: &Monomial) -> SparsePoly {
        let c = self.domain.normalize(c.clone());
        if c.is_zero() {
            return SparsePoly::zero(self.nvars, self.domain);
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(mm, cc)| {
                let v = self.domain.normalize(cc * &c);
                (!v.is_zero()).then(|| (mm.mul(m), v))
            })
            .collect();
        SparsePoly {
            nvars: self.nvars,
            domain: self.domain,
            terms,
        }
    }

    /// Multiplies by `c · x_i`.
    pub fn mul_var_scaled(&self, c: i64, i: usize) -> SparsePoly {
        let c = self.domain.normalize(BigInt::from(c));
        if c.is_zero() {
            return SparsePoly::zero(self.nvars, self.domain);
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(mm, cc)| {
                let v = self.domain.normalize(cc * &c);
                (!v.is_zero()).then(|| (mm.mul_var(i), v))
            })
            .collect();
        SparsePoly {
            nvars: self.nvars,
            domain: self.domain,
            terms,
        }
    }

    /// In-place `self += other` for a compatible polynomial.
    pub fn add_assign(&mut self, other: &SparsePoly) {
        assert!(self.compatible(other).is_ok(), "polynomial mismatch");
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        *self = self.merge(other, false);
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut acc = SparsePoly::constant(self.nvars, self.domain, 1);
        for _ in 0..e {
            acc = acc.checked_mul(self).expect("same domain");
        }
        acc
    }

    /// Value at `point` (reduced mod p for modular polynomials).
    pub fn evaluate(&self, point: &[BigInt]) -> Result<BigInt> {
        if point.len() != self.nvars {
            return Err(Error::Domain(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(self.domain.normalize(acc))
    }

    /// Coefficient-wise reduction of an integer polynomial.
    pub fn reduce_mod(&self, p: u64) -> Result<SparsePoly> {
        if self.domain != Domain::Integer {
            return Err(Error::Domain("reduce_mod needs a polynomial over Z".into()));
        }
        if !is_prime(p) {
            return Err(Error::Config(format!("{p} is not prime")));
        }
        let domain = Domain::Modular(p);
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let v = domain.normalize(c.clone());
                (!v.is_zero()).then(|| (m.clone(), v))
            })
            .collect();
        Ok(SparsePoly {
            nvars: self.nvars,
            domain,
            terms,
        })
    }

    /// gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> Result<BigInt> {
        if self.domain != Domain::Integer {
            return Err(Error::Domain("content needs a polynomial over Z".into()));
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        Ok(g.abs())
    }

    /// Substitutes `x_i ↦ -x_i` for every `i` with `flips[i]`.
    pub fn flip_signs(&self, flips: &[bool]) -> SparsePoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let odd = m
                    .0
                    .iter()
                    .zip(flips)
                    .filter(|(e, f)| **f && **e % 2 == 1)
                    .count();
                let c = if odd % 2 == 1 { -c } else { c.clone() };
                (m.clone(), self.domain.normalize(c))
            })
            .collect();
        SparsePoly {
            nvars: self.nvars,
            domain: self.domain,
            terms,
        }
    }

    /// Parses the canonical rendering produced by `Display`, e.g.
    /// `3*x1^2 - x1*x2 + 5`. Variables are `x1 ... xN`.
    pub fn parse(text: &str, nvars: usize, domain: Domain) -> Result<SparsePoly> {
        let bad = || Error::Config(format!("cannot parse polynomial {text:?}"));
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned == "0" {
            return Ok(SparsePoly::zero(nvars, domain));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (idx, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(idx > 0 && cleaned[..idx].ends_with('^')) {
                if !current.is_empty() {
                    pieces.push((negative, std::mem::take(&mut current)));
                } else if idx != 0 {
                    return Err(bad());
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(bad());
        }
        pieces.push((negative, current));
        let mut terms = Vec::new();
        for (neg, piece) in pieces {
            let mut coeff = BigInt::one();
            let mut exps = vec![0u16; nvars];
            for factor in piece.split('*') {
                if let Some(var) = factor.strip_prefix('x') {
                    let (idx, e) = match var.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u16>().map_err(|_| bad())?),
                        None => (var, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad())?;
                    if idx == 0 || idx > nvars {
                        return Err(bad());
                    }
                    exps[idx - 1] += e;
                } else {
                    coeff *= factor.parse::<BigInt>().map_err(|_| bad())?;
                }
            }
            if neg {
                coeff = -coeff;
            }
            terms.push((Monomial::from_exponents(&exps), coeff));
        }
        Ok(SparsePoly::from_terms(nvars, domain, terms))
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            let constant = m.degree() == 0;
            if constant || !mag.is_one() {
                factors.push(mag.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl std::ops::Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_add(rhs).expect("polynomial domain mismatch")
    }
}

impl std::ops::Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_sub(rhs).expect("polynomial domain mismatch")
    }
}

impl std::ops::Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_mul(rhs).expect("polynomial domain mismatch")
    }
}

impl std::ops::Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly::neg(self)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
