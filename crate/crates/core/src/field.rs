//! Small finite fields `F_p` and `F_{p^k}` with elements encoded as `u64`.
//!
//! Extension-field elements are residues modulo a monic irreducible
//! polynomial, packed as base-`p` digit strings (constant term first).

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::poly::{is_prime, Domain, SparsePoly};

pub trait FiniteField: Sync {
    fn characteristic(&self) -> u64;
    /// Number of elements `q`.
    fn order(&self) -> u64;
    fn add(&self, a: u64, b: u64) -> u64;
    fn neg(&self, a: u64) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;

    fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    /// Image of an integer under `Z → F`.
    fn from_int(&self, c: &BigInt) -> u64 {
        let p = self.characteristic();
        let r = (c % BigInt::from(p) + BigInt::from(p)) % BigInt::from(p);
        r.to_u64().expect("residue fits")
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.order() - 2)
    }

    /// The `i`-th element in a fixed enumeration, `0 ↦ 0`, `1 ↦ 1`.
    fn element(&self, i: u64) -> u64 {
        assert!(i < self.order());
        i
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::Config(format!("{p} is not a supported prime")));
        }
        Ok(PrimeField { p })
    }
}

impl FiniteField for PrimeField {
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> u64 {
        self.p
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionField {
    p: u64,
    k: u32,
    /// Low coefficients of the monic modulus of degree `k`.
    modulus: Vec<u64>,
}

impl ExtensionField {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) || k == 0 {
            return Err(Error::Config(format!("no field of order {p}^{k}")));
        }
        if (k as f64) * (p as f64).log2() > 31.0 {
            return Err(Error::Config(format!("field {p}^{k} too large")));
        }
        let modulus = find_irreducible(p, k as usize);
        Ok(ExtensionField { p, k, modulus })
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn unpack(&self, mut a: u64) -> Vec<u64> {
        let mut v = vec![0; self.k as usize];
        for d in v.iter_mut() {
            *d = a % self.p;
            a /= self.p;
        }
        v
    }

    fn pack(&self, v: &[u64]) -> u64 {
        v.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }
}

impl FiniteField for ExtensionField {
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> u64 {
        self.p.pow(self.k)
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.unpack(a), self.unpack(b));
        let s: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.pack(&s)
    }
    fn neg(&self, a: u64) -> u64 {
        let s: Vec<u64> = self
            .unpack(a)
            .iter()
            .map(|&u| (self.p - u) % self.p)
            .collect();
        self.pack(&s)
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        let k = self.k as usize;
        let (x, y) = (self.unpack(a), self.unpack(b));
        let mut prod = vec![0u64; 2 * k];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        // x^k = -(modulus low part)
        for deg in (k..2 * k).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &m) in self.modulus.iter().enumerate() {
                let t = c * m % self.p;
                prod[deg - k + i] = (prod[deg - k + i] + self.p - t) % self.p;
            }
        }
        self.pack(&prod[..k])
    }
}

/// Monic irreducible polynomial of degree `k` over `F_p`, smallest in the
/// packed enumeration; returns its `k` low coefficients.
fn find_irreducible(p: u64, k: usize) -> Vec<u64> {
    if k == 1 {
        return vec![0];
    }
    let count = p.pow(k as u32);
    (0..count)
        .map(|code| {
            let mut low = vec![0u64; k];
            let mut c = code;
            for d in low.iter_mut() {
                *d = c % p;
                c /= p;
            }
            low
        })
        .find(|low| {
            let mut f = low.clone();
            f.push(1);
            is_irreducible(&f, p)
        })
        .expect("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g = vec![0u64; d + 1];
            let mut c = code;
            for x in g.iter_mut().take(d) {
                *x = c % p;
                c /= p;
            }
            g[d] = 1;
            if remainder_is_zero(f, &g, p) {
                return false;
            }
        }
    }
    true
}

fn remainder_is_zero(f: &[u64], g: &[u64], p: u64) -> bool {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    for top in (dg..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        for (i, &gi) in g.iter().enumerate() {
            let idx = top - dg + i;
            r[idx] = (r[idx] + p - c * gi % p) % p;
        }
    }
    r.iter().all(|&x| x == 0)
}

/// A polynomial with coefficients in a finite field, used for sequential
/// substitution when hunting a non-vanishing point.
#[derive(Debug, Clone)]
pub struct FieldPoly {
    terms: Vec<(Vec<u16>, u64)>,
}

impl FieldPoly {
    /// Image of a polynomial over `Z` or `F_p` in `F[x]`.
    pub fn from_sparse<F: FiniteField>(f: &F, poly: &SparsePoly) -> Result<Self> {
        if let Domain::Modular(p) = poly.domain() {
            if p != f.characteristic() {
                return Err(Error::Domain(format!(
                    "polynomial over F{p} cannot be mapped into characteristic {}",
                    f.characteristic()
                )));
            }
        }
        let terms = poly
            .terms()
            .iter()
            .map(|(m, c)| (m.exponents().to_vec(), f.from_int(c)))
            .filter(|(_, c)| *c != 0)
            .collect();
        Ok(FieldPoly { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Substitutes `x_var := value`, merging coinciding monomials.
    pub fn substitute<F: FiniteField>(&self, f: &F, var: usize, value: u64) -> FieldPoly {
        let mut acc: std::collections::HashMap<Vec<u16>, u64> = Default::default();
        for (m, c) in &self.terms {
            let mut m = m.clone();
            let e = std::mem::take(&mut m[var]);
            let t = f.mul(*c, f.pow(value, e as u64));
            let slot = acc.entry(m).or_insert(0);
            *slot = f.add(*slot, t);
        }
        FieldPoly {
            terms: acc.into_iter().filter(|(_, c)| *c != 0).collect(),
        }
    }

    pub fn max_var_degree(&self) -> u32 {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.iter().map(|&e| e as u32))
            .max()
            .unwrap_or(0)
    }
}

/// A point where a nonzero polynomial does not vanish, using the first
/// `deg + 1` field elements per coordinate. Needs `|F| > deg` (per-variable
/// degree) or it may fail; returns `None` for the zero polynomial.
pub fn nonvanishing_point<F: FiniteField>(f: &F, poly: &FieldPoly, nvars: usize) -> Option<Vec<u64>> {
    if poly.is_zero() {
        return None;
    }
    let mut current = poly.clone();
    let mut point = Vec::with_capacity(nvars);
    for var in 0..nvars {
        let bound = (current.max_var_degree() as u64 + 1).min(f.order());
        let (value, next) = (0..bound).find_map(|i| {
            let v = f.element(i);
            let next = current.substitute(f, var, v);
            (!next.is_zero()).then_some((v, next))
        })?;
        point.push(value);
        current = next;
    }
    Some(point)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), 5);
        assert_eq!(f.from_int(&BigInt::from(-1)), 6);
        assert!(PrimeField::new(8).is_err());
    }

    #[test]
    fn extension_field_is_a_field() {
        for (p, k) in [(2, 3), (3, 2), (2, 4)] {
            let f = ExtensionField::new(p, k).unwrap();
            let q = f.order();
            for a in 1..q {
                assert_eq!(f.mul(a, f.inv(a)), 1, "GF({p}^{k}) inverse of {a}");
            }
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
        }
    }

    #[test]
    fn irreducible_search() {
        // x^2 + x + 1 over F2
        assert_eq!(find_irreducible(2, 2), vec![1, 1]);
        assert!(!is_irreducible(&[1, 0, 1], 2));
    }

    #[test]
    fn nonvanishing_point_over_extension() {
        // x1^2 + x1 vanishes on all of F2 but not on F4
        let poly = SparsePoly::parse("x1^2 + x1", 1, Domain::Modular(2)).unwrap();
        let f2 = PrimeField::new(2).unwrap();
        let fp = FieldPoly::from_sparse(&f2, &poly).unwrap();
        assert!(nonvanishing_point(&f2, &fp, 1).is_none());
        let f4 = ExtensionField::new(2, 2).unwrap();
        let fp = FieldPoly::from_sparse(&f4, &poly).unwrap();
        let pt = nonvanishing_point(&f4, &fp, 1).unwrap();
        let v = pt[0];
        assert_ne!(f4.add(f4.mul(v, v), v), 0);
    }
}
