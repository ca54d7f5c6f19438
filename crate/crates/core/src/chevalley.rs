//! Integral structure constants `[e_α, e_β] = N_{α,β} e_{α+β}` of a
//! Chevalley basis.
//!
//! Constants on positive pairs are fixed by declaring `N_{α,β} > 0` on every
//! extraspecial pair (with respect to the order `≺`) and propagating through
//! the four-root identity; the remaining pairs follow from the three-root
//! identity and `N_{-α,-β} = -N_{α,β}`.

use num_rational::Rational64;
use num_traits::Zero;

use crate::rootsys::{Root, RootId, RootSystem};

#[derive(Debug, Clone)]
pub struct StructureConstants {
    rs: RootSystem,
    /// `table[a * total + b]`, zero when `a + b` is not a root.
    table: Vec<i32>,
}

impl StructureConstants {
    pub fn new(rs: &RootSystem) -> Self {
        let total = rs.roots().len();
        let np = rs.num_positive();
        let mut table = vec![0i32; total * total];

        for xi in 0..np {
            // special pairs (a, b) with a ≺ b, a + b = ξ; a runs upwards so the
            // first hit is extraspecial
            let pairs: Vec<(RootId, RootId)> = (0..xi)
                .filter_map(|a| {
                    let b = rs.sum(xi, rs.negate(a))?;
                    (rs.is_positive(b) && a < b).then_some((a, b))
                })
                .collect();
            let Some(&(alpha, beta)) = pairs.first() else {
                continue;
            };
            let extra = rs.string_below(alpha, beta) as i32 + 1;
            table[alpha * total + beta] = extra;
            table[beta * total + alpha] = -extra;
            let norm_xi = Rational64::from_integer(rs.norm(xi));
            for &(gamma, delta) in &pairs[1..] {
                let ng = rs.negate(gamma);
                let nd = rs.negate(delta);
                let mut acc = Rational64::zero();
                if let Some(bg) = rs.sum(beta, ng) {
                    let t = mixed(rs, &table, beta, ng) * mixed(rs, &table, alpha, nd);
                    acc += Rational64::new(t, rs.norm(bg));
                }
                if let Some(ag) = rs.sum(alpha, ng) {
                    let t = mixed(rs, &table, ng, alpha) * mixed(rs, &table, beta, nd);
                    acc += Rational64::new(t, rs.norm(ag));
                }
                let value = norm_xi * acc / Rational64::from_integer(extra as i64);
                assert!(value.is_integer(), "non-integral structure constant");
                let v = value.to_integer() as i32;
                table[gamma * total + delta] = v;
                table[delta * total + gamma] = -v;
            }
        }

        for a in 0..total {
            for b in 0..total {
                if rs.sum(a, b).is_some() && table[a * total + b] == 0 {
                    table[a * total + b] = mixed(rs, &table, a, b) as i32;
                }
            }
        }
        StructureConstants {
            rs: rs.clone(),
            table,
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// `N_{a,b}`, or 0 when `a + b` is not a root.
    pub fn n(&self, a: RootId, b: RootId) -> i64 {
        self.table[a * self.rs.roots().len() + b] as i64
    }

    /// `[e_a, e_b] = N_{a,b} e_{a+b}` or `None` when `a + b ∉ Φ`.
    pub fn bracket_ids(&self, a: RootId, b: RootId) -> Option<(RootId, i64)> {
        self.rs.sum(a, b).map(|s| (s, self.n(a, b)))
    }

    pub fn bracket(&self, a: &Root, b: &Root) -> Option<(Root, i64)> {
        let (a, b) = (self.rs.id_of(a)?, self.rs.id_of(b)?);
        self.bracket_ids(a, b)
            .map(|(s, n)| (self.rs.root(s).clone(), n))
    }

    /// Constants for the basis `e'_α = ε_α e_α` with `ε_{-α} = ε_α`;
    /// `signs` is indexed by positive root.
    pub fn resigned(&self, signs: &[i8]) -> Self {
        let rs = &self.rs;
        let total = rs.roots().len();
        let np = rs.num_positive();
        assert_eq!(signs.len(), np);
        let eps = |id: RootId| signs[if id < np { id } else { id - np }] as i32;
        let mut table = self.table.clone();
        for a in 0..total {
            for b in 0..total {
                if let Some(s) = rs.sum(a, b) {
                    table[a * total + b] *= eps(a) * eps(b) * eps(s);
                }
            }
        }
        StructureConstants {
            rs: rs.clone(),
            table,
        }
    }

    /// Antisymmetry, the string bound `|N_{α,β}| = r + 1`, and the
    /// `N_{-α,-β} = -N_{α,β}` normalization on every pair of roots.
    pub fn check_pairs(&self) -> Vec<String> {
        let rs = &self.rs;
        let total = rs.roots().len();
        let mut failures = Vec::new();
        for a in 0..total {
            for b in 0..total {
                let n = self.n(a, b);
                match rs.sum(a, b) {
                    None => {
                        if n != 0 {
                            failures.push(format!("N({a},{b}) set without root sum"));
                        }
                    }
                    Some(_) => {
                        if n != -self.n(b, a) {
                            failures.push(format!("antisymmetry fails at ({a},{b})"));
                        }
                        let r = rs.string_below(a, b) as i64;
                        if n.abs() != r + 1 {
                            failures.push(format!("string bound fails at ({a},{b}): {n}"));
                        }
                        if self.n(rs.negate(a), rs.negate(b)) != -n {
                            failures.push(format!("sign normalization fails at ({a},{b})"));
                        }
                    }
                }
            }
        }
        failures
    }

    /// Jacobi identity on one triple of roots (pairwise non-opposite). When
    /// `a + b + c = 0` it is checked on the Cartan part, i.e.
    /// `N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)`.
    pub fn jacobi_holds(&self, a: RootId, b: RootId, c: RootId) -> bool {
        let rs = &self.rs;
        if a == rs.negate(b) || b == rs.negate(c) || c == rs.negate(a) {
            return true;
        }
        if let Some(ab) = rs.sum(a, b) {
            if ab == rs.negate(c) {
                let (na, nb, nc) = (rs.norm(a), rs.norm(b), rs.norm(c));
                let x = self.n(a, b) * na * nb;
                let y = self.n(b, c) * nb * nc;
                let z = self.n(c, a) * nc * na;
                return x == y && y == z;
            }
        }
        let term = |x: RootId, y: RootId, z: RootId| -> i64 {
            match rs.sum(x, y) {
                Some(s) => self.n(x, y) * self.n(s, z),
                None => 0,
            }
        };
        term(a, b, c) + term(b, c, a) + term(c, a, b) == 0
    }
}

/// `N_{a,b}` for arbitrary roots, reduced to positive pairs already present
/// in `table`.
fn mixed(rs: &RootSystem, table: &[i32], a: RootId, b: RootId) -> i64 {
    let total = rs.roots().len();
    let (pa, pb) = (rs.is_positive(a), rs.is_positive(b));
    let s = rs.sum(a, b).expect("mixed() needs a + b to be a root");
    match (pa, pb) {
        (true, true) => {
            let v = table[a * total + b] as i64;
            assert!(v != 0, "positive constant used before it was computed");
            v
        }
        (false, false) => -mixed(rs, table, rs.negate(a), rs.negate(b)),
        (false, true) => -mixed(rs, table, b, a),
        (true, false) => {
            let c = rs.negate(s);
            let value = if rs.is_positive(s) {
                // b, c negative: N_{a,b} = (c,c)/(a,a) · N_{b,c}, N_{b,c} = -N_{-b,-c}
                let inner = -mixed(rs, table, rs.negate(b), rs.negate(c));
                Rational64::new(rs.norm(c) * inner, rs.norm(a))
            } else {
                // c, a positive: N_{a,b} = (c,c)/(b,b) · N_{c,a}
                let inner = mixed(rs, table, c, a);
                Rational64::new(rs.norm(c) * inner, rs.norm(b))
            };
            debug_assert!(value.is_integer());
            value.to_integer()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Root;

    fn sc(t: &str) -> StructureConstants {
        StructureConstants::new(&RootSystem::new(t.parse().unwrap()).unwrap())
    }

    fn r(v: &[i32]) -> Root {
        Root::new(v.to_vec())
    }

    #[test]
    fn c2_long_bracket_has_magnitude_two() {
        let c = sc("C2");
        let (s, n) = c.bracket(&r(&[1, 0]), &r(&[1, 1])).unwrap();
        assert_eq!(s, r(&[2, 1]));
        assert_eq!(n.abs(), 2);
        let (s, n) = c.bracket(&r(&[1, 0]), &r(&[0, 1])).unwrap();
        assert_eq!(s, r(&[1, 1]));
        assert_eq!(n.abs(), 1);
    }

    #[test]
    fn g2_brackets() {
        let g = sc("G2");
        let (s, n) = g.bracket(&r(&[1, 1]), &r(&[2, 1])).unwrap();
        assert_eq!(s, r(&[3, 2]));
        assert_eq!(n.abs(), 3);
        let (s, n) = g.bracket(&r(&[0, 1]), &r(&[3, 1])).unwrap();
        assert_eq!(s, r(&[3, 2]));
        assert_eq!(n.abs(), 1);
    }

    #[test]
    fn a2_unit_constant() {
        let a = sc("A2");
        assert_eq!(a.bracket(&r(&[1, 0]), &r(&[0, 1])).unwrap().1.abs(), 1);
        assert!(a.bracket(&r(&[1, 0]), &r(&[-1, 0])).is_none());
    }

    #[test]
    fn extraspecial_pairs_positive() {
        let c = sc("F4");
        let rs = c.root_system();
        for xi in 0..rs.num_positive() {
            let first = (0..xi).find(|&a| {
                rs.sum(xi, rs.negate(a))
                    .is_some_and(|b| rs.is_positive(b) && a < b)
            });
            if let Some(a) = first {
                let b = rs.sum(xi, rs.negate(a)).unwrap();
                assert!(c.n(a, b) > 0);
            }
        }
    }

    #[test]
    fn pair_checks_small_types() {
        for t in ["A3", "B3", "C3", "D4", "G2", "F4"] {
            assert!(sc(t).check_pairs().is_empty(), "{t}");
        }
    }

    #[test]
    fn jacobi_exhaustive_g2_b3() {
        for t in ["G2", "B3", "C4"] {
            let c = sc(t);
            let total = c.root_system().roots().len();
            for a in 0..total {
                for b in 0..total {
                    for d in 0..total {
                        assert!(c.jacobi_holds(a, b, d), "{t} {a} {b} {d}");
                    }
                }
            }
        }
    }
}
