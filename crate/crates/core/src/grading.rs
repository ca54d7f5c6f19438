//! The grading `g = ⊕ g(i)` induced by a weighted Dynkin diagram.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::rootsys::{RootId, RootSystem};
use crate::wdd::{extend, WeightedDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedPieces {
    rank: usize,
    /// Positive roots of each weight, in the root order.
    by_weight: BTreeMap<i32, Vec<RootId>>,
}

impl GradedPieces {
    pub fn new(rs: &RootSystem, d: &WeightedDiagram) -> Self {
        Self::from_weights(rs, &d.weights)
    }

    pub fn from_weights(rs: &RootSystem, weights: &[u8]) -> Self {
        assert_eq!(weights.len(), rs.rank());
        let mut by_weight: BTreeMap<i32, Vec<RootId>> = BTreeMap::new();
        for (id, r) in rs.positive_roots().iter().enumerate() {
            by_weight.entry(extend(weights, r)).or_default().push(id);
        }
        GradedPieces {
            rank: rs.rank(),
            by_weight,
        }
    }

    /// Positive roots of weight `i` (empty for `i < 0`).
    pub fn phi(&self, i: i32) -> &[RootId] {
        self.by_weight.get(&i).map_or(&[], Vec::as_slice)
    }

    /// Weights occurring among positive roots, ascending.
    pub fn weights(&self) -> impl Iterator<Item = i32> + '_ {
        self.by_weight.keys().copied()
    }

    /// `dim g(i)`, counting the Cartan subalgebra in degree 0 and negative
    /// roots in degrees `≤ 0`.
    pub fn dim(&self, i: i32) -> usize {
        match i.cmp(&0) {
            std::cmp::Ordering::Equal => self.rank + 2 * self.phi(0).len(),
            std::cmp::Ordering::Greater => self.phi(i).len(),
            std::cmp::Ordering::Less => self.phi(-i).len(),
        }
    }

    pub fn max_weight(&self) -> i32 {
        self.by_weight.keys().next_back().copied().unwrap_or(0)
    }

    /// `Σ_i dim g(i)` over all degrees.
    pub fn total_dim(&self) -> usize {
        let top = self.max_weight();
        (-top..=top).map(|i| self.dim(i)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wdd::{enumerate_diagrams, find_diagram};

    fn rs(t: &str) -> RootSystem {
        RootSystem::new(t.parse().unwrap()).unwrap()
    }

    fn digits(rs: &RootSystem, ids: &[RootId]) -> Vec<String> {
        ids.iter().map(|&i| rs.root(i).digits()).collect()
    }

    #[test]
    fn f4_a1() {
        let r = rs("F4");
        let g = GradedPieces::new(&r, &find_diagram(&r, "A1").unwrap());
        assert_eq!(g.phi(1).len(), 14);
        assert_eq!(digits(&r, g.phi(2)), ["2342"]);
    }

    #[test]
    fn f4_tilde_a2_plus_a1_contains_1121() {
        let r = rs("F4");
        let g = GradedPieces::new(&r, &find_diagram(&r, "~A2+A1").unwrap());
        assert!(digits(&r, g.phi(2)).contains(&"1121".to_string()));
    }

    #[test]
    fn g2_b_pieces() {
        let r = rs("G2");
        let g = GradedPieces::from_weights(&r, &[0, 1]);
        assert_eq!(digits(&r, g.phi(1)), ["01", "11", "21", "31"]);
        assert_eq!(digits(&r, g.phi(2)), ["32"]);
    }

    #[test]
    fn dimensions_add_up() {
        for t in ["A3", "B3", "C3", "D4", "G2", "F4", "E6"] {
            let r = rs(t);
            let dim_g = r.rank() + 2 * r.num_positive();
            for d in enumerate_diagrams(&r).unwrap() {
                let g = GradedPieces::new(&r, &d);
                assert_eq!(g.total_dim(), dim_g, "{t} {}", d.label);
                let listed: usize = g.weights().map(|i| g.phi(i).len()).sum();
                assert_eq!(listed, r.num_positive());
            }
        }
    }
}
