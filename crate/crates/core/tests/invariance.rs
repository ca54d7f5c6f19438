//! Verdicts do not depend on the sign choices in the Chevalley basis, and
//! nonvanishing witnesses outside the prime field are found when needed.

mod common;

use common::{equal_up_to_sign_flips, matches_printed, parse_printed, root_system};
use gggr_core::field::{nonvanishing_point, ExtensionField, FieldPoly, FiniteField, PrimeField};
use gggr_core::{
    det_via_pfaffian, k2_decide, unimodular_decide, wdd, Budget, Domain, GradedPieces,
    GramMatrix, SparsePoly, StructureConstants,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn resigned_gram(seed: u64, key: &str) -> (GramMatrix, GramMatrix) {
    let rs = root_system("F4");
    let sc = StructureConstants::new(&rs);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let signs: Vec<i8> = (0..rs.num_positive())
        .map(|_| if rng.gen_bool(0.5) { -1 } else { 1 })
        .collect();
    let other = sc.resigned(&signs);
    assert!(other.check_pairs().is_empty());
    let d = wdd::find_diagram(&rs, key).unwrap();
    let pieces = GradedPieces::new(&rs, &d);
    (
        GramMatrix::build(&sc, &pieces).unwrap(),
        GramMatrix::build(&other, &pieces).unwrap(),
    )
}

#[test]
fn determinant_is_stable_under_resigning() {
    for seed in 0..8 {
        let (g, h) = resigned_gram(seed, "C3(a1)");
        let a = det_via_pfaffian(&g.to_skew()).unwrap();
        let b = det_via_pfaffian(&h.to_skew()).unwrap();
        assert!(equal_up_to_sign_flips(&a, &b), "seed {seed}: {a} vs {b}");
    }
}

#[test]
fn verdicts_are_stable_under_resigning() {
    let budget = Budget::default();
    let rs = root_system("F4");
    for d in wdd::enumerate_diagrams(&rs).unwrap() {
        if GradedPieces::new(&rs, &d).phi(1).is_empty() {
            continue;
        }
        let (g, h) = resigned_gram(17, &d.label);
        for p in [2, 3, 5] {
            let a = k2_decide(&g, p, &budget).unwrap().admissible();
            let b = k2_decide(&h, p, &budget).unwrap().admissible();
            assert_eq!(a, b, "{} p={p}", d.label);
        }
        let a = unimodular_decide(&g, &budget).unwrap().admissible();
        let b = unimodular_decide(&h, &budget).unwrap().admissible();
        assert_eq!(a, b, "{} over Z", d.label);
    }
}

#[test]
fn witness_needs_an_extension_field() {
    // x1*x2*(x1 + x2) vanishes on F_2^2 but not on F_4^2
    let x1 = SparsePoly::var(2, Domain::Integer, 0);
    let x2 = SparsePoly::var(2, Domain::Integer, 1);
    let poly = &(&x1 * &x2) * &(&x1 + &x2);
    let f2 = PrimeField::new(2).unwrap();
    let fp = FieldPoly::from_sparse(&f2, &poly).unwrap();
    assert!(nonvanishing_point(&f2, &fp, 2).is_none());
    let f4 = ExtensionField::new(2, 2).unwrap();
    assert_eq!(f4.order(), 4);
    let fp = FieldPoly::from_sparse(&f4, &poly).unwrap();
    let pt = nonvanishing_point(&f4, &fp, 2).expect("a point over F_4");
    let (a, b) = (pt[0], pt[1]);
    let value = f4.mul(f4.mul(a, b), f4.add(a, b));
    assert_ne!(value, 0);
}

#[test]
fn extension_field_axioms() {
    for (p, k) in [(2, 2), (2, 3), (3, 2)] {
        let f = ExtensionField::new(p, k).unwrap();
        let q = f.order();
        for a in 0..q {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1, "F_{p}^{k}: inverse of {a}");
            }
            for b in 0..q {
                let c = (a * 7 + b * 3) % q;
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
    }
}

fn printed(g: &GramMatrix, tamper: Option<(usize, usize)>) -> Vec<Vec<Option<(i64, usize)>>> {
    (0..g.n())
        .map(|i| {
            (0..g.n())
                .map(|j| {
                    g.entry(i, j).map(|e| {
                        let c = if tamper == Some((i, j)) { -e.coeff } else { e.coeff };
                        (c, e.var)
                    })
                })
                .collect()
        })
        .collect()
}

#[test]
fn printed_matrix_matching_sees_only_sign_changes() {
    for seed in 0..4 {
        let (g, h) = resigned_gram(seed, "A1+~A1");
        let order: Vec<&str> = g.var_labels().iter().map(String::as_str).collect();
        assert!(matches_printed(&g, &order, &printed(&h, None)));
        let (i, j) = (0..g.n())
            .flat_map(|i| (0..g.n()).map(move |j| (i, j)))
            .find(|&(i, j)| g.entry(i, j).is_some())
            .unwrap();
        assert!(!matches_printed(&g, &order, &printed(&h, Some((i, j)))));
        let mut reversed = order.clone();
        reversed.reverse();
        assert!(!matches_printed(&g, &reversed, &printed(&h, None)));
    }
    let p = parse_printed("0 -2x3\n2x3 0");
    assert_eq!(p, vec![vec![None, Some((-2, 2))], vec![Some((2, 2)), None]]);
}
