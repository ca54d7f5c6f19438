//! The embedded diagram tables agree with what the classification code
//! generates, and the checksums guard them.

mod common;

use std::collections::BTreeSet;

use common::root_system;
use gggr_core::wdd;

/// Non-special classes of the E types with the primes excluded from the
/// admissible set, as listed in the reference table.
const NON_SPECIAL: [(&str, &[(&str, &str)]); 3] = [
    (
        "E6",
        &[("3A1", "p!=2"), ("2A2+A1", "p!=3"), ("A3+A1", "p!=2"), ("A5", "p!=2")],
    ),
    (
        "E7",
        &[
            ("(3A1)'", "p!=2"),
            ("4A1", "p!=2"),
            ("2A2+A1", "p!=3"),
            ("(A3+A1)'", "p!=2"),
            ("A3+2A1", "p!=2"),
            ("D4+A1", "p!=2"),
            ("A5+A1", "p!=3"),
            ("A5'", "p!=2"),
            ("D6(a2)", "p!=2"),
            ("D6", "p!=2"),
        ],
    ),
    (
        "E8",
        &[
            ("3A1", "p!=2"),
            ("4A1", "p!=2"),
            ("A2+3A1", "p!=2"),
            ("2A2+A1", "p!=3"),
            ("A3+A1", "p!=2"),
            ("2A2+2A1", "p!=3"),
            ("A3+2A1", "p!=2"),
            ("A3+A2+A1", "p!=2"),
            ("D4+A1", "p!=2"),
            ("2A3", "p!=2"),
            ("A4+A3", "p!=5"),
            ("A5", "p!=2"),
            ("D5(a1)+A2", "p!=2"),
            ("D6(a2)", "p!=2"),
            ("E6(a3)+A1", "p!=3"),
            ("E7(a5)", "p!=2"),
            ("D5+A1", "p!=2"),
            ("D6", "p!=2"),
            ("A5+A1", "p!=2,3"),
            ("A7", "p!=2"),
            ("E6+A1", "p!=3"),
            ("E7(a2)", "p!=2"),
            ("D7", "p!=2"),
            ("E7", "p!=2"),
        ],
    ),
];

fn embedded(name: &str) -> String {
    let path = format!("{}/data/{name}.txt", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

fn body(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| format!("{}\n", l.trim_end()))
        .collect()
}

#[test]
fn e_tables_regenerate_from_classification() {
    for (t, marks) in NON_SPECIAL {
        let rs = root_system(t);
        let generated = wdd::bala_carter(&rs).unwrap();
        let mut used = 0;
        let lines: String = wdd::render_records(&generated)
            .lines()
            .map(|line| {
                let label = line.split('|').next().unwrap();
                match marks.iter().find(|(l, _)| *l == label) {
                    Some((_, cond)) => {
                        used += 1;
                        let weights = line.split('|').nth(1).unwrap();
                        format!("{label}|{weights}|no|{cond}\n")
                    }
                    None => format!("{line}\n"),
                }
            })
            .collect();
        assert_eq!(used, marks.len(), "{t}: a listed label was not generated");
        assert_eq!(lines, body(&embedded(&t.to_lowercase())), "{t} table differs");
    }
}

#[test]
fn transcribed_tables_match_classification() {
    for t in ["G2", "F4"] {
        let rs = root_system(t);
        let key = |d: &wdd::WeightedDiagram| (d.label.clone(), d.weight_string());
        let generated: BTreeSet<_> = wdd::bala_carter(&rs).unwrap().iter().map(key).collect();
        let table: BTreeSet<_> = wdd::enumerate_diagrams(&rs).unwrap().iter().map(key).collect();
        assert_eq!(generated, table, "{t}");
    }
}

#[test]
fn orbit_counts() {
    for (t, n) in [("G2", 5), ("F4", 16), ("E6", 21), ("E7", 45), ("E8", 70)] {
        assert_eq!(wdd::enumerate_diagrams(&root_system(t)).unwrap().len(), n, "{t}");
    }
}

#[test]
fn headers_carry_valid_checksums() {
    for name in wdd::TABLE_NAMES {
        let text = embedded(name);
        let declared = text
            .lines()
            .find_map(|l| l.strip_prefix("# sha256:"))
            .unwrap()
            .trim()
            .to_string();
        assert_eq!(declared, wdd::body_checksum(&text), "{name}");
    }
    // body_checksum ignores comments and trailing whitespace
    assert_eq!(wdd::body_checksum("# x\na|b \n"), wdd::body_checksum("a|b\n"));
    assert_ne!(wdd::body_checksum("a|b\n"), wdd::body_checksum("a|c\n"));
}

#[test]
fn b_invariant_matches_orbit_dimension() {
    // the zero orbit has b = |Φ+| and the regular orbit has b = 0
    for t in ["G2", "F4", "E6", "E7", "E8", "B4", "C4", "D5", "A5"] {
        let rs = root_system(t);
        let ds = wdd::enumerate_diagrams(&rs).unwrap();
        let bs: Vec<i64> = ds.iter().map(|d| wdd::b_invariant(&rs, d)).collect();
        assert_eq!(*bs.iter().max().unwrap(), rs.num_positive() as i64, "{t}");
        assert_eq!(*bs.iter().min().unwrap(), 0, "{t}");
    }
}
