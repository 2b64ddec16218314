use qfoam::algebra::{parse_gfamily, r_tilde};
use qfoam::diagrams::{coloring_count, enumerate_colorings, parse_graph_diagram, GraphDiagram};
use sha2::{Digest, Sha256};
use std::path::PathBuf;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn graph(name: &str) -> GraphDiagram {
    parse_graph_diagram(&std::fs::read_to_string(dir().join(name)).unwrap()).unwrap()
}

#[test]
fn checksums_match() {
    let sums = std::fs::read_to_string(dir().join("SHA256SUMS")).unwrap();
    let mut n = 0;
    for line in sums.lines() {
        let (want, name) = line.split_once("  ").unwrap();
        let got = Sha256::digest(std::fs::read(dir().join(name)).unwrap());
        let hex: String = got.iter().map(|b| format!("{b:02x}")).collect();
        assert_eq!(hex, want, "{name}");
        n += 1;
    }
    let files = std::fs::read_dir(dir()).unwrap().count();
    assert_eq!(n + 1, files, "every data file is listed");
}

#[test]
fn five_two_graph() {
    let d = graph("5_2.graph");
    assert_eq!(d.vertices().len(), 2);
    assert_eq!(d.crossings().len(), 5);
    assert_eq!(d.edges().len(), 3);
    assert_eq!(coloring_count(&d, &r_tilde()), 84);
}

#[test]
fn r2_insertion_keeps_the_count() {
    let d = graph("5_2.graph");
    let f = r_tilde();
    let n = d.arc_count();
    let mut tried = 0;
    for under in 0..n {
        for over in (0..n).filter(|&o| o != under) {
            for sign in [1, -1] {
                let Ok(d2) = d.insert_r2(under, over, sign) else { continue };
                assert_eq!(d2.crossings().len(), 7);
                assert_eq!(coloring_count(&d2, &f), 84, "under {under} over {over} sign {sign}");
                tried += 1;
            }
        }
    }
    assert!(tried > 0);
}

#[test]
fn relabelling_is_a_bijection_on_colorings() {
    let d = graph("5_2.graph");
    let f = r_tilde();
    let n = d.arc_count();
    let perm: Vec<usize> = (0..n).map(|i| (i + 3) % n).collect();
    let e = d.relabel(&perm).unwrap();
    let before = enumerate_colorings(&d, &f);
    let after = enumerate_colorings(&e, &f);
    assert_eq!(before.len(), after.len());
    for c in &before {
        let mut moved = vec![(0, 0); n];
        for (i, &x) in c.arc_colors.iter().enumerate() {
            moved[perm[i]] = x;
        }
        assert!(after.iter().any(|a| a.arc_colors == moved), "{c:?}");
    }
}

#[test]
fn corrupted_table_parses_but_differs() {
    let f = parse_gfamily(&std::fs::read_to_string(dir().join("corrupted.gfam")).unwrap()).unwrap();
    assert_ne!(f, r_tilde());
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]
    #[test]
    fn repeated_r2_insertions_keep_the_count(moves in proptest::collection::vec((0usize..64, 0usize..64, proptest::bool::ANY), 1..3)) {
        let mut d = graph("5_2.graph");
        for (u, o, s) in moves {
            let n = d.arc_count();
            let (u, o) = (u % n, o % n);
            if u == o {
                continue;
            }
            if let Ok(e) = d.insert_r2(u, o, if s { 1 } else { -1 }) {
                d = e;
            }
        }
        proptest::prop_assert_eq!(coloring_count(&d, &r_tilde()), 84);
    }
}
