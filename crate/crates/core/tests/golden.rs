mod common;

use common::{naive_a4_count, naive_count, read_golden, testdata_dir, A4_XS, ORACLE_XS};
use d5count::a4_wong::count_a4_tuples;
use d5count::enumerator::count_triples;
use d5count::BoxConfig;

/// Rewrites the golden files from the oracles:
/// `cargo test -p d5count-core --test golden -- --ignored`.
#[test]
#[ignore]
fn regenerate() {
    let write = |name: &str, rows: Vec<(u64, u64)>| {
        let mut s = String::from("X,count\n");
        for (x, c) in rows {
            s.push_str(&format!("{x},{c}\n"));
        }
        std::fs::create_dir_all(testdata_dir()).unwrap();
        std::fs::write(testdata_dir().join(name), s).unwrap();
    };
    write(
        "oracle_counts.csv",
        ORACLE_XS.iter().map(|&x| (x, naive_count(x))).collect(),
    );
    write("a4_counts.csv", A4_XS.iter().map(|&x| (x, naive_a4_count(x))).collect());
}

#[test]
fn oracle_still_matches_golden() {
    for (x, c) in read_golden("oracle_counts.csv") {
        if x <= 100 {
            assert_eq!(naive_count(x), c, "X = {x}");
        }
    }
    for (x, c) in read_golden("a4_counts.csv") {
        assert_eq!(naive_a4_count(x), c, "X = {x}");
    }
}

#[test]
fn triple_counts_match_golden() {
    let rows = read_golden("oracle_counts.csv");
    assert_eq!(rows.iter().map(|r| r.0).collect::<Vec<_>>(), ORACLE_XS);
    assert_eq!(rows[0], (1, 0));
    for (x, c) in rows {
        assert_eq!(count_triples(&BoxConfig::unit(x), 1).unwrap(), c, "X = {x}");
    }
}

#[test]
fn a4_counts_match_golden() {
    let rows = read_golden("a4_counts.csv");
    assert_eq!(rows.iter().map(|r| r.0).collect::<Vec<_>>(), A4_XS);
    for (x, c) in rows {
        assert_eq!(count_a4_tuples(x, 1).unwrap(), c, "X = {x}");
    }
}

#[test]
fn oracle_box_sanity() {
    // X = 1: A in {±1}, B in {0, ±1}; nothing satisfies the norm equation
    assert_eq!(naive_count(1), 0);
    let h = common::Half::from_ab(2, 3);
    assert_eq!(h.norm(), num_bigint::BigInt::from(4 + 6 - 9));
}
