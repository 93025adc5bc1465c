//! Replays the checked-in fuzz seeds through the parsers.

use std::fs;
use std::path::Path;

use indom::families::parse_blocks;
use indom::io::{parse_dimacs, parse_graph6, parse_graph6_lines, write_graph6};

fn seeds(target: &str) -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn graph6_seeds_parse_and_round_trip() {
    for s in seeds("graph6") {
        let graphs = parse_graph6_lines(&s).unwrap_or_else(|e| panic!("{s:?}: {e:?}"));
        for g in graphs {
            assert_eq!(parse_graph6(&write_graph6(&g)).unwrap(), g);
        }
    }
}

#[test]
fn dimacs_seeds_parse() {
    for s in seeds("dimacs") {
        parse_dimacs(&s).unwrap_or_else(|e| panic!("{s:?}: {e}"));
    }
}

#[test]
fn block_seeds_parse() {
    for s in seeds("blocks") {
        parse_blocks(&s).unwrap_or_else(|e| panic!("{s:?}: {e}"));
    }
}
