#![no_main]

use indom::io::{parse_dimacs, parse_graph6, write_graph6};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_dimacs(text) {
        assert_eq!(parse_graph6(&write_graph6(&g)).as_ref(), Ok(&g));
    }
});
