#![no_main]

use indom::io::{parse_graph6, parse_graph6_lines, write_graph6};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_graph6(text) {
        let encoded = write_graph6(&g);
        assert_eq!(parse_graph6(&encoded).as_ref(), Ok(&g));
    }
    let _ = parse_graph6_lines(text);
});
