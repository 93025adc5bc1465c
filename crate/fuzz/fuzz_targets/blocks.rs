#![no_main]

use indom::families::{gen_special, parse_blocks, Block};
use indom::special::is_special;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(blocks) = parse_blocks(text) else {
        return;
    };
    // keep generated graphs small
    if blocks.len() > 6 || blocks.iter().any(|b| matches!(b, Block::OddCycle(len) if *len > 15)) {
        return;
    }
    for delta in 4..=7 {
        if let Ok(g) = gen_special(delta, &blocks, 0) {
            if g.n() <= 200 {
                assert!(is_special(delta, &g));
            }
        }
    }
});
