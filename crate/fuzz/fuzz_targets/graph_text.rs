#![no_main]

use libfuzzer_sys::fuzz_target;
use monotile::graph::{read_graph, write_graph};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = read_graph(text) {
        let back = read_graph(&write_graph(&g)).expect("writer output parses");
        assert_eq!(back, g);
    }
});
