#![no_main]

use libfuzzer_sys::fuzz_target;
use monotile::verifiers::{read_probe_csv, write_probe_csv};

fuzz_target!(|data: &[u8]| {
    if let Ok(rows) = read_probe_csv(data) {
        let mut buf = Vec::new();
        write_probe_csv(&rows, &mut buf).expect("in-memory write");
        assert_eq!(read_probe_csv(buf.as_slice()).expect("writer output parses"), rows);
    }
});
