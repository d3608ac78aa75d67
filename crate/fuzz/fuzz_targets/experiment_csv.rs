#![no_main]

use libfuzzer_sys::fuzz_target;
use monotile::experiment::{read_sweep_csv, write_sweep_csv};

fuzz_target!(|data: &[u8]| {
    if let Ok(out) = read_sweep_csv(data) {
        let mut buf = Vec::new();
        write_sweep_csv(&out, &mut buf).expect("in-memory write");
        assert_eq!(read_sweep_csv(buf.as_slice()).expect("writer output parses"), out);
    }
});
