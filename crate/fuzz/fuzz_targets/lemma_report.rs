#![no_main]

use libfuzzer_sys::fuzz_target;
use monotile::verifiers::LemmaReport;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(report) = LemmaReport::from_json(text) {
        let json = serde_json::to_string(&report).expect("report serializes");
        assert_eq!(LemmaReport::from_json(&json).expect("rechecks again"), report);
    }
});
