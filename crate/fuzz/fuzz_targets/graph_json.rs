#![no_main]

use libfuzzer_sys::fuzz_target;
use monotile::graph::GraphJson;

fuzz_target!(|data: &[u8]| {
    let Ok(json) = serde_json::from_slice::<GraphJson>(data) else { return };
    if let Ok(g) = json.to_graph() {
        let again = GraphJson::from(&g).to_graph().expect("mirror converts back");
        assert_eq!(again, g);
    }
});
