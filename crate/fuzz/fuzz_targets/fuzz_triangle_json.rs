#![no_main]

use atf_base::BaseTriangle;
use libfuzzer_sys::fuzz_target;

// from_json_str must never panic; accepted triangles satisfy the orientation
// invariant (checked on construction) and round-trip exactly.
fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(t) = BaseTriangle::from_json_str(s) {
            let back = BaseTriangle::from_json_str(&t.to_json_string()).expect("round-trip");
            assert!(back.same_vertex_set(&t));
            assert_eq!(back.label, t.label);
        }
    }
});
