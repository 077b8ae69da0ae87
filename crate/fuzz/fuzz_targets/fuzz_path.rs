#![no_main]

use libfuzzer_sys::fuzz_target;

// parse_path must never panic; accepted paths contain only valid 0-based
// vertex indices, and short ones always apply cleanly to the root triangle.
fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(steps) = atfkit::parse_path(s) {
            assert!(!steps.is_empty());
            assert!(steps.iter().all(|&i| i < 3));
            if steps.len() <= 10 {
                atf_base::mutate_path(&atf_base::root_triangle(), &steps)
                    .expect("valid paths apply to the root");
            }
        }
    }
});
