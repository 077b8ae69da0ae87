#![no_main]

use libfuzzer_sys::fuzz_target;

// parse_rat must never panic, and whatever it accepts must round-trip
// exactly through rat_to_string.
fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(r) = lattice_core::parse_rat(s) {
            let shown = lattice_core::rat_to_string(&r);
            let back = lattice_core::parse_rat(&shown).expect("printed rational parses");
            assert_eq!(back, r);
        }
    }
});
