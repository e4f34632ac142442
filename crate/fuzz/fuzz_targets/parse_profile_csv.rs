#![no_main]

use fillscope_core::io::{emit_profile_csv, parse_profile_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(t) = parse_profile_csv(data) {
        let again = parse_profile_csv(&emit_profile_csv(&t)).expect("emitted table reparses");
        assert_eq!(again.entries, t.entries);
    }
});
