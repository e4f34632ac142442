#![no_main]

use fillscope_core::io::{emit_complex, parse_complex};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(cc) = parse_complex(data) {
        let again = parse_complex(&emit_complex(&cc)).expect("emitted complex reparses");
        assert_eq!(again, cc);
    }
});
