#![no_main]

use fillscope_core::io::{emit_simplicial, parse_simplicial};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(sc) = parse_simplicial(data) {
        let again = parse_simplicial(&emit_simplicial(&sc)).expect("emitted complex reparses");
        assert_eq!(again, sc);
    }
});
