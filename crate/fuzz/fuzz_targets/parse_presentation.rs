#![no_main]

use fillscope_core::io::{emit_presentation, parse_presentation};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(p) = parse_presentation(data) {
        let again =
            parse_presentation(&emit_presentation(&p)).expect("emitted presentation reparses");
        assert_eq!(again, p);
    }
});
