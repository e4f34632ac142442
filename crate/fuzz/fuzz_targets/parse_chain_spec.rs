#![no_main]

use fillscope_core::io::{builtin, parse_chain_spec, Document};
use fillscope_core::to_chain_complex;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(spec) = parse_chain_spec(data) {
        if let Ok(Document::Simplicial(sc)) = builtin("tetra-boundary") {
            let cc = to_chain_complex(&sc);
            for q in 0..4 {
                let _ = spec.resolve(&cc, q);
            }
        }
    }
});
