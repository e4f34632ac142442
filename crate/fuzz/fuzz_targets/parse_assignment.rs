#![no_main]

use fillscope_core::io::{builtin, emit_assignment, parse_assignment, Document};
use fillscope_core::SimplicialComplex;
use libfuzzer_sys::fuzz_target;
use std::sync::OnceLock;

fn base() -> &'static SimplicialComplex {
    static BASE: OnceLock<SimplicialComplex> = OnceLock::new();
    BASE.get_or_init(|| match builtin("tetra-boundary") {
        Ok(Document::Simplicial(sc)) => sc,
        _ => unreachable!(),
    })
}

fuzz_target!(|data: &str| {
    let sc = base();
    if let Ok(pa) = parse_assignment(data, sc) {
        let again =
            parse_assignment(&emit_assignment(&pa, sc), sc).expect("emitted assignment reparses");
        assert_eq!(again, pa);
        // consistency is checked here, not in the parser
        let _ = fillscope_core::build_cover(sc, &pa);
    }
});
