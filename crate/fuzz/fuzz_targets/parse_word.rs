#![no_main]

use fillscope_core::Presentation;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let p = Presentation::new(vec!["a".into(), "b".into(), "x1".into()], vec![]).unwrap();
    if let Ok(w) = p.parse_word(data) {
        assert_eq!(p.parse_word(&p.format_word(&w)).unwrap(), w);
    }
});
