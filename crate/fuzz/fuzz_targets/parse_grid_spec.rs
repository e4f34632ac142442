#![no_main]

use fillscope_core::io::parse_grid_spec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(grid) = parse_grid_spec(data) {
        grid.validate().expect("parsed grids are valid");
    }
});
