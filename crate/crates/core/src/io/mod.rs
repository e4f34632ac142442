//! File formats, built-in examples and run reports.
//!
//! Documents are JSON with a `format` tag; integers are written as decimal
//! strings. Profiles are CSV with header `n,value,status`.

mod builtin;
mod formats;
mod report;
mod spec;

pub use builtin::{builtin, builtin_names, builtin_text};
pub use formats::{
    emit_assignment, emit_complex, emit_presentation, emit_simplicial, parse_assignment,
    parse_complex, parse_document, parse_presentation, parse_simplicial, Document,
    ASSIGNMENT_FORMAT, COMPLEX_FORMAT, PRESENTATION_FORMAT, SIMPLICIAL_FORMAT,
};
pub use report::{
    emit_profile_csv, emit_report, fill_payload, parse_profile_csv, profile_payload,
    witness_payload, RunReport,
};
pub use spec::{parse_chain_spec, parse_grid_spec, ChainSpec};
