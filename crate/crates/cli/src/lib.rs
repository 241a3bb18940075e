//! Library side of the `repring` command-line tool: the expression language,
//! canonical text/JSON rendering, and the verification suites. The binary in
//! `main.rs` is a thin dispatcher over these.

pub mod expr;
pub mod render;
pub mod verify;
