//! Library side of the `symgap` binary, exposed for tests.

pub mod args;
pub mod render;
pub mod report;
