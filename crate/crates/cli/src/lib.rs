//! Report types and renderers behind the `nql` binary.

pub mod render;
pub mod report;
