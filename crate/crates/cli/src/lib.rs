//! Report types and renderers behind the `curvkind` binary.

pub mod report;
