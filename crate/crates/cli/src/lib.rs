//! Structure-file front end for `stgeom`: TOML parsing and serialization,
//! and the subcommands of the `stgeom` binary.

pub mod commands;
pub mod failure;
pub mod render;
pub mod structure;
