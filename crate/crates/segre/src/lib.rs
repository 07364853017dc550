//! Betti tables, resolutions and Koszul-complex verification for Segre
//! embeddings, with JSON/LaTeX output, a disk cache and a command line.

pub mod cli;
pub mod errata;
pub mod json;
pub mod oracle;
pub mod render;

pub use segre_core as core;
