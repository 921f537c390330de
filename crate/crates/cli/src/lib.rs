//! File formats, the verification suite runner and the `spin` command line.

pub mod app;
pub mod json;
pub mod suite;

pub use app::{run, Outcome};
