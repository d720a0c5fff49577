//! Command-line front end for `wordrep`.
//!
//! Exit status: 0 success, 1 claim refuted, 2 usage or input error, 3 scale
//! guard hit (set `WORDREP_GUARD_OVERRIDE=1` to lift guards; searches may then
//! run for a very long time).

mod app;
pub mod suite;

pub use app::{run, EXIT_GUARD, EXIT_OK, EXIT_REFUTED, EXIT_USAGE};
