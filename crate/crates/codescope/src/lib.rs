//! File formats, JSON reports, the claim suite and the command-line front end
//! for `codescope-core`.

pub mod caps;
pub mod claims;
pub mod cli;
pub mod error;
pub mod format;
pub mod report;
