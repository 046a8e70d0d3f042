//! Standard-library companion of `tncluster-core`: JSON file formats and the
//! command-line front end.

pub mod cli;
pub mod format;
