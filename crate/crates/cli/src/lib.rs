//! File formats and plotting for the `fixclip` binary.
//!
//! The binary itself only parses arguments and maps errors to exit codes;
//! everything worth testing lives here.

pub mod files;
pub mod svg;
