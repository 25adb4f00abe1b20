//! Command implementations and output documents for the `zkpf` binary.

pub mod commands;
pub mod document;

pub use commands::{CommandError, Settings};
pub use document::{Body, OutputDocument};
