//! Library surface of the CLI: record encoding and the verification battery,
//! shared between the binary and its integration tests.

pub mod records;
pub mod verify;
