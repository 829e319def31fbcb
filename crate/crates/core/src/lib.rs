pub mod classify;
pub mod cli;
pub mod engine;
pub mod error;
pub mod field;
pub mod sequences;
pub mod verify;

pub use error::Error;
