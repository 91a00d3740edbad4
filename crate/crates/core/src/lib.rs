pub mod darboux;
pub mod error;
pub mod fixtures;
pub mod invariants;
pub mod lpdo;
pub mod orbit;
pub mod symfield;

pub use error::{Error, ParseError};
