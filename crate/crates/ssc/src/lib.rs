//! Concrete syntax, `.ssc` files and the command line front end for
//! [`ssc_core`].

pub mod cli;
pub mod error;
pub mod file;
pub mod parse;
pub mod sexp;

pub use cli::{run, Outcome};
pub use error::{Error, Result};
