//! Kernel for the single substitution calculus (SSC): a dependent type
//! theory whose only substitutions are weakening `p`, single substitution
//! `<a>` and their liftings `g+`, with Pi, Sigma, Top, Coquand universes and
//! Lift.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod alphanorm;
pub mod check;
pub mod cwf;
pub mod error;
pub mod eval;
pub mod gen;
pub mod iso;
pub mod laws;
pub mod minim;
pub mod par;
mod print;
pub mod syntax;
pub mod tel;
pub mod termify;

pub use error::{Error, Result};
pub use syntax::{Ctx, Level, SubS, Tm, Ty};
