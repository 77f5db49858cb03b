//! Verification toolkit for combs in `(2²)^d`, weaves, grids and cograph
//! consistency patterns.
//!
//! Index sequences live in [`index`]; the comb classes and their recognizer
//! in [`combs`]; set-system semantics, checkers and canonical witnesses in
//! [`patterns`]; maps between configurations in [`transforms`]; cographs in
//! [`cographs`]. [`oracle`] holds brute-force reference deciders and
//! [`verify`] runs the full lemma suite.

pub mod cographs;
pub mod combs;
pub mod error;
pub mod exec;
pub mod genericity;
pub mod grid;
pub mod index;
pub mod limits;
pub mod oracle;
pub mod patterns;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use index::{Letter, Level, Node};
pub use limits::Limits;
