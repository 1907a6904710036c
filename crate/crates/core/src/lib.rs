//! Fine monoids, their spectra and fans, with exact arithmetic throughout.
//!
//! The crate is organised bottom-up: [`lattice`] supplies integer linear algebra,
//! [`monoid`] the monoid constructions, [`fanspace`] finite monoidal spaces, and the
//! remaining modules build blowups, refinements, resolutions and boundaries on top.

pub mod lattice;
pub mod monoid;
pub mod fanspace;
pub mod projblow;
pub mod refine;
pub mod resolve;
pub mod boundary;
pub mod realize;

mod error;
pub use error::{Error, Result};
