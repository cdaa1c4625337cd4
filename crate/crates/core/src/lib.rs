//! Near-group fusion categories of type `G+n`, the modular data of their
//! Drinfeld centers, condensation by Tannakian subgroups and comparison of
//! modular data up to relabeling and Galois conjugation.

#![allow(clippy::needless_range_loop)]

pub mod abelian;
pub mod center;
pub mod compare;
pub mod condense;
pub mod cyclo;
pub mod error;
pub mod halfbraid;
pub mod io;
pub mod lm;
pub mod modular;
pub mod neargroup;
pub mod pipeline;
pub mod quadratic;
pub mod reference;
pub mod sl2z;
pub mod tol;

pub use error::{Error, Result};
