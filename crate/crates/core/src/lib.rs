//! Exact computations around Hilbert modular surfaces of small discriminant:
//! Igusa-Clebsch invariants, the E8+E7 elliptic K3 attached to a genus-2
//! curve, Kodaira fibers and heights on elliptic surfaces, point counts
//! with real-multiplication detection, and a verified database of
//! double-cover equations.

pub mod cli;
pub mod curvesearch;
pub mod ellsurf;
mod error;
pub mod exactmath;
pub mod hmsdb;
pub mod igusa;
pub mod rmdetect;
pub mod shioda_inose;

pub use error::{Error, Result};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/invariants.md")]
pub mod book_invariants {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/k3.md")]
pub mod book_k3 {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/fibers.md")]
pub mod book_fibers {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/rm.md")]
pub mod book_rm {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/tables.md")]
pub mod book_tables {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/database.md")]
pub mod book_database {}

#[cfg(doctest)]
#[doc = include_str!("../README.md")]
pub mod readme {}
