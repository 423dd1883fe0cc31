//! Exact analysis of linear codes over small finite fields.
//!
//! The crate decides, by exhaustive enumeration with exact arithmetic,
//! whether a linear code is MDS, Griesmer, perfect, self-dual, completely
//! regular, or uniformly packed in the wide sense. It also builds the
//! standard MDS families and classifies small MDS codes up to monomial
//! (or semilinear) equivalence.
//!
//! Without features the crate is `no_std` and needs only `alloc`. The
//! `parallel` feature spreads the enumeration engines over a rayon pool;
//! results never depend on the number of workers.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod analysis;
pub mod classify;
pub mod code;
pub mod constructions;
pub mod coset;
pub mod error;
pub mod gf;
pub mod linalg;
mod par;

pub use analysis::{analyze, Analysis, AnalysisOptions, Caps, CodeProfile, Flag, Provenance};
pub use code::{LinearCode, WeightDistribution};
pub use coset::{CosetTable, Engine, PackingCoefficients};
pub use error::{Error, Result};
pub use gf::{Elem, Field};
pub use linalg::Matrix;
