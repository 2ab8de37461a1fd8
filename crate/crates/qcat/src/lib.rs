//! Finite quantaloids, categories enriched in them, and free (co)completions.

pub mod analysis;
pub mod builders;
pub mod completion;
pub mod enriched;
pub mod error;
pub mod io;
pub mod lattice;
pub mod propcheck;
pub mod quantaloid;

pub use error::{Error, Result};
