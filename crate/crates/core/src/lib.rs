//! Exact structures on module categories of Nakayama algebras: combinatorial
//! classification and a finite-field representation oracle to check it.

pub mod error;
pub mod exact;
pub mod interval;
pub mod linalg;

pub use error::{Error, Result};
pub mod jh;
pub mod oracle;
pub mod poset;
pub mod report;
