//! Exhaustive and certified checks of stable-range style properties of rings:
//! finite rings given by a small grammar, the integers and polynomial rings
//! over prime fields.

pub mod clean_adequate;
pub mod cli;
pub mod docs;
pub mod error;
pub mod euclid;
pub mod harness;
pub mod matred;
pub mod range_props;
pub mod report;
pub mod ring;

pub use error::{Error, Result};
