//! Textual statistics for document collections.
//!
//! The crate covers the usual lexicometric workflow: tokenize and normalize
//! a corpus, build the document × term lexical table, filter sparse terms,
//! run correspondence analysis, find characteristic and chronological words
//! with exact hypergeometric tails, test the first eigenvalue of the
//! words × years table by permutation, and draw the results as SVG.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod charwords;
pub mod corpus;
pub mod correspondence;
pub mod error;
pub mod lexical_table;
pub mod permtest;
pub mod pipeline;
pub mod viz;

pub use error::{Error, ErrorKind, Result};
