//! Pieces of the `minsurf` command: the text reader, the text and LaTeX
//! writers, the JSON records and the verification suites.

pub mod display;
pub mod parse;
pub mod record;
pub mod suites;
