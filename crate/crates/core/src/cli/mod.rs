//! Expression parser, input documents and reports behind the `osculant` binary.

pub mod document;
pub mod expr;
pub mod report;
