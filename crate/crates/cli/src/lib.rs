//! Command-line front end for the `riordan` library.

pub mod app;
pub mod expr;
pub mod output;
