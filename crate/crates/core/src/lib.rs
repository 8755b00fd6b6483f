//! A proof kernel for truth theories over Robinson arithmetic.

pub mod arithmetization;
pub mod kernel;
pub mod parse;
pub mod script;
pub mod syntax;
pub mod tactics;
pub mod theorems;
