//! Strategic programming: generic traversal with first-class strategies.

extern crate self as strategem;

pub mod analyses;
pub mod effect;
pub mod minilang;
pub mod registry;
pub mod strategy;
pub mod term;
pub mod themes;

pub use strategem_derive::Data;
