//! Hemirings, h-ideals and fuzzy h-ideals over small carriers, with
//! exhaustive checkers for the surrounding theory.

pub mod carrier;
pub mod cli;
pub mod format;
pub mod fuzzy;
pub mod grade;
pub mod harness;
pub mod ideals;
pub mod model_finder;
pub mod structure;
