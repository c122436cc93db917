//! Exact construction and verification of a family of superintegrable
//! Hamiltonians with reflections.

pub mod angular;
pub mod bipoly;
pub mod ccm;
pub mod checks;
pub mod compat;
pub mod linalg;
pub mod operators;
pub mod orthopoly;
pub mod poly;
pub mod rational;
pub mod report;
pub mod special;
pub mod spectrum;
pub mod suites;
pub mod symbolic;
pub mod symmetry;
