//! Orchestration and floating-point sampling for the `superint` tool.

pub mod sample;
