//! Endotrivial module groups `T(G/Z)` for `SL(n,q) <= G <= GL(n,q)` in
//! nondefining characteristic `p`, with brute-force checks of the group theory
//! behind each formula.

pub mod abst;
pub mod arith;
pub mod cli;
pub mod classify;
pub mod error;
pub mod gf;
pub mod liea;
pub mod matgrp;
pub mod rho;

pub use error::{Error, Result};
