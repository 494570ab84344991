//! Exact computations with based root data, Langlands dual groups, L-groups
//! and C-groups, together with the algebraicity and Satake-parameter
//! bookkeeping built on top of them.

pub mod error;
pub mod lattice;
pub mod acceptance;
pub mod algebraicity;
pub mod field;
pub mod json_util;
pub mod lgroup_cgroup;
pub mod root_datum;
pub mod satake;
pub mod unitary_cht;

pub use error::{Error, Result};
