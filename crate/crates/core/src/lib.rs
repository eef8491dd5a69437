//! Finite Coxeter groups: classification, root systems, longest elements,
//! normal subgroups, direct decompositions and isomorphism tests.

pub mod classify;
pub mod deodhar;
pub mod engine;
pub mod error;
pub mod graph;
pub mod hommonoid;
pub mod isomorph;
pub mod rootspace;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
