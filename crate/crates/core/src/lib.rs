//! Exact verification toolkit for degenerations of finite-dimensional
//! nilpotent commutative associative algebras.

pub mod algebra;
pub mod arith;
pub mod catalog;
pub mod certificates;
pub mod cli;
pub mod data;
pub mod degeneration;
pub mod derivations;
pub mod graph;
pub mod linalg;
pub mod report;
pub mod text;
