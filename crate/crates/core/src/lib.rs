//! Surfaces in Euclidean 4-space.
//!
//! Orthogonal complex structures on E⁴, closed-form parametrized surfaces,
//! their fundamental forms and normal connection, the two twistor lifts
//! and a multi-criterion isotropy test for minimal surfaces.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod complex_structures;
pub mod linalg4;
pub mod surface_expr;
pub mod geometry;
pub mod twistor;
pub mod catalog;
pub mod convergence;
pub mod report;
