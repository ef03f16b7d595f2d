//! Exact arithmetic for similar sublattices and coincidence rotations of the
//! root lattice A4, realised inside the icosian ring.

pub mod arith;
pub mod counting;
pub mod dirichlet;
pub mod forms;
pub mod geometry;
pub mod golden;
pub mod icosian;
pub mod lattice;
pub mod oracles;
pub mod quaternion;
