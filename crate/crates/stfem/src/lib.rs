//! Space-time finite element methods for the heat and wave equations.
//!
//! The crate combines conforming P_p elements in one space dimension with six
//! Galerkin-type time discretizations (discontinuous, continuous, and mixed
//! DG-CG in time), together with the temporal projection and reconstruction
//! toolkit used to reason about them. A study harness measures errors against
//! manufactured solutions and fits experimental orders of convergence, and an
//! algebraic identity suite checks the exact relations the schemes are built
//! on.

pub mod analysis;
pub mod catalog;
pub mod cli;
pub mod harness;
pub mod linalg;
pub mod methods;
pub mod spatial;
pub mod temporal;
pub mod timeops;
pub mod verify;

pub fn version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}
