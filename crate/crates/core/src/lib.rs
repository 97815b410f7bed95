//! Exact equivariant localization for diagonalizable group actions on affine
//! schemes: character lattices, graded polynomial algebra, comodules, fixed
//! loci, Euler-class localization and Smith-theory computations.

pub mod cli;
pub mod comodule;
pub mod eqcoh;
pub mod error;
pub mod fixedloc;
pub mod lattice;
pub mod linalg;
pub mod polyalg;
pub mod scalar;
pub mod smith;

pub use error::{Error, ErrorKind, Result};
