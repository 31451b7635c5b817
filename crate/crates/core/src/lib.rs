//! Invariants of simplicial affine semigroups with finite complement in
//! their integer cone: gaps, pseudo-Frobenius elements, Apéry sets, depth
//! regions, minimal presentations, Buchsbaum and MED tests, and gluings.

pub mod vector;
pub mod error;
pub mod lattice;
pub mod lp;
pub mod cone;
pub mod semigroup;
pub mod depth;
pub mod buchsbaum;
pub mod binomial;
pub mod presentation;
pub mod gluing;
pub mod instance;
pub mod random;

pub use cone::{ConeApery, SimplicialCone};
pub use error::{Error, Result};
pub use lattice::Lattice;
pub use semigroup::{AffineSemigroup, CSemigroup};
pub use vector::IntVector;
