//! Exact cluster algebra and Caldero-Chapoton computations for acyclic
//! symmetrizable Cartan data, with emphasis on affine type.
//!
//! - [`cartan`]: validated `(C, D, Omega)` triples and the exchange matrix.
//! - [`rootsys`]: root lattice, Coxeter element, tubes, real Schur roots.
//! - [`laurent`]: big-integer Laurent polynomials.
//! - [`cluster`]: seed mutation, F/g/d/h-vectors, exchange graph search.
//! - [`ccmod`]: module-side recurrences, CC functions, generic basis.
//! - [`modrep`]: explicit modules over finite fields (brute-force oracle).
//! - [`verify`]: root-by-root comparison sweeps.

pub mod cartan;
pub mod ccmod;
pub mod cluster;
pub mod error;
pub mod fixtures;
pub mod laurent;
pub mod modrep;
pub mod rootsys;
pub mod verify;

pub use error::{Error, Result};
