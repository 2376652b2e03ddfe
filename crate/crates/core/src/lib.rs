//! Index pipeline for the virtual dimension of SU(2) monopole moduli spaces on
//! asymptotically conic (scattering) 3-manifolds.
//!
//! The pipeline runs boundary Laplace spectra through the indicial roots of the
//! odd signature operator into the defect index, and adds the topological
//! term `4 k` to obtain `vdim(alpha)`:
//!
//! * [`boundary`] models the boundary surface and its function spectra
//!   (analytic for round spheres and flat tori, cotangent DEC for meshes).
//! * [`indicial`] turns Betti numbers and spectra into the b-spectrum with
//!   multiplicities, and carries an independent rank-deficiency oracle.
//! * [`index`] holds the defect calculus and the `vdim` report.
//! * [`clifford`] is an exact Clifford/exterior algebra used to check the
//!   boundary reduction of the odd signature operator.
//! * [`bps`] numerically checks the deformation complex on the explicit
//!   charge-one monopole on R^3.

pub mod boundary;
pub mod bps;
pub mod clifford;
mod error;
pub mod gaussian;
pub mod index;
pub mod indicial;
pub mod numfmt;

pub use error::{Error, Result};
