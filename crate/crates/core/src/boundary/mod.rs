//! The boundary surface at infinity and its Laplace spectra.
//!
//! Only function spectra are computed. On a closed oriented surface the
//! nonzero spectrum on coexact 1-forms and on 2-forms coincides with the
//! nonzero function spectrum (via `d` and the Hodge star), which is all the
//! indicial calculus needs.

pub mod dec;
pub mod mesh;
pub mod spectrum;
mod surface;

pub use dec::{dec_function_spectrum, dec_spectrum_up_to};
pub use mesh::{load_mesh, parse_off, Mesh, MeshComponent};
pub use spectrum::{sphere_spectrum, torus_spectrum, SpectrumEntry, SpectrumTable};
pub use surface::{betti, BoundarySurface, Metric, SurfaceComponent};
