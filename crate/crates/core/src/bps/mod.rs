//! Finite-difference checks of the monopole deformation complex on a cube in ℝ³.
//!
//! The su(2) basis is `T_a = −(i/2) σ_a`, so `[T_a, T_b] = ε_abc T_c` and the
//! bracket of coefficient vectors is the cross product.

pub mod grid;
pub mod monopole;
pub mod operators;
pub mod report;
pub mod su2;
pub mod symbol;
pub mod weitzenbock;

pub use grid::{Field, Grid};
pub use monopole::{boundary_degree, bps_monopole, monopole_charge, FieldConfig};
pub use operators::{apply_d1, apply_d2, apply_d2_adjoint, bogomolny_residual, d_bogomolny, D2Output};
pub use report::{check_level, verify_bps, write_phi_vtk, BpsReport, LevelReport};
pub use symbol::{symbol_exactness, SymbolReport};
pub use weitzenbock::{weitzenbock_check, WeitzenbockResiduals};
