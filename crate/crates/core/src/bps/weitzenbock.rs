//! Weitzenböck identities for the Laplacians of the deformation complex on flat ℝ³.
//!
//! The left-hand sides are built by composing the first-order difference
//! operators, so they use nested (wide) centered differences. The right-hand
//! sides expand `∇*∇` with compact three-point second differences. The two
//! discretizations agree to second order in `h`.
//!
//! On Λ² the exact identity carries the extra term `ε_ijl [D_l Φ − B_l, w_j]`,
//! which vanishes for solutions of the Bogomolny equation. It is left out
//! here, so the Λ² residual also picks up the discrete Bogomolny residual.

use serde::Serialize;

use super::grid::Field;
use super::monopole::FieldConfig;
use super::operators::{ad_phi, apply_d1, apply_d2_adjoint, apply_d2_only, coulomb};
use super::su2;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeitzenbockResiduals {
    pub residual0: f64,
    pub residual2: f64,
}

/// `∇*∇ w = −Σ_i D_i D_i w` per component, with compact second differences.
pub fn rough_laplacian(config: &FieldConfig, w: &Field) -> Result<Field> {
    config.grid().same_as(w.grid())?;
    let a = &config.a;
    let g = *w.grid();
    let da: Vec<Field> = (0..3).map(|i| a.partial(i, i)).collect();
    let mut parts = Vec::with_capacity(w.comps());
    for c in 0..w.comps() {
        let first: Vec<Field> = (0..3).map(|i| w.partial(c, i)).collect();
        let second: Vec<Field> = (0..3).map(|i| w.second_partial(c, i)).collect();
        parts.push(Field::generate(g, 1, w.margin().max(a.margin()) + 1, |s, _| {
            let gamma = w.get(s, c);
            let mut total = su2::ZERO;
            for i in 0..3 {
                let ai = a.get(s, i);
                let term = su2::add(
                    su2::add(second[i].get(s, 0), su2::scale(2.0, su2::bracket(ai, first[i].get(s, 0)))),
                    su2::add(su2::bracket(da[i].get(s, 0), gamma), su2::bracket(ai, su2::bracket(ai, gamma))),
                );
                total = su2::add(total, term);
            }
            su2::scale(-1.0, total)
        }));
    }
    let margin = parts.first().map_or(w.margin() + 1, Field::margin);
    Ok(Field::generate(g, w.comps(), margin, |s, c| parts[c].get(s, 0)))
}

/// `∇*∇ w − [Φ, [Φ, w]]`.
pub fn weitzenbock_rhs(config: &FieldConfig, w: &Field) -> Result<Field> {
    let potential = ad_phi(config, &ad_phi(config, w)?)?;
    rough_laplacian(config, w)?.minus(&potential)
}

/// `D₁* D₁ γ`.
pub fn laplacian0(config: &FieldConfig, gamma: &Field) -> Result<Field> {
    coulomb(config, &apply_d1(config, gamma)?)
}

/// `D₂ D₂* w`.
pub fn laplacian2(config: &FieldConfig, w: &Field) -> Result<Field> {
    apply_d2_only(config, &apply_d2_adjoint(config, w)?)
}

/// Interior max norms of the differences between both sides on Λ⁰ and Λ².
pub fn weitzenbock_check(config: &FieldConfig, gamma: &Field, two_form: &Field) -> Result<WeitzenbockResiduals> {
    let residual0 = laplacian0(config, gamma)?.minus(&weitzenbock_rhs(config, gamma)?)?.max_norm()?;
    let residual2 = laplacian2(config, two_form)?.minus(&weitzenbock_rhs(config, two_form)?)?.max_norm()?;
    Ok(WeitzenbockResiduals { residual0, residual2 })
}

/// `⟨−[Φ, [Φ, γ]], γ⟩`, which is `‖[Φ, γ]‖²` and hence nonnegative.
pub fn potential_pairing(config: &FieldConfig, gamma: &Field) -> Result<f64> {
    let potential = ad_phi(config, &ad_phi(config, gamma)?)?.scaled(-1.0);
    potential.inner(gamma)
}
