//! Covariant difference operators of the deformation complex on a BPS background.
//!
//! Conventions: `D_i γ = ∂_i γ + [A_i, γ]`, `F_ij = ∂_i A_j − ∂_j A_i + [A_i, A_j]`
//! and `B_i = ½ ε_ijk F_jk`. One-forms and two-forms on flat ℝ³ are both stored
//! as three Cartesian components (two-forms through the Hodge star), three-forms
//! as a single scalar.

use super::grid::Field;
use super::monopole::FieldConfig;
use super::su2;
use crate::{Error, Result};

fn expect_comps(field: &Field, comps: usize, what: &str) -> Result<()> {
    if field.comps() != comps {
        return Err(Error::GridMismatch(format!("{what} needs {comps} components, got {}", field.comps())));
    }
    Ok(())
}

/// `D_axis` of component `c` of `field`.
fn covariant(config: &FieldConfig, field: &Field, c: usize, axis: usize) -> Field {
    let d = field.partial(c, axis);
    Field::generate(*field.grid(), 1, d.margin(), |s, _| {
        su2::add(d.get(s, 0), su2::bracket(config.a.get(s, axis), field.get(s, c)))
    })
}

/// `d_A γ` as three components.
pub fn gradient(config: &FieldConfig, gamma: &Field) -> Result<Field> {
    config.grid().same_as(gamma.grid())?;
    expect_comps(gamma, 1, "gradient")?;
    let parts: Vec<Field> = (0..3).map(|i| covariant(config, gamma, 0, i)).collect();
    Ok(Field::generate(*gamma.grid(), 3, parts[0].margin(), |s, i| parts[i].get(s, 0)))
}

/// `Σ_i D_i a_i`.
pub fn divergence(config: &FieldConfig, a: &Field) -> Result<Field> {
    config.grid().same_as(a.grid())?;
    expect_comps(a, 3, "divergence")?;
    let parts: Vec<Field> = (0..3).map(|i| covariant(config, a, i, i)).collect();
    Ok(Field::generate(*a.grid(), 1, parts[0].margin(), |s, _| {
        su2::add(su2::add(parts[0].get(s, 0), parts[1].get(s, 0)), parts[2].get(s, 0))
    }))
}

/// `(curl_A a)_i = ε_ijk D_j a_k`.
pub fn curl(config: &FieldConfig, a: &Field) -> Result<Field> {
    config.grid().same_as(a.grid())?;
    expect_comps(a, 3, "curl")?;
    // d[j][k] = D_j a_k
    let d: Vec<Vec<Field>> = (0..3).map(|j| (0..3).map(|k| covariant(config, a, k, j)).collect()).collect();
    Ok(Field::generate(*a.grid(), 3, a.margin() + 1, |s, i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        su2::sub(d[j][k].get(s, 0), d[k][j].get(s, 0))
    }))
}

/// `[Φ, w]` applied to every component.
pub fn ad_phi(config: &FieldConfig, w: &Field) -> Result<Field> {
    config.grid().same_as(w.grid())?;
    let margin = w.margin().max(config.phi.margin());
    Ok(Field::generate(*w.grid(), w.comps(), margin, |s, c| su2::bracket(config.phi.get(s, 0), w.get(s, c))))
}

/// Magnetic field `B_i = ε_ijk ∂_j A_k + ½ ε_ijk [A_j, A_k]`.
pub fn magnetic_field(config: &FieldConfig) -> Field {
    let a = &config.a;
    let d: Vec<Vec<Field>> = (0..3).map(|j| (0..3).map(|k| a.partial(k, j)).collect()).collect();
    Field::generate(*a.grid(), 3, a.margin() + 1, |s, i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let lin = su2::sub(d[j][k].get(s, 0), d[k][j].get(s, 0));
        su2::add(lin, su2::bracket(a.get(s, j), a.get(s, k)))
    })
}

/// Pointwise Bogomolny map `B − D Φ`.
pub fn bogomolny_map(config: &FieldConfig) -> Result<Field> {
    magnetic_field(config).minus(&gradient(config, &config.phi)?)
}

/// Max over interior sites of `|B − D Φ|`.
pub fn bogomolny_residual(config: &FieldConfig) -> Result<f64> {
    bogomolny_map(config)?.max_norm()
}

/// Fields of the odd part of the complex: a one-form `a` and the dual `ψ = ⋆φ`
/// of a three-form, stored as `[a_1, a_2, a_3, ψ]`.
pub fn odd_field(a: &Field, psi: &Field) -> Result<Field> {
    expect_comps(a, 3, "one-form part")?;
    expect_comps(psi, 1, "three-form part")?;
    a.stack(psi)
}

fn split_odd(field: &Field) -> Result<(Field, Field)> {
    expect_comps(field, 4, "odd field")?;
    let g = *field.grid();
    let m = field.margin();
    Ok((Field::generate(g, 3, m, |s, c| field.get(s, c)), Field::generate(g, 1, m, |s, _| field.get(s, 3))))
}

/// `D₁ γ = (−D γ, −[Φ, γ])`.
pub fn apply_d1(config: &FieldConfig, gamma: &Field) -> Result<Field> {
    let a = gradient(config, gamma)?.scaled(-1.0);
    let psi = ad_phi(config, gamma)?.scaled(-1.0);
    odd_field(&a, &psi)
}

/// Output of [`apply_d2`]: the two-form part (as `⋆`-dual one-form components) and the Coulomb scalar.
#[derive(Clone, Debug)]
pub struct D2Output {
    pub two_form: Field,
    pub coulomb: Field,
}

/// `D₂(a, ψ) = curl_A a + [Φ, a] − D ψ`.
pub fn apply_d2_only(config: &FieldConfig, odd: &Field) -> Result<Field> {
    let (a, psi) = split_odd(odd)?;
    curl(config, &a)?.plus(&ad_phi(config, &a)?)?.minus(&gradient(config, &psi)?)
}

/// Coulomb functional `D₁*(a, ψ) = D·a + [Φ, ψ]`.
pub fn coulomb(config: &FieldConfig, odd: &Field) -> Result<Field> {
    let (a, psi) = split_odd(odd)?;
    divergence(config, &a)?.plus(&ad_phi(config, &psi)?)
}

/// Both `D₂(a, ψ)` and the Coulomb functional.
pub fn apply_d2(config: &FieldConfig, odd: &Field) -> Result<D2Output> {
    config.grid().same_as(odd.grid())?;
    Ok(D2Output { two_form: apply_d2_only(config, odd)?, coulomb: coulomb(config, odd)? })
}

/// `D₂* w = (curl_A w − [Φ, w], D·w)`.
pub fn apply_d2_adjoint(config: &FieldConfig, w: &Field) -> Result<Field> {
    expect_comps(w, 3, "two-form")?;
    let a = curl(config, w)?.minus(&ad_phi(config, w)?)?;
    let psi = divergence(config, w)?;
    odd_field(&a, &psi)
}

/// Derivative of the Bogomolny map at `config` in the direction `(a, φ₀)`.
///
/// The map is a polynomial of degree two in the fields, so the symmetric
/// difference with unit step is its exact linearization. This route shares no
/// code with [`apply_d2_only`] beyond the difference stencils.
pub fn d_bogomolny(config: &FieldConfig, odd: &Field) -> Result<Field> {
    config.grid().same_as(odd.grid())?;
    let (a, phi0) = split_odd(odd)?;
    let plus = FieldConfig::new(config.a.plus(&a)?.with_margin(0), config.phi.plus(&phi0)?.with_margin(0))?;
    let minus = FieldConfig::new(config.a.minus(&a)?.with_margin(0), config.phi.minus(&phi0)?.with_margin(0))?;
    let diff = bogomolny_map(&plus)?.minus(&bogomolny_map(&minus)?)?;
    Ok(diff.scaled(0.5).with_margin(odd.margin() + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bps::grid::Grid;

    fn flat(n: usize) -> FieldConfig {
        FieldConfig::vacuum(Grid::new(1.0, n).unwrap(), [0.0; 3])
    }

    #[test]
    fn flat_vacuum_has_zero_residual() {
        let cfg = FieldConfig::vacuum(Grid::new(2.0, 9).unwrap(), [0.3, -0.2, 0.9]);
        assert_eq!(bogomolny_residual(&cfg).unwrap(), 0.0);
    }

    #[test]
    fn flat_curl_of_linear_field_is_exact() {
        let cfg = flat(7);
        let a = Field::from_fn(*cfg.grid(), 3, |x, i| match i {
            0 => [-x[1], 0.0, x[2]],
            1 => [x[0], 0.0, 0.0],
            _ => [0.0, 2.0 * x[0], 0.0],
        });
        let c = curl(&cfg, &a).unwrap();
        let s = cfg.grid().index(3, 3, 3);
        assert!(su2::norm(su2::sub(c.get(s, 0), [0.0, 0.0, 0.0])) < 1e-12);
        assert!(su2::norm(su2::sub(c.get(s, 1), [0.0, -2.0, 1.0])) < 1e-12);
        assert!(su2::norm(su2::sub(c.get(s, 2), [2.0, 0.0, 0.0])) < 1e-12);
    }

    #[test]
    fn d1_of_zero_is_zero() {
        let cfg = flat(5);
        let out = apply_d1(&cfg, &Field::zeros(*cfg.grid(), 1)).unwrap();
        assert_eq!(out.max_norm().unwrap(), 0.0);
        assert_eq!(out.comps(), 4);
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let cfg = flat(5);
        let other = Field::zeros(Grid::new(1.0, 7).unwrap(), 1);
        assert!(matches!(apply_d1(&cfg, &other), Err(Error::GridMismatch(_))));
    }
}
