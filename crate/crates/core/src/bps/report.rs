//! Grid refinement study of the BPS identities and the `|Φ|` volume dump.

use std::io::Write;

use serde::Serialize;

use super::grid::{Field, Grid};
use super::monopole::{bps_monopole, monopole_charge, FieldConfig};
use super::operators::{apply_d1, apply_d2_only, bogomolny_residual, coulomb, d_bogomolny, odd_field};
use super::su2::{self, Su};
use super::weitzenbock::{potential_pairing, weitzenbock_check};
use crate::{Error, Result};

/// `c (1 − |x − x₀|²/ρ²)⁶` inside the ball, zero outside.
pub fn bump(grid: Grid, comps: usize, center: [f64; 3], radius: f64, coeffs: &[Su]) -> Field {
    Field::from_fn(grid, comps, |x, c| {
        let r2: f64 = (0..3).map(|i| (x[i] - center[i]).powi(2)).sum::<f64>() / (radius * radius);
        if r2 >= 1.0 {
            su2::ZERO
        } else {
            su2::scale((1.0 - r2).powi(6), coeffs[c % coeffs.len()])
        }
    })
}

/// Compactly supported test fields scaled with the box, so that every level
/// samples the same functions.
pub struct TestFields {
    pub gamma: Field,
    pub odd: Field,
    pub two_form: Field,
}

impl TestFields {
    pub fn new(grid: Grid) -> Self {
        let s = grid.half_width / 8.0;
        let rho = grid.half_width / 2.0;
        let gamma = bump(grid, 1, [0.5 * s, -0.3 * s, 0.2 * s], rho, &[[0.3, -0.5, 0.8]]);
        let odd = bump(
            grid,
            4,
            [-0.4 * s, 0.6 * s, 0.1 * s],
            rho,
            &[[0.7, 0.1, -0.2], [-0.3, 0.4, 0.5], [0.2, -0.6, 0.1], [0.5, 0.5, -0.4]],
        );
        let two_form = bump(grid, 3, [0.2 * s, 0.1 * s, -0.5 * s], rho, &[[0.1, 0.9, -0.3], [0.6, -0.2, 0.4], [-0.5, 0.3, 0.2]]);
        Self { gamma, odd, two_form }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridSummary {
    pub n: usize,
    pub half_width: f64,
}

/// All residuals at one resolution.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelReport {
    pub grid: GridSummary,
    pub h: f64,
    pub bogomolny_residual: f64,
    /// `‖D₂ D₁ γ‖∞`.
    pub chain_residual: f64,
    /// `‖dB(D₁γ) − D₂(D₁γ)‖∞ / ‖D₂ D₁ γ‖∞`.
    pub chain_two_paths: f64,
    pub weitzenbock_residual0: f64,
    pub weitzenbock_residual2: f64,
    /// `|⟨D₁γ, u⟩ − ⟨γ, D₁*u⟩|` relative to `‖D₁γ‖ ‖u‖`.
    pub coulomb_selfcheck: f64,
    pub potential_pairing: f64,
    pub charge: f64,
    pub phi_face_min: f64,
    pub phi_face_max: f64,
    pub phi_max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRates {
    pub bogomolny: Vec<f64>,
    pub chain: Vec<f64>,
    pub weitzenbock0: Vec<f64>,
    pub weitzenbock2: Vec<f64>,
}

/// Finest level plus the residual ratios between successive halvings of `h`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BpsReport {
    pub grid: GridSummary,
    pub h: f64,
    pub bogomolny_residual: f64,
    pub chain_residual: f64,
    pub weitzenbock_residual0: f64,
    pub weitzenbock_residual2: f64,
    pub coulomb_selfcheck: f64,
    pub convergence_rates: ConvergenceRates,
    pub levels: Vec<LevelReport>,
}

fn phi_norm_range(config: &FieldConfig) -> (f64, f64, f64) {
    let g = config.grid();
    let n = g.n;
    let (mut lo, mut hi, mut all) = (f64::INFINITY, 0.0f64, 0.0f64);
    for site in 0..g.len() {
        let v = su2::norm(config.phi.get(site, 0));
        all = all.max(v);
        if g.ijk(site).iter().any(|&i| i == 0 || i == n - 1) {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    (lo, hi, all)
}

/// Evaluates every check on one grid.
pub fn check_level(half_width: f64, n_points: usize) -> Result<LevelReport> {
    let config = bps_monopole(half_width, n_points)?;
    let grid = *config.grid();
    let fields = TestFields::new(grid);

    let bogomolny = bogomolny_residual(&config)?;
    let d1 = apply_d1(&config, &fields.gamma)?;
    let chain_field = apply_d2_only(&config, &d1)?;
    let chain = chain_field.max_norm()?;
    let linearized = d_bogomolny(&config, &d1)?;
    let two_paths = linearized.minus(&chain_field)?.max_norm()? / chain.max(f64::MIN_POSITIVE);

    let w = weitzenbock_check(&config, &fields.gamma, &fields.two_form)?;

    let u = odd_field(
        &Field::generate(grid, 3, 0, |s, c| fields.odd.get(s, c)),
        &Field::generate(grid, 1, 0, |s, _| fields.odd.get(s, 3)),
    )?;
    let lhs = d1.inner(&u)?;
    let rhs = fields.gamma.inner(&coulomb(&config, &u)?)?;
    let scale = (d1.inner(&d1)? * u.inner(&u)?).sqrt();
    let selfcheck = (lhs - rhs).abs() / scale.max(f64::MIN_POSITIVE);

    let (lo, hi, all) = phi_norm_range(&config);
    Ok(LevelReport {
        grid: GridSummary { n: n_points, half_width },
        h: grid.h(),
        bogomolny_residual: bogomolny,
        chain_residual: chain,
        chain_two_paths: two_paths,
        weitzenbock_residual0: w.residual0,
        weitzenbock_residual2: w.residual2,
        coulomb_selfcheck: selfcheck,
        potential_pairing: potential_pairing(&config, &fields.gamma)?,
        charge: monopole_charge(&config)?,
        phi_face_min: lo,
        phi_face_max: hi,
        phi_max: all,
    })
}

fn ratios(levels: &[LevelReport], pick: impl Fn(&LevelReport) -> f64) -> Vec<f64> {
    levels.windows(2).map(|p| pick(&p[0]) / pick(&p[1])).collect()
}

/// Runs [`check_level`] on `levels` grids, `n → 2n − 1` each time.
pub fn verify_bps(half_width: f64, n_points: usize, levels: usize) -> Result<BpsReport> {
    if !(1..=4).contains(&levels) {
        return Err(Error::out_of_range("levels", levels, "[1, 4]"));
    }
    let mut reports = Vec::with_capacity(levels);
    let mut n = n_points;
    for _ in 0..levels {
        reports.push(check_level(half_width, n)?);
        n = 2 * n - 1;
    }
    let finest = reports.last().cloned().expect("at least one level");
    Ok(BpsReport {
        grid: finest.grid,
        h: finest.h,
        bogomolny_residual: finest.bogomolny_residual,
        chain_residual: finest.chain_residual,
        weitzenbock_residual0: finest.weitzenbock_residual0,
        weitzenbock_residual2: finest.weitzenbock_residual2,
        coulomb_selfcheck: finest.coulomb_selfcheck,
        convergence_rates: ConvergenceRates {
            bogomolny: ratios(&reports, |r| r.bogomolny_residual),
            chain: ratios(&reports, |r| r.chain_residual),
            weitzenbock0: ratios(&reports, |r| r.weitzenbock_residual0),
            weitzenbock2: ratios(&reports, |r| r.weitzenbock_residual2),
        },
        levels: reports,
    })
}

/// Legacy VTK structured-points file holding `|Φ|`, with x varying fastest.
pub fn write_phi_vtk(config: &FieldConfig, out: &mut impl Write) -> std::io::Result<()> {
    let g = config.grid();
    let (n, h, r) = (g.n, g.h(), g.half_width);
    writeln!(out, "# vtk DataFile Version 3.0")?;
    writeln!(out, "|Phi| of the charge-one BPS monopole")?;
    writeln!(out, "ASCII")?;
    writeln!(out, "DATASET STRUCTURED_POINTS")?;
    writeln!(out, "DIMENSIONS {n} {n} {n}")?;
    writeln!(out, "ORIGIN {} {} {}", -r, -r, -r)?;
    writeln!(out, "SPACING {h} {h} {h}")?;
    writeln!(out, "POINT_DATA {}", g.len())?;
    writeln!(out, "SCALARS phi_norm double 1")?;
    writeln!(out, "LOOKUP_TABLE default")?;
    for k in 0..n {
        for j in 0..n {
            for i in 0..n {
                writeln!(out, "{:.11e}", su2::norm(config.phi.get(g.index(i, j, k), 0)))?;
            }
        }
    }
    Ok(())
}
