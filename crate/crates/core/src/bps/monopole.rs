//! The charge-one Prasad–Sommerfield monopole sampled on a grid.

use std::f64::consts::PI;

use super::grid::{Field, Grid};
use super::su2::{self, Su};
use crate::{Error, Result};

/// Connection `A_i` (three components) and Higgs field `Φ` on a common grid.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldConfig {
    pub a: Field,
    pub phi: Field,
}

impl FieldConfig {
    pub fn new(a: Field, phi: Field) -> Result<Self> {
        a.grid().same_as(phi.grid())?;
        if a.comps() != 3 || phi.comps() != 1 {
            return Err(Error::GridMismatch(format!("expected 3 + 1 components, got {} + {}", a.comps(), phi.comps())));
        }
        Ok(Self { a, phi })
    }

    pub fn grid(&self) -> &Grid {
        self.a.grid()
    }

    /// `A = 0` and constant `Φ`.
    pub fn vacuum(grid: Grid, phi: Su) -> Self {
        Self { a: Field::zeros(grid, 3), phi: Field::from_fn(grid, 1, |_, _| phi) }
    }
}

/// `(coth r − 1/r) / r`, so that `Φ^a = x^a g(r)`.
pub fn higgs_profile(r: f64) -> f64 {
    if r < 0.05 {
        let r2 = r * r;
        1.0 / 3.0 - r2 / 45.0 + 2.0 * r2 * r2 / 945.0 - r2 * r2 * r2 / 4725.0
    } else {
        (1.0 / r.tanh() - 1.0 / r) / r
    }
}

/// `(1 − r / sinh r) / r²`, so that `A_i^a = ε_aij x^j q(r)`.
pub fn gauge_profile(r: f64) -> f64 {
    if r < 0.05 {
        let r2 = r * r;
        1.0 / 6.0 - 7.0 * r2 / 360.0 + 31.0 * r2 * r2 / 15120.0 - 127.0 * r2 * r2 * r2 / 604800.0
    } else {
        (1.0 - r / r.sinh()) / (r * r)
    }
}

/// Hedgehog fields of the unit-charge BPS monopole on `[−R, R]³`.
///
/// With `D = ∂ + [A, ·]` and the bracket of the `T_a` frame, the solution of
/// `B = D Φ` is `Φ^a = −x^a g(r)`, `A_i^a = ε_aij x^j q(r)`.
pub fn bps_monopole(half_width: f64, n_points: usize) -> Result<FieldConfig> {
    if !(half_width > 1.0) {
        return Err(Error::out_of_range("R", half_width, "(1, inf)"));
    }
    if n_points < 17 {
        return Err(Error::out_of_range("n_points", n_points, "[17, inf)"));
    }
    let grid = Grid::new(half_width, n_points)?;
    let phi = Field::from_fn(grid, 1, |x, _| {
        let g = higgs_profile(norm3(x));
        su2::scale(-g, x)
    });
    let a = Field::from_fn(grid, 3, |x, i| {
        let q = gauge_profile(norm3(x));
        // (A_i)^a = ε_{a i j} x^j q
        let mut v = [0.0; 3];
        for (av, slot) in v.iter_mut().enumerate() {
            for (j, xj) in x.iter().enumerate() {
                *slot += levi_civita(av, i, j) * xj * q;
            }
        }
        v
    });
    Ok(FieldConfig { a, phi })
}

fn norm3(x: [f64; 3]) -> f64 {
    (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Signed solid angle of the spherical triangle `(a, b, c)` of unit vectors.
fn solid_angle(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    let triple = su2::dot(a, su2::bracket(b, c));
    let denom = 1.0 + su2::dot(a, b) + su2::dot(b, c) + su2::dot(c, a);
    2.0 * triple.atan2(denom)
}

/// Degree of `Φ/|Φ|` restricted to the boundary of the grid cube.
///
/// Each boundary square is split into two outward-oriented triangles and the
/// image solid angles are summed. Fails if `Φ` vanishes on the boundary.
pub fn boundary_degree(config: &FieldConfig) -> Result<f64> {
    let g = *config.grid();
    let n = g.n;
    let unit = |i: usize, j: usize, k: usize| -> Result<[f64; 3]> {
        let v = config.phi.get(g.index(i, j, k), 0);
        let len = su2::norm(v);
        if len < 1e-12 {
            return Err(Error::GridMismatch(format!("Higgs field vanishes at boundary site ({i}, {j}, {k})")));
        }
        Ok(su2::scale(1.0 / len, v))
    };
    let mut total = 0.0;
    for axis in 0..3 {
        let (u, v) = ((axis + 1) % 3, (axis + 2) % 3);
        for (side, sign) in [(0, -1.0), (n - 1, 1.0)] {
            for p in 0..n - 1 {
                for q in 0..n - 1 {
                    let at = |dp: usize, dq: usize| {
                        let mut idx = [0usize; 3];
                        idx[axis] = side;
                        idx[u] = p + dp;
                        idx[v] = q + dq;
                        unit(idx[0], idx[1], idx[2])
                    };
                    let (c00, c10, c11, c01) = (at(0, 0)?, at(1, 0)?, at(1, 1)?, at(0, 1)?);
                    // (u, v, axis) is right-handed, so (c00, c10, c11) faces +axis.
                    let omega = solid_angle(c00, c10, c11) + solid_angle(c00, c11, c01);
                    total += sign * omega;
                }
            }
        }
    }
    Ok(total / (4.0 * PI))
}

/// Monopole number: the boundary degree of `Φ/|Φ|` with the target sphere
/// oriented opposite to the `T_a` frame, which makes solutions of `B = D Φ`
/// carry positive charge.
pub fn monopole_charge(config: &FieldConfig) -> Result<f64> {
    Ok(-boundary_degree(config)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_match_closed_forms_at_the_switch() {
        for r in [0.049, 0.05, 0.051] {
            let g = (1.0 / f64::tanh(r) - 1.0 / r) / r;
            let q = (1.0 - r / r.sinh()) / (r * r);
            assert!((higgs_profile(r) - g).abs() < 1e-10);
            assert!((gauge_profile(r) - q).abs() < 1e-9);
        }
        assert_eq!(higgs_profile(0.0) * 0.0, 0.0);
    }

    #[test]
    fn degree_of_hedgehog_and_constant() {
        let cfg = bps_monopole(4.0, 17).unwrap();
        assert!((boundary_degree(&cfg).unwrap() + 1.0).abs() < 1e-9);
        assert!((monopole_charge(&cfg).unwrap() - 1.0).abs() < 1e-9);
        let hedgehog = Field::from_fn(*cfg.grid(), 1, |x, _| x);
        let outward = FieldConfig::new(cfg.a.clone(), hedgehog).unwrap();
        assert!((boundary_degree(&outward).unwrap() - 1.0).abs() < 1e-9);
        let flat = FieldConfig::vacuum(Grid::new(1.0, 5).unwrap(), [0.0, 0.0, 1.0]);
        assert!(boundary_degree(&flat).unwrap().abs() < 1e-12);
    }
}
