//! Weighted index of the monopole deformation operator.
//!
//! `vdim(α) = 4 k̄ + defect(α)`, where the defect is the unique odd,
//! piecewise-constant function dropping by `J(r)` across each indicial root:
//! `defect(α) = −J(0)/2 − Σ_{0<r<α} J(r)` for `α > 0`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::boundary::BoundarySurface;
use crate::indicial::{BoundarySpectra, IndicialRoot};
use crate::numfmt::{fmt12, sig12};
use crate::{Error, Result};

/// Weights closer than this to a root are rejected.
pub const ROOT_TOL: f64 = 1e-9;

/// Jump data `J(r)` of the defect, valid on `[−resolved, resolved]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DefectProfile {
    jumps: Vec<(f64, usize)>,
    resolved: f64,
}

impl DefectProfile {
    pub fn new(mut jumps: Vec<(f64, usize)>, resolved: f64) -> Result<Self> {
        jumps.retain(|&(_, j)| j > 0);
        jumps.sort_by(|a, b| a.0.total_cmp(&b.0));
        for &(r, j) in &jumps {
            let mirror: usize = jumps.iter().filter(|(s, _)| (s + r).abs() <= ROOT_TOL).map(|&(_, j)| j).sum();
            if r.abs() <= resolved && mirror != j {
                return Err(Error::CorruptProfile(format!("J({r}) = {j} but J({}) = {mirror}", -r)));
            }
        }
        let profile = Self { jumps, resolved };
        if !profile.jump_at_zero().is_multiple_of(2) {
            return Err(Error::CorruptProfile(format!("J(0) = {} is odd", profile.jump_at_zero())));
        }
        Ok(profile)
    }

    pub fn from_roots(roots: &[IndicialRoot], resolved: f64) -> Result<Self> {
        Self::new(roots.iter().map(|r| (r.value, r.multiplicity)).collect(), resolved)
    }

    pub fn jumps(&self) -> &[(f64, usize)] {
        &self.jumps
    }

    pub fn resolved(&self) -> f64 {
        self.resolved
    }

    fn jump_at_zero(&self) -> usize {
        self.jumps.iter().filter(|(r, _)| r.abs() <= ROOT_TOL).map(|&(_, j)| j).sum()
    }

    fn check_weight(&self, alpha: f64) -> Result<()> {
        if !alpha.is_finite() || alpha.abs() > self.resolved {
            return Err(Error::Unresolved { alpha, resolved: self.resolved });
        }
        if let Some(&(root, _)) = self.jumps.iter().find(|(r, _)| (r - alpha).abs() <= ROOT_TOL) {
            return Err(Error::AlphaAtRoot { alpha, root });
        }
        Ok(())
    }

    pub fn defect(&self, alpha: f64) -> Result<i64> {
        self.check_weight(alpha)?;
        let a = alpha.abs();
        let crossed: usize = self.jumps.iter().filter(|(r, _)| *r > ROOT_TOL && *r < a).map(|&(_, j)| j).sum();
        let positive = -((self.jump_at_zero() / 2) as i64) - crossed as i64;
        Ok(if alpha > 0.0 { positive } else { -positive })
    }

    /// Step function over the resolved window as CSV rows `(alpha_low, alpha_high, defect)`.
    pub fn to_csv(&self) -> String {
        let mut cuts = vec![-self.resolved];
        cuts.extend(self.jumps.iter().map(|&(r, _)| r).filter(|r| r.abs() < self.resolved));
        cuts.push(self.resolved);
        let mut out = String::from("alpha_low,alpha_high,defect\n");
        for w in cuts.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            if let Ok(d) = self.defect(mid) {
                let _ = writeln!(out, "{},{},{}", fmt12(w[0]), fmt12(w[1]), d);
            }
        }
        out
    }
}

pub fn defect(profile: &DefectProfile, alpha: f64) -> Result<i64> {
    profile.defect(alpha)
}

/// `defect(α₁) − defect(α₂)`, cross-checked against `Σ J(r)` over `(α₁, α₂)`.
pub fn index_jump(profile: &DefectProfile, alpha1: f64, alpha2: f64) -> Result<i64> {
    if !(alpha1 < alpha2) {
        return Err(Error::out_of_range("alpha1", alpha1, format!("(-inf, {alpha2})")));
    }
    let jump = profile.defect(alpha1)? - profile.defect(alpha2)?;
    let sum: usize = profile.jumps.iter().filter(|(r, _)| *r > alpha1 && *r < alpha2).map(|&(_, j)| j).sum();
    if jump != sum as i64 {
        return Err(Error::CorruptProfile(format!("defect jump {jump} disagrees with root sum {sum}")));
    }
    Ok(jump)
}

/// `4 k̄`. Over the boundary `ad P₊ ≅ L ⊗ L`, so `c₁(ad P₊) = 2 c₁(L)`.
pub fn topological_index(surface: &BoundarySurface) -> i64 {
    4 * surface.total_charge()
}

/// Distance from 0 to the nearest nonzero root.
pub fn epsilon0(roots: &[IndicialRoot], resolved: f64) -> Result<f64> {
    roots
        .iter()
        .map(|r| r.value.abs())
        .filter(|&v| v > ROOT_TOL && v <= resolved)
        .min_by(f64::total_cmp)
        .ok_or(Error::Unresolved { alpha: 0.0, resolved })
}

/// Orders `(r + 1, r + 2)` of `(u₀, u₁)`, where `r` is the first root above `α`.
pub fn leading_asymptotics(roots: &[IndicialRoot], alpha: f64, resolved: f64) -> Result<(f64, f64)> {
    let r = roots
        .iter()
        .map(|r| r.value)
        .filter(|&v| v > alpha + ROOT_TOL && v <= resolved)
        .min_by(f64::total_cmp)
        .ok_or(Error::Unresolved { alpha, resolved })?;
    Ok((r + 1.0, r + 2.0))
}

pub fn surjectivity_advisory(alpha: f64, ricci_nonnegative: bool) -> Vec<String> {
    let mut out = Vec::new();
    out.push(match (ricci_nonnegative, alpha <= 1.0) {
        (true, true) => "surjective (nonnegative Ricci, alpha <= 1)".to_string(),
        (true, false) => "no surjectivity guarantee: alpha > 1".to_string(),
        (false, _) => "no surjectivity guarantee without nonnegative Ricci; it holds for generic metrics".to_string(),
    });
    if alpha >= -1.0 {
        out.push("alpha >= -1: weight admits framed monopoles".to_string());
    } else {
        out.push("alpha < -1: below the framed-monopole weight floor".to_string());
    }
    out
}

/// Smallest nonzero boundary eigenvalue and the area scale pushing it to 2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VolumeScaling {
    pub nu_min: f64,
    pub factor: f64,
}

impl VolumeScaling {
    pub fn message(&self) -> String {
        if self.factor == 1.0 {
            format!("nu_min = {} >= 2: no geometric roots in (-1, 1)", fmt12(self.nu_min))
        } else {
            format!(
                "nu_min = {} < 2: scale the boundary metric by {} to clear (-1, 1) of geometric roots",
                fmt12(self.nu_min),
                fmt12(self.factor)
            )
        }
    }
}

pub fn volume_scaling_advisory(data: &BoundarySpectra) -> Option<VolumeScaling> {
    let nu_min = data.spectra.iter().filter_map(|t| t.first_nonzero()).min_by(f64::total_cmp)?;
    let factor = if nu_min < 2.0 { nu_min / 2.0 } else { 1.0 };
    Some(VolumeScaling { nu_min, factor })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VdimReport {
    pub alpha: f64,
    pub topological_index: i64,
    pub defect: i64,
    pub vdim: i64,
    pub epsilon0: f64,
    pub u0_order: f64,
    pub u1_order: f64,
    pub advisories: Vec<String>,
}

impl VdimReport {
    /// Copy with every float rounded to 12 significant digits.
    pub fn rounded(&self) -> Self {
        Self {
            alpha: sig12(self.alpha),
            epsilon0: sig12(self.epsilon0),
            u0_order: sig12(self.u0_order),
            u1_order: sig12(self.u1_order),
            ..self.clone()
        }
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let rows = [
            ("alpha", fmt12(self.alpha)),
            ("topological_index", self.topological_index.to_string()),
            ("defect", self.defect.to_string()),
            ("vdim", self.vdim.to_string()),
            ("epsilon0", fmt12(self.epsilon0)),
            ("u0_order", fmt12(self.u0_order)),
            ("u1_order", fmt12(self.u1_order)),
        ];
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<18} {v}");
        }
        for a in &self.advisories {
            let _ = writeln!(out, "advisory           {a}");
        }
        out
    }
}

/// Options that shape the report but never the index itself.
#[derive(Clone, Debug, PartialEq)]
pub struct VdimOptions {
    pub root_cutoff: f64,
    pub ricci_nonnegative: bool,
    /// Sobolev weight `β` and order `k` of the Fredholm domain. Annotation only.
    pub sobolev: Option<(f64, u32)>,
}

impl Default for VdimOptions {
    fn default() -> Self {
        Self { root_cutoff: crate::indicial::DEFAULT_ROOT_CUTOFF, ricci_nonnegative: false, sobolev: None }
    }
}

pub fn vdim(surface: &BoundarySurface, alpha: f64, options: &VdimOptions) -> Result<VdimReport> {
    let data = BoundarySpectra::compute(surface, options.root_cutoff)?;
    vdim_with(surface, &data, alpha, options)
}

/// As [`vdim`], reusing precomputed boundary spectra.
pub fn vdim_with(surface: &BoundarySurface, data: &BoundarySpectra, alpha: f64, options: &VdimOptions) -> Result<VdimReport> {
    let cutoff = options.root_cutoff;
    if !alpha.is_finite() || alpha.abs() > cutoff {
        return Err(Error::Unresolved { alpha, resolved: cutoff });
    }
    let roots = data.bspec(cutoff)?;
    let profile = DefectProfile::from_roots(&roots, cutoff)?;
    let defect = profile.defect(alpha)?;
    let topological_index = topological_index(surface);
    let (u0_order, u1_order) = next_root_orders(surface, data, alpha)?;
    let mut advisories = surjectivity_advisory(alpha, options.ricci_nonnegative);
    if let Some(scaling) = volume_scaling_advisory(data) {
        advisories.push(scaling.message());
    }
    if let Some((beta, k)) = options.sobolev {
        let ok = (beta - alpha).abs() < 0.5;
        advisories.push(format!(
            "domain x^{} H^{k}: |beta - alpha| {} 1/2 (the index does not depend on beta or k)",
            fmt12(beta),
            if ok { "<" } else { "is not <" }
        ));
    }
    Ok(VdimReport {
        alpha,
        topological_index,
        defect,
        vdim: topological_index + defect,
        epsilon0: epsilon0(&roots, cutoff)?,
        u0_order,
        u1_order,
        advisories,
    })
}

/// Leading orders at `α`, widening the spectral window when the next root
/// above `α` lies outside what `data` resolves.
fn next_root_orders(surface: &BoundarySurface, data: &BoundarySpectra, alpha: f64) -> Result<(f64, f64)> {
    let mut window = data.resolved_window();
    let mut found = leading_asymptotics(&data.bspec(window)?, alpha, window);
    for _ in 0..6 {
        if !matches!(found, Err(Error::Unresolved { .. })) {
            break;
        }
        window = 2.0 * window + 1.0;
        let wider = BoundarySpectra::compute(surface, window)?;
        found = leading_asymptotics(&wider.bspec(window)?, alpha, window);
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus_profile() -> DefectProfile {
        DefectProfile::new(vec![(-1.0, 4), (-0.618, 4), (0.0, 2), (0.618, 4), (1.0, 4)], 1.2).unwrap()
    }

    #[test]
    fn torus_defect_near_zero() {
        let p = torus_profile();
        assert_eq!(p.defect(-0.3).unwrap(), 1);
        assert_eq!(p.defect(0.3).unwrap(), -1);
        assert_eq!(p.defect(0.8).unwrap(), -5);
        assert_eq!(index_jump(&p, -0.3, 0.3).unwrap(), 2);
        assert_eq!(index_jump(&p, 0.1, 0.5).unwrap(), 0);
    }

    #[test]
    fn rejects_roots_and_corruption() {
        let p = torus_profile();
        assert!(matches!(p.defect(0.0), Err(Error::AlphaAtRoot { .. })));
        assert!(matches!(p.defect(2.0), Err(Error::Unresolved { .. })));
        assert!(matches!(DefectProfile::new(vec![(0.0, 3)], 1.0), Err(Error::CorruptProfile(_))));
        assert!(matches!(DefectProfile::new(vec![(0.5, 1)], 1.0), Err(Error::CorruptProfile(_))));
    }

    #[test]
    fn step_csv() {
        let p = DefectProfile::new(vec![(-1.0, 4), (1.0, 4)], 1.5).unwrap();
        assert_eq!(p.to_csv(), "alpha_low,alpha_high,defect\n-1.5,-1,4\n-1,1,0\n1,1.5,-4\n");
    }

    #[test]
    fn advisories() {
        assert_eq!(surjectivity_advisory(0.5, true)[0], "surjective (nonnegative Ricci, alpha <= 1)");
        assert!(surjectivity_advisory(1.5, true)[0].starts_with("no surjectivity"));
        assert!(surjectivity_advisory(0.5, false)[0].contains("generic"));
        assert!(surjectivity_advisory(-1.5, true)[1].contains("below"));
    }
}
