//! Indicial roots of the conjugated odd signature operator near the boundary.
//!
//! On the boundary, after conjugation the model operator is
//! `I(r) = r − (−1)^N (m/2 − N) + (d + δ)` acting on all boundary forms,
//! with `N` the form degree. Harmonic `k`-forms give the topological roots
//! `(−1)^k (m/2 − k)`. A coexact `k`-eigenform `φ` with `Δφ = νφ` couples
//! only to `dφ/√ν`, and the resulting 2×2 block is family B for even `k` and
//! family A for odd `k`:
//!
//! ```text
//! A: [[r + M, √ν], [√ν, r − M + 1]]     roots −1/2 ± √((M − 1/2)² + ν)
//! B: [[r − M, √ν], [√ν, r + M − 1]]     roots +1/2 ± √((M − 1/2)² + ν)
//! ```
//!
//! with `M = m/2 − k`. Every coexact eigenform is counted once. On a surface
//! (`m = 2`) the coexact spectra in degrees 0 and 1 both equal the nonzero
//! function spectrum, which is what [`geometric_roots`] consumes.

use std::fmt::{self, Write as _};

use faer::Mat;
use serde::Serialize;

use crate::boundary::{betti, BoundarySurface, Metric, SpectrumTable};
use crate::numfmt::fmt12;
use crate::{Error, Result};

/// Merge tolerance for roots computed from analytic spectra.
pub const ANALYTIC_MERGE_TOL: f64 = 1e-9;
/// Merge tolerance when any spectrum came from a mesh.
pub const MESH_MERGE_TOL: f64 = 1e-6;
/// Default half-width of the resolved root window.
pub const DEFAULT_ROOT_CUTOFF: f64 = 2.5;
/// Relative singular-value threshold used by the nullspace oracle.
pub const ORACLE_SV_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
}

impl Family {
    /// The family governing the coupling of a coexact `k`-form with its differential.
    pub fn for_degree(k: usize) -> Family {
        if k.is_multiple_of(2) {
            Family::B
        } else {
            Family::A
        }
    }

    fn shift(self) -> f64 {
        match self {
            Family::A => -0.5,
            Family::B => 0.5,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    Topological { degree: usize },
    Geometric { family: Family, degree: usize, eigenvalue: f64, component: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Contribution {
    pub origin: Origin,
    pub multiplicity: usize,
}

impl fmt::Display for Contribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.origin {
            Origin::Topological { degree } => write!(f, "topological(k={degree})x{}", self.multiplicity),
            Origin::Geometric { family, degree, eigenvalue, component } => write!(
                f,
                "{family}(k={degree},nu={},c={component})x{}",
                fmt12(eigenvalue),
                self.multiplicity
            ),
        }
    }
}

/// A point of the b-spectrum with its formal-nullspace dimension.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndicialRoot {
    pub value: f64,
    pub multiplicity: usize,
    pub contributions: Vec<Contribution>,
}

impl IndicialRoot {
    pub fn is_topological(&self) -> bool {
        self.contributions.iter().any(|c| matches!(c.origin, Origin::Topological { .. }))
    }
}

/// The 2×2 block of `I(r)` on an eigenpair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndicialMatrix {
    pub m: usize,
    pub r: f64,
    pub k: usize,
    pub nu: f64,
    pub family: Family,
    pub entries: [[f64; 2]; 2],
}

impl IndicialMatrix {
    pub fn determinant(&self) -> f64 {
        let [[a, b], [c, d]] = self.entries;
        a * d - b * c
    }

    /// The two values of `r` at which this block is singular.
    pub fn roots(m: usize, k: usize, nu: f64, family: Family) -> [f64; 2] {
        let big_m = m as f64 / 2.0 - k as f64;
        let s = ((big_m - 0.5).powi(2) + nu).sqrt();
        let c = family.shift();
        [c - s, c + s]
    }
}

fn check_even(m: usize) -> Result<()> {
    if m == 0 || !m.is_multiple_of(2) {
        return Err(Error::out_of_range("m", m, "positive even integers"));
    }
    Ok(())
}

pub fn indicial_matrix(m: usize, k: usize, nu: f64, family: Family, r: f64) -> Result<IndicialMatrix> {
    check_even(m)?;
    if k >= m {
        return Err(Error::out_of_range("k", k, format!("[0, {}]", m - 1)));
    }
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::out_of_range("nu", nu, "(0, inf)"));
    }
    let big_m = m as f64 / 2.0 - k as f64;
    let s = nu.sqrt();
    let entries = match family {
        Family::A => [[r + big_m, s], [s, r - big_m + 1.0]],
        Family::B => [[r - big_m, s], [s, r + big_m - 1.0]],
    };
    Ok(IndicialMatrix { m, r, k, nu, family, entries })
}

/// Harmonic roots `(−1)^k (m/2 − k)` weighted by `b^k`; degrees with `b^k = 0` are omitted.
pub fn topological_roots(m: usize, betti: &[usize]) -> Result<Vec<IndicialRoot>> {
    check_even(m)?;
    if betti.len() != m + 1 {
        return Err(Error::DimensionMismatch { left: betti.len(), right: m + 1 });
    }
    let raw = betti
        .iter()
        .enumerate()
        .filter(|(_, &b)| b > 0)
        .map(|(k, &b)| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let value = sign * (m as f64 / 2.0 - k as f64);
            (value, Contribution { origin: Origin::Topological { degree: k }, multiplicity: b })
        })
        .collect();
    Ok(merge(raw, ANALYTIC_MERGE_TOL))
}

/// Spectrum cutoff that guarantees every geometric root with `|r| ≤ root_cutoff` is generated.
pub fn required_spectrum_cutoff(root_cutoff: f64) -> f64 {
    // |root| ≥ √((M − 1/2)² + ν) − 1/2 and (M − 1/2)² ≥ 1/4 for integer M.
    (root_cutoff + 0.5).powi(2) - 0.25
}

pub fn geometric_roots(m: usize, spectrum: &SpectrumTable, root_cutoff: f64) -> Result<Vec<IndicialRoot>> {
    Ok(merge(geometric_raw(m, spectrum, root_cutoff)?, ANALYTIC_MERGE_TOL))
}

fn geometric_raw(m: usize, spectrum: &SpectrumTable, root_cutoff: f64) -> Result<Vec<(f64, Contribution)>> {
    check_even(m)?;
    let need = required_spectrum_cutoff(root_cutoff);
    if spectrum.cutoff < need - 1e-12 * need.max(1.0) {
        return Err(Error::InsufficientSpectrum { have: spectrum.cutoff, need });
    }
    let mut raw = Vec::new();
    for e in spectrum.nonzero() {
        for k in 0..m {
            let family = Family::for_degree(k);
            for value in IndicialMatrix::roots(m, k, e.eigenvalue, family) {
                if value.abs() <= root_cutoff + ANALYTIC_MERGE_TOL {
                    let origin = Origin::Geometric { family, degree: k, eigenvalue: e.eigenvalue, component: e.component };
                    raw.push((value, Contribution { origin, multiplicity: e.multiplicity }));
                }
            }
        }
    }
    Ok(raw)
}

/// Sorts and merges values closer than `tol`, preferring exact topological values.
fn merge(mut raw: Vec<(f64, Contribution)>, tol: f64) -> Vec<IndicialRoot> {
    raw.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<IndicialRoot> = Vec::new();
    let mut group: Vec<(f64, Contribution)> = Vec::new();
    let flush = |group: &mut Vec<(f64, Contribution)>, out: &mut Vec<IndicialRoot>| {
        if group.is_empty() {
            return;
        }
        let topo = group.iter().find(|(_, c)| matches!(c.origin, Origin::Topological { .. }));
        let value = match topo {
            Some((v, _)) => *v,
            None => group.iter().map(|(v, _)| v).sum::<f64>() / group.len() as f64,
        };
        let mut contributions: Vec<Contribution> = group.drain(..).map(|(_, c)| c).collect();
        contributions.sort_by_key(|c| match c.origin {
            Origin::Topological { degree } => (0, degree),
            Origin::Geometric { degree, .. } => (1, degree),
        });
        let multiplicity = contributions.iter().map(|c| c.multiplicity).sum();
        out.push(IndicialRoot { value, multiplicity, contributions });
    };
    for item in raw {
        if let Some((last, _)) = group.last() {
            if item.0 - last > tol {
                flush(&mut group, &mut out);
            }
        }
        group.push(item);
    }
    flush(&mut group, &mut out);
    out
}

/// Boundary data resolved once: Betti numbers and per-component spectra.
#[derive(Clone, Debug)]
pub struct BoundarySpectra {
    pub m: usize,
    pub betti: Vec<usize>,
    /// Betti numbers `(b⁰, b¹, b²)` of each component, for the oracle.
    pub component_betti: Vec<[usize; 3]>,
    pub spectra: Vec<SpectrumTable>,
    pub from_mesh: bool,
}

impl BoundarySpectra {
    /// Resolves spectra far enough to produce every root with `|r| ≤ root_cutoff`.
    pub fn compute(surface: &BoundarySurface, root_cutoff: f64) -> Result<Self> {
        if !(root_cutoff >= 0.0 && root_cutoff.is_finite()) {
            return Err(Error::out_of_range("root_cutoff", root_cutoff, "[0, inf)"));
        }
        Self::with_spectrum_cutoff(surface, required_spectrum_cutoff(root_cutoff))
    }

    pub fn with_spectrum_cutoff(surface: &BoundarySurface, spectrum_cutoff: f64) -> Result<Self> {
        let (b0, b1, b2) = betti(surface);
        let component_betti = surface.components().iter().map(|c| [1, 2 * c.genus, 1]).collect();
        let from_mesh = surface.components().iter().any(|c| matches!(c.metric, Metric::Mesh { .. }));
        Ok(Self { m: 2, betti: vec![b0, b1, b2], component_betti, spectra: surface.spectra(spectrum_cutoff)?, from_mesh })
    }

    pub fn spectrum_cutoff(&self) -> f64 {
        self.spectra.iter().map(|t| t.cutoff).fold(f64::INFINITY, f64::min)
    }

    /// Largest `C` such that every root with `|r| ≤ C` is generated from these spectra.
    pub fn resolved_window(&self) -> f64 {
        (self.spectrum_cutoff() + 0.25).max(0.0).sqrt() - 0.5
    }

    pub fn merge_tol(&self) -> f64 {
        if self.from_mesh {
            MESH_MERGE_TOL
        } else {
            ANALYTIC_MERGE_TOL
        }
    }

    /// The b-spectrum within `[−root_cutoff, root_cutoff]`.
    pub fn bspec(&self, root_cutoff: f64) -> Result<Vec<IndicialRoot>> {
        let mut raw: Vec<(f64, Contribution)> = topological_roots(self.m, &self.betti)?
            .into_iter()
            .filter(|r| r.value.abs() <= root_cutoff)
            .flat_map(|r| {
                let value = r.value;
                r.contributions.into_iter().map(move |c| (value, c))
            })
            .collect();
        for table in &self.spectra {
            raw.extend(geometric_raw(self.m, table, root_cutoff)?);
        }
        Ok(merge(raw, self.merge_tol()))
    }

    /// Numerical dimension of `ker I(r)`, assembled block by block.
    ///
    /// Independent of the family bookkeeping: for each eigenvalue it builds
    /// the 4×4 operator on `(f, df/√ν, ⋆df/√ν, ⋆f)` from the degree shifts
    /// and the matrices of `d` and `δ`, then counts small singular values.
    pub fn nullspace_dimension(&self, r: f64) -> Result<usize> {
        if self.m != 2 {
            return Err(Error::out_of_range("m", self.m, "{2}"));
        }
        let need = required_spectrum_cutoff(r.abs());
        if self.spectrum_cutoff() < need {
            return Err(Error::InsufficientSpectrum { have: self.spectrum_cutoff(), need });
        }
        let m = self.m as f64;
        let shift = |deg: usize| {
            let sign = if deg.is_multiple_of(2) { 1.0 } else { -1.0 };
            r - sign * (m / 2.0 - deg as f64)
        };
        let mut deficiency = 0;
        for b in &self.component_betti {
            for (deg, &bk) in b.iter().enumerate() {
                deficiency += bk * rank_deficiency(&Mat::from_fn(1, 1, |_, _| shift(deg)));
            }
        }
        let degrees = [0usize, 1, 1, 2];
        for table in &self.spectra {
            for e in table.nonzero() {
                let s = e.eigenvalue.sqrt();
                // d: f ↦ √ν (df/√ν) and ⋆df/√ν ↦ −√ν ⋆f; δ is its transpose.
                let mut d = Mat::<f64>::zeros(4, 4);
                d[(1, 0)] = s;
                d[(3, 2)] = -s;
                let block = Mat::from_fn(4, 4, |i, j| {
                    let diag = if i == j { shift(degrees[i]) } else { 0.0 };
                    diag + d[(i, j)] + d[(j, i)]
                });
                deficiency += e.multiplicity * rank_deficiency(&block);
            }
        }
        Ok(deficiency)
    }
}

fn rank_deficiency(block: &Mat<f64>) -> usize {
    let sv = block.singular_values();
    let norm = sv.iter().fold(0.0f64, |a, &b| a.max(b)).max(1.0);
    sv.iter().filter(|&&s| s < ORACLE_SV_TOL * norm).count()
}

/// bspec of a surface, resolved on `[−root_cutoff, root_cutoff]`.
pub fn bspec(surface: &BoundarySurface, root_cutoff: f64) -> Result<Vec<IndicialRoot>> {
    BoundarySpectra::compute(surface, root_cutoff)?.bspec(root_cutoff)
}

/// Rank deficiency of the assembled indicial operator at `r`.
pub fn nullspace_oracle(surface: &BoundarySurface, r: f64, spectrum_cutoff: f64) -> Result<usize> {
    BoundarySpectra::with_spectrum_cutoff(surface, spectrum_cutoff)?.nullspace_dimension(r)
}

/// Multiplicity recorded at `r` (0 when `r` is not within `tol` of a root).
pub fn multiplicity_at(roots: &[IndicialRoot], r: f64, tol: f64) -> usize {
    roots.iter().filter(|root| (root.value - r).abs() <= tol).map(|root| root.multiplicity).sum()
}

pub fn roots_csv(roots: &[IndicialRoot]) -> String {
    let mut out = String::from("value,multiplicity,origins\n");
    for root in roots {
        let origins: Vec<String> = root.contributions.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{},{},{}", fmt12(root.value), root.multiplicity, origins.join(";"));
    }
    out
}

/// ASCII picture of the roots on `[−half_width, half_width]`.
///
/// `O` marks a root carrying harmonic forms, `o` a purely geometric root,
/// `+` the origin when it is not a root.
pub fn number_line(roots: &[IndicialRoot], half_width: f64, width: usize) -> String {
    let width = width.max(11) | 1;
    let column = |v: f64| ((v + half_width) / (2.0 * half_width) * (width - 1) as f64).round() as usize;
    let mut line = vec!['-'; width];
    line[column(0.0)] = '+';
    for root in roots.iter().filter(|r| r.value.abs() <= half_width) {
        let c = column(root.value);
        if root.is_topological() {
            line[c] = 'O';
        } else if line[c] != 'O' {
            line[c] = 'o';
        }
    }
    let mut labels = vec![' '; width];
    let mut place = |v: f64| {
        let text = fmt12(v);
        let start = column(v).saturating_sub(text.len() / 2).min(width.saturating_sub(text.len()));
        for (i, ch) in text.chars().enumerate() {
            labels[start + i] = ch;
        }
    };
    place(-half_width);
    place(0.0);
    place(half_width);
    let mut out: String = line.into_iter().collect();
    out.push('\n');
    out.push_str(labels.into_iter().collect::<String>().trim_end());
    out.push_str("\nO topological   o geometric\n");
    out
}
