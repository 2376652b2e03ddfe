//! Laplace spectra as clustered `(eigenvalue, multiplicity)` tables.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::numfmt::fmt12;
use crate::{Error, Result};

/// Relative gap below which analytic eigenvalues are treated as equal.
pub const ANALYTIC_CLUSTER_TOL: f64 = 1e-6;
/// Relative gap below which mesh eigenvalues are treated as equal.
pub const MESH_CLUSTER_TOL: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub component: usize,
}

/// Eigenvalues sorted ascending; everything at or below `cutoff` is present.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumTable {
    pub entries: Vec<SpectrumEntry>,
    pub cutoff: f64,
}

impl SpectrumTable {
    pub fn empty(cutoff: f64) -> Self {
        Self { entries: Vec::new(), cutoff }
    }

    /// Builds a table from raw (unclustered) eigenvalues.
    pub fn from_values(values: &[f64], tol: f64, cutoff: f64, component: usize) -> Self {
        let entries = cluster(values, tol)
            .into_iter()
            .map(|(eigenvalue, multiplicity)| SpectrumEntry { eigenvalue, multiplicity, component })
            .collect();
        Self { entries, cutoff }
    }

    /// Entries with `eigenvalue > 0`.
    pub fn nonzero(&self) -> impl Iterator<Item = &SpectrumEntry> {
        self.entries.iter().filter(|e| e.eigenvalue > 0.0)
    }

    pub fn zero_multiplicity(&self) -> usize {
        self.entries.iter().filter(|e| e.eigenvalue == 0.0).map(|e| e.multiplicity).sum()
    }

    /// Smallest nonzero eigenvalue, if any was resolved.
    pub fn first_nonzero(&self) -> Option<f64> {
        self.nonzero().map(|e| e.eigenvalue).next()
    }

    /// Multiplies every eigenvalue (and the cutoff) by `factor`.
    pub fn scaled(mut self, factor: f64) -> Self {
        for e in &mut self.entries {
            e.eigenvalue *= factor;
        }
        self.cutoff *= factor;
        self
    }

    pub fn with_component(mut self, component: usize) -> Self {
        for e in &mut self.entries {
            e.component = component;
        }
        self
    }

    /// Drops entries above `cutoff` and lowers the guarantee accordingly.
    pub fn truncated(mut self, cutoff: f64) -> Self {
        self.entries.retain(|e| e.eigenvalue <= cutoff);
        self.cutoff = self.cutoff.min(cutoff);
        self
    }

    /// Sorted merge of several tables. The guaranteed cutoff is the smallest one.
    pub fn merge(tables: &[SpectrumTable]) -> Self {
        let mut entries: Vec<SpectrumEntry> = tables.iter().flat_map(|t| t.entries.iter().copied()).collect();
        entries.sort_by(|a, b| a.eigenvalue.total_cmp(&b.eigenvalue).then(a.component.cmp(&b.component)));
        let cutoff = tables.iter().map(|t| t.cutoff).fold(f64::INFINITY, f64::min);
        Self { entries, cutoff }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("component,eigenvalue,multiplicity\n");
        for e in &self.entries {
            let _ = writeln!(out, "{},{},{}", e.component, fmt12(e.eigenvalue), e.multiplicity);
        }
        out
    }
}

/// Groups sorted values into clusters separated by more than
/// `tol * max(|v|, 1)`. Clusters whose mean is within `tol` of zero snap to 0.
pub fn cluster(values: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut sum = 0.0;
    let mut count = 0usize;
    let mut prev = f64::NAN;
    let flush = |sum: f64, count: usize, out: &mut Vec<(f64, usize)>| {
        if count > 0 {
            let mean = sum / count as f64;
            out.push((if mean.abs() < tol { 0.0 } else { mean }, count));
        }
    };
    for &v in &sorted {
        if count > 0 && v - prev > tol * v.abs().max(1.0) {
            flush(sum, count, &mut out);
            sum = 0.0;
            count = 0;
        }
        sum += v;
        count += 1;
        prev = v;
    }
    flush(sum, count, &mut out);
    out
}

/// Round sphere of the given radius: `l(l+1)/r²` with multiplicity `2l+1`.
pub fn sphere_spectrum(radius: f64, cutoff: f64) -> Result<SpectrumTable> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::out_of_range("radius", radius, "(0, inf)"));
    }
    if !(cutoff >= 0.0) {
        return Err(Error::out_of_range("cutoff", cutoff, "[0, inf)"));
    }
    let mut entries = Vec::new();
    for l in 0u64.. {
        let nu = (l * (l + 1)) as f64 / (radius * radius);
        if nu > cutoff {
            break;
        }
        entries.push(SpectrumEntry { eigenvalue: nu, multiplicity: 2 * l as usize + 1, component: 0 });
    }
    Ok(SpectrumTable { entries, cutoff })
}

/// Flat torus `R² / L Z²`, the lattice generated by the columns of `lattice`.
///
/// Eigenvalues are `4π²|μ|²` for `μ` in the dual lattice `L^{-T} Z²`.
pub fn torus_spectrum(lattice: [[f64; 2]; 2], cutoff: f64) -> Result<SpectrumTable> {
    let [[a, b], [c, d]] = lattice;
    let det = a * d - b * c;
    let scale = lattice.iter().flatten().map(|x| x * x).sum::<f64>();
    if !det.is_finite() || det.abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::SingularLattice(det));
    }
    if !(cutoff >= 0.0) {
        return Err(Error::out_of_range("cutoff", cutoff, "[0, inf)"));
    }
    // Dual basis: columns of L^{-T}.
    let dual = [[d / det, -c / det], [-b / det, a / det]];
    // |L^{-T} p| >= |p| / sigma_max(L), and sigma_max <= Frobenius norm.
    let reach = (cutoff.sqrt() * scale.sqrt() / (2.0 * PI)).ceil() as i64 + 1;
    let mut values = Vec::new();
    for p in -reach..=reach {
        for q in -reach..=reach {
            let x = dual[0][0] * p as f64 + dual[0][1] * q as f64;
            let y = dual[1][0] * p as f64 + dual[1][1] * q as f64;
            let nu = 4.0 * PI * PI * (x * x + y * y);
            if nu <= cutoff * (1.0 + 1e-12) {
                values.push(nu);
            }
        }
    }
    Ok(SpectrumTable::from_values(&values, ANALYTIC_CLUSTER_TOL, cutoff, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cluster_groups_and_snaps() {
        let c = cluster(&[2.0 + 1e-9, 1e-12, 2.0, 6.0, -1e-13, 2.0 - 1e-9], 1e-6);
        assert_eq!(c.len(), 3);
        assert_eq!(c[0], (0.0, 2));
        assert_eq!(c[1].1, 3);
        assert!((c[1].0 - 2.0).abs() < 1e-12);
        assert_eq!(c[2], (6.0, 1));
    }

    #[test]
    fn unit_sphere_levels() {
        let t = sphere_spectrum(1.0, 20.0).unwrap();
        let got: Vec<_> = t.entries.iter().map(|e| (e.eigenvalue, e.multiplicity)).collect();
        assert_eq!(got, vec![(0.0, 1), (2.0, 3), (6.0, 5), (12.0, 7), (20.0, 9)]);
        assert_eq!(sphere_spectrum(2.0, 1.0).unwrap().first_nonzero(), Some(0.5));
    }

    #[test]
    fn singular_lattice_rejected() {
        assert!(matches!(torus_spectrum([[1.0, 2.0], [2.0, 4.0]], 5.0), Err(Error::SingularLattice(_))));
    }

    #[test]
    fn csv_header() {
        let t = sphere_spectrum(1.0, 2.0).unwrap();
        assert_eq!(t.to_csv(), "component,eigenvalue,multiplicity\n0,0,1\n0,2,3\n");
    }
}
