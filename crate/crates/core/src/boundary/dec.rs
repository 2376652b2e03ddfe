//! Cotangent Laplacian on 0-forms with a lumped mass matrix.
//!
//! The generalized problem `L u = ν M u` is symmetrized to
//! `M^{-1/2} L M^{-1/2}` and handed to a dense self-adjoint eigensolver.
//! Weights come from edge lengths only, so the embedding dimension is irrelevant.

use faer::{Mat, Side};

use super::mesh::Mesh;
use super::spectrum::{SpectrumTable, MESH_CLUSTER_TOL};
use crate::{Error, Result};

/// Cotangent stiffness matrix (positive semidefinite) and lumped vertex masses.
pub fn assemble(mesh: &Mesh) -> (Mat<f64>, Vec<f64>) {
    let n = mesh.vertex_count();
    let mut stiffness = Mat::<f64>::zeros(n, n);
    let mut mass = vec![0.0; n];
    for (f, face) in mesh.faces().iter().enumerate() {
        let l = mesh.face_lengths(f);
        let area = mesh.face_area(f);
        for i in 0..3 {
            mass[face[i]] += area / 3.0;
            // Corner i faces the edge (j, k); its cotangent weights that edge.
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let cot = (l[j] * l[j] + l[k] * l[k] - l[i] * l[i]) / (4.0 * area);
            let w = 0.5 * cot;
            let (a, b) = (face[j], face[k]);
            stiffness[(a, b)] -= w;
            stiffness[(b, a)] -= w;
            stiffness[(a, a)] += w;
            stiffness[(b, b)] += w;
        }
    }
    (stiffness, mass)
}

/// Every eigenvalue of the discrete Laplacian, ascending.
pub fn eigenvalues(mesh: &Mesh) -> Result<Vec<f64>> {
    let (stiffness, mass) = assemble(mesh);
    let n = mass.len();
    let inv_sqrt: Vec<f64> = mass.iter().map(|m| 1.0 / m.sqrt()).collect();
    let sym = Mat::<f64>::from_fn(n, n, |i, j| stiffness[(i, j)] * inv_sqrt[i] * inv_sqrt[j]);
    let mut values = sym.selfadjoint_eigenvalues(Side::Lower);
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::EigenSolver(format!("eigensolver produced {bad}")));
    }
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// The smallest `count` eigenvalues, widened so the last cluster is complete.
pub fn dec_function_spectrum(mesh: &Mesh, count: usize) -> Result<SpectrumTable> {
    if count == 0 {
        return Err(Error::out_of_range("count", 0.0, "[1, inf)"));
    }
    let values = eigenvalues(mesh)?;
    let full = SpectrumTable::from_values(&values, MESH_CLUSTER_TOL, f64::INFINITY, 0);
    let mut taken = 0;
    let mut entries = Vec::new();
    for e in full.entries {
        if taken >= count {
            break;
        }
        taken += e.multiplicity;
        entries.push(e);
    }
    let cutoff = entries.last().map_or(0.0, |e| e.eigenvalue);
    Ok(SpectrumTable { entries, cutoff })
}

/// All eigenvalues up to `cutoff`.
pub fn dec_spectrum_up_to(mesh: &Mesh, cutoff: f64) -> Result<SpectrumTable> {
    let values = eigenvalues(mesh)?;
    Ok(SpectrumTable::from_values(&values, MESH_CLUSTER_TOL, cutoff, 0).truncated(cutoff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::mesh::parse_off;

    #[test]
    fn stiffness_rows_sum_to_zero() {
        let tetra = "OFF\n4 4 6\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n";
        let mesh = parse_off(tetra, "t").unwrap();
        let (l, m) = assemble(&mesh);
        for i in 0..4 {
            let row: f64 = (0..4).map(|j| l[(i, j)]).sum();
            assert!(row.abs() < 1e-12);
        }
        assert!((m.iter().sum::<f64>() - mesh.total_area()).abs() < 1e-12);
        let spec = dec_function_spectrum(&mesh, 1).unwrap();
        assert_eq!(spec.entries[0].eigenvalue, 0.0);
        assert_eq!(spec.entries[0].multiplicity, 1);
    }
}
