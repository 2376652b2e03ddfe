use std::collections::BTreeMap;
use std::path::PathBuf;

use monopole_vdim::boundary::{
    betti, dec_function_spectrum, dec_spectrum_up_to, load_mesh, parse_off, sphere_spectrum, torus_spectrum,
    BoundarySurface, Mesh, SpectrumTable, SurfaceComponent,
};
use monopole_vdim::Error;

fn mesh_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/meshes").join(name)
}

fn scaled_copy(mesh: &Mesh, s: f64) -> Mesh {
    let coords: Vec<f64> = (0..mesh.vertex_count()).flat_map(|v| mesh.vertex(v).iter().map(move |x| x * s)).collect();
    Mesh::new(mesh.dim(), coords, mesh.faces().to_vec()).unwrap()
}

fn flatten(table: &SpectrumTable) -> Vec<f64> {
    table.entries.iter().flat_map(|e| std::iter::repeat_n(e.eigenvalue, e.multiplicity)).collect()
}

#[test]
fn fixture_topology() {
    let cases = [
        ("icosphere_0.off", 2, 0, 1),
        ("icosphere_3.off", 2, 0, 1),
        ("torus_revolution.off", 0, 1, 1),
        ("flat_torus_2pi.off", 0, 1, 1),
        ("genus2.off", -2, 2, 1),
        ("two_spheres.off", 4, 0, 2),
    ];
    for (name, chi, genus, comps) in cases {
        let m = load_mesh(mesh_path(name)).unwrap();
        assert_eq!(m.euler_characteristic(), chi, "{name}");
        assert_eq!(m.genus(), genus, "{name}");
        assert_eq!(m.components().len(), comps, "{name}");
    }
}

#[test]
fn icosahedron_counts() {
    let m = load_mesh(mesh_path("icosphere_0.off")).unwrap();
    assert_eq!((m.vertex_count(), m.faces().len()), (12, 20));
}

#[test]
fn open_mesh_reports_boundary_edge() {
    let text = std::fs::read_to_string(mesh_path("icosphere_0.off")).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.pop();
    let joined = lines.join("\n").replacen("12 20 0", "12 19 0", 1);
    let err = parse_off(&joined, "open.off").unwrap_err();
    assert!(matches!(err, Error::BoundaryEdge(_, _)), "{err}");
    assert!(err.to_string().contains("boundary edge present"));
}

#[test]
fn bowtie_vertex_is_rejected() {
    // Two tetrahedra glued at a single vertex.
    let text = "OFF\n7 8 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n-1 0 0\n0 -1 0\n0 0 -1\n\
                3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n\
                3 0 4 5\n3 0 6 4\n3 0 5 6\n3 4 6 5\n";
    assert!(matches!(parse_off(text, "bowtie"), Err(Error::NonManifoldVertex(0))));
}

#[test]
fn unit_sphere_first_eigenvalues_on_level_four() {
    let m = load_mesh(mesh_path("icosphere_4.off")).unwrap();
    let t = dec_function_spectrum(&m, 13).unwrap();
    let values = flatten(&t);
    assert!(values.len() >= 13);
    let expected = [0.0, 2.0, 2.0, 2.0, 6.0, 6.0, 6.0, 6.0, 6.0, 12.0, 12.0, 12.0, 12.0];
    assert_eq!(values[0], 0.0);
    for (got, want) in values.iter().zip(expected).skip(1) {
        assert!((got - want).abs() <= 0.02 * want, "{got} vs {want}");
    }
    assert_eq!(t.entries[1].multiplicity, 3);
    assert_eq!(t.entries[2].multiplicity, 5);
}

#[test]
fn flat_torus_mesh_matches_fourier() {
    let m = load_mesh(mesh_path("flat_torus_2pi.off")).unwrap();
    let t = dec_function_spectrum(&m, 5).unwrap();
    assert_eq!(t.entries[0].eigenvalue, 0.0);
    let nu = t.first_nonzero().unwrap();
    assert!((nu - 1.0).abs() < 0.02, "{nu}");
}

#[test]
fn disjoint_spheres_have_two_zero_modes() {
    let m = load_mesh(mesh_path("two_spheres.off")).unwrap();
    let t = dec_function_spectrum(&m, 2).unwrap();
    assert_eq!(t.zero_multiplicity(), 2);
}

#[test]
fn weyl_law_at_thirtieth_eigenvalue() {
    let m = load_mesh(mesh_path("icosphere_3.off")).unwrap();
    let values = flatten(&dec_function_spectrum(&m, 30).unwrap());
    let lambda = values[29];
    let weyl = m.total_area() * lambda / (4.0 * std::f64::consts::PI);
    let counted = values.iter().filter(|&&v| v <= lambda).count() as f64;
    assert!((counted - weyl).abs() <= 0.25 * weyl, "N = {counted}, Weyl = {weyl}");
}

#[test]
fn mesh_scaling_law() {
    let m = load_mesh(mesh_path("icosphere_2.off")).unwrap();
    let base = dec_spectrum_up_to(&m, 25.0).unwrap();
    let big = dec_spectrum_up_to(&scaled_copy(&m, 2.0), 25.0 / 4.0).unwrap();
    assert_eq!(base.entries.len(), big.entries.len());
    for (a, b) in base.entries.iter().zip(&big.entries) {
        assert!((a.eigenvalue / 4.0 - b.eigenvalue).abs() <= 1e-9 * a.eigenvalue.max(1.0));
        assert_eq!(a.multiplicity, b.multiplicity);
    }
    // The radius-2 sphere: first nonzero eigenvalue near 1/2 on the mesh and exactly 1/2 analytically.
    let nu = big.first_nonzero().unwrap();
    assert!((nu - 0.5).abs() < 0.01 * 0.5 * 4.0);
    assert_eq!(sphere_spectrum(2.0, 1.0).unwrap().first_nonzero(), Some(0.5));
}

#[test]
fn area_scale_on_mesh_component() {
    let path = mesh_path("icosphere_2.off");
    let plain = SurfaceComponent::mesh(&path, 0, 1).spectrum(10.0, 0).unwrap();
    let scaled = SurfaceComponent::mesh(&path, 0, 1).with_area_scale(2.0).spectrum(5.0, 0).unwrap();
    assert_eq!(plain.entries.len(), scaled.entries.len());
    for (a, b) in plain.entries.iter().zip(&scaled.entries) {
        assert!((a.eigenvalue / 2.0 - b.eigenvalue).abs() < 1e-9 * a.eigenvalue.max(1.0));
    }
}

#[test]
fn mesh_component_genus_is_checked() {
    let c = SurfaceComponent::mesh(mesh_path("genus2.off"), 1, 0);
    assert!(matches!(c.spectrum(1.0, 0), Err(Error::InvalidComponent(_))));
    let two = SurfaceComponent::mesh(mesh_path("two_spheres.off"), 0, 0);
    assert!(two.spectrum(1.0, 0).is_err());
}

/// Brute-force count of integer pairs with `p² + q² = s`.
fn sum_of_two_squares_counts(max: i64) -> BTreeMap<i64, usize> {
    let mut counts = BTreeMap::new();
    for p in -max..=max {
        for q in -max..=max {
            let s = p * p + q * q;
            if s <= max {
                *counts.entry(s).or_insert(0) += 1;
            }
        }
    }
    counts
}

#[test]
fn square_torus_spectrum_matches_lattice_count() {
    let s = 2.0 * std::f64::consts::PI;
    let t = torus_spectrum([[s, 0.0], [0.0, s]], 30.0).unwrap();
    let oracle = sum_of_two_squares_counts(30);
    assert_eq!(t.entries.len(), oracle.len());
    for (e, (value, count)) in t.entries.iter().zip(oracle) {
        assert!((e.eigenvalue - value as f64).abs() < 1e-9);
        assert_eq!(e.multiplicity, count);
    }
    let head: Vec<_> = t.entries.iter().skip(1).take(4).map(|e| (e.eigenvalue.round() as i64, e.multiplicity)).collect();
    assert_eq!(head, vec![(1, 4), (2, 4), (4, 4), (5, 8)]);
}

#[test]
fn unit_torus_and_low_cutoff() {
    let t = torus_spectrum([[1.0, 0.0], [0.0, 1.0]], 50.0).unwrap();
    let four_pi2 = 4.0 * std::f64::consts::PI * std::f64::consts::PI;
    assert!((t.first_nonzero().unwrap() - four_pi2).abs() < 1e-9);
    let low = torus_spectrum([[1.0, 0.0], [0.0, 1.0]], 1.0).unwrap();
    assert_eq!(low.entries.len(), 1);
    assert_eq!((low.entries[0].eigenvalue, low.entries[0].multiplicity), (0.0, 1));
}

#[test]
fn skewed_torus_matches_brute_force() {
    // Hexagonal lattice: dual lattice squared norms are 4/3 (p² − pq + q²).
    let lattice = [[1.0, 0.5], [0.0, 3f64.sqrt() / 2.0]];
    let t = torus_spectrum(lattice, 200.0).unwrap();
    let c = 4.0 * std::f64::consts::PI.powi(2) * 4.0 / 3.0;
    let mut values = Vec::new();
    for p in -10i64..=10 {
        for q in -10i64..=10 {
            let nu = c * (p * p - p * q + q * q) as f64;
            if nu <= 200.0 {
                values.push(nu);
            }
        }
    }
    assert_eq!(flatten(&t).len(), values.len());
    assert_eq!(t.entries[1].multiplicity, 6);
    assert!((t.entries[1].eigenvalue - c).abs() < 1e-9);
}

#[test]
fn union_spectrum_is_sorted_merge() {
    let a = BoundarySurface::single(SurfaceComponent::sphere(1.0, 1)).unwrap();
    let b = BoundarySurface::single(SurfaceComponent::square_torus(0)).unwrap();
    let u = a.union(&b);
    assert_eq!(betti(&u), (2, 2, 2));
    let merged = u.spectrum(7.0).unwrap();
    let mut expect = flatten(&a.spectrum(7.0).unwrap());
    expect.extend(flatten(&b.spectrum(7.0).unwrap()));
    expect.sort_by(f64::total_cmp);
    assert_eq!(flatten(&merged), expect);
    assert!(merged.entries.windows(2).all(|w| w[0].eigenvalue <= w[1].eigenvalue));
    assert_eq!(merged.zero_multiplicity(), 2);
}
