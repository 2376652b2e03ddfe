use std::path::PathBuf;

use monopole_vdim::boundary::{betti, BoundarySurface, SurfaceComponent};
use monopole_vdim::index::{
    epsilon0, index_jump, leading_asymptotics, topological_index, vdim, vdim_with, volume_scaling_advisory,
    DefectProfile, VdimOptions,
};
use monopole_vdim::indicial::{nullspace_oracle, BoundarySpectra};
use monopole_vdim::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sphere(k: i64) -> BoundarySurface {
    BoundarySurface::single(SurfaceComponent::sphere(1.0, k)).unwrap()
}

fn torus(k: i64) -> BoundarySurface {
    BoundarySurface::single(SurfaceComponent::square_torus(k)).unwrap()
}

fn genus2(k: i64) -> BoundarySurface {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/meshes/genus2.off");
    BoundarySurface::single(SurfaceComponent::mesh(path, 2, k)).unwrap()
}

fn profile(surface: &BoundarySurface) -> DefectProfile {
    let data = BoundarySpectra::compute(surface, 2.5).unwrap();
    DefectProfile::from_roots(&data.bspec(2.5).unwrap(), 2.5).unwrap()
}

fn report(surface: &BoundarySurface, alpha: f64) -> monopole_vdim::index::VdimReport {
    vdim(surface, alpha, &VdimOptions::default()).unwrap()
}

#[test]
fn topological_index_is_four_times_charge() {
    assert_eq!(topological_index(&sphere(1)), 4);
    assert_eq!(topological_index(&sphere(0)), 0);
    let two = BoundarySurface::new(vec![SurfaceComponent::sphere(1.0, 2), SurfaceComponent::sphere(1.0, 3)]).unwrap();
    assert_eq!(topological_index(&two), 20);
}

#[test]
fn euclidean_benchmark() {
    assert_eq!(profile(&sphere(1)).defect(0.5).unwrap(), 0);
    for k in 1..=3 {
        for alpha in [-0.5, 0.5] {
            assert_eq!(report(&sphere(k), alpha).vdim, 4 * k);
        }
    }
}

#[test]
fn torus_values_near_zero() {
    let p = profile(&torus(1));
    assert_eq!(p.defect(-0.3).unwrap(), 1);
    assert_eq!(p.defect(0.3).unwrap(), -1);
    assert_eq!(report(&torus(1), -0.3).vdim, 5);
    assert_eq!(report(&torus(1), 0.3).vdim, 3);
    assert_eq!(index_jump(&p, -0.3, 0.3).unwrap(), 2);
}

#[test]
fn genus_two_just_below_zero() {
    let r = report(&genus2(1), -0.05);
    assert!(r.epsilon0 > 0.05);
    assert_eq!(r.vdim, 6);
    let p = profile(&genus2(1));
    assert_eq!(p.defect(-0.05).unwrap(), -p.defect(0.05).unwrap());
}

#[test]
fn jump_across_first_sphere_root_matches_oracle() {
    let p = profile(&sphere(1));
    let oracle = nullspace_oracle(&sphere(1), 1.0, 10.0).unwrap() as i64;
    assert_eq!(index_jump(&p, 0.5, 1.5).unwrap(), oracle);
    assert_eq!(index_jump(&p, 0.2, 0.8).unwrap(), 0);
}

#[test]
fn alpha_at_root_is_an_error() {
    assert!(matches!(vdim(&sphere(1), 1.0, &VdimOptions::default()), Err(Error::AlphaAtRoot { root, .. }) if root == 1.0));
    assert!(matches!(vdim(&torus(1), 0.0, &VdimOptions::default()), Err(Error::AlphaAtRoot { .. })));
}

#[test]
fn epsilon0_values() {
    let data = BoundarySpectra::compute(&sphere(1), 2.5).unwrap();
    assert_eq!(epsilon0(&data.bspec(2.5).unwrap(), 2.5).unwrap(), 1.0);
    let t = report(&torus(1), 0.1);
    assert!((t.epsilon0 - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-9);
    // Radius 2: ν_min = 1/2 gives a root at −1/2 + √(3)/2.
    let big = BoundarySurface::single(SurfaceComponent::sphere(2.0, 1)).unwrap();
    let e = report(&big, 0.1).epsilon0;
    assert!((e - (-0.5 + 0.75f64.sqrt())).abs() < 1e-12);
    assert!(e < 1.0);
}

#[test]
fn leading_orders() {
    let data = BoundarySpectra::compute(&sphere(1), 2.5).unwrap();
    let roots = data.bspec(2.5).unwrap();
    assert_eq!(leading_asymptotics(&roots, 0.5, 2.5).unwrap(), (2.0, 3.0));
    assert_eq!(leading_asymptotics(&roots, 1.5, 2.5).unwrap(), (3.0, 4.0));
    assert!(matches!(leading_asymptotics(&roots, 2.2, 2.5), Err(Error::Unresolved { .. })));
    let r = report(&torus(1), -0.3);
    assert_eq!((r.u0_order, r.u1_order), (1.0, 2.0));
}

#[test]
fn volume_scaling() {
    let s = volume_scaling_advisory(&BoundarySpectra::compute(&sphere(1), 2.5).unwrap()).unwrap();
    assert_eq!((s.nu_min, s.factor), (2.0, 1.0));
    let t = volume_scaling_advisory(&BoundarySpectra::compute(&torus(1), 2.5).unwrap()).unwrap();
    assert!((t.factor - 0.5).abs() < 1e-12);
    let scaled = BoundarySurface::single(SurfaceComponent::square_torus(1).with_area_scale(t.factor)).unwrap();
    assert!((report(&scaled, 0.5).epsilon0 - 1.0).abs() < 1e-9);
    let big = BoundarySurface::single(SurfaceComponent::sphere(2.0, 1)).unwrap();
    let b = volume_scaling_advisory(&BoundarySpectra::compute(&big, 2.5).unwrap()).unwrap();
    assert_eq!(b.factor, 0.25);
}

fn random_non_roots(p: &DefectProfile, rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut out = Vec::new();
    while out.len() < n {
        let a: f64 = rng.gen_range(-2.4..2.4);
        if p.jumps().iter().all(|(r, _)| (r - a).abs() > 1e-3) {
            out.push(a);
        }
    }
    out
}

#[test]
fn defect_properties_on_random_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let surfaces = [sphere(1), torus(2), genus2(1), sphere(1).union(&torus(1))];
    for surface in &surfaces {
        let data = BoundarySpectra::compute(surface, 2.5).unwrap();
        let p = DefectProfile::from_roots(&data.bspec(2.5).unwrap(), 2.5).unwrap();
        let kbar = surface.total_charge();
        let opts = VdimOptions::default();
        for a in random_non_roots(&p, &mut rng, 50) {
            assert_eq!(p.defect(-a).unwrap(), -p.defect(a).unwrap());
            let plus = vdim_with(surface, &data, a, &opts).unwrap().vdim;
            let minus = vdim_with(surface, &data, -a, &opts).unwrap().vdim;
            assert_eq!(plus + minus, 8 * kbar);
        }
        for &(r, j) in p.jumps() {
            if r.abs() < 2.4 {
                let eps = 1e-4;
                assert_eq!(p.defect(r - eps).unwrap() - p.defect(r + eps).unwrap(), j as i64);
            }
        }
        let e0 = epsilon0(&data.bspec(2.5).unwrap(), 2.5).unwrap();
        let below = vdim_with(surface, &data, -e0 / 2.0, &opts).unwrap().vdim;
        let above = vdim_with(surface, &data, e0 / 2.0, &opts).unwrap().vdim;
        assert_eq!((below - above) as usize, betti(surface).1);
    }
}

#[test]
fn sobolev_metadata_does_not_change_the_index() {
    let base = report(&torus(1), -0.3);
    for (beta, k) in [(-0.3, 1), (0.0, 4), (5.0, 2)] {
        let opts = VdimOptions { sobolev: Some((beta, k)), ..VdimOptions::default() };
        let r = vdim(&torus(1), -0.3, &opts).unwrap();
        assert_eq!((r.vdim, r.defect, r.topological_index), (base.vdim, base.defect, base.topological_index));
        assert!(r.advisories.last().unwrap().contains("beta"));
    }
}

#[test]
fn report_table_and_rounding() {
    let r = report(&torus(1), -0.3).rounded();
    assert_eq!(r.epsilon0, 0.618033988750);
    let table = r.to_table();
    assert!(table.contains("vdim               5"));
}
