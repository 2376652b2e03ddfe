use std::path::PathBuf;

use super::dec::dec_spectrum_up_to;
use super::mesh::{load_mesh, Mesh};
use super::spectrum::{sphere_spectrum, torus_spectrum, SpectrumTable};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Metric {
    RoundSphere { radius: f64 },
    /// Columns of `lattice` generate the period lattice.
    FlatTorus { lattice: [[f64; 2]; 2] },
    Mesh { path: PathBuf },
}

/// One connected component of the boundary at infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceComponent {
    pub genus: usize,
    /// First Chern number of the positive eigenline on this component.
    pub charge: i64,
    pub metric: Metric,
    /// The metric is multiplied by this factor, so eigenvalues are divided by it.
    pub area_scale: f64,
}

impl SurfaceComponent {
    pub fn sphere(radius: f64, charge: i64) -> Self {
        Self { genus: 0, charge, metric: Metric::RoundSphere { radius }, area_scale: 1.0 }
    }

    pub fn torus(lattice: [[f64; 2]; 2], charge: i64) -> Self {
        Self { genus: 1, charge, metric: Metric::FlatTorus { lattice }, area_scale: 1.0 }
    }

    /// The square torus of side `2π`.
    pub fn square_torus(charge: i64) -> Self {
        let s = 2.0 * std::f64::consts::PI;
        Self::torus([[s, 0.0], [0.0, s]], charge)
    }

    pub fn mesh(path: impl Into<PathBuf>, genus: usize, charge: i64) -> Self {
        Self { genus, charge, metric: Metric::Mesh { path: path.into() }, area_scale: 1.0 }
    }

    pub fn with_area_scale(mut self, c: f64) -> Self {
        self.area_scale = c;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.area_scale > 0.0 && self.area_scale.is_finite()) {
            return Err(Error::out_of_range("area_scale", self.area_scale, "(0, inf)"));
        }
        match &self.metric {
            Metric::RoundSphere { radius } => {
                if self.genus != 0 {
                    return Err(Error::InvalidComponent(format!("a round sphere has genus 0, not {}", self.genus)));
                }
                if !(*radius > 0.0 && radius.is_finite()) {
                    return Err(Error::out_of_range("radius", *radius, "(0, inf)"));
                }
            }
            Metric::FlatTorus { .. } if self.genus != 1 => {
                return Err(Error::InvalidComponent(format!("a flat torus has genus 1, not {}", self.genus)));
            }
            _ => {}
        }
        Ok(())
    }

    /// Loads the mesh of a mesh component and checks it against the declared genus.
    pub fn load_mesh(&self) -> Result<Option<Mesh>> {
        let Metric::Mesh { path } = &self.metric else {
            return Ok(None);
        };
        let mesh = load_mesh(path)?;
        if mesh.components().len() != 1 {
            return Err(Error::InvalidComponent(format!(
                "{} has {} connected components; list each as its own component",
                path.display(),
                mesh.components().len()
            )));
        }
        if mesh.genus() != self.genus as i64 {
            return Err(Error::InvalidComponent(format!(
                "{} has genus {}, but the component declares genus {}",
                path.display(),
                mesh.genus(),
                self.genus
            )));
        }
        Ok(Some(mesh))
    }

    /// Function spectrum of `Δ_h` up to `cutoff`, tagged with `id`.
    pub fn spectrum(&self, cutoff: f64, id: usize) -> Result<SpectrumTable> {
        self.validate()?;
        let c = self.area_scale;
        let table = match &self.metric {
            Metric::RoundSphere { radius } => sphere_spectrum(*radius, cutoff * c)?,
            Metric::FlatTorus { lattice } => torus_spectrum(*lattice, cutoff * c)?,
            Metric::Mesh { .. } => {
                let mesh = self.load_mesh()?.expect("mesh metric");
                dec_spectrum_up_to(&mesh, cutoff * c)?
            }
        };
        Ok(table.scaled(1.0 / c).with_component(id))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundarySurface {
    components: Vec<SurfaceComponent>,
}

impl BoundarySurface {
    pub fn new(components: Vec<SurfaceComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidComponent("the boundary needs at least one component".into()));
        }
        for c in &components {
            c.validate()?;
        }
        Ok(Self { components })
    }

    pub fn single(component: SurfaceComponent) -> Result<Self> {
        Self::new(vec![component])
    }

    pub fn components(&self) -> &[SurfaceComponent] {
        &self.components
    }

    /// Sum of the component charges.
    pub fn total_charge(&self) -> i64 {
        self.components.iter().map(|c| c.charge).sum()
    }

    /// Disjoint union.
    pub fn union(&self, other: &BoundarySurface) -> BoundarySurface {
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        BoundarySurface { components }
    }

    /// Per-component function spectra up to `cutoff`.
    pub fn spectra(&self, cutoff: f64) -> Result<Vec<SpectrumTable>> {
        self.components.iter().enumerate().map(|(i, c)| c.spectrum(cutoff, i)).collect()
    }

    /// All components merged into one table.
    pub fn spectrum(&self, cutoff: f64) -> Result<SpectrumTable> {
        Ok(SpectrumTable::merge(&self.spectra(cutoff)?))
    }
}

/// `(b⁰, b¹, b²)` of a closed oriented surface.
pub fn betti(surface: &BoundarySurface) -> (usize, usize, usize) {
    let b0 = surface.components.len();
    let b1 = surface.components.iter().map(|c| 2 * c.genus).sum();
    (b0, b1, b0)
}
