use std::path::{Path, PathBuf};

use monopole_vdim::boundary::{BoundarySurface, SurfaceComponent};
use serde::Deserialize;

pub const SCHEMA: &str = "monopole-vdim/1";

/// Problems with the configuration file, all reported as input errors.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum MetricSpec {
    Sphere { radius: f64 },
    Torus { lattice: [[f64; 2]; 2] },
    Mesh { path: PathBuf },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    /// Optional for spheres and tori, where the metric fixes it.
    #[serde(default)]
    pub genus: Option<usize>,
    pub charge: i64,
    pub metric: MetricSpec,
    #[serde(default = "one")]
    pub area_scale: f64,
}

fn one() -> f64 {
    1.0
}

fn default_root_cutoff() -> f64 {
    monopole_vdim::indicial::DEFAULT_ROOT_CUTOFF
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema: String,
    pub components: Vec<ComponentSpec>,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default = "default_root_cutoff")]
    pub root_cutoff: f64,
    #[serde(default)]
    pub ricci_nonnegative: bool,
    /// Prefix for files written next to the printed output.
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        let mut config = Self::parse(&text, &path.display().to_string())?;
        config.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(config)
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self, ConfigError> {
        let config: RunConfig = serde_json::from_str(text)
            .map_err(|e| ConfigError(format!("{origin}:{}:{}: {e}", e.line(), e.column())))?;
        if config.schema != SCHEMA {
            return Err(ConfigError(format!("{origin}: unsupported schema {:?}, expected {SCHEMA:?}", config.schema)));
        }
        if config.components.is_empty() {
            return Err(ConfigError(format!("{origin}: at least one boundary component is required")));
        }
        if !(config.root_cutoff >= 1.5 && config.root_cutoff.is_finite()) {
            return Err(ConfigError(format!("{origin}: root_cutoff must be at least 1.5, got {}", config.root_cutoff)));
        }
        if let Some(alpha) = config.alpha {
            if !alpha.is_finite() {
                return Err(ConfigError(format!("{origin}: alpha must be finite")));
            }
        }
        Ok(config)
    }

    /// Boundary surface with mesh paths resolved against the config directory.
    pub fn surface(&self) -> Result<BoundarySurface, ConfigError> {
        let mut components = Vec::with_capacity(self.components.len());
        for (i, spec) in self.components.iter().enumerate() {
            let component = match &spec.metric {
                MetricSpec::Sphere { radius } => {
                    let mut c = SurfaceComponent::sphere(*radius, spec.charge);
                    c.genus = spec.genus.unwrap_or(0);
                    c
                }
                MetricSpec::Torus { lattice } => {
                    let mut c = SurfaceComponent::torus(*lattice, spec.charge);
                    c.genus = spec.genus.unwrap_or(1);
                    c
                }
                MetricSpec::Mesh { path } => {
                    let genus = spec
                        .genus
                        .ok_or_else(|| ConfigError(format!("component {i}: mesh components must declare their genus")))?;
                    SurfaceComponent::mesh(self.base_dir.join(path), genus, spec.charge)
                }
            };
            components.push(component.with_area_scale(spec.area_scale));
        }
        BoundarySurface::new(components).map_err(|e| ConfigError(e.to_string()))
    }

    /// `<output>.<suffix>`, if an output prefix was configured.
    pub fn output_path(&self, suffix: &str) -> Option<PathBuf> {
        self.output.as_ref().map(|p| {
            let p = self.base_dir.join(p);
            let mut name = p.file_name().map(|s| s.to_os_string()).unwrap_or_default();
            name.push(format!(".{suffix}"));
            p.with_file_name(name)
        })
    }
}
