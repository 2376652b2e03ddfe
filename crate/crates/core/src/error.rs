use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("element is not homogeneous (grades {grades:?})")]
    NotHomogeneous { grades: Vec<usize> },

    #[error("expected a grade-1 element, found grades {grades:?}")]
    NotCovector { grades: Vec<usize> },

    #[error("zero covector")]
    ZeroCovector,

    #[error("{name} = {value} out of range {range}")]
    OutOfRange {
        name: &'static str,
        value: String,
        range: String,
    },

    #[error("n odd required, got n = {0}")]
    EvenDimension(usize),

    #[error("identity violated on {basis}: {detail}")]
    IdentityViolation { basis: String, detail: String },

    #[error("invalid surface component: {0}")]
    InvalidComponent(String),

    #[error("singular torus lattice (det = {0})")]
    SingularLattice(f64),

    #[error("{path}:{line}:{col}: {msg}")]
    Parse {
        path: String,
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("boundary edge present ({0}, {1})")]
    BoundaryEdge(usize, usize),

    #[error("non-manifold edge ({0}, {1}) shared by {2} faces")]
    NonManifoldEdge(usize, usize, usize),

    #[error("non-manifold vertex {0}")]
    NonManifoldVertex(usize),

    #[error("faces {0} and {1} have inconsistent orientation")]
    InconsistentOrientation(usize, usize),

    #[error("vertex {0} is not referenced by any face")]
    UnreferencedVertex(usize),

    #[error("degenerate triangle {index} (area {area:e})")]
    DegenerateTriangle { index: usize, area: f64 },

    #[error("eigensolver did not converge: {0}")]
    EigenSolver(String),

    #[error("spectrum cutoff {have} is below the required {need}")]
    InsufficientSpectrum { have: f64, need: f64 },

    #[error("alpha = {alpha} lies on the indicial root {root}")]
    AlphaAtRoot { alpha: f64, root: f64 },

    #[error("weight {alpha} is outside the resolved root range [-{resolved}, {resolved}]")]
    Unresolved { alpha: f64, resolved: f64 },

    #[error("defect profile is corrupt: {0}")]
    CorruptProfile(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn out_of_range(name: &'static str, value: impl std::fmt::Display, range: impl Into<String>) -> Self {
        Error::OutOfRange {
            name,
            value: value.to_string(),
            range: range.into(),
        }
    }
}
