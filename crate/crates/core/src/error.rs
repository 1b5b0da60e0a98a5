use std::path::PathBuf;

use crate::fundforms::CurveState;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("step size must be positive and finite, got {0}")]
    InvalidStep(f64),

    /// The zero-Gaussian-curvature field has no solution where γ is parallel to γ'.
    #[error("singular locus y cosθ - x sinθ = 0 reached{} (x = {x}, y = {y}, theta = {theta})",
        t.map(|t| format!(" at t = {t}")).unwrap_or_default(),
        x = state.x, y = state.y, theta = state.theta)]
    Singular { t: Option<f64>, state: CurveState },

    #[error("degenerate first fundamental form (EG - F^2 = {0})")]
    DegenerateForm(f64),

    #[error("first integral has a pole at theta = {0} (cos theta = 0)")]
    Pole(f64),

    #[error("t = {t} lies outside the maximal interval of definition")]
    Domain { t: f64 },

    #[error("usage: {0}")]
    Usage(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
