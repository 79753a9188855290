use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}x{expected}, found {found_rows}x{found_cols}")]
    DimensionMismatch {
        expected: usize,
        found_rows: usize,
        found_cols: usize,
    },

    #[error("fields live on different domains")]
    DomainMismatch,

    #[error("non-invertible zero mode")]
    NonInvertibleZeroMode,

    #[error("field is not mean-free")]
    NotMeanFree,

    #[error("{0} defined on torus only")]
    TorusOnly(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("blow-up or instability at t = {t:.6e} (CFL number {cfl:.3e})")]
    BlowUp { t: f64, cfl: f64 },

    #[error("CFL guard exceeded at t = {t:.6e}: CFL number {cfl:.3e} > {limit}")]
    CflExceeded { t: f64, cfl: f64, limit: f64 },

    #[error("A not invertible (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotInvertible { min_eigenvalue: f64 },

    #[error("operator is not symmetric positive semi-definite: {0}")]
    NotPsd(String),

    #[error("Picard iteration did not converge: relative change {change:.3e} after {iterations} iterations")]
    PicardDiverged { change: f64, iterations: usize },

    #[error("sweep aborted at alpha = {alpha}: {source}")]
    SweepRun {
        alpha: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("{}", format_config_errors(.0))]
    Config(Vec<crate::cli::ConfigError>),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of the numerics (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::BlowUp { .. }
            | Error::CflExceeded { .. }
            | Error::PicardDiverged { .. }
            | Error::NotInvertible { .. } => true,
            Error::SweepRun { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

fn format_config_errors(errors: &[crate::cli::ConfigError]) -> String {
    let lines: Vec<String> = errors.iter().map(|e| e.to_string()).collect();
    format!("invalid config:\n  {}", lines.join("\n  "))
}
