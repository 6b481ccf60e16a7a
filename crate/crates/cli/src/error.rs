use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown method `{0}` (expected one of dem_collision, pse_diffusion, lj_md, triangulation, gauss_elim)")]
    UnknownMethod(String),
    #[error("invalid `{field}`: {reason}")]
    InvariantViolation { field: String, reason: String },
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("{0}")]
    Usage(String),
    #[error("run failed: {0}")]
    Run(#[from] pm_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit status: 2 for problems with the input, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Run(_) | CliError::Io(_) => 1,
            _ => 2,
        }
    }

    pub(crate) fn invariant(e: pm_core::Error) -> Self {
        match e {
            pm_core::Error::InvalidParameter { field, reason } => CliError::InvariantViolation {
                field: field.to_string(),
                reason: reason.to_string(),
            },
            other => CliError::InvariantViolation { field: "particles".into(), reason: other.to_string() },
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}
