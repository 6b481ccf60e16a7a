use core::fmt;

/// Errors raised by the engine, the bundled methods and the cell grid.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A pairwise interaction of a particle with itself was requested.
    SelfInteraction { position: usize },
    /// A particle position outside the current particle tuple.
    IndexOutOfRange { position: usize, len: usize },
    /// `run` performed its step budget without reaching the stopping condition.
    StepLimitExceeded { limit: usize },
    /// Lennard-Jones acceleration or energy evaluated at zero separation.
    ZeroDistance,
    /// Real modulo with a zero modulus.
    ZeroModulus,
    /// Triangle `iota_k` is not listed among the neighbors of triangle
    /// `iota_j`, or the reverse.
    MalformedTopology { iota_j: usize, iota_k: usize },
    /// A leading-one column outside `1..=N` during back substitution.
    InvalidLeadingColumn { column: usize, dimension: usize },
    /// Cell-grid cut-off that is not positive and finite, or too large for
    /// the periodic domain.
    InvalidCutoff { cutoff: f64 },
    /// A position outside `[0, domain)` handed to a periodic cell grid.
    PositionOutOfDomain { position: usize, x: f64 },
    /// A method parameter or instance violates a load-time invariant.
    InvalidParameter {
        field: &'static str,
        reason: &'static str,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SelfInteraction { position } => {
                write!(f, "particle {position} cannot interact with itself")
            }
            Error::IndexOutOfRange { position, len } => {
                write!(f, "position {position} out of range for {len} particles")
            }
            Error::StepLimitExceeded { limit } => {
                write!(f, "stopping condition not reached within {limit} transitions")
            }
            Error::ZeroDistance => f.write_str("two particles coincide"),
            Error::ZeroModulus => f.write_str("modulo by zero"),
            Error::MalformedTopology { iota_j, iota_k } => write!(
                f,
                "triangles {iota_j} and {iota_k} do not list each other as neighbors"
            ),
            Error::InvalidLeadingColumn { column, dimension } => write!(
                f,
                "leading-one column {column} is outside 1..={dimension}"
            ),
            Error::InvalidCutoff { cutoff } => write!(f, "invalid cut-off radius {cutoff}"),
            Error::PositionOutOfDomain { position, x } => {
                write!(f, "particle {position} at x = {x} lies outside the periodic domain")
            }
            Error::InvalidParameter { field, reason } => write!(f, "{field}: {reason}"),
        }
    }
}

impl core::error::Error for Error {}
