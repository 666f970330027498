use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("Jacobian colength did not stabilize below degree {0}")]
    DegreeBoundExceeded(u32),
    #[error("not a germ: f(0,0) = {0} is nonzero")]
    NotAGerm(String),
    #[error("not a germ: the polynomial is zero")]
    ZeroGerm,
    #[error("resolution needs a blowup at a non-rational point (defined by {0})")]
    IrrationalCenter(String),
    #[error("blowup center {0} is not a rational point on the divisor")]
    NonRationalCenter(String),
    #[error("resolution did not terminate after {0} blowups")]
    ResolutionDiverged(usize),
    #[error("stratum has no presentation in chart {0}")]
    NoPresentation(usize),
    #[error("unsupported formula shape: {0}")]
    UnsupportedShape(String),
    #[error("unit vanishes on the stratum: {0}")]
    UnitVanishesOnStratum(String),
    #[error("grid degeneracy: {0}")]
    GridDegeneracy(String),
    #[error("singular point at the origin is not isolated")]
    NotIsolated,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable taxonomy name used in CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownVariable { .. } => "UnknownVariable",
            Error::DegreeBoundExceeded(_) => "DegreeBoundExceeded",
            Error::NotAGerm(_) | Error::ZeroGerm => "NotAGerm",
            Error::IrrationalCenter(_) => "IrrationalCenter",
            Error::NonRationalCenter(_) => "NonRationalCenter",
            Error::ResolutionDiverged(_) => "ResolutionDiverged",
            Error::NoPresentation(_) => "NoPresentation",
            Error::UnsupportedShape(_) => "UnsupportedShape",
            Error::UnitVanishesOnStratum(_) => "UnitVanishesOnStratum",
            Error::GridDegeneracy(_) => "GridDegeneracy",
            Error::NotIsolated => "NotIsolated",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// Errors that describe an unsupported or degenerate germ rather than a bug
    /// or a malformed request.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::IrrationalCenter(_)
                | Error::NotIsolated
                | Error::NotAGerm(_)
                | Error::ZeroGerm
                | Error::NonRationalCenter(_)
                | Error::UnitVanishesOnStratum(_)
                | Error::DegreeBoundExceeded(_)
                | Error::ResolutionDiverged(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
