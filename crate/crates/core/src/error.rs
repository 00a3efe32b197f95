use crate::exactalg::parse::ParseError;

/// Domain errors. Each variant has a stable machine-readable code.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("the point is a base point of the map")]
    BasePoint,
    #[error("the point is a base point of the conic fibration")]
    BasePointOfFibration,
    #[error("collinearity violation: {0}")]
    CollinearityViolation(String),
    #[error("the six points lie on a conic")]
    OnConic,
    #[error("the quintic net has dimension {0}, expected 3")]
    NetDegenerate(usize),
    #[error("a base point is not defined over Q(i)")]
    NonQiBasePoint,
    #[error("base point tower deeper than the first neighbourhood: {0}")]
    DeepTower(String),
    #[error("the double point is infinitely near; a special quintic is needed")]
    NeedsSpecialQuintic,
    #[error("the conic is not a member of the pencil")]
    NotInPencil,
    #[error("the pencil value is real")]
    RealPencilValue,
    #[error("the vector is isotropic")]
    IsotropicVector,
    #[error("degenerate position: {0}")]
    DegeneratePosition(String),
    #[error("the curve is contracted by the map")]
    ContractedCurve,
    #[error("the constraints cut out a space of dimension {0}, expected 1")]
    DegenerateConstraints(usize),
    #[error("two of the points are complex conjugate or equal")]
    ConjugatePair,
    #[error("the matrix is singular")]
    SingularMatrix,
    #[error("the conic is reducible")]
    ReducibleConic,
    #[error("the polynomial has an irreducible factor of degree above two")]
    UnfactorableFactor,
    #[error("no Noether witness exists")]
    NoWitness,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("the inverse of the map is unknown")]
    MissingInverse,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::BasePoint => "BasePoint",
            Error::BasePointOfFibration => "BasePointOfFibration",
            Error::CollinearityViolation(_) => "CollinearityViolation",
            Error::OnConic => "OnConic",
            Error::NetDegenerate(_) => "NetDegenerate",
            Error::NonQiBasePoint => "NonQiBasePoint",
            Error::DeepTower(_) => "DeepTower",
            Error::NeedsSpecialQuintic => "NeedsSpecialQuintic",
            Error::NotInPencil => "NotInPencil",
            Error::RealPencilValue => "RealPencilValue",
            Error::IsotropicVector => "IsotropicVector",
            Error::DegeneratePosition(_) => "DegeneratePosition",
            Error::ContractedCurve => "ContractedCurve",
            Error::DegenerateConstraints(_) => "DegenerateConstraints",
            Error::ConjugatePair => "ConjugatePair",
            Error::SingularMatrix => "SingularMatrix",
            Error::ReducibleConic => "ReducibleConic",
            Error::UnfactorableFactor => "UnfactorableFactor",
            Error::NoWitness => "NoWitness",
            Error::Precondition(_) => "Precondition",
            Error::MissingInverse => "MissingInverse",
            Error::Inconsistent(_) => "Inconsistent",
            Error::Parse(_) => "Parse",
        }
    }
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e.0)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
