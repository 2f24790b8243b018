use thiserror::Error;

/// Errors raised by the geometric and algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("all homogeneous coordinates are zero")]
    ZeroVector,
    #[error("coincident elements")]
    Coincident,
    #[error("not collinear")]
    NotCollinear,
    #[error("not concurrent")]
    NotConcurrent,
    #[error("point at infinity")]
    PointAtInfinity,
    #[error("infinity line has no direction")]
    NoDirection,
    #[error("underdetermined: {0}")]
    Underdetermined(String),
    #[error("singular point of conic")]
    SingularPoint,
    #[error("degenerate conic")]
    DegenerateConic,
    #[error("nondegenerate conic")]
    Nondegenerate,
    #[error("line on conic")]
    LineOnConic,
    #[error("identical conics")]
    IdenticalConics,
    #[error("point not on conic")]
    PointNotOnConic,
    #[error("three collinear vertices: {0}")]
    CollinearVertices(String),
    #[error("duplicate vertex: {0}")]
    DuplicateVertex(String),
    #[error("non-generic configuration: {0}")]
    NonGeneric(String),
    #[error("base point: every member passes through it")]
    BasePoint,
    #[error("degenerate restriction")]
    DegenerateRestriction,
    #[error("identity involution")]
    IdentityInvolution,
    #[error("transversal is a fundamental side")]
    FundamentalTransversal,
    #[error("conic not through fundamental triangle")]
    NotThroughFundamental,
    #[error("indeterminate at fundamental vertex")]
    IndeterminateVertex,
    #[error("fundamental side blows down to a point")]
    SideBlowsDown,
    #[error("fundamental side is a component")]
    FundamentalComponent,
    #[error("coincident double points")]
    CoincidentDoublePoints,
    #[error("degenerate family: {0}")]
    DegenerateFamily(String),
    #[error("unexpected residual degree {degree}; stripped: {stripped:?}")]
    ResidualDegree { degree: usize, stripped: Vec<String> },
    #[error("implicitization degree mismatch: {0}")]
    ImplicitizationDegree(String),
    #[error("undecidable at precision {0} bits")]
    Undecidable(u32),
    #[error("division by an interval containing zero")]
    IntervalDivision,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("not homogeneous of degree {0}")]
    NotHomogeneous(usize),
    #[error("three concurrent lines")]
    ConcurrentLines,
    #[error("no ellipse members")]
    NoEllipseMembers,
    #[error("no interior critical point")]
    NoCriticalPoint,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
