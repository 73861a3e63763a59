use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("singular lattice")]
    SingularLattice,
    #[error("lattice not even")]
    NotEven,
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("matrix is not in SL2(Z): {0:?}")]
    NotUnimodular([i64; 4]),
    #[error("unknown series name: {0}")]
    UnknownSeries(String),
    #[error("H undefined at 0")]
    HAtZero,
    #[error("H undefined for w > 0 and non-integral weight {0}")]
    HBranch(f64),
    #[error("weight or representation mismatch: {0}")]
    Mismatch(String),
    #[error("inconsistent multiplier system, residual {0:e}")]
    Multiplier(f64),
    #[error("operator requires q = 2, got q = {0}")]
    NeedQ2(usize),
    #[error("signature ({0},{1}) out of range")]
    SignatureRange(usize, usize),
    #[error("not an isometry, residual {0:e}")]
    NotIsometry(f64),
    #[error("point must lie in the upper half plane")]
    NotInH,
    #[error("tolerance {0:e} needs a radius beyond the cap")]
    ToleranceTooSmall(f64),
    #[error("point within {distance:e} of the singular locus ({count} vectors)")]
    NearSingular { distance: f64, count: usize },
    #[error("input violates a(-h,n) = (-1)^q a(h,n)")]
    Symmetry,
    #[error("path crosses {0} walls, expected exactly one")]
    Walls(usize),
    #[error("finite difference step {0:e} too small for tolerance")]
    Step(f64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// A stable machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SingularLattice => "singular_lattice",
            Error::NotEven => "not_even",
            Error::InvalidLattice(_) => "invalid_lattice",
            Error::NotUnimodular(_) => "not_unimodular",
            Error::UnknownSeries(_) => "unknown_series",
            Error::HAtZero => "h_at_zero",
            Error::HBranch(_) => "h_branch",
            Error::Mismatch(_) => "mismatch",
            Error::Multiplier(_) => "multiplier",
            Error::NeedQ2(_) => "need_q2",
            Error::SignatureRange(..) => "signature_range",
            Error::NotIsometry(_) => "not_isometry",
            Error::NotInH => "not_in_h",
            Error::ToleranceTooSmall(_) => "tolerance_too_small",
            Error::NearSingular { .. } => "near_singular",
            Error::Symmetry => "symmetry",
            Error::Walls(_) => "walls",
            Error::Step(_) => "step",
            Error::Parse(_) => "parse",
        }
    }
}
