use thiserror::Error;

/// Everything that can go wrong across the pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero radicand")]
    ZeroRadicand,
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements live in different towers")]
    TowerMismatch,
    #[error("tower is not Galois over Q: conjugate radicand at step {step} has no square root")]
    NotGalois { step: usize },
    #[error("radicand at step {step} is already a square")]
    SquareRadicand { step: usize },
    #[error("invalid projective point (0:0)")]
    ZeroPoint,
    #[error("singular matrix")]
    SingularMobius,
    #[error("repeated points in triple")]
    RepeatedPoints,
    #[error("order requires a root of unity outside the supported list")]
    UnsupportedCyclotomy,
    #[error("divisor degree {0} is below 3")]
    DegreeTooSmall(usize),
    #[error("divisor has repeated points")]
    NotReduced,
    #[error("unrecognized finite subgroup of PGL2 with element orders {0:?}")]
    UnrecognizedGroup(Vec<u32>),
    #[error("automorphism group is not cyclic")]
    NonCyclicAut,
    #[error("unsupported automorphism group for the quaternion decomposition (order {0})")]
    UnsupportedAut(usize),
    #[error("Galois group of the tower is not elementary abelian over rational radicands")]
    NonElementaryGaloisQuotient,
    #[error("descent failure: {0}")]
    DescentFailure(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("singular quadratic form")]
    SingularForm,
    #[error("integer {0} exceeds the factoring bound")]
    FactorizationTooLarge(String),
    #[error("point search exhausted although the form is locally solvable everywhere")]
    SearchExhausted,
    #[error("point is not on the conic")]
    PointNotOnConic,
    #[error("line is tangent to the conic")]
    TangentLine,
    #[error("quaternion symbol ({0},{1}) is split over Q")]
    SplitSymbol(i64, i64),
    #[error("bad degree {0}: need an even integer >= 8")]
    BadDegree(usize),
    #[error("retries exhausted after {0} attempts")]
    RetriesExhausted(usize),
    #[error("element is not an involution")]
    NotAnInvolution,
    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),
    #[error("genus too small: branch degree {0}")]
    GenusTooSmall(usize),
    #[error("model construction failed: {0}")]
    ModelConstructionFailed(String),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
}

impl Error {
    /// Stable machine-readable code used by the JSON reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroRadicand => "zero_radicand",
            Error::DivisionByZero => "division_by_zero",
            Error::TowerMismatch => "tower_mismatch",
            Error::NotGalois { .. } => "not_galois",
            Error::SquareRadicand { .. } => "square_radicand",
            Error::ZeroPoint => "zero_point",
            Error::SingularMobius => "singular_mobius",
            Error::RepeatedPoints => "repeated_points",
            Error::UnsupportedCyclotomy => "unsupported_cyclotomy",
            Error::DegreeTooSmall(_) => "degree_too_small",
            Error::NotReduced => "not_reduced",
            Error::UnrecognizedGroup(_) => "unrecognized_group",
            Error::NonCyclicAut => "non_cyclic_aut",
            Error::UnsupportedAut(_) => "unsupported_aut",
            Error::NonElementaryGaloisQuotient => "non_elementary_galois_quotient",
            Error::DescentFailure(_) => "descent_failure",
            Error::InternalInconsistency(_) => "internal_inconsistency",
            Error::SingularForm => "singular_form",
            Error::FactorizationTooLarge(_) => "factorization_too_large",
            Error::SearchExhausted => "search_exhausted",
            Error::PointNotOnConic => "point_not_on_conic",
            Error::TangentLine => "tangent_line",
            Error::SplitSymbol(..) => "split_symbol",
            Error::BadDegree(_) => "bad_degree",
            Error::RetriesExhausted(_) => "retries_exhausted",
            Error::NotAnInvolution => "not_an_involution",
            Error::HypothesesNotMet(_) => "hypotheses_not_met",
            Error::GenusTooSmall(_) => "genus_too_small",
            Error::ModelConstructionFailed(_) => "model_construction_failed",
            Error::Schema { .. } => "schema",
        }
    }

    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::InternalInconsistency(_)
                | Error::DescentFailure(_)
                | Error::UnrecognizedGroup(_)
                | Error::SearchExhausted
        )
    }

    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema { path: path.into(), message: message.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
