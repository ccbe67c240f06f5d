use thiserror::Error;

/// Errors surfaced by the library. Every variant carries a stable
/// machine-readable code (see [`Error::code`]) used by the CLI reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },

    #[error("expected {expected} values, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("polynomial has non-integer coefficients")]
    NotIntegral,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("polynomial is zero")]
    ZeroPolynomial,

    #[error("both inputs have degree 0 in the eliminated variable")]
    BothDegreeZero,

    #[error("inputs are not coprime (resultant vanishes)")]
    NotCoprime,

    #[error("h1, h2, h3 share a nonconstant common factor")]
    NotCoprimeTriple,

    #[error("point {0} does not lie on the curve")]
    NotOnCurve(String),

    #[error("no rational point of height <= {height_bound} (not a proof of non-existence)")]
    NotFound { height_bound: u64 },

    #[error("pencil construction degenerated after {retries} basis completions")]
    DegenerateDirection { retries: usize },

    #[error("singular point search left unresolved candidates: {0}")]
    UnresolvedCandidates(String),

    #[error("form is reducible over Q: linear factor {0}")]
    Reducible(String),

    #[error("form is not absolutely irreducible: {0}")]
    NotAbsolutelyIrreducible(String),

    #[error("irreducibility of a degree {0} form is not checked; pass --assume-irreducible")]
    IrreducibilityUnchecked(u32),

    #[error("parametrization rejected ({code}): {detail}")]
    InvalidParametrization { code: &'static str, detail: String },

    #[error("a parametrization must be supplied for degree {0}")]
    ParametrizationRequired(u32),

    #[error("modulus {d} exceeds the limit {limit}")]
    ModulusTooLarge { d: u64, limit: u64 },

    #[error("box of half-width {bound} needs {evaluations} evaluations, budget is {budget}")]
    BoxTooLarge {
        bound: i64,
        evaluations: u128,
        budget: u128,
    },

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("{0}")]
    Precondition(String),

    #[error("identity check failed: {0}")]
    IdentityFailed(String),

    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable '{name}' at {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("negative exponent at {position}")]
    NegativeExponent { position: usize },

    #[error("division by zero or by a non-constant at {position}")]
    BadDivision { position: usize },
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::VariableMismatch { .. } => "variable_mismatch",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::NotIntegral => "not_integral",
            Error::NotHomogeneous => "not_homogeneous",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::BothDegreeZero => "both_degree_zero",
            Error::NotCoprime => "not_coprime",
            Error::NotCoprimeTriple => "not_coprime_triple",
            Error::NotOnCurve(_) => "not_on_curve",
            Error::NotFound { .. } => "not_found",
            Error::DegenerateDirection { .. } => "degenerate_direction",
            Error::UnresolvedCandidates(_) => "unresolved_candidates",
            Error::Reducible(_) => "reducible",
            Error::NotAbsolutelyIrreducible(_) => "not_absolutely_irreducible",
            Error::IrreducibilityUnchecked(_) => "irreducibility_unchecked",
            Error::InvalidParametrization { code, .. } => code,
            Error::ParametrizationRequired(_) => "parametrization_required",
            Error::ModulusTooLarge { .. } => "modulus_too_large",
            Error::BoxTooLarge { .. } => "box_too_large",
            Error::Overflow(_) => "overflow",
            Error::Precondition(_) => "precondition",
            Error::IdentityFailed(_) => "identity_failed",
            Error::Syntax { .. } => "syntax_error",
            Error::UnknownVariable { .. } => "unknown_variable",
            Error::NegativeExponent { .. } => "negative_exponent",
            Error::BadDivision { .. } => "bad_division",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
