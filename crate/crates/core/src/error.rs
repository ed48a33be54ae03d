use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

/// Every failure names the offending object, morphism, cell or pair.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("unknown simplex `{0}`")]
    UnknownSimplex(String),
    #[error("composite {g} ∘ {f} is missing from the composition table")]
    MissingComposite { g: String, f: String },
    #[error("composite {g} ∘ {f} = {gf} has the wrong endpoints")]
    BadComposite { g: String, f: String, gf: String },
    #[error("conflicting composites for {g} ∘ {f}: `{first}` and `{second}`")]
    ConflictingComposite {
        g: String,
        f: String,
        first: String,
        second: String,
    },
    #[error("composition is not associative on ({h}, {g}, {f})")]
    NonAssociative { h: String, g: String, f: String },
    #[error("bad identity at object `{0}`")]
    BadIdentity(String),
    #[error("functor is invalid: {0}")]
    InvalidFunctor(String),
    #[error("natural transformation is invalid at `{0}`")]
    InvalidNatTrans(String),
    #[error("simplex `{cell}`: {reason}")]
    BadSimplex { cell: String, reason: String },
    #[error("simplicial identity d_{i} d_{j} = d_{} d_{i} fails on `{cell}`", j - 1)]
    SimplicialIdentity { cell: String, i: usize, j: usize },
    #[error("map is not simplicial on `{cell}` at face {face}")]
    NotSimplicial { cell: String, face: usize },
    #[error("maps do not share source and target")]
    SourceTargetMismatch,
    #[error("dimension cap {cap} exceeded (needed {needed})")]
    CapExceeded { needed: usize, cap: usize },
    #[error("category is not loop-free; an explicit dimension cap is required")]
    TruncationRequired,
    #[error("search budget of {0} nodes exceeded")]
    SearchBudgetExceeded(usize),
    #[error("index categories do not match: {0}")]
    IndexMismatch(String),
    #[error("functoriality fails on {0}")]
    NotFunctorial(String),
    #[error("naturality fails at morphism `{0}`")]
    NotNatural(String),
    #[error("map does not coequalize on `{0}`")]
    NotCoequalizing(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}
