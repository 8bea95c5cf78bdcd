use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A single law violation found while validating a finite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CategoryViolation {
    DuplicateId(String),
    UnknownObject { arrow: String, object: String },
    MissingIdentity { object: String },
    BadIdentity { object: String, arrow: String },
    UnknownArrow { context: String, arrow: String },
    /// A composable pair `(g, f)` has no entry in the composition table.
    CompositionGap { g: String, f: String },
    /// An entry for a pair with `tgt(f) != src(g)`.
    NotComposable { g: String, f: String },
    ConflictingComposite { g: String, f: String, first: String, second: String },
    CompositeEndpoints { g: String, f: String, result: String },
    IdentityLaw { identity: String, arrow: String, got: String },
    NonAssociative { h: String, g: String, f: String, left: String, right: String },
}

impl fmt::Display for CategoryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CategoryViolation::*;
        match self {
            DuplicateId(id) => write!(f, "duplicate id `{id}`"),
            UnknownObject { arrow, object } => {
                write!(f, "arrow `{arrow}` mentions unknown object `{object}`")
            }
            MissingIdentity { object } => write!(f, "object `{object}` has no identity"),
            BadIdentity { object, arrow } => {
                write!(f, "identity `{arrow}` of `{object}` is not an endo-arrow on it")
            }
            UnknownArrow { context, arrow } => write!(f, "{context}: unknown arrow `{arrow}`"),
            CompositionGap { g, f: ff } => write!(f, "composition gap: `{g}` after `{ff}`"),
            NotComposable { g, f: ff } => {
                write!(f, "entry for non-composable pair `{g}` after `{ff}`")
            }
            ConflictingComposite { g, f: ff, first, second } => write!(
                f,
                "`{g}` after `{ff}` given twice (`{first}` and `{second}`)"
            ),
            CompositeEndpoints { g, f: ff, result } => write!(
                f,
                "`{g}` after `{ff}` = `{result}` has the wrong source or target"
            ),
            IdentityLaw { identity, arrow, got } => write!(
                f,
                "identity law fails for `{identity}` and `{arrow}` (got `{got}`)"
            ),
            NonAssociative { h, g, f: ff, left, right } => write!(
                f,
                "non-associative triple h=`{h}`, g=`{g}`, f=`{ff}`: `{left}` vs `{right}`"
            ),
        }
    }
}

fn join_lines<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("invalid category: {}", join_lines(.0))]
    InvalidCategory(Vec<CategoryViolation>),

    #[error("functor law violated: {}", join_lines(.0))]
    FunctorLaw(Vec<String>),

    #[error("no limit: {0}")]
    NoLimit(String),

    #[error("not a cone: {0}")]
    NotACone(String),

    #[error("not a limiting cone: {0}")]
    NotLimiting(String),

    #[error("not a wedge: condition fails at arrow `{0}`")]
    NotAWedge(String),

    #[error("no initial object")]
    NoInitial,

    #[error("missing limit: no equalizer of `{0}` and `{1}`")]
    MissingLimit(String, String),

    #[error("`{0}` is not weakly initial")]
    NotWeaklyInitial(String),

    #[error("not a lattice: {0}")]
    NotALattice(String),

    #[error("tensor not monotone: {0}")]
    TensorNotMonotone(String),

    #[error("no residuation: {0}")]
    NoResiduation(String),

    #[error("invalid quantale: {0}")]
    InvalidQuantale(String),

    #[error("workspace blowup: requested {requested} elements, cap is {cap}")]
    WorkspaceBlowup { requested: u128, cap: usize },

    #[error("ambient category does not enumerate its objects")]
    NonEnumerableAmbient,

    #[error("not natural: {0}")]
    NotNatural(String),

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("wedge failure: {0}")]
    WedgeFailure(String),

    #[error("cocone failure: {0}")]
    CoconeFailure(String),

    #[error("mediation failure: {0}")]
    MediationFailure(String),

    #[error("monomorphism certificate failure: {0}")]
    MonoCertificateFailure(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("search exceeded {0} candidates")]
    SearchBlowup(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn mismatch(msg: impl Into<String>) -> Self {
        Error::TypeMismatch(msg.into())
    }
}
