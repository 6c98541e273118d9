//! Error type shared across the crate.
//!
//! Axiom checks report the *first* failing instance they find, and every
//! structural failure carries the offending elements by display name so a
//! report can be read without the carrier at hand.

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("carrier must be non-empty")]
    EmptyCarrier,

    #[error("duplicate element name {0:?}")]
    DuplicateName(String),

    #[error("{law} fails: not a partial order (witness {a:?}, {b:?}, {c:?})")]
    NotAPartialOrder {
        law: &'static str,
        a: String,
        b: String,
        c: String,
    },

    /// A finite subset without a least upper bound. An empty `elements`
    /// means the empty join (the bottom element) is missing.
    #[error("no least upper bound for {{{}}}", elements.join(", "))]
    MissingJoin { elements: Vec<String> },

    #[error("meet does not distribute over join (witness {a:?}, {b:?}, {c:?})")]
    DistributivityFailure { a: String, b: String, c: String },

    #[error("complement failure at {element:?}: {detail}")]
    ComplementFailure { element: String, detail: String },

    #[error("{law} fails for the tensor (witness {a:?}, {b:?}, {c:?})")]
    TensorAxiomFailure {
        law: &'static str,
        a: String,
        b: String,
        c: String,
    },

    #[error("expected a {expected:?} algebra, got {got:?}")]
    VarietyMismatch {
        expected: crate::algebra::Variety,
        got: crate::algebra::Variety,
    },

    #[error("operation {op} is not supported for variety {variety:?}")]
    UnsupportedVariety {
        op: &'static str,
        variety: crate::algebra::Variety,
    },

    #[error("map is not a homomorphism: {op} not preserved at ({a:?}, {b:?})")]
    NotAHomomorphism { op: &'static str, a: String, b: String },

    #[error("subset is not closed under {op}: {witness:?} escapes")]
    NotASubalgebra { op: &'static str, witness: String },

    #[error("budget exceeded in {what}: needed {needed}, cap {cap}")]
    BudgetExceeded {
        what: &'static str,
        needed: u64,
        cap: u64,
    },

    #[error("source and target disagree: {0}")]
    Mismatch(String),

    #[error("structure map is not a homomorphism into the function space: {detail}")]
    KappaNotHomomorphism { detail: String },

    #[error("map is not continuous: preimage of open {open} is not open")]
    NotContinuous { open: String },

    #[error("point evaluation at {point:?} is not a homomorphism: {detail}")]
    EllNotPoint { point: String, detail: String },

    #[error("integral shortcut disagrees with the general formula at {detail}")]
    IntegralShortcutMismatch { detail: String },

    #[error("generator gave up after {attempts} rejected attempts: {what}")]
    GenerationExhausted { what: &'static str, attempts: u64 },

    #[error("base algebra too small: need at least {need} elements, got {got}")]
    BaseTooSmall { need: usize, got: usize },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Normalize the structural errors to a witness triple of element names.
    pub fn witness(&self) -> Option<(String, String, String)> {
        let t = |a: &str, b: &str, c: &str| (a.to_string(), b.to_string(), c.to_string());
        match self {
            Error::NotAPartialOrder { a, b, c, .. } => Some(t(a, b, c)),
            Error::MissingJoin { elements } => {
                let mut it = elements.iter();
                let a = it.next().cloned().unwrap_or_default();
                let b = it.next().cloned().unwrap_or_default();
                Some((a, b, String::new()))
            }
            Error::DistributivityFailure { a, b, c } => Some(t(a, b, c)),
            Error::ComplementFailure { element, detail } => Some(t(element, detail, "")),
            Error::TensorAxiomFailure { a, b, c, .. } => Some(t(a, b, c)),
            Error::NotAHomomorphism { a, b, .. } => Some(t(a, b, "")),
            _ => None,
        }
    }
}
