use thiserror::Error;

/// Errors raised by category construction, complex assembly and the logic layer.
///
/// Validation-style operations (`validate_category`, the institution axiom
/// checker) report their findings as values instead of returning `Err`; this
/// enum covers genuine contract violations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("unknown object id `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism id `{0}`")]
    UnknownMorphism(String),
    #[error("unknown signature id `{0}`")]
    UnknownSignature(String),
    #[error("unknown formula class id `{0}`")]
    UnknownFormulaClass(String),
    #[error("unknown model id `{0}`")]
    UnknownModel(String),
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("composition not closed: compose({g}, {f}) names missing morphism `{result}`")]
    CompositionNotClosed { g: String, f: String, result: String },
    #[error("composition undefined for composable pair ({g}, {f})")]
    CompositionMissing { g: String, f: String },
    #[error("associativity violated at triple ({h}, {g}, {f})")]
    Associativity { h: String, g: String, f: String },
    #[error("identity violated at object `{object}`: {detail}")]
    IdentityViolation { object: String, detail: String },
    #[error("domain/codomain mismatch for morphism `{morphism}`: {detail}")]
    EndpointMismatch { morphism: String, detail: String },
    #[error("missing argument `{arg}` for combine mode {mode}")]
    MissingArgument { mode: String, arg: String },
    #[error("category is not a preorder: parallel morphisms `{first}` and `{second}`")]
    NotAPreorder { first: String, second: String },
    #[error("order pairs are not antisymmetric: {a} <= {b} and {b} <= {a} with {a} != {b}")]
    NotAntisymmetric { a: String, b: String },
    #[error("coefficient variance mismatch: expected {expected}, found {found}")]
    VarianceMismatch { expected: String, found: String },
    #[error("coefficient system not functorial at pair (g={g}, f={f})")]
    FunctorialityViolation { g: String, f: String },
    #[error("coefficient map for `{morphism}` does not respect presentations")]
    RelationViolation { morphism: String },
    #[error("functor data invalid: {0}")]
    InvalidFunctor(String),
    #[error("differential composite is nonzero between degrees {upper} and {lower}")]
    DdNotZero { upper: usize, lower: usize },
    #[error("not a chain map at degree {degree}")]
    NotAChainMap { degree: usize },
    #[error("face index {index} out of range for chain of length {length}")]
    FaceIndexOutOfRange { index: usize, length: usize },
    #[error("gamma is not a theory (not closed under consequence)")]
    GammaNotATheory,
    #[error("gamma is not deductively closed")]
    GammaNotClosed,
    #[error("theorem-proposition equivalence breach at formula `{formula}`: {detail}")]
    PropositionEquivalenceBreach { formula: String, detail: String },
    #[error("coproduct homology additivity breached at degree {degree}")]
    CoproductAdditivityBreach { degree: usize },
    #[error("atom bound {requested} exceeds supported maximum {max}")]
    BoundTooLarge { requested: usize, max: usize },
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("atom {0} is not bound by the valuation")]
    UnboundAtom(usize),
    #[error("formula has free variables {vars:?} and is not closed")]
    NonClosedFormula { vars: Vec<String> },
    #[error("{0} is not prime")]
    InvalidPrime(u64),
    #[error("degree bound {requested} exceeds supported maximum {max}")]
    DegreeBoundTooLarge { requested: u32, max: u32 },
    #[error("truncation must be at least 2, got {0}")]
    TruncationTooSmall(usize),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
