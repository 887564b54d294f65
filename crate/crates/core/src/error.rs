use thiserror::Error;

#[derive(Debug, Error)]
pub enum CdglError {
    #[error("duplicate generator id {0}")]
    DuplicateGenerator(u32),
    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),
    #[error("truncation order must be at least 1")]
    ZeroTruncation,
    #[error("too many generators ({0}, limit {1})")]
    TooManyGenerators(usize, usize),
    #[error("elements belong to different algebra contexts")]
    ContextMismatch,
    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: i32, found: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("empty factor list")]
    EmptyProduct,
    #[error("element is not a Maurer-Cartan element")]
    NotMaurerCartan,
    #[error("differential does not square to zero on: {0}")]
    DSquaredNonzero(String),
    #[error("no solution to linear system: {0}")]
    Unsolvable(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("vertices {0} and {1} lie in different components")]
    DifferentComponents(u32, u32),
    #[error("lambda signature violates the Maurer-Cartan pattern: {0}")]
    LambdaPattern(String),
    #[error("reduction levels must strictly increase")]
    NonIncreasingLevels,
    #[error("reduction stuck at level {level}: {detail}")]
    ReductionStuck { level: usize, detail: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CdglError>;
