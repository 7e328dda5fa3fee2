use thiserror::Error;

use crate::moves::MoveKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("label {label} occurs {count} times; every label must occur exactly twice")]
    NotDoubleOccurrence { label: u32, count: usize },
    #[error("empty token at position {index}")]
    EmptyToken { index: usize },
    #[error("unparsable token {token:?}")]
    BadToken { token: String },
    #[error("labels must be exactly 1..={n}, found {found}")]
    BadLabels { n: usize, found: u32 },
    #[error("too many crossings ({0}); at most 255 are supported")]
    TooManyCrossings(usize),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("word is not realizable as a spherical curve")]
    NotRealizable,
    #[error("site is not applicable for a {kind:?} move on this embedding")]
    InvalidSite { kind: MoveKind },
    #[error("no crossing labelled {0}")]
    NoSuchCrossing(u32),
    #[error("bound {max_n} is below the crossing number of an endpoint ({needed})")]
    BoundTooSmall { max_n: usize, needed: usize },
    #[error("catalog covers n <= {have}, but n <= {need} was requested")]
    CatalogIncomplete { have: usize, need: usize },
    #[error("unsupported schema version {found} (expected {expected})")]
    SchemaVersionMismatch { found: u64, expected: u64 },
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
