use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("universe must contain at least one alternative")]
    EmptyUniverse,
    #[error("alternative label must be non-empty")]
    EmptyLabel,
    #[error("duplicate alternative label `{0}`")]
    DuplicateLabel(String),
    #[error("alternative id {id} out of range for universe of size {size}")]
    InvalidId { id: usize, size: usize },
    #[error("transform `{name}` maps {from} twice")]
    ConflictingImage { name: String, from: usize },
}
