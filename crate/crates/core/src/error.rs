use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size {0} is outside 1..=9")]
    AlphabetSize(usize),
    #[error("letter {letter} is outside an alphabet of size {size}")]
    LetterOutOfRange { letter: u8, size: usize },
    #[error("operation needs the ternary alphabet, got size {0}")]
    NotTernary(usize),
    #[error("image of letter {0} is empty")]
    EmptyImage(u8),
    #[error("morphism has {got} images for an alphabet of size {size}")]
    ImageCount { got: usize, size: usize },
    #[error("letter {0} is not a fixed-point seed")]
    NotASeed(u8),
    #[error("rank {rank} is outside the supported range {min}..={max}")]
    RankOutOfRange { rank: usize, min: usize, max: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("letter '{0}' is defined twice")]
    DuplicateLetter(char),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("fixture `{name}` checksum mismatch: expected {expected}, got {actual}")]
    ChecksumMismatch {
        name: String,
        expected: String,
        actual: String,
    },
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}
