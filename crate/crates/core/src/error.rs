use alloc::string::String;
use alloc::vec::Vec;

use crate::symgroup::Word;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("letter {letter} is not a simple reflection of S_{rank}")]
    LetterOutOfRange { letter: u8, rank: u8 },

    #[error("rank {0} is not supported (need 2 <= rank <= {max})", max = crate::poly::MAX_VARS)]
    UnsupportedRank(u8),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u8, right: u8 },

    #[error("word {0} is not reduced")]
    NotReduced(Word),

    #[error("move does not apply to word {0}")]
    InapplicableMove(Word),

    #[error("{0} is not a valid path: {1}")]
    InvalidPath(String, String),

    #[error("expected {expected} tensor slots, got {got}")]
    SlotCount { expected: usize, got: usize },

    #[error("factor position {position} out of range for a word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("morphism shapes do not match: {0} vs {1}")]
    ShapeMismatch(Word, Word),

    #[error("orientation has {} sources and {} sinks", sources.len(), sinks.len())]
    NonUniqueSourceSink { sources: Vec<Word>, sinks: Vec<Word> },

    #[error("path has no direct subpath")]
    NoDirectSubpath,

    #[error("path does not visit every vertex")]
    NotComplete,

    #[error("simplified paths are not available for the element {0}")]
    UnsupportedElement(Word),

    #[error("search budget of {0} states exceeded")]
    BudgetExceeded(usize),
}
