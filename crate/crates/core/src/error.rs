use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("permutation degree must be at least 1")]
    InvalidDegree,

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("deck has {deck} cards but the permutation has degree {degree}")]
    LengthMismatch { deck: usize, degree: usize },

    #[error("destination list is not a bijection on 0..{degree}")]
    NotABijection { degree: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("index {index} out of range for {digits} base-{base} digits")]
    IndexOutOfRange {
        index: usize,
        base: usize,
        digits: usize,
    },

    #[error("digit {digit} is not valid in base {base}")]
    DigitOutOfRange { digit: usize, base: usize },

    #[error("deck size exceeds the supported bound of {limit} cards")]
    DegreeBound { limit: u64 },

    #[error("enumeration exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("a generating set must contain at least one permutation")]
    EmptyGeneratorSet,
}

impl Error {
    /// Errors caused by a computation outgrowing its configured limits rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::DegreeBound { .. } | Error::CapExceeded { .. })
    }
}
