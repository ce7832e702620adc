use alloc::string::String;
use core::fmt;

/// Violation of a documented precondition (bad index, bad strand count, ...).
#[derive(Debug, Clone, PartialEq)]
pub enum DomainError {
    /// Fewer than three strands.
    StrandCount(usize),
    /// Strand index outside `1..=n`.
    IndexOutOfRange { index: usize, n: usize },
    /// Two indices that must differ coincide.
    RepeatedIndex(usize),
    /// `i < j` was required.
    NotIncreasing { i: usize, j: usize },
    /// A generator of `G_N^2` built from one letter twice.
    RepeatedLetter,
    /// Two trajectories with different strand counts or basepoints.
    BasepointMismatch,
    /// A position on or outside the unit circle in the disc model.
    OutsideDisc { time: f64, strand: usize },
    /// A point that should lie on a circle does not.
    NotOnCircle { distance: f64 },
    /// Trajectory samples are malformed.
    BadTrajectory(&'static str),
    /// A winding integral is too far from an integer.
    NonIntegralWinding { i: usize, j: usize, value: f64 },
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainError::StrandCount(n) => write!(f, "strand count must be at least 3, got {n}"),
            DomainError::IndexOutOfRange { index, n } => {
                write!(f, "strand index {index} outside 1..={n}")
            }
            DomainError::RepeatedIndex(i) => write!(f, "index {i} repeated"),
            DomainError::NotIncreasing { i, j } => write!(f, "expected i < j, got i={i}, j={j}"),
            DomainError::RepeatedLetter => write!(f, "generator letters must be distinct"),
            DomainError::BasepointMismatch => write!(f, "trajectories do not share basepoints"),
            DomainError::OutsideDisc { time, strand } => {
                write!(f, "strand {strand} leaves the open unit disc at t={time}")
            }
            DomainError::NotOnCircle { distance } => {
                write!(f, "point is {distance:e} away from the circle")
            }
            DomainError::BadTrajectory(why) => write!(f, "malformed trajectory: {why}"),
            DomainError::NonIntegralWinding { i, j, value } => {
                write!(f, "winding of strands {i},{j} is {value}, not an integer")
            }
        }
    }
}

/// Failure to read a word from its text form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Zero-based index of the offending token.
    pub token: usize,
    /// Byte offset of the token in the input.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "token {} (byte {}): {}",
            self.token, self.offset, self.message
        )
    }
}

impl core::error::Error for DomainError {}
impl core::error::Error for ParseError {}
