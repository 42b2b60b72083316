use thiserror::Error;

use crate::diagram::Diagram;
use crate::field::FieldError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("generator index {i} out of range 1..={max} for n = {n}", max = n.saturating_sub(1))]
    GeneratorIndex { n: usize, i: usize },
    #[error("invalid through-strand count {k} for n = {n}: need 0 <= k <= n and k = n (mod 2)")]
    ThroughStrands { n: usize, k: usize },
    #[error("strand count {n} outside supported range 1..={max}")]
    StrandLimit { n: usize, max: usize },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("element is not class-uniform: {first} and {second} carry different coefficients")]
    NotClassUniform { first: Diagram, second: Diagram },
    #[error("coefficient of {diagram} has a pole: {source}")]
    TermPole { diagram: Diagram, source: FieldError },
    #[error("{0}")]
    InvalidArgument(String),
}
