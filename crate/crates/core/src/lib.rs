pub mod algebra;
pub mod diagram;
pub mod error;
pub mod field;

pub use algebra::{ClassTable, Element, LinComb, NumericElement};
pub use diagram::{Diagram, Generator};
pub use error::{Error, Result};
pub use field::{BigRational, Polynomial, RationalFunction};
pub mod projector;
pub mod verify;
pub mod cli;
