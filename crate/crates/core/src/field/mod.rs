//! Exact arithmetic over ℚ and ℚ(d).

mod poly;
mod ratfunc;

pub use num_rational::BigRational;
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("pole at d = {at}: factor {factor} vanishes")]
    Pole { at: BigRational, factor: String },
    #[error("cannot parse rational {0:?}; expected p or p/q")]
    Parse(String),
}

/// Parses `p` or `p/q` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational, FieldError> {
    let s = s.trim();
    let err = || FieldError::Parse(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: num_bigint::BigInt = p.trim().parse().map_err(|_| err())?;
            let q: num_bigint::BigInt = q.trim().parse().map_err(|_| err())?;
            if num_traits::Zero::is_zero(&q) {
                return Err(err());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| err())?)),
    }
}
