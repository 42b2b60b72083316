use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::FieldError;

/// Dense univariate polynomial in `d` with rational coefficients.
///
/// Coefficients are stored in ascending degree. The zero polynomial is the
/// empty vector and every other value has a nonzero leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(|c| BigRational::from_integer(c.into())).collect())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `d`.
    pub fn var() -> Self {
        Self::from_ints([0, 1])
    }

    /// `d + c` for an integer shift.
    pub fn linear(c: i64) -> Self {
        Self::from_ints([c, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        Polynomial { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::default(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Horner evaluation at `v`.
    pub fn eval(&self, v: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + c;
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Polynomial::constant(BigRational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), FieldError> {
        let dd = divisor.degree().ok_or(FieldError::DivisionByZero)?;
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::default(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Exact division, for callers that know `divisor` divides `self`.
    pub(crate) fn div_exact(&self, divisor: &Polynomial) -> Polynomial {
        let (q, r) = self.div_rem(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, FieldError> {
        if a.is_zero() && b.is_zero() {
            return Err(FieldError::GcdOfZeros);
        }
        // constants are coprime to everything
        if a.degree() == Some(0) || b.degree() == Some(0) {
            return Ok(Polynomial::constant(BigRational::one()));
        }
        let (mut x, mut y) = (a.monic(), b.monic());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y)?;
            x = y;
            y = r.monic();
        }
        Ok(x)
    }

    /// Integer-coefficient multiple with content 1 and the scale used:
    /// `self = primitive / scale`.
    pub(crate) fn to_primitive(&self) -> (Vec<BigInt>, BigRational) {
        if self.is_zero() {
            return (Vec::new(), BigRational::one());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| num_integer::gcd(acc, c.clone()));
        let ints: Vec<BigInt> = ints.into_iter().map(|c| c / &content).collect();
        (ints, BigRational::new(lcm, content))
    }

    /// Splits off integer roots: returns `(roots, rest)` with
    /// `self = lc * rest * prod (d - r)` and `rest` monic.
    pub(crate) fn integer_roots(&self) -> (Vec<BigInt>, Polynomial) {
        let mut rest = self.monic();
        let mut roots = Vec::new();
        'outer: while rest.degree().is_some_and(|d| d > 0) {
            if rest.coeffs[0].is_zero() {
                roots.push(BigInt::zero());
                rest = rest.div_exact(&Polynomial::var());
                continue;
            }
            if !rest.coeffs.iter().all(|c| c.is_integer()) {
                break;
            }
            let a0 = rest.coeffs[0].to_integer().abs();
            // candidate roots divide the constant term
            let Some(bound) = num_traits::ToPrimitive::to_u64(&a0).filter(|b| *b < 1 << 40) else {
                break;
            };
            let mut k = 1u64;
            while k * k <= bound {
                if bound % k == 0 {
                    for cand in [k, bound / k] {
                        for r in [BigInt::from(cand), -BigInt::from(cand)] {
                            let rq = BigRational::from_integer(r.clone());
                            if rest.eval(&rq).is_zero() {
                                let lin = Polynomial::new(vec![-rq, BigRational::one()]);
                                rest = rest.div_exact(&lin);
                                roots.push(r);
                                continue 'outer;
                            }
                        }
                    }
                }
                k += 1;
            }
            break;
        }
        (roots, rest)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = k == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("d")?,
                _ => write!(f, "d^{k}")?,
            }
        }
        Ok(())
    }
}

fn add_coeffs(a: &[BigRational], b: &[BigRational], negate_b: bool) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(BigRational::zero);
            match b.get(k) {
                Some(y) if negate_b => x - y,
                Some(y) => x + y,
                None => x,
            }
        })
        .collect()
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::new(add_coeffs(&self.coeffs, &rhs.coeffs, false))
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::new(add_coeffs(&self.coeffs, &rhs.coeffs, true))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::default();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}
