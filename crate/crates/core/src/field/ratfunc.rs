use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{FieldError, Polynomial};

/// Element of ℚ(d) in canonical form: `gcd(num, den) = 1` and `den` monic.
///
/// Canonical form makes structural equality coincide with equality of
/// rational functions, so the derived `Eq` and `Hash` are sound.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = Polynomial::gcd(&num, &den).expect("denominator is nonzero");
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g), den.div_exact(&g))
            }
        };
        let lc = den.leading().expect("nonzero").clone();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip();
            RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::constant(BigRational::one()) }
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rational(BigRational::from_integer(c.into()))
    }

    /// `p / q`; panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(p.into(), q.into()))
    }

    /// The indeterminate `d`.
    pub fn var() -> Self {
        Self::from_poly(Polynomial::var())
    }

    /// `d^k`.
    pub fn d_pow(k: u32) -> Self {
        Self::from_poly(Polynomial::var().pow(k))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    /// Constant value, if this function does not depend on `d`.
    pub fn as_constant(&self) -> Option<BigRational> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(BigRational::zero()),
            (Some(0), Some(0)) => Some(&self.num.coeffs()[0] / &self.den.coeffs()[0]),
            _ => None,
        }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.num.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn eval(&self, v: &BigRational) -> Result<BigRational, FieldError> {
        let den = self.den.eval(v);
        if den.is_zero() {
            return Err(FieldError::Pole { at: v.clone(), factor: self.vanishing_factor(v) });
        }
        Ok(self.num.eval(v) / den)
    }

    fn vanishing_factor(&self, v: &BigRational) -> String {
        if v.is_integer() {
            let (roots, _) = self.den.integer_roots();
            if let Some(r) = roots.iter().find(|r| BigRational::from_integer((*r).clone()) == *v) {
                return linear_factor(r);
            }
        }
        format!("({})", self.den)
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Integer-coefficient numerator and denominator with content 1 and
    /// positive leading denominator coefficient.
    pub fn to_integer_parts(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let (num_ints, num_scale) = self.num.to_primitive();
        let (den_ints, den_scale) = self.den.to_primitive();
        // self = (num_ints / num_scale) / (den_ints / den_scale)
        let ratio = den_scale / num_scale;
        let (p, q) = (ratio.numer().clone(), ratio.denom().clone());
        let num: Vec<BigInt> = num_ints.into_iter().map(|c| c * &p).collect();
        let den: Vec<BigInt> = den_ints.into_iter().map(|c| c * &q).collect();
        (num, den)
    }

    pub fn from_integer_parts(num: &[BigInt], den: &[BigInt]) -> Result<Self, FieldError> {
        let lift = |v: &[BigInt]| {
            Polynomial::new(v.iter().map(|c| BigRational::from_integer(c.clone())).collect())
        };
        Self::new(lift(num), lift(den))
    }

    /// Display in the `c(num)/(q(d+a)(d+b))` style used by the text renderers.
    pub fn pretty(&self) -> String {
        if self.num.is_zero() {
            return "0".into();
        }
        if let Some(c) = self.as_constant() {
            return c.to_string();
        }
        let num_lc = self.num.leading().expect("nonzero").clone();
        let num_monic = self.num.monic();
        let neg = num_lc.is_negative();
        let scale = num_lc.abs();
        let (p, q) = (scale.numer().clone(), scale.denom().clone());

        let mut out = String::new();
        if neg {
            out.push('-');
        }
        if self.den.is_one() && scale.is_one() {
            let body = num_monic.to_string();
            if neg && body.contains(' ') {
                return format!("-({body})");
            }
            out.push_str(&body);
            return out;
        }
        if num_monic.is_one() {
            out.push_str(&p.to_string());
        } else if p.is_one() {
            out.push_str(&format!("({num_monic})"));
        } else {
            out.push_str(&format!("{p}({num_monic})"));
        }
        if self.den.is_one() {
            if !q.is_one() {
                out.push_str(&format!("/{q}"));
            }
            return out;
        }
        let (mut roots, rest) = self.den.integer_roots();
        roots.sort_by(|a, b| b.cmp(a));
        let mut tokens: Vec<String> = Vec::new();
        if !q.is_one() {
            tokens.push(q.to_string());
        }
        let mut i = 0;
        while i < roots.len() {
            let mut j = i;
            while j < roots.len() && roots[j] == roots[i] {
                j += 1;
            }
            let f = linear_factor(&roots[i]);
            tokens.push(if j - i > 1 { format!("{f}^{}", j - i) } else { f });
            i = j;
        }
        if !rest.is_one() {
            tokens.push(format!("({rest})"));
        }
        let den = tokens.concat();
        if tokens.len() == 1 {
            out.push_str(&format!("/{den}"));
        } else {
            out.push_str(&format!("/({den})"));
        }
        out
    }
}

fn linear_factor(root: &BigInt) -> String {
    if root.is_zero() {
        "d".into()
    } else if root.is_negative() {
        format!("(d+{})", -root)
    } else {
        format!("(d-{root})")
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction {
            num: Polynomial::default(),
            den: Polynomial::constant(BigRational::one()),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if rhs.den.is_one() && rhs.num.degree() == Some(0) {
            return RationalFunction {
                num: self.num.scale(&rhs.num.coeffs()[0]),
                den: self.den.clone(),
            };
        }
        if self.den.is_one() && self.num.degree() == Some(0) {
            return rhs * self;
        }
        // cross-cancel before multiplying to keep the gcd step small
        let g1 = Polynomial::gcd(&self.num, &rhs.den).expect("nonzero");
        let g2 = Polynomial::gcd(&rhs.num, &self.den).expect("nonzero");
        let num = &self.num.div_exact(&g1) * &rhs.num.div_exact(&g2);
        let den = &self.den.div_exact(&g2) * &rhs.den.div_exact(&g1);
        let lc = den.leading().expect("nonzero").recip();
        RationalFunction { num: num.scale(&lc), den: den.scale(&lc) }
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self.pretty())
    }
}

#[derive(Serialize, Deserialize)]
struct RationalFunctionRepr {
    num: Vec<String>,
    den: Vec<String>,
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (num, den) = self.to_integer_parts();
        RationalFunctionRepr {
            num: num.iter().map(ToString::to_string).collect(),
            den: den.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = RationalFunctionRepr::deserialize(d)?;
        let parse = |v: &[String]| -> Result<Vec<BigInt>, D::Error> {
            v.iter()
                .map(|s| s.parse::<BigInt>().map_err(|e| D::Error::custom(format!("{s:?}: {e}"))))
                .collect()
        };
        RationalFunction::from_integer_parts(&parse(&repr.num)?, &parse(&repr.den)?)
            .map_err(D::Error::custom)
    }
}
