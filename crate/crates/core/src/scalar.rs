//! Exact rational coordinates.
//!
//! Every geometric predicate in this crate is computed over arbitrary-precision
//! rationals, so there is no epsilon anywhere: two points are either equal or
//! they are not, a point is either on a segment or it is not.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact rational number. Wraps a reduced numerator/denominator pair.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarParseError {
    #[error("empty numeric literal")]
    Empty,
    #[error("invalid numeric literal {0:?}: expected a decimal like \"-1.25\" or a ratio like \"1/3\"")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`, reduced. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn cmp_zero(&self) -> Ordering {
        self.0.cmp(&BigRational::zero())
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Lossy conversion for rendering only; never used in predicates.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Canonical textual form: a finite decimal when the reduced denominator
    /// is of the form 2^a * 5^b, otherwise `numer/denom`. The output is stable
    /// and round-trips through `from_str`.
    pub fn to_canonical_string(&self) -> String {
        let numer = self.0.numer();
        let denom = self.0.denom();
        if denom.is_one() {
            return numer.to_string();
        }
        let (two, five, ten) = (BigInt::from(2), BigInt::from(5), BigInt::from(10));
        let mut rest = denom.clone();
        let mut twos = 0u32;
        let mut fives = 0u32;
        while (&rest % &two).is_zero() {
            rest /= &two;
            twos += 1;
        }
        while (&rest % &five).is_zero() {
            rest /= &five;
            fives += 1;
        }
        if !rest.is_one() {
            return format!("{}/{}", numer, denom);
        }
        let places = twos.max(fives);
        let scaled = numer * num_traits::pow(ten, places as usize) / denom;
        let neg = scaled.is_negative();
        let digits = scaled.abs().to_string();
        let digits = if digits.len() <= places as usize {
            format!("{}{}", "0".repeat(places as usize + 1 - digits.len()), digits)
        } else {
            digits
        };
        let split = digits.len() - places as usize;
        let (int_part, frac_part) = digits.split_at(split);
        let frac_part = frac_part.trim_end_matches('0');
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(int_part);
        if !frac_part.is_empty() {
            out.push('.');
            out.push_str(frac_part);
        }
        out
    }
}

/// Accepts decimal strings (`"2"`, `"-0.75"`) and ratios (`"1/3"`), parsed
/// exactly. No exponents, no floats.
impl FromStr for Scalar {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ScalarParseError::Empty);
        }
        if let Some((n, d)) = s.split_once('/') {
            let numer = parse_bigint(n).ok_or_else(|| ScalarParseError::Malformed(s.into()))?;
            let denom = parse_bigint(d).ok_or_else(|| ScalarParseError::Malformed(s.into()))?;
            if denom.is_zero() {
                return Err(ScalarParseError::ZeroDenominator(s.into()));
            }
            return Ok(Scalar(BigRational::new(numer, denom)));
        }
        let (sign, body) = match s.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(ScalarParseError::Malformed(s.into()));
        }
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_part) || !all_digits(frac_part) {
            return Err(ScalarParseError::Malformed(s.into()));
        }
        let mut numer = if int_part.is_empty() {
            BigInt::zero()
        } else {
            int_part.parse::<BigInt>().map_err(|_| ScalarParseError::Malformed(s.into()))?
        };
        let ten = BigInt::from(10);
        let mut denom = BigInt::one();
        for b in frac_part.bytes() {
            numer = &numer * &ten + BigInt::from(b - b'0');
            denom *= &ten;
        }
        numer *= BigInt::from(sign);
        Ok(Scalar(BigRational::new(numer, denom)))
    }
}

fn parse_bigint(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let body = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse::<BigInt>().ok()
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);
scalar_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!("0.25".parse::<Scalar>().unwrap(), Scalar::from_ratio(1, 4));
        assert_eq!("-1.5".parse::<Scalar>().unwrap(), Scalar::from_ratio(-3, 2));
        assert_eq!("7".parse::<Scalar>().unwrap(), Scalar::from_int(7));
        assert_eq!("0.1".parse::<Scalar>().unwrap(), Scalar::from_ratio(1, 10));
    }

    #[test]
    fn parses_ratios() {
        assert_eq!("1/3".parse::<Scalar>().unwrap(), Scalar::from_ratio(1, 3));
        assert_eq!("-2/8".parse::<Scalar>().unwrap(), Scalar::from_ratio(-1, 4));
        assert!(matches!("1/0".parse::<Scalar>(), Err(ScalarParseError::ZeroDenominator(_))));
    }

    #[test]
    fn rejects_floats_and_exponents() {
        assert!("1e3".parse::<Scalar>().is_err());
        assert!("".parse::<Scalar>().is_err());
        assert!("1.2.3".parse::<Scalar>().is_err());
        assert!(".".parse::<Scalar>().is_err());
    }

    #[test]
    fn canonical_strings_round_trip() {
        for s in ["0", "-3", "0.25", "-0.125", "12.5", "1/3", "-7/12"] {
            let v = s.parse::<Scalar>().unwrap();
            assert_eq!(v.to_canonical_string(), s);
            assert_eq!(v.to_canonical_string().parse::<Scalar>().unwrap(), v);
        }
        // Non-canonical spellings normalize.
        assert_eq!("0.250".parse::<Scalar>().unwrap().to_canonical_string(), "0.25");
        assert_eq!("2/8".parse::<Scalar>().unwrap().to_canonical_string(), "0.25");
        assert_eq!("-0".parse::<Scalar>().unwrap().to_canonical_string(), "0");
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = "0.1".parse::<Scalar>().unwrap();
        let sum = &a + &a + a.clone();
        assert_eq!(sum, Scalar::from_ratio(3, 10));
        assert_eq!((Scalar::from_int(1) / Scalar::from_int(3)).to_canonical_string(), "1/3");
    }
}
