use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact non-negative rational edge weight.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(BigRational);

impl Weight {
    pub fn new(value: BigRational) -> Result<Self, Error> {
        if value.is_negative() {
            return Err(Error::InvalidWeight(format!("{value} is negative")));
        }
        Ok(Weight(value))
    }

    pub fn from_integer(value: u64) -> Self {
        Weight(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn ratio(numer: u64, denom: u64) -> Result<Self, Error> {
        if denom == 0 {
            return Err(Error::InvalidWeight("zero denominator".into()));
        }
        Ok(Weight(BigRational::new(numer.into(), denom.into())))
    }

    pub fn zero() -> Self {
        Weight(BigRational::zero())
    }

    pub fn one() -> Self {
        Weight(BigRational::one())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The weight as a machine integer, if it is integral and fits.
    pub fn as_u64(&self) -> Option<u64> {
        if self.0.is_integer() {
            self.0.to_integer().to_u64()
        } else {
            None
        }
    }
}

impl Default for Weight {
    fn default() -> Self {
        Weight::zero()
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Weight> for Weight {
    type Output = Weight;
    fn add(self, rhs: &'a Weight) -> Weight {
        Weight(self.0 + &rhs.0)
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Weight> for Weight {
    fn sum<I: Iterator<Item = &'a Weight>>(iter: I) -> Weight {
        iter.fold(Weight::zero(), |a, b| a + b)
    }
}

impl From<u64> for Weight {
    fn from(value: u64) -> Self {
        Weight::from_integer(value)
    }
}

/// Renders as `a` for integers and `a/b` otherwise, in lowest terms.
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Accepts integers (`7`), fractions (`3/4`) and finite decimals (`2.25`).
impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::InvalidWeight(format!("cannot parse {s:?}"));
        let parse_int = |t: &str| -> Result<BigInt, Error> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        let value = if let Some((num, den)) = s.split_once('/') {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::InvalidWeight(format!("zero denominator in {s:?}")));
            }
            BigRational::new(parse_int(num)?, den)
        } else if let Some((int, frac)) = s.split_once('.') {
            let int = if int.is_empty() { BigInt::zero() } else { parse_int(int)? };
            let scale = num_traits::pow(BigInt::from(10u32), frac.len());
            let frac = parse_int(frac)?;
            BigRational::new(int * &scale + frac, scale)
        } else {
            BigRational::from_integer(parse_int(s)?)
        };
        Weight::new(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!("7".parse::<Weight>().unwrap(), Weight::from_integer(7));
        assert_eq!("6/4".parse::<Weight>().unwrap(), Weight::ratio(3, 2).unwrap());
        assert_eq!("2.25".parse::<Weight>().unwrap(), Weight::ratio(9, 4).unwrap());
        assert_eq!(".5".parse::<Weight>().unwrap(), Weight::ratio(1, 2).unwrap());
    }

    #[test]
    fn rejects_garbage_and_negatives() {
        for s in ["", "-1", "1/0", "a", "1/-2", "1.2.3", "1e3"] {
            assert!(s.parse::<Weight>().is_err(), "{s}");
        }
    }

    #[test]
    fn display_is_lowest_terms() {
        assert_eq!(Weight::ratio(6, 4).unwrap().to_string(), "3/2");
        assert_eq!(Weight::ratio(8, 4).unwrap().to_string(), "2");
    }
}
