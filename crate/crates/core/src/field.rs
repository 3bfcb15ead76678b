//! Exact coefficient fields.
//!
//! Every coefficient is stored as a [`BigRational`]. Over the rationals it is used as is; over a
//! prime field `F_p` it is kept as the canonical integer representative in `[0, p)`. The
//! [`Field`] value carries the arithmetic, so elements never mix representations silently.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted for prime fields.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Default for Field {
    fn default() -> Self {
        Field::Rational
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `q` or `fp:<prime>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::BadScalar(format!("bad prime {rest:?}")))?;
            return Field::prime(p);
        }
        Err(Error::BadScalar(format!("unknown field {s:?} (expected q or fp:<prime>)")))
    }
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || p > MAX_PRIME || !is_prime(p) {
            return Err(Error::BadScalar(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        Scalar(BigRational::zero())
    }

    pub fn one(&self) -> Scalar {
        Scalar(BigRational::one())
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.reduce_int(BigInt::from(n))
    }

    /// Maps a rational number into the field. Fails over `F_p` when `p` divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar(q.clone())),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let den = q.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::BadScalar(format!("{q} has no image mod {p}")));
                }
                let inv = mod_inverse(&den, &p);
                let num = q.numer().mod_floor(&p);
                Ok(Scalar(BigRational::from_integer((num * inv).mod_floor(&p))))
            }
        }
    }

    fn reduce_int(&self, n: BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar(BigRational::from_integer(n)),
            Field::Prime(p) => Scalar(BigRational::from_integer(n.mod_floor(&BigInt::from(*p)))),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rational => Scalar(&a.0 + &b.0),
            Field::Prime(_) => self.reduce_int(a.0.numer() + b.0.numer()),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rational => Scalar(-&a.0),
            Field::Prime(_) => self.reduce_int(-a.0.numer()),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rational => Scalar(&a.0 * &b.0),
            Field::Prime(_) => self.reduce_int(a.0.numer() * b.0.numer()),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            Field::Rational => Some(Scalar(a.0.recip())),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                Some(Scalar(BigRational::from_integer(mod_inverse(a.0.numer(), &p))))
            }
        }
    }

    /// Checks that a scalar is a canonical element of this field.
    pub fn contains(&self, a: &Scalar) -> bool {
        match self {
            Field::Rational => true,
            Field::Prime(p) => {
                a.0.is_integer() && !a.0.is_negative() && a.0.numer() < &BigInt::from(*p)
            }
        }
    }
}

/// An exact field element. See the module docs for the representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(pub BigRational);

impl Scalar {
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let ext = a.mod_floor(p).extended_gcd(p);
    ext.x.mod_floor(p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_fields() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("fp:7".parse::<Field>().unwrap(), Field::Prime(7));
        assert!("fp:8".parse::<Field>().is_err());
        assert!("fp:4294967311".parse::<Field>().is_err());
        assert!("r".parse::<Field>().is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::Prime(7);
        let half = f.from_rational(&q(1, 2)).unwrap();
        assert_eq!(half.to_i64(), Some(4));
        assert!(f.mul(&half, &f.from_int(2)).is_one());
        assert_eq!(f.neg(&f.from_int(3)).to_i64(), Some(4));
        assert!(f.add(&f.from_int(3), &f.from_int(4)).is_zero());
        assert!(f.from_rational(&q(1, 7)).is_err());
        let inv3 = f.inv(&f.from_int(3)).unwrap();
        assert!(f.mul(&inv3, &f.from_int(3)).is_one());
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn rational_arithmetic() {
        let f = Field::Rational;
        let a = f.from_rational(&q(3, 2)).unwrap();
        let b = f.from_rational(&q(-1, 3)).unwrap();
        assert_eq!(f.add(&a, &b), Scalar(q(7, 6)));
        assert_eq!(f.mul(&a, &b), Scalar(q(-1, 2)));
        assert_eq!(a.to_string(), "3/2");
        assert_eq!(f.inv(&b).unwrap(), Scalar(q(-3, 1)));
    }
}
