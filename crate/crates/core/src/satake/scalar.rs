use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `c · p^{e/2}` with `c` rational and `e` an integer.
///
/// Stored canonically with `e ∈ {0, 1}`: even powers of `p` are folded into
/// `c`. Zero is `0 · p^0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawScalar", into = "RawScalar")]
pub struct SqrtPScalar {
    prime: u64,
    coeff: BigRational,
    halfexp: i64,
}

#[derive(Serialize, Deserialize)]
struct RawScalar {
    p: u64,
    coeff: String,
    halfexp: i64,
}

impl From<SqrtPScalar> for RawScalar {
    fn from(s: SqrtPScalar) -> Self {
        RawScalar { p: s.prime, coeff: s.coeff.to_string(), halfexp: s.halfexp }
    }
}

impl TryFrom<RawScalar> for SqrtPScalar {
    type Error = Error;

    fn try_from(r: RawScalar) -> Result<Self> {
        Ok(SqrtPScalar::new(r.p, crate::lattice::parse_rational(&r.coeff)?, r.halfexp))
    }
}

fn p_power(p: u64, k: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(p));
    if k >= 0 {
        num_traits::pow(base, k as usize)
    } else {
        num_traits::pow(base.recip(), k.unsigned_abs() as usize)
    }
}

impl SqrtPScalar {
    /// `coeff · p^{halfexp/2}`.
    pub fn new(prime: u64, coeff: BigRational, halfexp: i64) -> Self {
        if coeff.is_zero() {
            return SqrtPScalar { prime, coeff, halfexp: 0 };
        }
        let (q, r) = halfexp.div_mod_floor(&2);
        SqrtPScalar { prime, coeff: coeff * p_power(prime, q), halfexp: r }
    }

    pub fn rational(prime: u64, c: BigRational) -> Self {
        Self::new(prime, c, 0)
    }

    pub fn from_i64(prime: u64, c: i64) -> Self {
        Self::rational(prime, BigRational::from_integer(c.into()))
    }

    /// `p^{halfexp/2}`.
    pub fn p_pow_half(prime: u64, halfexp: i64) -> Self {
        Self::new(prime, BigRational::one(), halfexp)
    }

    /// `p^s` for a half-integer `s`.
    pub fn p_pow(prime: u64, s: &BigRational) -> Result<Self> {
        Ok(Self::p_pow_half(prime, twice(s)?))
    }

    pub fn zero(prime: u64) -> Self {
        Self::from_i64(prime, 0)
    }

    pub fn one(prime: u64) -> Self {
        Self::from_i64(prime, 1)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    /// `0` or `1`.
    pub fn halfexp(&self) -> i64 {
        self.halfexp
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// In `Q`, i.e. no stray `√p`.
    pub fn is_rational(&self) -> bool {
        self.halfexp == 0
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeff.clone())
    }

    fn same_prime(&self, o: &Self) -> Result<()> {
        if self.prime != o.prime {
            return Err(Error::PrimeMismatch(self.prime, o.prime));
        }
        Ok(())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_prime(o)?;
        Ok(Self::new(self.prime, &self.coeff * &o.coeff, self.halfexp + o.halfexp))
    }

    /// Partial: both summands must have the same `√p` parity (or be zero).
    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_prime(o)?;
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.halfexp != o.halfexp {
            return Err(Error::MixedParity);
        }
        Ok(Self::new(self.prime, &self.coeff + &o.coeff, self.halfexp))
    }

    pub fn neg(&self) -> Self {
        SqrtPScalar { prime: self.prime, coeff: -&self.coeff, halfexp: self.halfexp }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(self.prime, self.coeff.recip(), -self.halfexp))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.prime, &self.coeff * c, self.halfexp)
    }
}

/// `2s` for a half-integer `s`.
pub(crate) fn twice(s: &BigRational) -> Result<i64> {
    let t = s * BigRational::from_integer(2.into());
    if !t.is_integer() {
        return Err(Error::NonRational(format!("{s} is not a half-integer")));
    }
    i64::try_from(t.to_integer()).map_err(|_| Error::NonRational(format!("{s} is too large")))
}

impl fmt::Display for SqrtPScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.halfexp == 0 || self.is_zero() {
            write!(f, "{}", self.coeff)
        } else if self.coeff.is_one() {
            write!(f, "√{}", self.prime)
        } else if self.coeff.is_negative() && (-&self.coeff).is_one() {
            write!(f, "-√{}", self.prime)
        } else {
            write!(f, "{}·√{}", self.coeff, self.prime)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn canonical_form() {
        assert_eq!(SqrtPScalar::p_pow_half(5, 2), SqrtPScalar::from_i64(5, 5));
        assert_eq!(SqrtPScalar::p_pow_half(5, -1), SqrtPScalar::new(5, q(1, 5), 1));
        assert_eq!(SqrtPScalar::new(3, q(0, 1), 7).halfexp(), 0);
        let x = SqrtPScalar::new(2, q(-24, 1), -20);
        assert_eq!(x, SqrtPScalar::rational(2, q(-24, 1024)));
    }

    #[test]
    fn arithmetic() {
        let r = SqrtPScalar::p_pow_half(3, 1);
        assert_eq!(r.mul(&r).unwrap(), SqrtPScalar::from_i64(3, 3));
        // √3 + 1/√3 = (4/3)√3
        let s = r.add(&r.inv().unwrap()).unwrap();
        assert_eq!(s, SqrtPScalar::new(3, q(4, 3), 1));
        assert_eq!(r.add(&SqrtPScalar::one(3)), Err(Error::MixedParity));
        assert_eq!(r.add(&SqrtPScalar::zero(3)).unwrap(), r);
        assert_eq!(r.mul(&SqrtPScalar::one(5)), Err(Error::PrimeMismatch(3, 5)));
        assert_eq!(SqrtPScalar::zero(3).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn json_round_trip() {
        let x = SqrtPScalar::new(7, q(-3, 2), 1);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"p":7,"coeff":"-3/2","halfexp":1}"#);
        assert_eq!(serde_json::from_str::<SqrtPScalar>(&s).unwrap(), x);
    }

    #[test]
    fn display() {
        assert_eq!(SqrtPScalar::p_pow_half(2, 1).to_string(), "√2");
        assert_eq!(SqrtPScalar::new(2, q(3, 2), 3).to_string(), "3·√2");
        assert_eq!(SqrtPScalar::rational(2, q(1, 4)).to_string(), "1/4");
    }
}
