//! Exact coefficient fields: the rationals and prime fields `F_p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported characteristic. Products of two residues must fit in a `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    /// Whether `-1` is a square in the prime field itself.
    pub fn has_sqrt_minus_one(&self) -> bool {
        match self {
            FieldSpec::Rationals => false,
            FieldSpec::PrimeField(p) => *p == 2 || p % 4 == 1,
        }
    }

    /// An element `c` with `c^2 = -1`, if one exists.
    pub fn sqrt_minus_one(&self) -> Option<Coeff> {
        let FieldSpec::PrimeField(p) = *self else {
            return None;
        };
        if !self.has_sqrt_minus_one() {
            return None;
        }
        if p == 2 {
            return Some(Coeff::Mod { v: 1, p });
        }
        // a^((p-1)/4) is a square root of -1 for any quadratic non-residue a.
        (2..p).find_map(|a| {
            if pow_mod(a, (p - 1) / 2, p) == p - 1 {
                Some(Coeff::Mod { v: pow_mod(a, (p - 1) / 4, p), p })
            } else {
                None
            }
        })
    }

    pub fn zero(&self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match *self {
            FieldSpec::Rationals => Coeff::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::PrimeField(p) => Coeff::Mod { v: v.rem_euclid(p as i64) as u64, p },
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Coeff> {
        match *self {
            FieldSpec::Rationals => Ok(Coeff::Rational(q.clone())),
            FieldSpec::PrimeField(p) => {
                let m = BigInt::from(p);
                let num = q.numer().mod_floor(&m).to_u64().unwrap();
                let den = q.denom().mod_floor(&m).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Coeff::Mod { v: num, p } * Coeff::Mod { v: den, p }.inv()?)
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `QQ`, `Fp:<p>`, `F<p>` and `GF(<p>)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" || s == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')))
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| Error::Parse(format!("unknown field `{s}`")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field `{s}`")))?;
        FieldSpec::prime(p)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// A field element. Prime-field residues carry their modulus so arithmetic
/// needs no external context; mixing variants is a logic error.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Mod { v: u64, p: u64 },
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_zero(),
            Coeff::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_one(),
            Coeff::Mod { v, .. } => *v == 1,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Coeff::Rational(_) => FieldSpec::Rationals,
            Coeff::Mod { p, .. } => FieldSpec::PrimeField(*p),
        }
    }

    pub fn inv(&self) -> Result<Coeff> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Coeff::Rational(q) => Coeff::Rational(q.recip()),
            Coeff::Mod { v, p } => Coeff::Mod { v: pow_mod(*v, p - 2, *p), p: *p },
        })
    }

    pub fn div(&self, rhs: &Coeff) -> Result<Coeff> {
        Ok(self * &rhs.inv()?)
    }

    /// True when the printed form would start with a minus sign.
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_negative(),
            Coeff::Mod { .. } => false,
        }
    }

    pub fn pow(&self, exp: u32) -> Coeff {
        let mut acc = self.field().one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

fn mismatch() -> ! {
    panic!("arithmetic between elements of different fields")
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a + b),
            (Coeff::Mod { v: a, p }, Coeff::Mod { v: b, p: q }) if p == q => {
                Coeff::Mod { v: (a + b) % p, p: *p }
            }
            _ => mismatch(),
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a - b),
            (Coeff::Mod { v: a, p }, Coeff::Mod { v: b, p: q }) if p == q => {
                Coeff::Mod { v: (a + p - b) % p, p: *p }
            }
            _ => mismatch(),
        }
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a * b),
            (Coeff::Mod { v: a, p }, Coeff::Mod { v: b, p: q }) if p == q => {
                Coeff::Mod { v: a * b % p, p: *p }
            }
            _ => mismatch(),
        }
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, rhs: Coeff) -> Coeff {
        &self * &rhs
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Rational(a) => Coeff::Rational(-a),
            Coeff::Mod { v, p } => Coeff::Mod { v: (p - v) % p, p: *p },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_field_specs() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("F2".parse::<FieldSpec>().unwrap(), FieldSpec::PrimeField(2));
        assert_eq!("Fp:5".parse::<FieldSpec>().unwrap(), FieldSpec::PrimeField(5));
        assert_eq!("GF(7)".parse::<FieldSpec>().unwrap(), FieldSpec::PrimeField(7));
        assert_eq!("Fp:6".parse::<FieldSpec>(), Err(Error::NotPrime(6)));
        assert!("R".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn sqrt_minus_one_classification() {
        assert!(!FieldSpec::Rationals.has_sqrt_minus_one());
        assert!(FieldSpec::PrimeField(2).has_sqrt_minus_one());
        assert!(!FieldSpec::PrimeField(3).has_sqrt_minus_one());
        assert!(FieldSpec::PrimeField(5).has_sqrt_minus_one());
        assert!(!FieldSpec::PrimeField(7).has_sqrt_minus_one());
        assert!(FieldSpec::PrimeField(13).has_sqrt_minus_one());
        for p in [2u64, 5, 13, 17, 29, 97] {
            let f = FieldSpec::PrimeField(p);
            let c = f.sqrt_minus_one().unwrap();
            assert_eq!(&c * &c, -&f.one(), "p = {p}");
        }
        assert!(FieldSpec::PrimeField(3).sqrt_minus_one().is_none());
    }

    #[test]
    fn division_by_zero_rejected() {
        assert_eq!(FieldSpec::Rationals.zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(FieldSpec::PrimeField(7).zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_to_prime_field() {
        let f = FieldSpec::PrimeField(5);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.from_rational(&half).unwrap(), Coeff::Mod { v: 3, p: 5 });
        let bad = BigRational::new(BigInt::from(1), BigInt::from(5));
        assert_eq!(f.from_rational(&bad), Err(Error::DivisionByZero));
        assert_eq!(f.from_i64(-1), Coeff::Mod { v: 4, p: 5 });
    }

    #[test]
    fn prime_field_inverses() {
        for p in [2u64, 3, 5, 7, 101] {
            let f = FieldSpec::PrimeField(p);
            for a in 1..p.min(50) {
                let x = f.from_i64(a as i64);
                assert!((&x * &x.inv().unwrap()).is_one());
            }
        }
    }
}
