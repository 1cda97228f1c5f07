//! Coefficient rings ℤ, ℚ and 𝔽_p.
//!
//! Every scalar is stored as a [`BigRational`]; the [`CoeffRing`] tag decides
//! which values are legal (integers for ℤ, residues in `0..p` for 𝔽_p) and
//! how the ring operations reduce.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoeffRing {
    Z,
    Q,
    /// Prime field of the given characteristic.
    Fp(u64),
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn big(n: BigInt) -> Scalar {
    BigRational::from_integer(n)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoeffRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::InvalidMap(format!("F_{p}: characteristic must be a prime below 2^32")));
        }
        Ok(CoeffRing::Fp(p))
    }

    pub fn is_field(self) -> bool {
        !matches!(self, CoeffRing::Z)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            CoeffRing::Fp(p) => p,
            _ => 0,
        }
    }

    /// Brings an arbitrary rational into this ring; fails when the value has
    /// no image (a fraction in ℤ, or a denominator divisible by p).
    pub fn coerce(self, x: &Scalar) -> Result<Scalar> {
        match self {
            CoeffRing::Z => {
                if x.is_integer() {
                    Ok(x.clone())
                } else {
                    Err(Error::RingMismatch(format!("{x} is not an integer")))
                }
            }
            CoeffRing::Q => Ok(x.clone()),
            CoeffRing::Fp(p) => {
                let pb = BigInt::from(p);
                let den = x.denom().mod_floor(&pb);
                if den.is_zero() {
                    return Err(Error::RingMismatch(format!("{x} has no image in F_{p}")));
                }
                let inv = mod_inverse(&den, &pb);
                Ok(big((x.numer() * inv).mod_floor(&pb)))
            }
        }
    }

    pub fn embed_int(self, n: i64) -> Scalar {
        self.coerce(&int(n)).expect("integers embed in every coefficient ring")
    }

    fn reduce(self, x: Scalar) -> Scalar {
        match self {
            CoeffRing::Fp(p) => {
                let pb = BigInt::from(p);
                big(x.numer().mod_floor(&pb))
            }
            _ => x,
        }
    }

    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn neg(self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    pub fn is_unit(self, a: &Scalar) -> bool {
        match self {
            CoeffRing::Z => a.abs().is_one(),
            _ => !a.is_zero(),
        }
    }

    /// Multiplicative inverse, when it exists in this ring.
    pub fn inv(self, a: &Scalar) -> Option<Scalar> {
        if !self.is_unit(a) {
            return None;
        }
        match self {
            CoeffRing::Z | CoeffRing::Q => Some(a.recip()),
            CoeffRing::Fp(p) => {
                let pb = BigInt::from(p);
                Some(big(mod_inverse(&a.numer().mod_floor(&pb), &pb)))
            }
        }
    }

    /// Exact quotient `a / b` when `b` divides `a` in this ring.
    pub fn div_exact(self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        if b.is_zero() {
            return None;
        }
        match self {
            CoeffRing::Z => {
                let (q, r) = a.numer().div_rem(b.numer());
                r.is_zero().then(|| big(q))
            }
            _ => Some(self.mul(a, &self.inv(b)?)),
        }
    }

    pub fn pow(self, a: &Scalar, e: i64) -> Option<Scalar> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Some(acc)
    }

    /// Whether coefficients of `self` map into `target` (ℤ maps everywhere,
    /// fields only into themselves).
    pub fn maps_into(self, target: CoeffRing) -> bool {
        match (self, target) {
            (CoeffRing::Z, _) => true,
            (CoeffRing::Q, CoeffRing::Q) => true,
            (CoeffRing::Fp(p), CoeffRing::Fp(q)) => p == q,
            _ => false,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        match t {
            "Z" | "ZZ" => Ok(CoeffRing::Z),
            "Q" | "QQ" => Ok(CoeffRing::Q),
            _ => {
                let digits = t
                    .strip_prefix("Fp:")
                    .or_else(|| t.strip_prefix("GF"))
                    .or_else(|| t.strip_prefix('F'))
                    .ok_or_else(|| Error::parse(0, format!("unknown coefficient ring `{t}`")))?;
                let p: u64 = digits
                    .parse()
                    .map_err(|_| Error::parse(0, format!("bad characteristic in `{t}`")))?;
                CoeffRing::prime_field(p)
            }
        }
    }

    pub fn name(self) -> String {
        match self {
            CoeffRing::Z => "Z".into(),
            CoeffRing::Q => "Q".into(),
            CoeffRing::Fp(p) => format!("F{p}"),
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

/// Formats a scalar the way it appears in element syntax.
pub fn fmt_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Small helper for tests and reports.
pub fn to_i64(x: &Scalar) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units() {
        assert!(CoeffRing::Z.is_unit(&int(-1)));
        assert!(!CoeffRing::Z.is_unit(&int(2)));
        assert!(CoeffRing::Fp(7).is_unit(&int(3)));
        assert!(!CoeffRing::Q.is_unit(&int(0)));
    }

    #[test]
    fn fp_arith() {
        let f = CoeffRing::Fp(5);
        let x = f.coerce(&int(7)).unwrap();
        assert_eq!(x, int(2));
        assert_eq!(f.inv(&x).unwrap(), int(3));
        assert_eq!(f.coerce(&(int(1) / int(2))).unwrap(), int(3));
        assert!(f.coerce(&(int(1) / int(5))).is_err());
    }

    #[test]
    fn parse_rings() {
        assert_eq!(CoeffRing::parse("Fp:7").unwrap(), CoeffRing::Fp(7));
        assert_eq!(CoeffRing::parse("F5").unwrap(), CoeffRing::Fp(5));
        assert!(CoeffRing::parse("F6").is_err());
        assert_eq!(CoeffRing::parse("Q").unwrap(), CoeffRing::Q);
    }

    #[test]
    fn z_exact_division() {
        assert_eq!(CoeffRing::Z.div_exact(&int(6), &int(-3)), Some(int(-2)));
        assert_eq!(CoeffRing::Z.div_exact(&int(7), &int(2)), None);
    }
}
