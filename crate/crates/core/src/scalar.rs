//! Exact field scalars: prime fields `F_p` and the rationals.
//!
//! Every scalar operation in the crate routes through [`FieldSpec`], which
//! acts as the arithmetic context. No floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// The ground field of a computation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldSpec {
    /// Prime field with `p` elements.
    Fp { p: u64 },
    /// Field of rationals, exact arithmetic.
    Q,
}

/// An exact scalar. `Fp` values are stored reduced into `0..p`; the modulus
/// lives in the ambient [`FieldSpec`].
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum Scalar {
    Fp(u64),
    Q(BigRational),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn fp(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Fp { p })
    }

    pub fn rationals() -> Self {
        FieldSpec::Q
    }

    /// Validates the invariants (p prime). Used after deserialization.
    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Fp { p } if !is_prime(*p) => Err(Error::NotPrime(*p)),
            _ => Ok(()),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Fp { .. } => Scalar::Fp(0),
            FieldSpec::Q => Scalar::Q(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Fp { .. } => Scalar::Fp(1),
            FieldSpec::Q => Scalar::Q(BigRational::one()),
        }
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Fp { p } => Scalar::Fp(n.rem_euclid(*p as i64) as u64),
            FieldSpec::Q => Scalar::Q(BigRational::from(BigInt::from(n))),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(v) => *v == 0,
            Scalar::Q(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Fp { p }, Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            (FieldSpec::Q, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            _ => panic!("scalar kind does not match field"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Fp { p }, Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            (FieldSpec::Q, Scalar::Q(x)) => Scalar::Q(-x),
            _ => panic!("scalar kind does not match field"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Fp { p }, Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (FieldSpec::Q, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            _ => panic!("scalar kind does not match field"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Fp { p }, Scalar::Fp(x)) => {
                assert!(*x != 0, "inverse of zero");
                // extended Euclid on (x, p)
                let (mut r0, mut r1) = (*x as i128, *p as i128);
                let (mut s0, mut s1) = (1i128, 0i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (s0, s1) = (s1, s0 - q * s1);
                }
                debug_assert_eq!(r0, 1);
                Scalar::Fp(s0.rem_euclid(*p as i128) as u64)
            }
            (FieldSpec::Q, Scalar::Q(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Scalar::Q(x.recip())
            }
            _ => panic!("scalar kind does not match field"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// Parses a scalar literal: an integer (optionally negative), or `n/d`
    /// over the rationals.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let bad = |at: usize| Error::Parse {
            msg: format!("invalid scalar literal `{s}`"),
            at,
        };
        match self {
            FieldSpec::Fp { .. } => {
                let n: i64 = s.trim().parse().map_err(|_| bad(0))?;
                Ok(self.from_int(n))
            }
            FieldSpec::Q => {
                let t = s.trim();
                if let Some((n, d)) = t.split_once('/') {
                    let n: BigInt = n.trim().parse().map_err(|_| bad(0))?;
                    let d: BigInt = d.trim().parse().map_err(|_| bad(0))?;
                    if d.is_zero() {
                        return Err(bad(0));
                    }
                    Ok(Scalar::Q(BigRational::new(n, d)))
                } else {
                    let n: BigInt = t.parse().map_err(|_| bad(0))?;
                    Ok(Scalar::Q(BigRational::from(n)))
                }
            }
        }
    }

    /// Canonical display form of a scalar (no spaces, `n/d` for non-integer
    /// rationals, `Fp` values in `0..p`).
    pub fn show(&self, a: &Scalar) -> String {
        match a {
            Scalar::Fp(v) => v.to_string(),
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(v) => *v == 1,
            Scalar::Q(r) => r.is_one(),
        }
    }

    /// True when the scalar displays with a leading minus (rationals only;
    /// `F_p` values are canonical residues).
    pub fn is_negative_display(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(_) => false,
            Scalar::Q(r) => r.is_negative(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Fp { p } => write!(f, "F{p}"),
            FieldSpec::Q => write!(f, "Q"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(FieldSpec::fp(2).is_ok());
        assert!(FieldSpec::fp(3).is_ok());
        assert!(FieldSpec::fp(101).is_ok());
        assert!(matches!(FieldSpec::fp(1), Err(Error::NotPrime(1))));
        assert!(matches!(FieldSpec::fp(4), Err(Error::NotPrime(4))));
        assert!(matches!(FieldSpec::fp(91), Err(Error::NotPrime(91))));
    }

    #[test]
    fn fp_arithmetic() {
        let f = FieldSpec::fp(7).unwrap();
        let a = f.from_int(3);
        let b = f.from_int(5);
        assert_eq!(f.add(&a, &b), Scalar::Fp(1));
        assert_eq!(f.mul(&a, &b), Scalar::Fp(1));
        assert_eq!(f.neg(&a), Scalar::Fp(4));
        assert_eq!(f.mul(&f.inv(&a), &a), f.one());
        assert_eq!(f.from_int(-1), Scalar::Fp(6));
    }

    #[test]
    fn rational_arithmetic() {
        let f = FieldSpec::Q;
        let a = f.parse_scalar("2/3").unwrap();
        let b = f.parse_scalar("-1/6").unwrap();
        let s = f.add(&a, &b);
        assert_eq!(f.show(&s), "1/2");
        assert_eq!(f.show(&f.inv(&s)), "2");
        assert!(f.is_zero(&f.sub(&a, &a)));
    }

    #[test]
    fn field_spec_json_round_trip() {
        let f = FieldSpec::fp(2).unwrap();
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(js, r#"{"kind":"Fp","p":2}"#);
        let q = FieldSpec::Q;
        assert_eq!(serde_json::to_string(&q).unwrap(), r#"{"kind":"Q"}"#);
        let back: FieldSpec = serde_json::from_str(&js).unwrap();
        assert_eq!(back, f);
    }
}
