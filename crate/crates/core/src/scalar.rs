//! Exact field scalars: arbitrary-precision rationals and prime fields.
//!
//! Every computation in this crate is exact; there is no floating point
//! anywhere in the kernel. A [`Scalar`] is either a `BigRational` (the
//! characteristic-zero case) or an element of F_p for a prime `p` that fits
//! in 62 bits. The characteristic is fixed per computation context and mixing
//! scalars of different characteristic is a programming error, reported by
//! panic rather than silently coerced.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Field characteristic a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Characteristic {
    Zero,
    Prime(u64),
}

impl Characteristic {
    pub fn zero(&self) -> Scalar {
        match self {
            Characteristic::Zero => Scalar::Rat(BigRational::zero()),
            Characteristic::Prime(p) => Scalar::Fp { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Characteristic::Zero => Scalar::Rat(BigRational::one()),
            Characteristic::Prime(p) => Scalar::Fp { v: 1 % *p, p: *p },
        }
    }

    /// The image of the integer `n` in the field.
    pub fn from_int(&self, n: i64) -> Scalar {
        match self {
            Characteristic::Zero => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Characteristic::Prime(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { v: m, p: *p }
            }
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, Characteristic::Prime(_))
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Characteristic::Zero => write!(f, "0"),
            Characteristic::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn characteristic(&self) -> Characteristic {
        match self {
            Scalar::Rat(_) => Characteristic::Zero,
            Scalar::Fp { p, .. } => Characteristic::Prime(*p),
        }
    }

    /// Rational `n/d`. Panics if `d == 0`.
    pub fn rational(n: i64, d: i64) -> Scalar {
        assert!(d != 0, "zero denominator");
        Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn integer(n: i64) -> Scalar {
        Characteristic::Zero.from_int(n)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { v, p } => *v == 1 % *p,
        }
    }

    /// Sign for display purposes; prime-field values never count as negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Fp { v, p } => Scalar::Fp { v: (*p - *v) % *p, p: *p },
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                assert_eq!(p, q, "characteristic mismatch");
                Scalar::Fp { v: (a + b) % p, p: *p }
            }
            _ => panic!("characteristic mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                assert_eq!(p, q, "characteristic mismatch");
                Scalar::Fp { v: mulmod(*a, *b, *p), p: *p }
            }
            _ => panic!("characteristic mismatch"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => {
                assert!(!r.is_zero(), "inverse of zero");
                Scalar::Rat(r.recip())
            }
            Scalar::Fp { v, p } => {
                assert!(*v != 0, "inverse of zero");
                Scalar::Fp { v: invmod(*v, *p), p: *p }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    /// Reduction into F_p. Fails when a denominator vanishes mod p.
    pub fn to_fp(&self, p: u64) -> Option<Scalar> {
        match self {
            Scalar::Fp { v, p: q } => (*q == p).then_some(Scalar::Fp { v: *v, p }),
            Scalar::Rat(r) => {
                let num = bigint_mod(r.numer(), p);
                let den = bigint_mod(r.denom(), p);
                if den == 0 {
                    return None;
                }
                Some(Scalar::Fp { v: mulmod(num, invmod(den, p), p), p })
            }
        }
    }

    /// Rational value as `BigRational`; panics over a prime field.
    pub fn as_rational(&self) -> &BigRational {
        match self {
            Scalar::Rat(r) => r,
            Scalar::Fp { .. } => panic!("prime-field scalar has no rational value"),
        }
    }
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let m = n % BigInt::from(p);
    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
    let digits = m.to_u64_digits().1;
    digits.first().copied().unwrap_or(0)
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invmod(a: u64, p: u64) -> u64 {
    // extended Euclid; p prime, a != 0 mod p
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "not invertible");
    (t.rem_euclid(p as i128)) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let a = Scalar::rational(1, 3);
        let b = Scalar::rational(1, 6);
        assert_eq!(a.add(&b), Scalar::rational(1, 2));
        assert_eq!(a.sub(&b), Scalar::rational(1, 6));
        assert_eq!(a.mul(&b), Scalar::rational(1, 18));
        assert_eq!(a.div(&b), Scalar::integer(2));
    }

    #[test]
    fn prime_field_inverse() {
        let ch = Characteristic::Prime(7);
        let a = ch.from_int(3);
        assert_eq!(a.mul(&a.inv()), ch.one());
        let b = ch.from_int(-1);
        assert_eq!(b, ch.from_int(6));
    }

    #[test]
    fn rational_to_fp_rejects_bad_denominator() {
        let a = Scalar::rational(1, 7);
        assert!(a.to_fp(7).is_none());
        assert_eq!(a.to_fp(5), Some(Characteristic::Prime(5).from_int(3)));
    }

    #[test]
    #[should_panic(expected = "characteristic mismatch")]
    fn mixing_characteristics_panics() {
        let _ = Scalar::integer(1).add(&Characteristic::Prime(5).one());
    }
}
