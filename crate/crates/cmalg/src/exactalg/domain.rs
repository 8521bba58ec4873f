//! Scalar rings. A `Domain` is a context object carrying the arithmetic, so the prime of a
//! prime field can be chosen at run time.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A Euclidean domain (ℤ) or a field (ℚ, 𝔽_p) with exact arithmetic.
pub trait Domain: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Zero + One + Send + Sync;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn from_int(&self, v: &BigInt) -> Self::Elem;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    /// Inverse of a unit. Panics on non-units; callers check `is_unit` first.
    fn unit_inverse(&self, a: &Self::Elem) -> Self::Elem;
    /// Division with remainder, the remainder strictly smaller than `b` in the Euclidean size.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);
    /// Canonical associate of `a` and the unit `u` with `a·u` equal to it.
    fn normalize(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);
    /// Pivot heuristic: smaller is preferred.
    fn size(&self, a: &Self::Elem) -> u64;
    fn is_field(&self) -> bool;
    /// 0 for ℤ and ℚ.
    fn characteristic(&self) -> u64;
    /// Integer value of an element of ℤ (or the representative in [0, p) for 𝔽_p).
    fn to_integer(&self, a: &Self::Elem) -> Option<BigInt>;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    /// Strict order used to choose pivots; must decrease along Euclidean remainders.
    fn smaller(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.size(a) < self.size(b)
    }
    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_int(&BigInt::from(v))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn divides(&self, b: &Self::Elem, a: &Self::Elem) -> bool {
        if b.is_zero() {
            return a.is_zero();
        }
        self.div_rem(a, b).1.is_zero()
    }
    /// Exact quotient `a / b`, if it exists.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        if b.is_zero() {
            return if a.is_zero() { Some(Self::Elem::zero()) } else { None };
        }
        let (q, r) = self.div_rem(a, b);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
    /// Canonical representative of `a` modulo `m` (`m` zero means no reduction).
    fn reduce_mod(&self, a: &Self::Elem, m: &Self::Elem) -> Self::Elem {
        if m.is_zero() {
            a.clone()
        } else {
            self.div_rem(a, m).1
        }
    }
}

/// The integers with `BigInt` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

impl Domain for Integers {
    type Elem = BigInt;

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn from_int(&self, v: &BigInt) -> BigInt {
        v.clone()
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn unit_inverse(&self, a: &BigInt) -> BigInt {
        assert!(self.is_unit(a), "not a unit: {a}");
        a.clone()
    }
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        // floor division, remainder in [0, |b|)
        let (q, r) = a.div_mod_floor(b);
        if r.is_negative() {
            if b.is_positive() {
                (q - 1, r + b)
            } else {
                (q + 1, r - b)
            }
        } else {
            (q, r)
        }
    }
    fn normalize(&self, a: &BigInt) -> (BigInt, BigInt) {
        if a.is_negative() {
            (-a, -BigInt::one())
        } else {
            (a.clone(), BigInt::one())
        }
    }
    fn size(&self, a: &BigInt) -> u64 {
        a.bits()
    }
    fn smaller(&self, a: &BigInt, b: &BigInt) -> bool {
        a.magnitude() < b.magnitude()
    }
    fn is_field(&self) -> bool {
        false
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn to_integer(&self, a: &BigInt) -> Option<BigInt> {
        Some(a.clone())
    }
    fn fmt_elem(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

/// The scalar ring of a computation. Elements are `BigRational`s; over 𝔽_p they are kept as
/// integers in [0, p), over ℤ as integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Rationals,
    PrimeField(u64),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Coefficients {
    pub fn prime_field(p: u64) -> Result<Coefficients> {
        if is_prime(p) {
            Ok(Coefficients::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            Coefficients::PrimeField(p) => Some(*p),
            _ => None,
        }
    }

    /// Reduces an arbitrary rational into this ring. Fails when a denominator is not
    /// invertible (any denominator over ℤ, multiples of p over 𝔽_p).
    pub fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        match self {
            Coefficients::Rationals => Ok(q.clone()),
            Coefficients::Integers => {
                if q.is_integer() {
                    Ok(q.clone())
                } else {
                    Err(Error::NonInvertibleDenominator(q.denom().to_u64().unwrap_or(0)))
                }
            }
            Coefficients::PrimeField(p) => {
                let pb = BigInt::from(*p);
                let den = q.denom().mod_floor(&pb);
                if den.is_zero() {
                    return Err(Error::NonInvertibleDenominator(q.denom().to_u64().unwrap_or(0)));
                }
                let inv = den.modpow(&(&pb - 2u32), &pb);
                Ok(BigRational::from_integer((q.numer() * inv).mod_floor(&pb)))
            }
        }
    }

    /// Whether the integer k is invertible here.
    pub fn integer_invertible(&self, k: u64) -> bool {
        match self {
            Coefficients::Rationals => k != 0,
            Coefficients::Integers => k == 1,
            Coefficients::PrimeField(p) => !k.is_multiple_of(*p),
        }
    }

    fn reduce(&self, a: BigRational) -> BigRational {
        match self {
            Coefficients::PrimeField(p) => {
                let pb = BigInt::from(*p);
                BigRational::from_integer(a.to_integer().mod_floor(&pb))
            }
            _ => a,
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Rationals => write!(f, "Q"),
            Coefficients::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

impl Domain for Coefficients {
    type Elem = BigRational;

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a + b)
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a - b)
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a * b)
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        self.reduce(-a)
    }
    fn from_int(&self, v: &BigInt) -> BigRational {
        self.reduce(BigRational::from_integer(v.clone()))
    }
    fn is_unit(&self, a: &BigRational) -> bool {
        match self {
            Coefficients::Integers => a.abs().is_one(),
            _ => !a.is_zero(),
        }
    }
    fn unit_inverse(&self, a: &BigRational) -> BigRational {
        assert!(self.is_unit(a), "not a unit");
        match self {
            Coefficients::PrimeField(p) => {
                let pb = BigInt::from(*p);
                BigRational::from_integer(a.to_integer().modpow(&(&pb - 2u32), &pb))
            }
            _ => a.recip(),
        }
    }
    fn div_rem(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        match self {
            Coefficients::Integers => {
                let (q, r) = Integers.div_rem(&a.to_integer(), &b.to_integer());
                (BigRational::from_integer(q), BigRational::from_integer(r))
            }
            _ => (self.mul(a, &self.unit_inverse(b)), BigRational::zero()),
        }
    }
    fn normalize(&self, a: &BigRational) -> (BigRational, BigRational) {
        match self {
            Coefficients::Integers => {
                if a.is_negative() {
                    (-a, -BigRational::one())
                } else {
                    (a.clone(), BigRational::one())
                }
            }
            _ => {
                if a.is_zero() {
                    (a.clone(), BigRational::one())
                } else {
                    (BigRational::one(), self.unit_inverse(a))
                }
            }
        }
    }
    fn size(&self, a: &BigRational) -> u64 {
        match self {
            Coefficients::PrimeField(_) => 0,
            _ => a.numer().bits() + a.denom().bits(),
        }
    }
    fn is_field(&self) -> bool {
        !matches!(self, Coefficients::Integers)
    }
    fn characteristic(&self) -> u64 {
        self.prime().unwrap_or(0)
    }
    fn to_integer(&self, a: &BigRational) -> Option<BigInt> {
        if a.is_integer() {
            Some(a.to_integer())
        } else {
            None
        }
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }
}
