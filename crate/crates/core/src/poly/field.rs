//! Coefficient fields: the rationals and prime fields `F_p`.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::FieldSpecError;

/// Default prime for characteristic-p verification runs.
pub const DEFAULT_PRIME: u32 = 32003;

/// Runtime description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientField {
    Rational,
    Prime(u32),
}

impl CoefficientField {
    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::Rational => 0,
            CoefficientField::Prime(p) => *p as u64,
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rational => write!(f, "q"),
            CoefficientField::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for CoefficientField {
    type Err = FieldSpecError;

    /// Accepts `q` (rationals) or `fp:P` with `P` a prime below 2^31.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(CoefficientField::Rational);
        }
        let digits = s
            .strip_prefix("fp:")
            .ok_or_else(|| FieldSpecError::Malformed(s.to_string()))?;
        let p: u64 = digits.parse().map_err(|_| FieldSpecError::Malformed(s.to_string()))?;
        let p = check_prime(p)?;
        Ok(CoefficientField::Prime(p))
    }
}

/// Validates that `p` is a prime usable as a word-sized modulus.
pub fn check_prime(p: u64) -> Result<u32, FieldSpecError> {
    if p >= (1 << 31) {
        return Err(FieldSpecError::TooLarge(p));
    }
    if !is_prime(p) {
        return Err(FieldSpecError::NotPrime(p));
    }
    Ok(p as u32)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic over a coefficient field.
///
/// Field values are plain data; the field object carries any parameters
/// (the modulus for `F_p`), so elements of different prime fields must
/// never be mixed.
// `from_*` take `&self` because the field object carries the modulus.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// `num/den` as a field element; `None` when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;
    /// Sign used when printing: true if the canonical representative is negative.
    fn is_negative(&self, a: &Self::Elem) -> bool;
    /// Writes the absolute value of the canonical representative.
    fn write_abs(&self, a: &Self::Elem, out: &mut String);
    fn descriptor(&self) -> CoefficientField;

    fn characteristic(&self) -> u64 {
        self.descriptor().characteristic()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn to_display(&self, a: &Self::Elem) -> String {
        let mut s = String::new();
        if self.is_negative(a) {
            s.push('-');
        }
        self.write_abs(a, &mut s);
        s
    }
}

/// The field of rational numbers, with reduced big-integer fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
    fn write_abs(&self, a: &BigRational, out: &mut String) {
        let a = a.abs();
        out.push_str(&a.numer().to_string());
        if !a.denom().is_one() {
            out.push('/');
            out.push_str(&a.denom().to_string());
        }
    }
    fn descriptor(&self) -> CoefficientField {
        CoefficientField::Rational
    }
}

/// The prime field `F_p` for a word-sized prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, FieldSpecError> {
        let p = check_prime(p as u64)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce_big(&self, n: &BigInt) -> u32 {
        let r = n % BigInt::from(self.p);
        let r = if r.is_negative() { r + BigInt::from(self.p) } else { r };
        r.to_u32().expect("residue fits in u32")
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i64) as u32)
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<u32> {
        let d = self.reduce_big(den);
        let n = self.reduce_big(num);
        self.inv(&d).map(|di| self.mul(&n, &di))
    }
    fn is_negative(&self, a: &u32) -> bool {
        *a > self.p / 2
    }
    fn write_abs(&self, a: &u32, out: &mut String) {
        let v = if self.is_negative(a) { self.p - a } else { *a };
        out.push_str(&v.to_string());
    }
    fn descriptor(&self) -> CoefficientField {
        CoefficientField::Prime(self.p)
    }
}
