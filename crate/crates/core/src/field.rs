//! Coefficient fields: prime fields `F_p` (word-sized) and the rationals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The default prime used for random instances.
pub const DEFAULT_PRIME: u32 = 32003;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is not supported (need p >= 5)")]
    SmallCharacteristic(u64),
    #[error("prime {0} does not fit in 32 bits")]
    TooLarge(u64),
    #[error("cannot parse field description `{0}` (expected `fp:P`, `fp P` or `q`)")]
    Syntax(String),
}

/// Runtime description of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    PrimeField(u32),
    Rationals,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p < 5 {
            return Err(if is_prime(p) {
                FieldError::SmallCharacteristic(p)
            } else {
                FieldError::NotPrime(p)
            });
        }
        if p > u32::MAX as u64 {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p as u32))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::PrimeField(p) => *p as u64,
            FieldSpec::Rationals => 0,
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::PrimeField(DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::PrimeField(p) => write!(f, "fp:{p}"),
            FieldSpec::Rationals => f.write_str("q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("qq") {
            return Ok(FieldSpec::Rationals);
        }
        let rest = t
            .strip_prefix("fp")
            .or_else(|| t.strip_prefix("Fp"))
            .or_else(|| t.strip_prefix("FP"))
            .ok_or_else(|| FieldError::Syntax(s.to_string()))?;
        let rest = rest.trim_start_matches([':', ' ', '\t']);
        let p: u64 = rest.trim().parse().map_err(|_| FieldError::Syntax(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

/// Deterministic trial division; primes here are below 2^32.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Exact coefficient arithmetic.
///
/// Implementations are cheap to clone; all operations take the field by reference
/// so that runtime parameters (the modulus) stay out of the element type.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// `num / den` as a field element, `None` if `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;
    /// Sign and absolute value text used by the printer.
    fn to_signed(&self, a: &Self::Elem) -> (bool, String);
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    /// `acc - c * b`.
    fn mul_sub(&self, acc: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(acc, &self.mul(c, b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The prime field `Z/pZ`, elements stored as canonical residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        match FieldSpec::prime(p)? {
            FieldSpec::PrimeField(p) => Ok(Fp { p }),
            FieldSpec::Rationals => unreachable!(),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce_u64(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }
}

impl Default for Fp {
    fn default() -> Self {
        Fp { p: DEFAULT_PRIME }
    }
}

impl Field for Fp {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce_u64(*a as u64 * *b as u64)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, *a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        Some(t.rem_euclid(self.p as i64) as u32)
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<u32> {
        let p = BigInt::from(self.p);
        let n = num.mod_floor(&p).to_u32()?;
        let d = den.mod_floor(&p).to_u32()?;
        self.inv(&d).map(|di| self.mul(&n, &di))
    }
    fn to_signed(&self, a: &u32) -> (bool, String) {
        if *a > self.p / 2 {
            (true, (self.p - a).to_string())
        } else {
            (false, a.to_string())
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
    #[inline]
    fn mul_sub(&self, acc: &u32, c: &u32, b: &u32) -> u32 {
        let p = self.p as u64;
        ((*acc as u64 + (p - *c as u64) * *b as u64) % p) as u32
    }
}

/// The rational numbers, stored as reduced fractions of big integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        (!den.is_zero()).then(|| BigRational::new(num.clone(), den.clone()))
    }
    fn to_signed(&self, a: &BigRational) -> (bool, String) {
        let abs = a.abs();
        let text = if abs.denom().is_one() {
            abs.numer().to_string()
        } else {
            format!("{}/{}", abs.numer(), abs.denom())
        };
        (a.is_negative(), text)
    }
    /// Small integers; dense random rationals are not useful at this scale.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-9..=9))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_small_and_composite() {
        assert_eq!(FieldSpec::prime(2), Err(FieldError::SmallCharacteristic(2)));
        assert_eq!(FieldSpec::prime(3), Err(FieldError::SmallCharacteristic(3)));
        assert_eq!(FieldSpec::prime(9), Err(FieldError::NotPrime(9)));
        assert_eq!(FieldSpec::prime(4), Err(FieldError::NotPrime(4)));
        assert!(FieldSpec::prime(5).is_ok());
        assert!(FieldSpec::prime(65537).is_ok());
    }

    #[test]
    fn parses_field_descriptions() {
        assert_eq!("fp:32003".parse::<FieldSpec>(), Ok(FieldSpec::PrimeField(32003)));
        assert_eq!("fp 7".parse::<FieldSpec>(), Ok(FieldSpec::PrimeField(7)));
        assert_eq!("q".parse::<FieldSpec>(), Ok(FieldSpec::Rationals));
        assert!("fp:32004".parse::<FieldSpec>().is_err());
        assert!("gf(9)".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::PrimeField(7).to_string(), "fp:7");
    }

    #[test]
    fn inverses_in_prime_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [5u64, 7, 32003, 65537, 2147483647] {
            let f = Fp::new(p).unwrap();
            for _ in 0..1000 {
                let a = f.random(&mut rng);
                if a == 0 {
                    assert!(f.inv(&a).is_none());
                    continue;
                }
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn modular_reduction() {
        let f = Fp::new(7).unwrap();
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.mul_sub(&3, &2, &5), f.sub(&3, &f.mul(&2, &5)));
        let half = f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(f.mul(&half, &2), 1);
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(14)).is_none());
    }

    #[test]
    fn rational_inverse() {
        let q = Rationals;
        let a = q.from_ratio(&BigInt::from(-3), &BigInt::from(4)).unwrap();
        assert!(q.is_one(&q.mul(&a, &q.inv(&a).unwrap())));
        assert_eq!(q.to_signed(&a), (true, "3/4".to_string()));
    }
}
