//! Exact coefficient fields: arbitrary-precision rationals and odd prime
//! fields `F_p`.
//!
//! Every other module is generic over [`Field`]. The field object itself is
//! small and cheap to clone; it travels inside polynomials so that call sites
//! do not have to thread a context around.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// An exact field with the handful of operations the kernel needs.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// A canonical square root of -1, if the field has one. For `F_p` with
    /// p = 1 mod 4 the smaller of the two roots is returned.
    fn sqrt_minus_one(&self) -> Option<Self::Elem>;
    /// Uniform sample (for `Q`: a bounded-height surrogate; see module docs).
    fn sample<R: Rng>(&self, rng: &mut R) -> Self::Elem;
    fn sample_nonzero<R: Rng>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.sample(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }
    fn fmt_elem(&self, a: &Self::Elem) -> String;
    /// Short human-readable field name, e.g. `F_10009` or `Q`.
    fn describe(&self) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    /// True when the element formats without a leading minus sign; purely a
    /// printing aid.
    fn prints_plain(&self, a: &Self::Elem) -> bool {
        !self.fmt_elem(a).starts_with('-')
    }
}

// ---------------------------------------------------------------------------
// Prime fields
// ---------------------------------------------------------------------------

/// `F_p` for an odd prime `p < 2^31`. Residues are stored in `[0, p)` so
/// products fit in a `u64` without widening.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    // deterministic Miller-Rabin, valid far beyond 2^31
    let mut d = p - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if a % p == 0 {
            continue;
        }
        let mut x = pow_mod(a % p, d, p);
        if x == 1 || x == p - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = (x as u128 * x as u128 % p as u128) as u64;
            if x == p - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_odd_prime(p) {
            return Err(Error::NotAnOddPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> u64 {
        self.from_i64(v)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(pow_mod(*a, self.p - 2, self.p))
        }
    }
    fn from_i64(&self, v: i64) -> u64 {
        let m = v.rem_euclid(self.p as i64);
        m as u64
    }
    fn sqrt_minus_one(&self) -> Option<u64> {
        if self.p % 4 != 1 {
            return None;
        }
        // r = a^((p-1)/4) for the smallest quadratic nonresidue a; take the
        // smaller of the two roots so the choice is canonical.
        let mut a = 2u64;
        loop {
            if pow_mod(a, (self.p - 1) / 2, self.p) == self.p - 1 {
                break;
            }
            a += 1;
        }
        let r = pow_mod(a, (self.p - 1) / 4, self.p);
        Some(r.min(self.p - r))
    }
    fn sample<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn describe(&self) -> String {
        format!("F_{}", self.p)
    }
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

/// The rational numbers. `BigRational` keeps every value in lowest terms with
/// a positive denominator, which is exactly the normalization we need.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
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
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn sqrt_minus_one(&self) -> Option<BigRational> {
        None
    }
    fn sample<R: Rng>(&self, rng: &mut R) -> BigRational {
        // There is no uniform distribution on Q; small nonzero integers are a
        // serviceable surrogate for genericity over an infinite field.
        let v: i64 = rng.gen_range(-1000..=1000);
        self.from_i64(v)
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn describe(&self) -> String {
        "Q".to_string()
    }

    fn prints_plain(&self, a: &BigRational) -> bool {
        !a.is_negative()
    }
}

// ---------------------------------------------------------------------------
// Runtime field selection
// ---------------------------------------------------------------------------

/// Default prime: 10009 = 1 mod 4, so `i` exists, and it is large enough that
/// random genericity failures are vanishingly rare while staying comfortably
/// above every fixture degree.
pub const DEFAULT_PRIME: u64 = 10009;

/// Parsed form of the `--field` flag: `fp:P` or `q`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum FieldSpec {
    Fp(u64),
    Q,
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<FieldSpec> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" {
            return Ok(FieldSpec::Q);
        }
        if let Some(rest) = t.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::Usage(format!("invalid modulus `{rest}`")))?;
            PrimeField::new(p)?;
            return Ok(FieldSpec::Fp(p));
        }
        Err(Error::Usage(format!(
            "invalid field spec `{s}` (expected `fp:P` or `q`)"
        )))
    }

    pub fn describe(&self) -> String {
        match self {
            FieldSpec::Fp(p) => format!("fp:{p}"),
            FieldSpec::Q => "q".to_string(),
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Fp(DEFAULT_PRIME)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn prime_validation() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(10009).is_ok());
        assert!(PrimeField::new(1 << 32).is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let f = PrimeField::new(13).unwrap();
        assert_eq!(f.add(&7, &8), 2);
        assert_eq!(f.sub(&3, &7), 9);
        assert_eq!(f.mul(&5, &5), 12); // 25 = 2*13 - 1
        let inv = f.inv(&5).unwrap();
        assert_eq!(f.mul(&5, &inv), 1);
        assert_eq!(f.from_i64(-1), 12);
    }

    #[test]
    fn sqrt_minus_one_picks_smaller_root() {
        let f = PrimeField::new(13).unwrap();
        let i = f.sqrt_minus_one().unwrap();
        assert_eq!(i, 5); // 5^2 = 25 = -1 mod 13; the other root is 8
        let f = PrimeField::new(10009).unwrap();
        let i = f.sqrt_minus_one().unwrap();
        assert_eq!(f.mul(&i, &i), f.from_i64(-1));
        assert!(i < 10009 - i);
        // p = 3 mod 4 has no root
        let f = PrimeField::new(7).unwrap();
        assert!(f.sqrt_minus_one().is_none());
    }

    #[test]
    fn rational_normalization() {
        let q = Rationals;
        let half = q.div(&q.from_i64(2), &q.from_i64(4)).unwrap();
        assert_eq!(q.fmt_elem(&half), "1/2");
        assert_eq!(q.fmt_elem(&q.from_i64(-3)), "-3");
        assert!(q.sqrt_minus_one().is_none());
    }

    #[test]
    fn field_spec_roundtrip() {
        assert_eq!(FieldSpec::parse("fp:10009").unwrap(), FieldSpec::Fp(10009));
        assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Q);
        assert!(FieldSpec::parse("fp:10").is_err());
        assert!(FieldSpec::parse("r:64").is_err());
    }

    #[test]
    fn nonzero_sampling_is_nonzero() {
        let f = PrimeField::new(13).unwrap();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(0);
        for _ in 0..100 {
            assert_ne!(f.sample_nonzero(&mut rng), 0);
        }
    }
}
