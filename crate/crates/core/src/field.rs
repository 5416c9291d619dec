//! Exact coefficient fields: the rationals and prime fields F_p.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

/// Moduli are kept below 2^31 so residue products fit in 64-bit intermediates.
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is neither 0 nor prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the 2^31 limit")]
    ModulusTooLarge(u64),
    #[error("unknown field spelling `{0}` (expected `Q` or `F<p>`)")]
    BadName(String),
}

/// An exact coefficient field: characteristic 0 (arbitrary-precision
/// rationals) or a prime p < 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    /// The rational field Q.
    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    /// The prime field F_p. Primality of `p` is verified by trial division.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p >= MAX_MODULUS {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec { characteristic: p })
    }

    /// Field of the given characteristic; 0 means Q.
    pub fn new(characteristic: u64) -> Result<Self, FieldError> {
        if characteristic == 0 {
            Ok(Self::rationals())
        } else {
            Self::prime(characteristic)
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rationals(&self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(&self) -> FieldElement {
        self.from_integer(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_integer(1)
    }

    /// Canonical image of a signed integer in this field.
    pub fn from_integer(&self, n: i64) -> FieldElement {
        match self.characteristic {
            0 => FieldElement::Rational(BigRational::from_integer(BigInt::from(n))),
            p => {
                let r = n.rem_euclid(p as i64) as u64;
                FieldElement::Modular {
                    residue: r,
                    modulus: p,
                }
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match self.characteristic {
            0 => FieldElement::Rational(BigRational::from_integer(n.clone())),
            p => {
                let m = BigInt::from(p);
                let r = ((n % &m) + &m) % &m;
                let (_, digits) = r.to_u64_digits();
                FieldElement::Modular {
                    residue: digits.first().copied().unwrap_or(0),
                    modulus: p,
                }
            }
        }
    }

    /// Exact rational num/den; only valid over Q.
    ///
    /// Panics if called on a prime field (the textual grammar already rejects
    /// fraction literals there).
    pub fn from_ratio(&self, num: BigInt, den: BigInt) -> FieldElement {
        assert!(
            self.is_rationals(),
            "fraction values are only defined over Q"
        );
        assert!(!den.is_zero(), "zero denominator");
        FieldElement::Rational(BigRational::new(num, den))
    }

    /// Deterministic sample: uniform residue in char p; over Q a rational
    /// with |numerator| and denominator at most `height_bound`.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, height_bound: u64) -> FieldElement {
        assert!(height_bound >= 1, "height_bound must be at least 1");
        match self.characteristic {
            0 => {
                let h = height_bound as i64;
                let num = rng.random_range(-h..=h);
                let den = rng.random_range(1..=h);
                FieldElement::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
            }
            p => FieldElement::Modular {
                residue: rng.random_range(0..p),
                modulus: p,
            },
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Accepts the spellings `Q` and `F<p>`, e.g. `F3`.
    fn from_str(s: &str) -> Result<Self, FieldError> {
        if s == "Q" {
            return Ok(FieldSpec::rationals());
        }
        if let Some(digits) = s.strip_prefix('F') {
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                let p: u64 = digits
                    .parse()
                    .map_err(|_| FieldError::BadName(s.to_string()))?;
                return FieldSpec::prime(p);
            }
        }
        Err(FieldError::BadName(s.to_string()))
    }
}

/// An element of a [`FieldSpec`]. Representations are canonical, so
/// structural equality is semantic equality: rationals are stored in lowest
/// terms with positive denominator, residues in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Modular { residue: u64, modulus: u64 },
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElement::Rational(_) => FieldSpec::rationals(),
            FieldElement::Modular { modulus, .. } => FieldSpec {
                characteristic: *modulus,
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Modular { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Modular { residue, .. } => *residue == 1,
        }
    }

    pub fn add(&self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a + b)
            }
            (
                FieldElement::Modular {
                    residue: a,
                    modulus: p,
                },
                FieldElement::Modular {
                    residue: b,
                    modulus: q,
                },
            ) if p == q => {
                let mut r = a + b;
                if r >= *p {
                    r -= p;
                }
                FieldElement::Modular {
                    residue: r,
                    modulus: *p,
                }
            }
            _ => panic!("field mismatch: {} vs {}", self.spec(), rhs.spec()),
        }
    }

    pub fn sub(&self, rhs: &FieldElement) -> FieldElement {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a * b)
            }
            (
                FieldElement::Modular {
                    residue: a,
                    modulus: p,
                },
                FieldElement::Modular {
                    residue: b,
                    modulus: q,
                },
            ) if p == q => FieldElement::Modular {
                residue: (a * b) % p,
                modulus: *p,
            },
            _ => panic!("field mismatch: {} vs {}", self.spec(), rhs.spec()),
        }
    }

    pub fn neg(&self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Modular { residue, modulus } => FieldElement::Modular {
                residue: if *residue == 0 { 0 } else { modulus - residue },
                modulus: *modulus,
            },
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => {
                assert!(!a.is_zero(), "division by zero");
                FieldElement::Rational(a.recip())
            }
            FieldElement::Modular { residue, modulus } => {
                assert!(*residue != 0, "division by zero in F{modulus}");
                FieldElement::Modular {
                    residue: mod_inverse(*residue, *modulus),
                    modulus: *modulus,
                }
            }
        }
    }

    pub fn div(&self, rhs: &FieldElement) -> FieldElement {
        self.mul(&rhs.inv())
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.spec().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Residue in `[0, p)`; only valid on prime-field elements.
    pub fn residue(&self) -> u64 {
        match self {
            FieldElement::Modular { residue, .. } => *residue,
            FieldElement::Rational(_) => panic!("residue() called on a rational"),
        }
    }

    pub fn as_rational(&self) -> &BigRational {
        match self {
            FieldElement::Rational(r) => r,
            FieldElement::Modular { .. } => panic!("as_rational() called on a residue"),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Modular { residue, .. } => write!(f, "{residue}"),
        }
    }
}

/// Deterministic primality by trial division; adequate below 2^31.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Inverse of `a` modulo prime `p` via the extended Euclidean algorithm.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "modulus not prime or element not invertible");
    t0.rem_euclid(p as i64) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn modular_add_wraps() {
        let f5 = fp(5);
        assert_eq!(f5.from_integer(3).add(&f5.from_integer(4)), f5.from_integer(2));
    }

    #[test]
    fn rational_add_reduces() {
        let q = FieldSpec::rationals();
        let half = q.from_ratio(BigInt::from(1), BigInt::from(2));
        let third = q.from_ratio(BigInt::from(1), BigInt::from(3));
        assert_eq!(half.add(&third), q.from_ratio(BigInt::from(5), BigInt::from(6)));
    }

    #[test]
    fn modular_mul_hits_one() {
        let f7 = fp(7);
        assert_eq!(f7.from_integer(3).mul(&f7.from_integer(5)), f7.one());
    }

    #[test]
    fn inverses() {
        let f7 = fp(7);
        assert_eq!(f7.from_integer(3).inv(), f7.from_integer(5));
        let q = FieldSpec::rationals();
        let two_thirds = q.from_ratio(BigInt::from(2), BigInt::from(3));
        assert_eq!(two_thirds.inv(), q.from_ratio(BigInt::from(3), BigInt::from(2)));
        let f2 = fp(2);
        assert_eq!(f2.one().inv(), f2.one());
    }

    #[test]
    #[should_panic(expected = "division by zero")]
    fn zero_inverse_panics() {
        fp(5).zero().inv();
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn field_mismatch_panics() {
        let _ = fp(5).one().add(&fp(7).one());
    }

    #[test]
    fn spec_construction_rejects_composites() {
        assert_eq!(FieldSpec::new(6), Err(FieldError::NotPrime(6)));
        assert_eq!(FieldSpec::new(1), Err(FieldError::NotPrime(1)));
        assert!(FieldSpec::new(0).is_ok());
        assert!(FieldSpec::new(2147483647).is_ok()); // 2^31 - 1 is prime
        assert!(matches!(
            FieldSpec::new(1 << 31),
            Err(FieldError::ModulusTooLarge(_))
        ));
    }

    #[test]
    fn spelling_round_trip() {
        for name in ["Q", "F3", "F101"] {
            let spec: FieldSpec = name.parse().unwrap();
            assert_eq!(spec.to_string(), name);
        }
        assert!("F4".parse::<FieldSpec>().is_err());
        assert!("GF7".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn random_element_is_deterministic_and_bounded() {
        let f2 = fp(2);
        let a = f2.random_element(&mut ChaCha8Rng::seed_from_u64(9), 1);
        let b = f2.random_element(&mut ChaCha8Rng::seed_from_u64(9), 1);
        assert_eq!(a, b);
        assert!(a.residue() < 2);

        let q = FieldSpec::rationals();
        for seed in 0..50 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = q.random_element(&mut rng, 10);
            let r = x.as_rational();
            assert!(r.numer().abs() <= BigInt::from(10));
            assert!(r.denom().abs() <= BigInt::from(10));
        }
    }

    #[test]
    fn canonical_equality_matches_subtraction() {
        let q = FieldSpec::rationals();
        let a = q.from_ratio(BigInt::from(2), BigInt::from(4));
        let b = q.from_ratio(BigInt::from(1), BigInt::from(2));
        assert_eq!(a, b);
        assert!(a.sub(&b).is_zero());
        let c = q.from_ratio(BigInt::from(-1), BigInt::from(-2));
        assert_eq!(c, b);
    }
}
