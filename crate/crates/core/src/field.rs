//! Exact scalar arithmetic over the rationals and over prime fields GF(p).
//!
//! Every rank computation in this crate reduces to field arithmetic on these
//! scalars; there is no floating point anywhere. Rationals are backed by
//! arbitrary-precision integers and are kept in lowest terms with a positive
//! denominator; prime-field residues are kept canonical in `[0, p)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;
use std::fmt;

/// The coefficient field of a computation: the rationals or GF(p).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

/// Errors from scalar arithmetic and field construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FieldError {
    /// The operands belong to different fields.
    FieldMismatch,
    DivisionByZero,
    /// The requested GF(p) modulus is not a prime number.
    NonPrimeModulus(u64),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::FieldMismatch => write!(f, "operands belong to different fields"),
            FieldError::DivisionByZero => write!(f, "division by zero"),
            FieldError::NonPrimeModulus(p) => write!(f, "modulus {} is not prime", p),
        }
    }
}

impl std::error::Error for FieldError {}

impl FieldSpec {
    /// Builds GF(p), checking that `p` is prime.
    pub fn prime_field(p: u64) -> Result<FieldSpec, FieldError> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(FieldError::NonPrimeModulus(p))
        }
    }

    /// 0 for the rationals, p for GF(p).
    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(self) -> Scalar {
        self.from_int(1)
    }

    /// Embeds a signed integer into the field.
    pub fn from_int(self, k: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(k))),
            FieldSpec::PrimeField(p) => Scalar::Residue {
                value: (k as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::PrimeField(p) => write!(f, "GF({})", p),
        }
    }
}

/// An exact field element tagged with the field it belongs to.
///
/// Arithmetic never silently mixes fields: combining scalars from different
/// fields is a [`FieldError::FieldMismatch`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

/// One of the four field operations, for the generic dispatcher.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies a field operation to a pair of scalars from the same field.
pub fn field_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, FieldError> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b),
    }
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    /// A rational scalar `num/den`. Panics when `den` is zero.
    pub fn rational(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigint(field: FieldSpec, k: BigInt) -> Scalar {
        match field {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(k)),
            FieldSpec::PrimeField(p) => {
                let m = BigInt::from(p);
                let r = ((k % &m) + &m) % &m;
                let digits = r.to_u64_digits().1;
                Scalar::Residue {
                    value: digits.first().copied().unwrap_or(0),
                    modulus: p,
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q })
                if p == q =>
            {
                Ok(Scalar::Residue {
                    value: addm(*a, *b, *p),
                    modulus: *p,
                })
            }
            _ => Err(FieldError::FieldMismatch),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q })
                if p == q =>
            {
                Ok(Scalar::Residue {
                    value: mulm(*a, *b, *p),
                    modulus: *p,
                })
            }
            _ => Err(FieldError::FieldMismatch),
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        if self.field() != rhs.field() {
            return Err(FieldError::FieldMismatch);
        }
        self.mul(&rhs.inv()?)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match self {
            Scalar::Rational(r) => Ok(Scalar::Rational(r.recip())),
            Scalar::Residue { value, modulus } => Ok(Scalar::Residue {
                value: invm(*value, *modulus).expect("nonzero residue is invertible"),
                modulus: *modulus,
            }),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{}", value),
        }
    }
}

fn addm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invm(a: u64, p: u64) -> Option<u64> {
    // Extended Euclid on (a, p); p prime and a nonzero mod p.
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        let r = r0 - q * r1;
        r0 = r1;
        r1 = r;
        let s = s0 - q * s1;
        s0 = s1;
        s1 = s;
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller–Rabin for machine words.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn powm(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulm(acc, base, p);
        }
        base = mulm(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Draws a scalar for general-position sampling: a uniform integer in
/// `[1, bound]` over the rationals, a uniform nonzero residue over GF(p).
/// Deterministic given the generator state.
pub fn random_scalar<R: Rng + ?Sized>(spec: FieldSpec, rng: &mut R, bound: u64) -> Scalar {
    assert!(bound >= 2, "sampling bound must be at least 2");
    match spec {
        FieldSpec::Rationals => {
            let k = rng.gen_range(1..=bound);
            Scalar::Rational(BigRational::from_integer(BigInt::from(k)))
        }
        FieldSpec::PrimeField(p) => Scalar::Residue {
            value: rng.gen_range(1..p),
            modulus: p,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rational_addition_reduces() {
        let a = Scalar::rational(1, 2);
        let b = Scalar::rational(1, 3);
        assert_eq!(a.add(&b).unwrap(), Scalar::rational(5, 6));
    }

    #[test]
    fn char_two_cancellation() {
        let gf2 = FieldSpec::prime_field(2).unwrap();
        let one = gf2.one();
        assert!(one.add(&one).unwrap().is_zero());
    }

    // Independent oracle: solve 5*x = 3 in GF(7) by extended Euclid done by hand
    // in the test, then compare with the division operator.
    #[test]
    fn gf7_division_matches_euclid_oracle() {
        let gf7 = FieldSpec::prime_field(7).unwrap();
        let three = gf7.from_int(3);
        let five = gf7.from_int(5);
        let mut expected = None;
        for x in 0..7u64 {
            if (5 * x) % 7 == 3 {
                expected = Some(x);
            }
        }
        assert_eq!(expected, Some(2));
        assert_eq!(three.div(&five).unwrap(), gf7.from_int(2));
    }

    #[test]
    fn mismatched_fields_rejected() {
        let a = FieldSpec::Rationals.one();
        let b = FieldSpec::prime_field(5).unwrap().one();
        assert_eq!(a.add(&b), Err(FieldError::FieldMismatch));
        let c = FieldSpec::prime_field(7).unwrap().one();
        assert_eq!(b.mul(&c), Err(FieldError::FieldMismatch));
    }

    #[test]
    fn division_by_zero_rejected() {
        let one = FieldSpec::Rationals.one();
        let zero = FieldSpec::Rationals.zero();
        assert_eq!(one.div(&zero), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn prime_check() {
        assert!(FieldSpec::prime_field(2).is_ok());
        assert!(FieldSpec::prime_field(1009).is_ok());
        assert_eq!(
            FieldSpec::prime_field(4),
            Err(FieldError::NonPrimeModulus(4))
        );
        assert_eq!(
            FieldSpec::prime_field(1),
            Err(FieldError::NonPrimeModulus(1))
        );
    }

    #[test]
    fn sampling_is_deterministic_and_in_range() {
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        let bound = 1u64 << 20;
        for _ in 0..32 {
            let a = random_scalar(FieldSpec::Rationals, &mut r1, bound);
            let b = random_scalar(FieldSpec::Rationals, &mut r2, bound);
            assert_eq!(a, b);
            match a {
                Scalar::Rational(r) => {
                    assert!(r.denom().is_one());
                    let n = r.numer().clone();
                    assert!(n >= BigInt::from(1) && n <= BigInt::from(bound));
                }
                _ => panic!("expected rational"),
            }
        }
        // GF(2) has a single nonzero residue.
        let gf2 = FieldSpec::prime_field(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..8 {
            assert!(random_scalar(gf2, &mut rng, 4).is_one());
        }
    }

    fn rat() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| Scalar::rational(n, d))
    }

    fn gf(p: u64) -> impl Strategy<Value = Scalar> {
        (0..p).prop_map(move |v| Scalar::Residue { value: v, modulus: p })
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in rat(), b in rat(), c in rat()) {
            let ab_c = a.add(&b).unwrap().add(&c).unwrap();
            let a_bc = a.add(&b.add(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let left = a.mul(&b.add(&c).unwrap()).unwrap();
            let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
            }
        }

        #[test]
        fn prime_field_axioms(a in gf(13), b in gf(13), c in gf(13)) {
            let ab_c = a.add(&b).unwrap().add(&c).unwrap();
            let a_bc = a.add(&b.add(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let left = a.mul(&b.add(&c).unwrap()).unwrap();
            let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
            }
        }

        // Canonical form: results of chained arithmetic stay in lowest terms.
        #[test]
        fn rationals_stay_reduced(a in rat(), b in rat()) {
            if !b.is_zero() {
                let q = a.div(&b).unwrap();
                if let Scalar::Rational(r) = &q {
                    let g = num_integer::Integer::gcd(r.numer(), r.denom());
                    prop_assert!(g.is_one() || r.numer().is_zero());
                    prop_assert!(r.denom() > &BigInt::from(0));
                }
            }
        }
    }
}
