//! Exact coefficient arithmetic.
//!
//! Two working fields are provided: [`Rational`] (arbitrary precision, always
//! reduced) and [`GaussianRational`], the rationals with a square root of -1
//! adjoined. Both implement [`Field`], which is what the polynomial, curve and
//! divisor layers are generic over.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact field the rest of the crate can compute over.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_rational(q: Rational) -> Self;

    /// The value as a rational, if it lies in the prime field.
    fn to_rational(&self) -> Option<Rational>;

    fn from_i64(k: i64) -> Self {
        Self::from_rational(Rational::from_integer(k))
    }

    fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            exp >>= 1;
            if exp > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

/// Arbitrary-precision rational number in lowest terms with positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// `numer / denom`, reduced. Fails on a zero denominator.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(k: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(k.into()))
    }

    pub fn from_big(q: BigRational) -> Self {
        Rational(q)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Integer power; negative exponents invert. Fails for `0^negative`.
    pub fn pow_i(&self, exp: i64) -> Result<Self> {
        if exp >= 0 {
            Ok(Field::pow(self, exp as u64))
        } else {
            let inv = self
                .inv()
                .ok_or_else(|| Error::InvalidInput("zero raised to a negative power".into()))?;
            Ok(Field::pow(&inv, exp.unsigned_abs()))
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    fn from_rational(q: Rational) -> Self {
        q
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(BigRational::one())
    }
}

impl From<i64> for Rational {
    fn from(k: i64) -> Self {
        Rational::from_integer(k)
    }
}

impl From<BigInt> for Rational {
    fn from(k: BigInt) -> Self {
        Rational::from_integer(k)
    }
}

macro_rules! rational_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    /// Panics on division by zero, like the primitive types.
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p` or `p/q` with optional sign on `p`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        match s.split_once('/') {
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rational::from_integer(n))
            }
            Some((p, q)) => {
                let n: BigInt = p.trim().parse().map_err(|_| bad())?;
                let d: BigInt = q.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(Rational(BigRational::new(n, d)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

struct RationalVisitor;

impl<'de> Visitor<'de> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a rational number as a \"p/q\" string or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
        v.parse().map_err(|e: Error| E::custom(e.to_string()))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
        Ok(Rational::from_integer(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
        Ok(Rational::from_integer(v))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_any(RationalVisitor)
    }
}

// ---------------------------------------------------------------------------
// Gaussian rationals
// ---------------------------------------------------------------------------

/// `re + im·i` with `i² = -1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational::new(re, Rational::zero())
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`, zero exactly when the value is.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Field for GaussianRational {
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        let n_inv = n.inv()?;
        Some(GaussianRational::new(
            &self.re * &n_inv,
            -(&self.im * &n_inv),
        ))
    }

    fn from_rational(q: Rational) -> Self {
        GaussianRational::real(q)
    }

    fn to_rational(&self) -> Option<Rational> {
        self.is_real().then(|| self.re.clone())
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::real(Rational::one())
    }
}

impl From<Rational> for GaussianRational {
    fn from(q: Rational) -> Self {
        GaussianRational::real(q)
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussianRational::new(re, im)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "({})i", self.im),
            (false, false) => write!(f, "{} + ({})i", self.re, self.im),
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Real values serialize as plain rational strings, others as
/// `{"re": "p/q", "im": "p/q"}`.
impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_real() {
            self.re.serialize(serializer)
        } else {
            #[derive(Serialize)]
            struct Parts<'a> {
                re: &'a Rational,
                im: &'a Rational,
            }
            Parts {
                re: &self.re,
                im: &self.im,
            }
            .serialize(serializer)
        }
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Real(Rational),
            Parts { re: Rational, im: Rational },
        }
        Ok(match Repr::deserialize(deserializer)? {
            Repr::Real(re) => GaussianRational::real(re),
            Repr::Parts { re, im } => GaussianRational::new(re, im),
        })
    }
}

// ---------------------------------------------------------------------------
// Binomials and valuations
// ---------------------------------------------------------------------------

/// Generalized binomial coefficient `r(r-1)…(r-k+1) / k!`.
pub fn gen_binom(r: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for j in 0..k {
        let factor = r - &Rational::from_integer(j as i64);
        acc = acc * factor / Rational::from_integer((j + 1) as i64);
    }
    acc
}

/// Exponent of a prime in a rational number; `Infinity` only for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PAdicValue {
    Finite(i64),
    Infinity,
}

impl PAdicValue {
    pub fn finite(self) -> Option<i64> {
        match self {
            PAdicValue::Finite(v) => Some(v),
            PAdicValue::Infinity => None,
        }
    }
}

impl PartialOrd for PAdicValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PAdicValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PAdicValue::Infinity, PAdicValue::Infinity) => Ordering::Equal,
            (PAdicValue::Infinity, _) => Ordering::Greater,
            (_, PAdicValue::Infinity) => Ordering::Less,
            (PAdicValue::Finite(a), PAdicValue::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for PAdicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PAdicValue::Finite(v) => write!(f, "{v}"),
            PAdicValue::Infinity => f.write_str("+inf"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut q = 3u64;
    while q.saturating_mul(q) <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 2;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn integer_valuation(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `v_p(q) = v_p(numerator) - v_p(denominator)`.
pub fn padic_valuation(q: &Rational, p: u64) -> Result<PAdicValue> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if q.is_zero() {
        return Ok(PAdicValue::Infinity);
    }
    let p = BigInt::from(p);
    Ok(PAdicValue::Finite(
        integer_valuation(q.numer(), &p) - integer_valuation(q.denom(), &p),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn rationals_are_reduced() {
        let r = Rational::new(6, -4).unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(r.denom(), &BigInt::from(2));
        assert!(Rational::new(1, 0).is_err());
        assert_eq!(q("10/5"), Rational::from(2));
        assert_eq!(q("-0/7"), Rational::zero());
    }

    #[test]
    fn rational_parse_rejects_garbage() {
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!("1/2/3".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn rational_json_is_string() {
        let r = q("35/4");
        assert_eq!(serde_json::to_string(&r).unwrap(), "\"35/4\"");
        let back: Rational = serde_json::from_str("\"35/4\"").unwrap();
        assert_eq!(back, r);
        let int: Rational = serde_json::from_str("7").unwrap();
        assert_eq!(int, Rational::from(7));
    }

    #[test]
    fn gaussian_json_shapes() {
        let z = GaussianRational::new(q("0"), q("5/2"));
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"re":"0","im":"5/2"}"#);
        let back: GaussianRational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
        let real = GaussianRational::real(q("-3"));
        assert_eq!(serde_json::to_string(&real).unwrap(), "\"-3\"");
    }

    #[test]
    fn gaussian_field_basics() {
        let i = GaussianRational::i();
        assert_eq!(i.clone() * i.clone(), -GaussianRational::one());
        let z = GaussianRational::new(q("3/2"), q("-2"));
        let inv = z.inv().unwrap();
        assert_eq!(z.clone() * inv, GaussianRational::one());
        assert_eq!(z.conj().conj(), z);
        assert!(GaussianRational::zero().inv().is_none());
        assert!(GaussianRational::zero().norm().is_zero());
    }

    #[test]
    fn gen_binom_examples() {
        assert_eq!(gen_binom(&q("7/2"), 0), Rational::one());
        // (7/2)(5/2)/2
        assert_eq!(gen_binom(&q("7/2"), 2), q("35/8"));
        assert_eq!(gen_binom(&q("5/2"), 1), q("5/2"));
        // integer top agrees with the ordinary coefficient and vanishes past it
        assert_eq!(gen_binom(&q("5"), 2), Rational::from(10));
        assert_eq!(gen_binom(&q("3"), 5), Rational::zero());
    }

    #[test]
    fn padic_examples() {
        assert_eq!(padic_valuation(&q("0"), 3).unwrap(), PAdicValue::Infinity);
        assert_eq!(
            padic_valuation(&q("35/8"), 2).unwrap(),
            PAdicValue::Finite(-3)
        );
        assert_eq!(padic_valuation(&q("12"), 2).unwrap(), PAdicValue::Finite(2));
        assert!(padic_valuation(&q("12"), 4).is_err());
        assert!(padic_valuation(&q("12"), 1).is_err());
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(prime_divisors(60), vec![2, 3, 5]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
        assert_eq!(prime_divisors(49), vec![7]);
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-400i64..400, 1i64..60).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    fn arb_noninteger() -> impl Strategy<Value = Rational> {
        arb_rational().prop_filter("non-integer", |r| !r.is_integer())
    }

    proptest! {
        #[test]
        fn pascal_identity(r in arb_rational(), k in 1u64..12) {
            let one = Rational::one();
            let lhs = gen_binom(&r, k);
            let rhs = gen_binom(&(&r - &one), k) + gen_binom(&(&r - &one), k - 1);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn binom_of_noninteger_never_vanishes(r in arb_noninteger(), k in 0u64..15) {
            prop_assert!(!gen_binom(&r, k).is_zero());
        }

        #[test]
        fn valuation_is_additive(a in arb_rational(), b in arb_rational(), pi in 0usize..4) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let p = [2u64, 3, 5, 7][pi];
            let va = padic_valuation(&a, p).unwrap().finite().unwrap();
            let vb = padic_valuation(&b, p).unwrap().finite().unwrap();
            let vab = padic_valuation(&(&a * &b), p).unwrap().finite().unwrap();
            prop_assert_eq!(vab, va + vb);
        }

        #[test]
        fn rational_string_roundtrip(r in arb_rational()) {
            prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
        }
    }
}
