//! Dense univariate polynomials over an exact [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalars::Field;

/// Polynomial with coefficients in ascending degree order.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and its degree is `None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Poly::monomial(F::one(), 1)
    }

    /// `c·x^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// `x - a`.
    pub fn x_minus(a: F) -> Self {
        Poly::new(vec![-a, F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, at: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * at.clone() + c.clone())
    }

    pub fn scale(&self, by: &F) -> Self {
        if by.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|c| c.clone() * by.clone()).collect())
    }

    /// Multiply by `x^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Remainder modulo `x^k`.
    pub fn truncate(&self, k: usize) -> Self {
        Poly::new(self.coeffs.iter().take(k).cloned().collect())
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divide by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff().and_then(|c| c.inv()) {
            Some(inv) => self.scale(&inv),
            None => Poly::zero(),
        }
    }

    /// Euclidean division `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let lead_inv = divisor
            .leading_coeff()
            .and_then(|c| c.inv())
            .ok_or_else(|| Error::InvalidInput("polynomial division by zero".into()))?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, g) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * g.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Quotient of an exact division; a nonzero remainder is an error.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Divisibility(format!(
                "({self}) / ({divisor}) leaves remainder {r}"
            )));
        }
        Ok(q)
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }

    /// Monic greatest common divisor.
    pub fn gcd(f: &Self, g: &Self) -> Result<Self> {
        if f.is_zero() && g.is_zero() {
            return Err(Error::InvalidInput("gcd(0, 0) is undefined".into()));
        }
        let mut a = f.monic();
        let mut b = g.monic();
        while !b.is_zero() {
            let r = a.rem(&b)?.monic();
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Extended gcd: returns `(g, s, t)` with `s·f + t·h = g`, `g` monic.
    pub fn xgcd(f: &Self, h: &Self) -> Result<(Self, Self, Self)> {
        if f.is_zero() && h.is_zero() {
            return Err(Error::InvalidInput("gcd(0, 0) is undefined".into()));
        }
        let (mut r0, mut r1) = (f.clone(), h.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = r0
            .leading_coeff()
            .and_then(|c| c.inv())
            .ok_or_else(|| Error::Internal("xgcd produced a zero gcd".into()))?;
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// `gcd(f, f')` is constant. Only meaningful in characteristic zero.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_constant() {
            return Err(Error::InvalidInput(
                "square-freeness is defined for nonconstant polynomials".into(),
            ));
        }
        let g = Poly::gcd(self, &self.derivative())?;
        Ok(g.degree() == Some(0))
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation_at_zero(&self) -> Result<usize> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidInput("valuation of the zero polynomial".into()))
    }

    /// `f(x + a)`.
    pub fn shift(&self, a: &F) -> Self {
        let step = Poly::new(vec![a.clone(), F::one()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * &step) + &Poly::constant(c.clone())
        })
    }

    /// `f(α·x)`.
    pub fn scale_arg(&self, alpha: &F) -> Self {
        let mut power = F::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.clone() * power.clone());
            power = power * alpha.clone();
        }
        Poly::new(out)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<'a, F: Field> Add<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &'a Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a, F: Field> Sub<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &'a Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a, F: Field> Mul<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &'a Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<F: Field> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coeff = c.to_string();
            let needs_parens = coeff.contains(' ') || coeff.contains('i');
            match (k, c.is_one()) {
                (0, _) => write!(f, "{coeff}")?,
                (_, true) => {}
                (_, false) if needs_parens => write!(f, "({coeff})*")?,
                (_, false) => write!(f, "{coeff}*")?,
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<F: fmt::Debug> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poly").field(&self.coeffs).finish()
    }
}

impl<F: Field + Serialize> Serialize for Poly<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de, F: Field + Deserialize<'de>> Deserialize<'de> for Poly<F> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(Poly::new(Vec::<F>::deserialize(deserializer)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    type P = Poly<Rational>;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn p(cs: &[&str]) -> P {
        Poly::new(cs.iter().map(|s| q(s)).collect())
    }

    fn xpow(k: usize) -> P {
        Poly::monomial(Rational::one(), k)
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let f = p(&["1", "2", "0", "0"]);
        assert_eq!(f.degree(), Some(1));
        assert_eq!(P::zero().degree(), None);
        assert_eq!(p(&["0"]), P::zero());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(xpow(5).derivative(), Poly::monomial(Rational::from(5), 4));
        assert_eq!(p(&["7"]).derivative(), P::zero());
        assert_eq!(p(&["1", "7/2"]).derivative(), p(&["7/2"]));
    }

    #[test]
    fn gcd_examples() {
        let f = p(&["-1", "0", "1"]);
        let g = p(&["-1", "1"]);
        assert_eq!(Poly::gcd(&f, &g).unwrap(), g);

        let h = p(&["3", "0", "6"]);
        assert_eq!(Poly::gcd(&h, &P::zero()).unwrap(), h.monic());

        // x^5 + x^2 = x^2 (x^3 + 1): the repeated root 0 shows up as x
        let f = p(&["0", "0", "1", "0", "0", "1"]);
        assert_eq!(Poly::gcd(&f, &f.derivative()).unwrap(), xpow(1));

        assert!(Poly::gcd(&P::zero(), &P::zero()).is_err());
    }

    #[test]
    fn squarefree_examples() {
        assert!(!p(&["0", "0", "1", "0", "0", "1"]).is_squarefree().unwrap());
        assert!(xpow(1).is_squarefree().unwrap());
        let f = p(&["35/4", "35", "35", "21", "7", "1"]);
        assert!(f.is_squarefree().unwrap());
        assert!(p(&["4"]).is_squarefree().is_err());
    }

    #[test]
    fn valuation_examples() {
        let f = p(&["0", "0", "35/4", "35", "35", "21", "7", "1"]);
        assert_eq!(f.valuation_at_zero().unwrap(), 2);
        assert_eq!(p(&["1", "1"]).valuation_at_zero().unwrap(), 0);
        assert_eq!(xpow(9).valuation_at_zero().unwrap(), 9);
        assert!(P::zero().valuation_at_zero().is_err());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(xpow(2).shift(&Rational::one()), p(&["1", "2", "1"]));
        let f = p(&["3", "-1/2", "7"]);
        assert_eq!(f.shift(&Rational::zero()), f);
        let cube = p(&["-1", "1"]).pow(3);
        assert_eq!(cube.shift(&Rational::one()), xpow(3));
    }

    #[test]
    fn exact_div_examples() {
        assert_eq!(xpow(3).exact_div(&xpow(1)).unwrap(), xpow(2));

        // (1+x)^7 - (1 + 7x/2)^2 over x^2
        let one_plus_x = p(&["1", "1"]);
        let v = p(&["1", "7/2"]);
        let num = &one_plus_x.pow(7) - &v.pow(2);
        let quot = num.exact_div(&xpow(2)).unwrap();
        assert_eq!(quot, p(&["35/4", "35", "35", "21", "7", "1"]));

        let err = p(&["1", "0", "1"]).exact_div(&xpow(1)).unwrap_err();
        assert!(matches!(err, Error::Divisibility(_)));
        assert!(xpow(2).exact_div(&P::zero()).is_err());
    }

    #[test]
    fn xgcd_bezout() {
        let f = p(&["1", "0", "0", "1"]);
        let g = p(&["1", "2", "1"]);
        let (d, s, t) = Poly::xgcd(&f, &g).unwrap();
        assert_eq!(d, p(&["1", "1"]));
        assert_eq!(&(&s * &f) + &(&t * &g), d);
    }

    #[test]
    fn display_reads_naturally() {
        let f = p(&["1", "0", "-2", "1/4"]);
        assert_eq!(f.to_string(), "1/4*x^3 + -2*x^2 + 1");
        assert_eq!(P::zero().to_string(), "0");
    }

    #[test]
    fn json_is_coefficient_strings() {
        let f = p(&["35/4", "0", "1"]);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"["35/4","0","1"]"#);
        let back: P = serde_json::from_str(r#"["35/4","0","1","0"]"#).unwrap();
        assert_eq!(back, f);
    }

    fn arb_poly(max_len: usize) -> impl Strategy<Value = P> {
        prop::collection::vec((-9i64..10, 1i64..5), 0..max_len).prop_map(|cs| {
            Poly::new(
                cs.into_iter()
                    .map(|(n, d)| Rational::new(n, d).unwrap())
                    .collect(),
            )
        })
    }

    /// Squarefree oracle for products of linear factors: a repeated root is
    /// exactly a repeated entry in the root list.
    fn product_of_roots(roots: &[i64]) -> P {
        roots
            .iter()
            .fold(P::one(), |acc, &r| &acc * &Poly::x_minus(Rational::from(r)))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(6), b in arb_poly(6), c in arb_poly(6)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn exact_div_inverts_mul(f in arb_poly(6), g in arb_poly(5)) {
            prop_assume!(!g.is_zero());
            prop_assert_eq!((&f * &g).exact_div(&g).unwrap(), f);
        }

        #[test]
        fn shift_roundtrip(f in arb_poly(7), n in -5i64..6, d in 1i64..4) {
            let a = Rational::new(n, d).unwrap();
            prop_assert_eq!(f.shift(&a).shift(&-a.clone()), f);
        }

        #[test]
        fn squarefree_matches_root_multiplicity(roots in prop::collection::vec(-3i64..4, 1..7)) {
            let f = product_of_roots(&roots);
            let mut sorted = roots.clone();
            sorted.sort();
            let has_repeat = sorted.windows(2).any(|w| w[0] == w[1]);
            prop_assert_eq!(f.is_squarefree().unwrap(), !has_repeat);
        }

        #[test]
        fn division_identity(f in arb_poly(8), g in arb_poly(5)) {
            prop_assume!(!g.is_zero());
            let (q, r) = f.div_rem(&g).unwrap();
            prop_assert_eq!(&(&q * &g) + &r, f);
            prop_assert!(r.degree() < g.degree());
        }
    }
}
