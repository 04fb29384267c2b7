//! Truncations of the binomial series `(1+x)^r` for noninteger rational `r`.
//!
//! For `r = m/d` with `gcd(m, d) = 1`, the degree-`(E-1)` truncation `V` of
//! `(1+x)^r` makes `(1+x)^m - V^d` vanish to order exactly `E` at zero. When
//! `m > d(E-1)` the quotient by `x^E` is square-free of degree `m - E` with a
//! nonzero constant term. The construction of order `n + e·d` points is built
//! on this quotient.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::Poly;
use crate::scalars::{gen_binom, padic_valuation, PAdicValue, Rational};

/// Parameters `(m, d, E)` of a truncation `V_{m/d, E}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationSpec {
    m: u64,
    d: u64,
    terms: usize,
    r: Rational,
}

impl TruncationSpec {
    /// Requires `d >= 2`, `m >= 1`, `gcd(m, d) = 1` and `terms >= 2`.
    pub fn new(m: u64, d: u64, terms: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidInput(format!("d = {d} must be at least 2")));
        }
        if m == 0 {
            return Err(Error::InvalidInput("m must be positive".into()));
        }
        if m.gcd(&d) != 1 {
            return Err(Error::InvalidInput(format!(
                "gcd(m, d) = gcd({m}, {d}) must be 1"
            )));
        }
        if terms < 2 {
            return Err(Error::InvalidInput(format!(
                "truncation length E = {terms} must be at least 2"
            )));
        }
        let r = Rational::new(m, d)?;
        Ok(TruncationSpec { m, d, terms, r })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// Number of retained terms `E`.
    pub fn terms(&self) -> usize {
        self.terms
    }

    /// The exponent `r = m/d`.
    pub fn r(&self) -> &Rational {
        &self.r
    }

    /// `m > d(E-1)`, the condition under which the residual quotient is
    /// square-free and the valuation at zero is exactly `E`.
    pub fn separation_holds(&self) -> bool {
        (self.m as u128) > (self.d as u128) * (self.terms as u128 - 1)
    }
}

/// First `terms` terms of `(1+x)^r`. `terms = 1` gives the constant 1 and
/// `terms = 0` the zero polynomial, so recursions have a base case.
pub fn binomial_truncation(r: &Rational, terms: usize) -> Poly<Rational> {
    let mut coeffs = Vec::with_capacity(terms);
    let mut c = Rational::one();
    for k in 0..terms {
        coeffs.push(c.clone());
        // binom(r, k+1) = binom(r, k)·(r - k)/(k + 1)
        c = c * (r - &Rational::from(k as i64)) / Rational::from(k as i64 + 1);
    }
    Poly::new(coeffs)
}

/// `V_{r,E}`: degree exactly `E-1`, `k`-th coefficient `binom(r, k)`.
pub fn truncated_binomial(spec: &TruncationSpec) -> Poly<Rational> {
    binomial_truncation(spec.r(), spec.terms())
}

/// `(1+x)^m - V_{r,E}^d`.
pub fn truncation_residual(spec: &TruncationSpec) -> Poly<Rational> {
    let one_plus_x = Poly::new(vec![Rational::one(), Rational::one()]);
    &one_plus_x.pow(spec.m()) - &truncated_binomial(spec).pow(spec.d())
}

/// Order of vanishing at zero of the residual. Always `E` when the
/// separation bound holds; a different value is reported as an internal
/// error since it would falsify the construction.
pub fn check_truncation_valuation(spec: &TruncationSpec) -> Result<usize> {
    if !spec.separation_holds() {
        return Err(Error::Hypothesis(format!(
            "m = {} must exceed d(E-1) = {}",
            spec.m(),
            spec.d() * (spec.terms() as u64 - 1)
        )));
    }
    let val = truncation_residual(spec).valuation_at_zero()?;
    if val != spec.terms() {
        return Err(Error::Internal(format!(
            "residual vanishes to order {val} at zero, expected {}",
            spec.terms()
        )));
    }
    Ok(val)
}

/// `((1+x)^m - V^d) / x^E`.
pub fn truncation_quotient(spec: &TruncationSpec) -> Result<Poly<Rational>> {
    let x_e = Poly::monomial(Rational::one(), spec.terms());
    truncation_residual(spec).exact_div(&x_e)
}

/// Value of `V_{r,E}(-1)` and its `p`-adic valuation for a prime `p | d`.
///
/// The valuation is negative for every such prime, which rules out
/// `V(-1) = 0`.
pub fn nonvanishing_at_minus_one(spec: &TruncationSpec, p: u64) -> Result<(bool, PAdicValue)> {
    if !spec.d().is_multiple_of(p.max(1)) {
        return Err(Error::InvalidInput(format!(
            "{p} does not divide d = {}",
            spec.d()
        )));
    }
    let value = truncated_binomial(spec).eval(&-Rational::one());
    let val = padic_valuation(&value, p)?;
    Ok((!value.is_zero(), val))
}

/// `binom(r-1, E-1)`, the coefficient that closes the recurrence
/// `V_{r,E} = (1+x)·V_{r-1,E-1} + binom(r-1, E-1)·x^{E-1}`.
pub fn recurrence_coefficient(r: &Rational, terms: usize) -> Rational {
    gen_binom(&(r - &Rational::one()), terms as u64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::prime_divisors;
    use num_rational::Ratio;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn p(cs: &[&str]) -> Poly<Rational> {
        Poly::new(cs.iter().map(|s| q(s)).collect())
    }

    /// Independent coefficient oracle over machine fractions: schoolbook
    /// convolution of `(1+x)^m` (Pascal) and of the truncation `V^d`.
    fn oracle_residual(m: u64, d: u64, terms: usize) -> Vec<Ratio<i128>> {
        let r = Ratio::new(m as i128, d as i128);
        let mut v = vec![Ratio::from_integer(1i128)];
        for k in 1..terms {
            let prev = v[k - 1];
            v.push(
                prev * (r - Ratio::from_integer(k as i128 - 1)) / Ratio::from_integer(k as i128),
            );
        }
        let mut vd = vec![Ratio::from_integer(1i128)];
        for _ in 0..d {
            let mut next = vec![Ratio::from_integer(0i128); vd.len() + v.len() - 1];
            for (i, a) in vd.iter().enumerate() {
                for (j, b) in v.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            vd = next;
        }
        let mut pascal = vec![1i128];
        for _ in 0..m {
            let mut row = vec![1i128; pascal.len() + 1];
            for k in 1..pascal.len() {
                row[k] = pascal[k - 1] + pascal[k];
            }
            pascal = row;
        }
        let len = pascal.len().max(vd.len());
        (0..len)
            .map(|k| {
                Ratio::from_integer(pascal.get(k).copied().unwrap_or(0))
                    - vd.get(k).copied().unwrap_or_default()
            })
            .collect()
    }

    fn oracle_valuation(m: u64, d: u64, terms: usize) -> usize {
        oracle_residual(m, d, terms)
            .iter()
            .position(|c| *c != Ratio::from_integer(0))
            .unwrap()
    }

    #[test]
    fn oracle_valuations_frozen() {
        assert_eq!(oracle_valuation(7, 2, 2), 2);
        assert_eq!(oracle_valuation(11, 2, 6), 6);
        assert_eq!(oracle_valuation(4, 3, 2), 2);
        // x^2 coefficient of (1+x)^7 - (1+7x/2)^2 is 21 - 49/4 = 35/4
        assert_eq!(oracle_residual(7, 2, 2)[2], Ratio::new(35, 4));
    }

    #[test]
    fn truncation_examples() {
        let spec = TruncationSpec::new(7, 2, 2).unwrap();
        assert_eq!(truncated_binomial(&spec), p(&["1", "7/2"]));
        assert_eq!(binomial_truncation(&q("7/2"), 1), p(&["1"]));
        assert_eq!(binomial_truncation(&q("-3/5"), 1), p(&["1"]));
        let spec = TruncationSpec::new(11, 2, 3).unwrap();
        assert_eq!(truncated_binomial(&spec), p(&["1", "11/2", "99/8"]));
    }

    #[test]
    fn truncation_degree_is_terms_minus_one() {
        for (m, d, e) in [(7, 2, 2), (11, 2, 6), (4, 3, 2), (13, 5, 3)] {
            let spec = TruncationSpec::new(m, d, e).unwrap();
            assert_eq!(truncated_binomial(&spec).degree(), Some(e - 1));
        }
    }

    #[test]
    fn valuation_examples() {
        for (m, d, e) in [(7, 2, 2), (11, 2, 6), (4, 3, 2)] {
            let spec = TruncationSpec::new(m, d, e).unwrap();
            assert_eq!(
                check_truncation_valuation(&spec).unwrap(),
                oracle_valuation(m, d, e)
            );
        }
    }

    #[test]
    fn valuation_rejects_violated_bound() {
        // 5 <= 2·(4-1)
        let spec = TruncationSpec::new(5, 2, 4).unwrap();
        assert!(matches!(
            check_truncation_valuation(&spec),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn residual_matches_oracle_coefficients() {
        for (m, d, e) in [
            (7u64, 2u64, 2usize),
            (11, 2, 6),
            (4, 3, 2),
            (9, 4, 2),
            (13, 3, 4),
        ] {
            let spec = TruncationSpec::new(m, d, e).unwrap();
            let ours = truncation_residual(&spec);
            let oracle = oracle_residual(m, d, e);
            for (k, c) in oracle.iter().enumerate() {
                let expected = Rational::new(*c.numer(), *c.denom()).unwrap();
                assert_eq!(
                    ours.coeff(k),
                    expected,
                    "coefficient {k} for {:?}",
                    (m, d, e)
                );
            }
        }
    }

    #[test]
    fn quotient_for_seven_halves() {
        let spec = TruncationSpec::new(7, 2, 2).unwrap();
        let f = truncation_quotient(&spec).unwrap();
        assert_eq!(f, p(&["35/4", "35", "35", "21", "7", "1"]));
        assert!(f.is_squarefree().unwrap());
    }

    #[test]
    fn minus_one_examples() {
        let s = TruncationSpec::new(7, 2, 2).unwrap();
        assert_eq!(
            nonvanishing_at_minus_one(&s, 2).unwrap(),
            (true, PAdicValue::Finite(-1))
        );
        let s = TruncationSpec::new(5, 3, 2).unwrap();
        assert_eq!(
            nonvanishing_at_minus_one(&s, 3).unwrap(),
            (true, PAdicValue::Finite(-1))
        );
        let s = TruncationSpec::new(11, 2, 3).unwrap();
        assert_eq!(
            nonvanishing_at_minus_one(&s, 2).unwrap(),
            (true, PAdicValue::Finite(-3))
        );
        assert!(nonvanishing_at_minus_one(&s, 3).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(TruncationSpec::new(6, 2, 2).is_err());
        assert!(TruncationSpec::new(7, 1, 2).is_err());
        assert!(TruncationSpec::new(7, 2, 1).is_err());
        assert!(TruncationSpec::new(0, 2, 2).is_err());
    }

    #[test]
    fn recurrence_uses_lower_index() {
        // r = 7/2, E = 2: (1+x)·1 + binom(5/2, 1)·x = 1 + 7x/2
        let r = q("7/2");
        let rhs = &(&p(&["1", "1"]) * &binomial_truncation(&(&r - &Rational::one()), 1))
            + &Poly::monomial(recurrence_coefficient(&r, 2), 1);
        assert_eq!(rhs, binomial_truncation(&r, 2));
        // the coefficient binom(r-1, E) = 15/8 does not close the recurrence
        assert_eq!(gen_binom(&q("5/2"), 2), q("15/8"));
        assert_ne!(recurrence_coefficient(&r, 2), q("15/8"));
    }

    #[test]
    fn identities_on_small_grid() {
        for d in [2u64, 3, 5] {
            for m in 1..=25u64 {
                if m.gcd(&d) != 1 {
                    continue;
                }
                for e in 2..=6usize {
                    let spec = TruncationSpec::new(m, d, e).unwrap();
                    let r = spec.r().clone();
                    let v = truncated_binomial(&spec);
                    let lower = binomial_truncation(&(&r - &Rational::one()), e - 1);
                    let rec = &(&p(&["1", "1"]) * &lower)
                        + &Poly::monomial(recurrence_coefficient(&r, e), e - 1);
                    assert_eq!(v, rec, "recurrence at {:?}", (m, d, e));
                    assert_eq!(
                        v.derivative(),
                        lower.scale(&r),
                        "derivative at {:?}",
                        (m, d, e)
                    );

                    if spec.separation_holds() {
                        assert_eq!(check_truncation_valuation(&spec).unwrap(), e);
                        let quot = truncation_quotient(&spec).unwrap();
                        assert!(quot.is_squarefree().unwrap());
                        assert!(!quot.coeff(0).is_zero());
                        for p in prime_divisors(d) {
                            let (nz, val) = nonvanishing_at_minus_one(&spec, p).unwrap();
                            assert!(nz);
                            assert!(val < PAdicValue::Finite(0));
                        }
                    }
                }
            }
        }
    }
}
