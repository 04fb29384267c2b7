//! Superelliptic curves `y^d = f(x)` and their elementary invariants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::Poly;
use crate::scalars::{Field, Rational};

/// Smooth affine model `y^d = f(x)` with `1 < d < n`, `gcd(n, d) = 1`,
/// `deg f = n` and `f` square-free.
///
/// Deserialization does not validate; call [`Curve::validate`] on curves read
/// from untrusted input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "F: Field + Serialize",
    deserialize = "F: Field + Deserialize<'de>"
))]
pub struct Curve<F> {
    d: u64,
    n: u64,
    f: Poly<F>,
}

/// Affine point `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "F: Field + Serialize",
    deserialize = "F: Field + Deserialize<'de>"
))]
pub struct AffinePoint<F> {
    pub x: F,
    pub y: F,
}

/// A point on the smooth projective model: affine, or the single point at
/// infinity (the origin of the Abel-Jacobi embedding).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvePoint<F> {
    Infinity,
    Affine(AffinePoint<F>),
}

impl<F: Field> AffinePoint<F> {
    pub fn new(x: F, y: F) -> Self {
        AffinePoint { x, y }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> AffinePoint<G> {
        AffinePoint::new(f(&self.x), f(&self.y))
    }
}

impl<F: Field> fmt::Display for AffinePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<F: Field> Curve<F> {
    /// Validated constructor.
    pub fn new(d: u64, n: u64, f: Poly<F>) -> Result<Self> {
        let curve = Curve { d, n, f };
        curve.validate()?;
        Ok(curve)
    }

    /// Skips validation. Used when a caller is about to report on validity
    /// itself.
    pub fn from_parts_unchecked(d: u64, n: u64, f: Poly<F>) -> Self {
        Curve { d, n, f }
    }

    /// Re-checks every curve invariant, reporting the first violation.
    pub fn validate(&self) -> Result<()> {
        let (d, n) = (self.d, self.n);
        if d < 2 || n <= d {
            return Err(Error::Order { n, d });
        }
        let g = n.gcd(&d);
        if g != 1 {
            return Err(Error::Gcd { n, d, gcd: g });
        }
        if self.f.degree().map(|k| k as u64) != Some(n) {
            return Err(Error::Degree {
                expected: n,
                found: match self.f.degree() {
                    Some(k) => k.to_string(),
                    None => "-inf".into(),
                },
            });
        }
        if !self.f.is_squarefree()? {
            return Err(Error::RepeatedRoot);
        }
        Ok(())
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn f(&self) -> &Poly<F> {
        &self.f
    }

    /// `(n-1)(d-1)/2`.
    pub fn genus(&self) -> u64 {
        (self.n - 1) * (self.d - 1) / 2
    }

    pub fn contains(&self, p: &AffinePoint<F>) -> bool {
        p.y.pow(self.d) == self.f.eval(&p.x)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Curve<G> {
        Curve {
            d: self.d,
            n: self.n,
            f: self.f.map(f),
        }
    }
}

impl<F: Field> fmt::Display for Curve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^{} = {}", self.d, self.f)
    }
}

/// Free-function form of [`Curve::new`].
pub fn new_curve<F: Field>(d: u64, n: u64, f: Poly<F>) -> Result<Curve<F>> {
    Curve::new(d, n, f)
}

// ---------------------------------------------------------------------------
// Monic normalization
// ---------------------------------------------------------------------------

/// Rescaling of a curve with leading coefficient `c0` to a monic one.
///
/// With `d·i + n·j = 1`, `x_scale = c0^{-j}` and `y_scale = c0^{i}`, the map
/// `(X, Y) ↦ (x_scale·X, y_scale·Y)` sends the target `Y^d = h(X)` onto the
/// source curve, where `h(X) = c0^{-d·i} f(c0^{-j} X)`. It fixes the point at
/// infinity and commutes with `y ↦ γy`, so torsion orders are preserved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonicNormalization<F> {
    pub source: Curve<F>,
    pub target: Curve<F>,
    pub i: i64,
    pub j: i64,
    pub c0: F,
    pub x_scale: F,
    pub y_scale: F,
}

impl<F: Field> MonicNormalization<F> {
    /// Point on the monic curve to the corresponding point on the source.
    pub fn to_source(&self, p: &AffinePoint<F>) -> AffinePoint<F> {
        AffinePoint::new(
            self.x_scale.clone() * p.x.clone(),
            self.y_scale.clone() * p.y.clone(),
        )
    }

    /// Inverse of [`Self::to_source`].
    pub fn to_target(&self, p: &AffinePoint<F>) -> Result<AffinePoint<F>> {
        let xi = self
            .x_scale
            .inv()
            .ok_or_else(|| Error::Internal("zero x scale".into()))?;
        let yi = self
            .y_scale
            .inv()
            .ok_or_else(|| Error::Internal("zero y scale".into()))?;
        Ok(AffinePoint::new(xi * p.x.clone(), yi * p.y.clone()))
    }
}

/// `(i, j)` with `d·i + n·j = 1` and `|i|` minimal (ties go to the positive
/// `i`).
pub fn bezout_pair(d: u64, n: u64) -> Result<(i64, i64)> {
    let (d, n) = (d as i64, n as i64);
    let eg = d.extended_gcd(&n);
    if eg.gcd != 1 {
        return Err(Error::Gcd {
            n: n as u64,
            d: d as u64,
            gcd: eg.gcd as u64,
        });
    }
    let base = eg.x.rem_euclid(n);
    let i = if base * 2 <= n { base } else { base - n };
    let j = (1 - d * i) / n;
    Ok((i, j))
}

fn int_pow<F: Field>(c: &F, exp: i64) -> Result<F> {
    if exp >= 0 {
        Ok(c.pow(exp as u64))
    } else {
        let inv = c
            .inv()
            .ok_or_else(|| Error::InvalidInput("zero leading coefficient".into()))?;
        Ok(inv.pow(exp.unsigned_abs()))
    }
}

/// Monic model of `y^d = f(x)` using the Bezout pair with minimal `|i|`.
pub fn normalize_monic<F: Field>(d: u64, n: u64, f: Poly<F>) -> Result<MonicNormalization<F>> {
    let (i, j) = bezout_pair(d, n)?;
    normalize_monic_with(d, n, f, i, j)
}

/// Monic model for a caller-chosen pair with `d·i + n·j = 1`.
pub fn normalize_monic_with<F: Field>(
    d: u64,
    n: u64,
    f: Poly<F>,
    i: i64,
    j: i64,
) -> Result<MonicNormalization<F>> {
    if (d as i64) * i + (n as i64) * j != 1 {
        return Err(Error::InvalidInput(format!(
            "d·i + n·j = {d}·{i} + {n}·{j} is not 1"
        )));
    }
    let source = Curve::new(d, n, f)?;
    let c0 = source
        .f()
        .leading_coeff()
        .cloned()
        .ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    let x_scale = int_pow(&c0, -j)?;
    let y_scale = int_pow(&c0, i)?;
    let h = source
        .f()
        .scale_arg(&x_scale)
        .scale(&int_pow(&c0, -(d as i64) * i)?);

    // y_scale^d · h(X) must equal f(x_scale · X) coefficientwise
    let lhs = h.scale(&y_scale.pow(d));
    let rhs = source.f().scale_arg(&x_scale);
    if lhs != rhs || !h.is_monic() {
        return Err(Error::Internal(format!(
            "monic normalization identity failed for (i, j) = ({i}, {j})"
        )));
    }
    let target = Curve::new(d, n, h)?;
    Ok(MonicNormalization {
        source,
        target,
        i,
        j,
        c0,
        x_scale,
        y_scale,
    })
}

// ---------------------------------------------------------------------------
// Order-d points
// ---------------------------------------------------------------------------

/// Affine points with vanishing ordinate found in the working field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderDPoints<F> {
    pub points: Vec<AffinePoint<F>>,
    /// `n` minus the number of roots found: the degree of the factor of `f`
    /// whose roots lie outside the rationals.
    pub residual_degree: u64,
}

/// Largest integer whose divisors are enumerated by trial division when
/// searching for rational roots.
const ROOT_SEARCH_LIMIT: u64 = 1_000_000_000_000;

/// Points `(w, 0)` for the rational roots `w` of `f`. Each has order `d`.
///
/// Only rational roots are searched for, also when `F` is the Gaussian
/// field; other roots are accounted for in `residual_degree`.
pub fn order_d_points<F: Field>(curve: &Curve<F>) -> OrderDPoints<F> {
    let rational_f: Option<Vec<Rational>> =
        curve.f().coeffs().iter().map(|c| c.to_rational()).collect();
    let roots = rational_f
        .map(|cs| rational_roots(&Poly::new(cs)))
        .unwrap_or_default();
    let points: Vec<_> = roots
        .into_iter()
        .map(|w| AffinePoint::new(F::from_rational(w), F::zero()))
        .filter(|p| curve.contains(p))
        .collect();
    OrderDPoints {
        residual_degree: curve.n() - points.len() as u64,
        points,
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            small.push(k);
            if k * k != n {
                large.push(n / k);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Distinct rational roots via the rational root test. Gives up (returning
/// what it has) when the relevant integers exceed the trial-division limit.
pub fn rational_roots(f: &Poly<Rational>) -> Vec<Rational> {
    let mut roots = Vec::new();
    if f.is_constant() {
        return roots;
    }
    let mut g = f.clone();
    if g.coeff(0).is_zero() {
        roots.push(Rational::zero());
        let v = g.valuation_at_zero().unwrap_or(0);
        g = Poly::new(g.coeffs()[v..].to_vec());
    }
    if g.is_constant() {
        return roots;
    }

    let lcm = g
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = g
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let (Some(a0), Some(an)) = (
        ints.first().and_then(|a| a.abs().to_u64()),
        ints.last().and_then(|a| a.abs().to_u64()),
    ) else {
        return roots;
    };
    if a0 > ROOT_SEARCH_LIMIT || an > ROOT_SEARCH_LIMIT {
        return roots;
    }
    for p in divisors(a0) {
        for q in divisors(an) {
            if p.gcd(&q) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = Rational::new(BigInt::from(p) * sign, BigInt::from(q))
                    .expect("nonzero denominator");
                if !roots.contains(&cand) && g.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}
