//! Divisor class arithmetic on hyperelliptic curves `y^2 = f(x)` with `deg f`
//! odd, in Mumford representation, via Cantor's composition and reduction.
//!
//! This is the independent order oracle for `d = 2`: it computes the order
//! of the class of `(P) - (O)` by repeated addition, without using any of the
//! identities the constructions rely on.

use std::fmt;

use crate::curves::{AffinePoint, Curve};
use crate::error::{Error, Result};
use crate::polyring::Poly;
use crate::scalars::Field;

/// Reduced divisor class `(u, v)`: `u` monic, `deg v < deg u <= g`,
/// `u | v^2 - f`. The identity is `(1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MumfordDivisor<F> {
    u: Poly<F>,
    v: Poly<F>,
}

impl<F: Field> MumfordDivisor<F> {
    pub fn identity() -> Self {
        MumfordDivisor {
            u: Poly::one(),
            v: Poly::zero(),
        }
    }

    /// Unchecked; validate with [`validate_divisor`] before trusting it.
    pub fn from_parts(u: Poly<F>, v: Poly<F>) -> Self {
        MumfordDivisor { u, v }
    }

    pub fn u(&self) -> &Poly<F> {
        &self.u
    }

    pub fn v(&self) -> &Poly<F> {
        &self.v
    }

    pub fn is_identity(&self) -> bool {
        self.u.degree() == Some(0) && self.v.is_zero()
    }

    /// Degree of the effective part.
    pub fn weight(&self) -> usize {
        self.u.degree().unwrap_or(0)
    }
}

impl<F: Field> fmt::Display for MumfordDivisor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

fn require_hyperelliptic<F: Field>(curve: &Curve<F>) -> Result<()> {
    if curve.d() != 2 {
        return Err(Error::UnsupportedDegree(curve.d()));
    }
    if curve.n().is_multiple_of(2) {
        return Err(Error::InvalidInput(
            "only odd-degree models are supported".into(),
        ));
    }
    Ok(())
}

/// Checks the Mumford invariants against `curve`.
pub fn validate_divisor<F: Field>(curve: &Curve<F>, div: &MumfordDivisor<F>) -> Result<()> {
    require_hyperelliptic(curve)?;
    let g = curve.genus() as usize;
    let du = div
        .u
        .degree()
        .ok_or_else(|| Error::InvalidInput("u is zero".into()))?;
    if !div.u.is_monic() {
        return Err(Error::InvalidInput(format!("u = {} is not monic", div.u)));
    }
    if div.v.degree().is_some_and(|dv| dv >= du) {
        return Err(Error::InvalidInput(format!(
            "deg v >= deg u in ({}, {})",
            div.u, div.v
        )));
    }
    if du > g {
        return Err(Error::InvalidInput(format!(
            "deg u = {du} exceeds the genus {g}"
        )));
    }
    let residue = (&(&div.v * &div.v) - curve.f()).rem(&div.u)?;
    if !residue.is_zero() {
        return Err(Error::InvalidInput(format!(
            "u = {} does not divide v^2 - f",
            div.u
        )));
    }
    Ok(())
}

/// Class of `(P) - (O)`: `(x - x(P), y(P))`.
pub fn embed_point<F: Field>(curve: &Curve<F>, p: &AffinePoint<F>) -> Result<MumfordDivisor<F>> {
    require_hyperelliptic(curve)?;
    if !curve.contains(p) {
        return Err(Error::InvalidInput(format!("{p} is not on {curve}")));
    }
    Ok(MumfordDivisor {
        u: Poly::x_minus(p.x.clone()),
        v: Poly::constant(p.y.clone()),
    })
}

/// `-(u, v) = (u, -v mod u)`.
pub fn negate<F: Field>(div: &MumfordDivisor<F>) -> MumfordDivisor<F> {
    MumfordDivisor {
        u: div.u.clone(),
        v: -&div.v,
    }
}

fn compose<F: Field>(
    f: &Poly<F>,
    a: &MumfordDivisor<F>,
    b: &MumfordDivisor<F>,
) -> Result<MumfordDivisor<F>> {
    let (d1, e1, e2) = Poly::xgcd(&a.u, &b.u)?;
    let (d, c1, c2) = Poly::xgcd(&d1, &(&a.v + &b.v))?;
    let s1 = &c1 * &e1;
    let s2 = &c1 * &e2;
    let s3 = c2;
    let u = (&a.u * &b.u).exact_div(&(&d * &d))?;
    let numer = &(&(&s1 * &a.u) * &b.v) + &(&(&s2 * &b.u) * &a.v);
    let numer = &numer + &(&s3 * &(&(&a.v * &b.v) + f));
    let v = numer.exact_div(&d)?.rem(&u)?;
    Ok(MumfordDivisor { u, v })
}

fn reduce<F: Field>(
    f: &Poly<F>,
    genus: usize,
    mut div: MumfordDivisor<F>,
) -> Result<MumfordDivisor<F>> {
    while div.u.degree().unwrap_or(0) > genus {
        let u_next = (f - &(&div.v * &div.v)).exact_div(&div.u)?;
        let v_next = (-&div.v).rem(&u_next)?;
        div = MumfordDivisor {
            u: u_next,
            v: v_next,
        };
    }
    let u = div.u.monic();
    let v = div.v.rem(&u)?;
    Ok(MumfordDivisor { u, v })
}

/// Reduced representative of the class sum.
pub fn add<F: Field>(
    curve: &Curve<F>,
    a: &MumfordDivisor<F>,
    b: &MumfordDivisor<F>,
) -> Result<MumfordDivisor<F>> {
    validate_divisor(curve, a)?;
    validate_divisor(curve, b)?;
    let composed = compose(curve.f(), a, b)?;
    let sum = reduce(curve.f(), curve.genus() as usize, composed)?;
    validate_divisor(curve, &sum)
        .map_err(|e| Error::Internal(format!("Cantor output violates invariants: {e}")))?;
    Ok(sum)
}

/// `k·D` by double-and-add.
pub fn multiple<F: Field>(
    curve: &Curve<F>,
    div: &MumfordDivisor<F>,
    mut k: u64,
) -> Result<MumfordDivisor<F>> {
    let mut acc = MumfordDivisor::identity();
    let mut base = div.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc = add(curve, &acc, &base)?;
        }
        k >>= 1;
        if k > 0 {
            base = add(curve, &base, &base)?;
        }
    }
    Ok(acc)
}

/// Least `k` in `1..=bound` with `k·D = 0`, found by repeated addition.
/// `None` when no such `k` exists within the bound.
pub fn order_of<F: Field>(
    curve: &Curve<F>,
    div: &MumfordDivisor<F>,
    bound: u64,
) -> Result<Option<u64>> {
    if bound == 0 {
        return Err(Error::InvalidInput("bound must be at least 1".into()));
    }
    validate_divisor(curve, div)?;
    let mut acc = div.clone();
    for k in 1..=bound {
        if acc.is_identity() {
            return Ok(Some(k));
        }
        if k < bound {
            acc = add(curve, &acc, div)?;
        }
    }
    Ok(None)
}

/// Order of the class `(P) - (O)`.
pub fn point_order<F: Field>(
    curve: &Curve<F>,
    p: &AffinePoint<F>,
    bound: u64,
) -> Result<Option<u64>> {
    let div = embed_point(curve, p)?;
    order_of(curve, &div, bound)
}
