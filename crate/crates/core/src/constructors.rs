//! Explicit curves carrying a point of prescribed order, each returned with a
//! certificate that [`verify_certificate`](crate::certify::verify_certificate)
//! accepts.

use std::env;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::certify::{
    check_nd, is_n_torsion, reachability_verdict, transport_to_monic, CertPoint, ExactnessRule,
    IdentityKind, Rule, Scalar, TorsionCertificate,
};
use crate::curves::{normalize_monic, AffinePoint, Curve};
use crate::error::{Error, Result};
use crate::polyring::Poly;
use crate::scalars::{Field, GaussianRational, Rational};
use crate::series::{
    check_truncation_valuation, truncated_binomial, truncation_quotient, TruncationSpec,
};

pub const DEFAULT_SEARCH_LIMIT: usize = 64;
pub const SEARCH_LIMIT_ENV: &str = "TORSION_FORGE_SEARCH_LIMIT";

/// Search limit from `TORSION_FORGE_SEARCH_LIMIT`, or the default.
pub fn search_limit_from_env() -> Result<usize> {
    match env::var(SEARCH_LIMIT_ENV) {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|e| Error::InvalidInput(format!("{SEARCH_LIMIT_ENV}={s:?}: {e}"))),
        Err(_) => Ok(DEFAULT_SEARCH_LIMIT),
    }
}

/// Construction families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Style {
    OrderD,
    OrderN,
    #[serde(rename = "div-d")]
    DivisibleByD,
    TwiceN,
    NPlusEd,
}

impl Style {
    pub fn as_str(self) -> &'static str {
        match self {
            Style::OrderD => "order-d",
            Style::OrderN => "order-n",
            Style::DivisibleByD => "div-d",
            Style::TwiceN => "twice-n",
            Style::NPlusEd => "n-plus-ed",
        }
    }
}

/// Input accepted by [`construct`]. Without a style the verdict engine
/// picks the family for `m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructionRequest {
    pub n: u64,
    pub d: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub style: Option<Style>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Poly<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_limit: Option<usize>,
}

/// A curve, its torsion point, and the certificate tying them together.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub curve: Curve<Rational>,
    pub point: CertPoint,
    pub certificate: TorsionCertificate,
}

impl Construction {
    pub fn m(&self) -> u64 {
        self.certificate.m
    }

    /// The point, or `UnsupportedField` when it is only known symbolically.
    pub fn affine_point(&self) -> Result<&AffinePoint<Scalar>> {
        self.point.affine().ok_or_else(|| {
            Error::UnsupportedField(format!(
                "the ordinate needs a primitive {}-th root of -1",
                self.curve.d()
            ))
        })
    }
}

fn lift(p: &Poly<Rational>) -> Poly<Scalar> {
    p.map(|c| GaussianRational::real(c.clone()))
}

fn lift_point(p: &AffinePoint<Rational>) -> AffinePoint<Scalar> {
    p.map(|c| GaussianRational::real(c.clone()))
}

fn q(k: i64) -> Rational {
    Rational::from_integer(k)
}

/// `1, -1, 2, -2, 3, ...`
fn signed_sequence() -> impl Iterator<Item = Rational> {
    (1i64..).flat_map(|k| [q(k), q(-k)])
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    curve: Curve<Rational>,
    point: CertPoint,
    m: u64,
    kind: IdentityKind,
    u: Poly<Scalar>,
    v: Poly<Scalar>,
    a: Scalar,
    e: u64,
    lambda: Option<Scalar>,
    rule: ExactnessRule,
) -> Construction {
    let certificate = TorsionCertificate {
        curve: curve.map(|c| GaussianRational::real(c.clone())),
        point: point.clone(),
        m,
        identity_kind: kind,
        u,
        v,
        a,
        e,
        lambda,
        exactness_rule: rule,
    };
    Construction {
        curve,
        point,
        certificate,
    }
}

fn exactness(n: u64, m: u64) -> Result<ExactnessRule> {
    ExactnessRule::choose(n, m)
        .ok_or_else(|| Error::Internal(format!("no exactness rule covers m = {m} for n = {n}")))
}

/// Rescales a shift-power construction onto the monic model of its curve.
fn to_monic(built: Construction) -> Result<Construction> {
    let cert = &built.certificate;
    let normalization = normalize_monic(cert.curve.d(), cert.curve.n(), cert.curve.f().clone())?;
    let certificate = transport_to_monic(cert, &normalization)?;
    let curve = certificate
        .rational_curve()
        .ok_or_else(|| Error::Internal("monic model left the rationals".into()))?;
    Ok(Construction {
        curve,
        point: certificate.point.clone(),
        certificate,
    })
}

/// `y^d = x^n - x` with the ramification point `(0, 0)` of order `d`.
pub fn construct_order_d(n: u64, d: u64) -> Result<Construction> {
    check_nd(n, d)?;
    let f = &Poly::monomial(Rational::one(), n as usize) - &Poly::x();
    let cofactor = f.exact_div(&Poly::x())?;
    let curve = Curve::new(d, n, f)?;
    let point = AffinePoint::new(Rational::zero(), Rational::zero());
    Ok(assemble(
        curve,
        CertPoint::Affine(lift_point(&point)),
        d,
        IdentityKind::Ramification,
        Poly::zero(),
        lift(&cofactor),
        Scalar::zero(),
        0,
        None,
        ExactnessRule::RamificationPoint,
    ))
}

/// `f = (x-a)^n + v^d` with `P = (a, v(a))` of order `n`.
pub fn construct_order_n(n: u64, d: u64, a: &Rational, v: &Poly<Rational>) -> Result<Construction> {
    check_nd(n, d)?;
    let bound = (n - 1) / d;
    if v.degree().is_some_and(|k| k as u64 > bound) {
        return Err(Error::Precondition(format!(
            "deg v = {} exceeds (n-1)/d = {bound}",
            v.degree().unwrap_or(0)
        )));
    }
    let f = &Poly::x_minus(a.clone()).pow(n) + &v.pow(d);
    let curve = Curve::new(d, n, f)?;
    let y = v.eval(a);
    if y.is_zero() {
        return Err(Error::ZeroOrdinate(format!("v({a}) = 0")));
    }
    let point = AffinePoint::new(a.clone(), y);
    Ok(assemble(
        curve,
        CertPoint::Affine(lift_point(&point)),
        n,
        IdentityKind::PureOrderN,
        Poly::one(),
        lift(v),
        GaussianRational::real(a.clone()),
        0,
        None,
        exactness(n, n)?,
    ))
}

/// `f_C = -x^m + (x^l + x^(n-m+l)/d + C)^d` with `l = m/d`, for the first `C`
/// in `1, -1, 2, -2, ...` (skipping `0` and `-1/d`) that makes `f_C`
/// square-free. `P = (0, v_C(0))` has order `m`.
pub fn construct_div_d(n: u64, d: u64, m: u64, limit: usize) -> Result<Construction> {
    check_nd(n, d)?;
    if !m.is_multiple_of(d) {
        return Err(Error::Precondition(format!(
            "d = {d} does not divide m = {m}"
        )));
    }
    if m <= n || m >= 2 * n {
        return Err(Error::Precondition(format!(
            "m = {m} must satisfy n < m < 2n = {}",
            2 * n
        )));
    }
    let ell = m / d;
    if n + ell < m {
        return Err(Error::Precondition(format!(
            "n - m + m/d = {} is negative",
            n as i64 - m as i64 + ell as i64
        )));
    }
    let low = (n + ell - m) as usize;
    let big_d = Rational::new(1, d)?;
    let x_m = Poly::monomial(Rational::one(), m as usize);
    let mut tried = 0;
    for c in signed_sequence()
        .filter(|c| c != &(-big_d.clone()))
        .take(limit)
    {
        tried += 1;
        let v = &(&Poly::monomial(Rational::one(), ell as usize)
            + &Poly::monomial(big_d.clone(), low))
            + &Poly::constant(c);
        let f = &v.pow(d) - &x_m;
        if f.degree() != Some(n as usize) || (low > 0 && !f.is_monic()) {
            return Err(Error::Internal(format!(
                "f_C = {f} is not monic of degree {n}"
            )));
        }
        let curve = match Curve::new(d, n, f) {
            Ok(curve) => curve,
            Err(Error::RepeatedRoot) => continue,
            Err(e) => return Err(e),
        };
        let point = AffinePoint::new(Rational::zero(), v.eval(&Rational::zero()));
        let built = assemble(
            curve,
            CertPoint::Affine(lift_point(&point)),
            m,
            IdentityKind::ShiftPower,
            Poly::one(),
            lift(&v),
            Scalar::zero(),
            0,
            None,
            exactness(n, m)?,
        );
        if built.curve.f().is_monic() {
            return Ok(built);
        }
        // n - m + l = 0: C joins the leading coefficient d(C + 1/d)
        return to_monic(built);
    }
    Err(Error::SearchExhausted { tried })
}

/// Order `2n` on a genus `(n-1)/2` hyperelliptic curve.
///
/// With `T` the linear Taylor polynomial of `x^n` at `b`, set
/// `q = -2T + (x-b)^2/2` and `w = x^n + q`. Then `(x-b)^2` divides
/// `q·(2x^n + q)`, the quotient `f` is monic of degree `n`, and
/// `w^2 - (x-b)^2·f = x^(2n)`, so `(x-b)·y - w` has divisor `2n(P) - 2n(O)`
/// at `P = (0, q(0)/(-b))`. Candidates `b = 1, -1, 2, ...` are tried until
/// `f` is square-free and `P` is not `n`-torsion.
pub fn construct_twice_n(n: u64, limit: usize) -> Result<Construction> {
    check_nd(n, 2)?;
    let half = Rational::new(1, 2)?;
    let x_n = Poly::monomial(Rational::one(), n as usize);
    let two_x_n = x_n.scale(&q(2));
    let mut tried = 0;
    for b in signed_sequence().take(limit) {
        tried += 1;
        let s = Poly::x_minus(b.clone());
        let s2 = &s * &s;
        let taylor = &Poly::constant(b.pow(n)) + &s.scale(&(q(n as i64) * b.pow(n - 1)));
        let qp = &taylor.scale(&q(-2)) + &s2.scale(&half);
        let q0 = qp.eval(&Rational::zero());
        if q0.is_zero() {
            continue;
        }
        let f = (&qp * &(&two_x_n + &qp)).exact_div(&s2)?;
        if f.degree() != Some(n as usize) || !f.is_monic() {
            return Err(Error::Internal(format!(
                "f = {f} is not monic of degree {n}"
            )));
        }
        let curve = match Curve::new(2, n, f) {
            Ok(curve) => curve,
            Err(Error::RepeatedRoot) => continue,
            Err(e) => return Err(e),
        };
        let y0 = q0 * (-b.clone()).inv().expect("b is nonzero");
        let point = AffinePoint::new(Rational::zero(), y0);
        if is_n_torsion(&curve, &point)? {
            continue;
        }
        let w = &x_n + &qp;
        return Ok(assemble(
            curve,
            CertPoint::Affine(lift_point(&point)),
            2 * n,
            IdentityKind::ShiftPower,
            lift(&s),
            lift(&w),
            Scalar::zero(),
            0,
            None,
            ExactnessRule::OrderNExcluded,
        ));
    }
    Err(Error::SearchExhausted { tried })
}

/// `f = ((1+x)^m - V^d)/x^(ed)` with `m = n + e·d` and `V` the degree
/// `ed - 1` truncation of `(1+x)^(m/d)`. The point `(-1, λ(-1)^e V(-1))`
/// with `λ^d = -1` has order `m`; it is symbolic for even `d > 2`.
pub fn construct_n_plus_ed(n: u64, d: u64, e: u64) -> Result<Construction> {
    check_nd(n, d)?;
    if e == 0 {
        return Err(Error::Precondition("e must be at least 1".into()));
    }
    let big_e = e * d;
    let m = n + big_e;
    let bound = d * (big_e - 1);
    if m <= bound {
        return Err(Error::Hypothesis(format!(
            "m = n + ed = {m} does not exceed d(ed - 1) = {bound}"
        )));
    }
    let spec = TruncationSpec::new(m, d, big_e as usize)?;
    check_truncation_valuation(&spec)?;
    let f = truncation_quotient(&spec)?;
    let vt = truncated_binomial(&spec);
    let curve = Curve::new(d, n, f).map_err(|err| {
        Error::Internal(format!("truncation quotient is not a valid curve: {err}"))
    })?;
    let lambda = if d % 2 == 1 {
        Some(-Scalar::one())
    } else if d == 2 {
        Some(GaussianRational::i())
    } else {
        None
    };
    let at = -Rational::one();
    let sign = if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    let point = match &lambda {
        Some(l) => {
            let y = l.clone() * GaussianRational::real(sign * vt.eval(&at));
            CertPoint::Affine(AffinePoint::new(GaussianRational::real(at.clone()), y))
        }
        None => CertPoint::symbolic(),
    };
    Ok(assemble(
        curve,
        point,
        m,
        IdentityKind::InfinityShift,
        Poly::monomial(Scalar::one(), e as usize),
        lift(&vt),
        GaussianRational::real(at),
        e,
        lambda,
        exactness(n, m)?,
    ))
}

/// Builds a certificate for `(n, d, m)` with the family the verdict engine
/// selects. Triples the engine does not mark reachable are refused.
pub fn construct_for(n: u64, d: u64, m: u64, limit: usize) -> Result<Construction> {
    let verdict = reachability_verdict(n, d, m)?;
    let refuse = || {
        format!(
            "(n, d, m) = ({n}, {d}, {m}) is {} by {}: {}",
            verdict.status.as_str(),
            verdict.deciding_rule,
            verdict.explanation
        )
    };
    match verdict.deciding_rule {
        Rule::OrderDPoints => construct_order_d(n, d),
        Rule::OrderN => construct_order_n(n, d, &Rational::zero(), &Poly::one()),
        Rule::DivisibleByDConstruction => construct_div_d(n, d, m, limit),
        Rule::TwiceNConstruction => construct_twice_n(n, limit),
        Rule::NPlusEdConstruction | Rule::NPlusDObstruction => {
            construct_n_plus_ed(n, d, (m - n) / d)
        }
        Rule::M0Obstruction => Err(Error::Hypothesis(refuse())),
        Rule::BelowNGap | Rule::PoleOrderCongruence | Rule::Undecided => {
            Err(Error::Precondition(refuse()))
        }
    }
}

/// Runs a [`ConstructionRequest`].
pub fn construct(req: &ConstructionRequest) -> Result<Construction> {
    let limit = match req.c_limit {
        Some(l) => l,
        None => search_limit_from_env()?,
    };
    let out = match req.style {
        None => {
            let m = req
                .m
                .ok_or_else(|| Error::InvalidInput("m is required without a style".into()))?;
            construct_for(req.n, req.d, m, limit)?
        }
        Some(Style::OrderD) => construct_order_d(req.n, req.d)?,
        Some(Style::OrderN) => {
            let a = req.a.clone().unwrap_or_else(Rational::zero);
            let v = req.v.clone().unwrap_or_else(Poly::one);
            construct_order_n(req.n, req.d, &a, &v)?
        }
        Some(Style::DivisibleByD) => {
            let m = req
                .m
                .ok_or_else(|| Error::InvalidInput("div-d needs m".into()))?;
            construct_div_d(req.n, req.d, m, limit)?
        }
        Some(Style::TwiceN) => {
            if req.d != 2 {
                return Err(Error::UnsupportedDegree(req.d));
            }
            construct_twice_n(req.n, limit)?
        }
        Some(Style::NPlusEd) => {
            let e = match (req.e, req.m) {
                (Some(e), _) => e,
                (None, Some(m)) if m > req.n && (m - req.n).is_multiple_of(req.d.max(1)) => {
                    (m - req.n) / req.d
                }
                _ => {
                    return Err(Error::InvalidInput(
                        "n-plus-ed needs e, or m with m - n divisible by d".into(),
                    ))
                }
            };
            construct_n_plus_ed(req.n, req.d, e)?
        }
    };
    if let Some(m) = req.m {
        if m != out.m() {
            return Err(Error::InvalidInput(format!(
                "style {} produces order {}, not m = {m}",
                req.style.map_or("auto", Style::as_str),
                out.m()
            )));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{pole_order_congruence, verify_certificate, Status};
    use crate::jacobian2::point_order;
    use num_integer::Integer;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn rp(cs: &[&str]) -> Poly<Rational> {
        Poly::new(cs.iter().map(|s| r(s)).collect())
    }

    fn assert_sound(c: &Construction) {
        let report = verify_certificate(&c.certificate);
        assert!(report.valid, "{}", report.failure_summary());
        if let Some(p) = c.point.affine() {
            let lifted = c.curve.map(|x| GaussianRational::real(x.clone()));
            assert!(lifted.contains(p));
        }
    }

    #[test]
    fn order_n_examples() {
        let c = construct_order_n(5, 2, &r("0"), &rp(&["1", "1"])).unwrap();
        assert_eq!(c.curve.f(), &rp(&["1", "2", "1", "0", "0", "1"]));
        assert_eq!(c.point.affine().unwrap().y, GaussianRational::real(r("1")));
        assert_eq!(c.m(), 5);
        assert_sound(&c);

        assert_eq!(
            construct_order_n(5, 2, &r("0"), &rp(&["0", "1"])).unwrap_err(),
            Error::RepeatedRoot
        );
        // v(a) = 0 puts (x-a)^d inside f, so the repeated root is reported
        assert_eq!(
            construct_order_n(5, 2, &r("1"), &rp(&["-1", "1"])).unwrap_err(),
            Error::RepeatedRoot
        );
        assert!(matches!(
            construct_order_n(5, 2, &r("0"), &rp(&["1", "0", "0", "1"])),
            Err(Error::Precondition(_))
        ));

        let c = construct_order_n(3, 2, &r("0"), &Poly::one()).unwrap();
        assert_eq!(c.curve.f(), &rp(&["1", "0", "0", "1"]));
        assert_eq!(
            point_order(&c.curve, &AffinePoint::new(r("0"), r("1")), 10).unwrap(),
            Some(3)
        );
    }

    #[test]
    fn div_d_examples() {
        let c = construct_div_d(5, 2, 6, DEFAULT_SEARCH_LIMIT).unwrap();
        assert_eq!(c.curve.f(), &rp(&["1", "0", "1", "2", "1/4", "1"]));
        assert_eq!(
            c.point.affine().unwrap(),
            &AffinePoint::new(
                GaussianRational::real(r("0")),
                GaussianRational::real(r("1"))
            )
        );
        assert_sound(&c);

        assert!(matches!(
            construct_div_d(5, 2, 12, 64),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            construct_div_d(5, 2, 10, 64),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            construct_div_d(5, 2, 7, 64),
            Err(Error::Precondition(_))
        ));

        let c = construct_div_d(7, 3, 9, DEFAULT_SEARCH_LIMIT).unwrap();
        let v = c.certificate.v.clone();
        assert_eq!(v.degree(), Some(3));
        assert_eq!(v.coeff(1), GaussianRational::real(r("1/3")));
        let expected = &v.pow(3) - &Poly::monomial(GaussianRational::one(), 9);
        assert_eq!(c.certificate.curve.f(), &expected);
        assert_eq!(c.curve.f().degree(), Some(7));
        assert_sound(&c);
    }

    #[test]
    fn div_d_with_constant_shift_is_rescaled() {
        // (n, d, m) = (4, 3, 6): n - m + m/d = 0
        let c = construct_div_d(4, 3, 6, DEFAULT_SEARCH_LIMIT).unwrap();
        assert!(c.curve.f().is_monic());
        assert_eq!(c.curve.f().degree(), Some(4));
        assert_sound(&c);
    }

    #[test]
    fn div_d_never_tries_excluded_c() {
        let big_d = Rational::new(1, 3).unwrap();
        let first: Vec<_> = signed_sequence()
            .filter(|c| c != &(-big_d.clone()))
            .take(200)
            .collect();
        assert!(!first.contains(&Rational::zero()));
        assert!(!first.contains(&(-big_d)));
        assert_eq!(&first[..4], &[r("1"), r("-1"), r("2"), r("-2")]);
    }

    #[test]
    fn div_d_search_exhausts() {
        assert_eq!(
            construct_div_d(5, 2, 6, 0).unwrap_err(),
            Error::SearchExhausted { tried: 0 }
        );
    }

    #[test]
    fn n_plus_ed_examples() {
        let c = construct_n_plus_ed(5, 2, 1).unwrap();
        assert_eq!(c.curve.f(), &rp(&["35/4", "35", "35", "21", "7", "1"]));
        let p = c.point.affine().unwrap();
        assert_eq!(p.x, GaussianRational::real(r("-1")));
        assert_eq!(p.y, GaussianRational::new(r("0"), r("5/2")));
        assert_sound(&c);

        let c = construct_n_plus_ed(5, 2, 3).unwrap();
        assert_eq!(c.m(), 11);
        assert_eq!(c.curve.f().degree(), Some(5));
        assert_sound(&c);

        assert!(matches!(
            construct_n_plus_ed(7, 4, 1),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn n_plus_ed_symbolic_for_even_d() {
        // d = 4, n = 9: d^2 - 2d = 8 < 9
        let c = construct_n_plus_ed(9, 4, 1).unwrap();
        assert_eq!(c.point, CertPoint::symbolic());
        assert!(c.certificate.lambda.is_none());
        assert!(matches!(c.affine_point(), Err(Error::UnsupportedField(_))));
        assert_sound(&c);
        assert_eq!(c.certificate.v.degree(), Some(3));
    }

    #[test]
    fn twice_n_construction() {
        for n in [3u64, 5, 7, 9] {
            let c = construct_twice_n(n, DEFAULT_SEARCH_LIMIT).unwrap();
            assert_eq!(c.m(), 2 * n);
            assert!(c.curve.f().is_monic());
            assert_sound(&c);
            let p = c.point.affine().unwrap().map(|g| g.re.clone());
            assert_eq!(
                point_order(&c.curve, &p, 4 * n).unwrap(),
                Some(2 * n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn order_d_construction() {
        for (n, d) in [(3u64, 2u64), (5, 2), (7, 3), (9, 4)] {
            let c = construct_order_d(n, d).unwrap();
            assert_eq!(c.m(), d);
            assert_sound(&c);
        }
        let c = construct_order_d(5, 2).unwrap();
        assert_eq!(
            point_order(&c.curve, &AffinePoint::new(r("0"), r("0")), 5).unwrap(),
            Some(2)
        );
    }

    #[test]
    fn dispatcher_refuses_unreachable() {
        assert!(matches!(
            construct_for(7, 5, 10, 64),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            construct_for(7, 4, 11, 64),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            construct_for(5, 2, 3, 64),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(construct_for(4, 2, 6, 64), Err(Error::Gcd { .. })));
    }

    #[test]
    fn requests_from_json() {
        let req: ConstructionRequest =
            serde_json::from_str(r#"{"n":5,"d":2,"style":"order-n","v":["1","1"]}"#).unwrap();
        let c = construct(&req).unwrap();
        assert_eq!(c.m(), 5);
        let req: ConstructionRequest =
            serde_json::from_str(r#"{"n":5,"d":2,"m":7,"style":"n-plus-ed"}"#).unwrap();
        assert_eq!(construct(&req).unwrap().certificate.e, 1);
        let req: ConstructionRequest =
            serde_json::from_str(r#"{"n":5,"d":2,"m":8,"style":"order-n"}"#).unwrap();
        assert!(matches!(construct(&req), Err(Error::InvalidInput(_))));
        assert!(serde_json::from_str::<ConstructionRequest>(r#"{"n":5,"d":2,"x":1}"#).is_err());
    }

    #[test]
    fn constructive_grid_round_trips() {
        for d in 2u64..=5 {
            for n in (d + 1)..=13 {
                if n.gcd(&d) != 1 {
                    continue;
                }
                for m in 2..=(2 * n + 1) {
                    let v = reachability_verdict(n, d, m).unwrap();
                    let built = construct_for(n, d, m, DEFAULT_SEARCH_LIMIT);
                    match v.status {
                        Status::ReachableConstructive | Status::ReachableExistence => {
                            let c = built.unwrap_or_else(|e| panic!("({n},{d},{m}): {e}"));
                            assert_eq!(c.m(), m);
                            assert_sound(&c);
                            if m < n * d {
                                assert!(pole_order_congruence(n, d, m).unwrap());
                            }
                        }
                        Status::Unreachable | Status::OpenPerPaper => {
                            assert!(
                                matches!(
                                    built,
                                    Err(Error::Precondition(_)) | Err(Error::Hypothesis(_))
                                ),
                                "({n},{d},{m}) constructed despite {:?}",
                                v.status
                            );
                        }
                    }
                }
            }
        }
    }
}
